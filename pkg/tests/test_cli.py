import json

from click.testing import CliRunner

from planegen.certificates import Certificate
from planegen.cli import cli, main, parse_jp_word


def run(*args):
    return CliRunner().invoke(cli, list(args))


def test_expand_flagship():
    r = run("expand", "--vector", "poly=x^3-3x^2-x+1;v=(1,x,x^2)", "--family", "brun", "--digits", "10")
    assert r.exit_code == 0
    assert r.output.strip() == "1131132132"


def test_expand_jp_format():
    r = run("expand", "--vector", "poly=x^3-x-1;v=(1,x,x^2)", "--family", "jp", "--digits", "3")
    assert r.exit_code == 0
    assert parse_jp_word(r.output.strip())


def test_expand_rational_stops():
    r = run("expand", "--vector", "(1,1,1)", "--digits", "5", "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.output)["digits"] == [3]


def test_usage_errors_exit_2():
    assert run("expand", "--vector", "(1,2)").exit_code == 2
    assert run("gen", "--family", "brun", "--word", "1,4").exit_code == 2
    assert run("classify", "--family", "jp", "--word", "(0,1)x").exit_code == 2
    assert run("nosuchcommand").exit_code == 2
    assert main(["gen", "--family", "brun", "--word", "232", "--seed", "Z9"]) == 2


def test_gen_seed_translate_without_growth():
    r = run("gen", "--family", "brun", "--word", "2,3,1,1", "--iters", "3", "--seed", "U")
    assert r.exit_code == 0
    d = json.loads(r.output)
    assert [s["radius"] for s in d["steps"]] == [d["initial"]["radius"]] * 3
    assert any(s["seed_translates"] for s in d["steps"])


def test_gen_svg(tmp_path):
    out = tmp_path / "p.svg"
    r = run("gen", "--family", "brun", "--word", "232", "--iters", "1", "--out", str(out))
    assert r.exit_code == 0 and out.read_text().startswith("<svg")


def test_classify():
    d = json.loads(run("classify", "--family", "brun", "--word", "1,1,3,2", "--levels", "2").output)
    assert d["pisot"] and not d["origin_interior"]


def test_graph_stats_and_dot():
    d = json.loads(run("graph", "stats", "--family", "brun").output)
    assert (d["vertices"], d["edges"], d["iterations"]) == (19, 47, 2)
    r = run("graph", "prune", "--family", "brun", "--format", "dot")
    assert r.exit_code == 0 and '"a"' in r.output


def test_graph_check_word():
    d = json.loads(run("graph", "check-word", "--word", "2333").output)
    assert d["bad"] is True


def test_rauzy(tmp_path):
    out = tmp_path / "r.svg"
    r = run("rauzy", "--family", "brun", "--word", "2,3,2", "--level", "3", "--out", str(out))
    assert r.exit_code == 0 and "<polygon" in out.read_text()


def test_verify_exit_codes(monkeypatch):
    import planegen.certificates as certs

    monkeypatch.setattr(certs, "run_suite", lambda name, jobs: [Certificate("ok", "c", True, {})])
    assert run("verify", "--suite", "brun").exit_code == 0
    monkeypatch.setattr(certs, "run_suite", lambda name, jobs: [Certificate("bad", "c", False, {})])
    r = run("verify", "--suite", "brun")
    assert r.exit_code == 1
    assert json.loads(r.stdout)[0]["status"] == "fail"
