"""Command-line interface: expansions, dual iteration, graphs, certificates, classification, pictures.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import json
import re
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import cf_families as cf
from .core_geometry import BRUN_CONE, JP_CONE, U, combinatorial_radius
from .coverings import contains_translate

FAMILIES = click.Choice(["brun", "jp"])


# ---------------------------------------------------------------------------
# parsing


def parse_brun_word(text: str) -> tuple[int, ...]:
    """'2,3,2' or '232'."""
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) == 1 and len(parts[0]) > 1:
        parts = list(parts[0])
    try:
        word = tuple(int(p) for p in parts)
    except ValueError:
        raise click.BadParameter(f"cannot read Brun digits from {text!r}") from None
    if not word or any(a not in (1, 2, 3) for a in word):
        raise click.BadParameter("Brun digits must be 1, 2 or 3")
    return word


def parse_jp_word(text: str) -> tuple[tuple[int, int], ...]:
    """'(0,1)(1,3)'."""
    body = re.sub(r"\s+", "", text)
    pairs = re.findall(r"\((\d+),(\d+)\)", body)
    if not pairs or "".join(f"({a},{b})" for a, b in pairs) != body:
        raise click.BadParameter(f"cannot read Jacobi-Perron digits from {text!r}; use '(a,b)(a,b)...'")
    return tuple((int(a), int(b)) for a, b in pairs)


def parse_word(text: str, family: str):
    return parse_brun_word(text) if family == "brun" else parse_jp_word(text)


def format_word(word, family: str) -> str:
    if family == "brun":
        return "".join(map(str, word))
    return "".join(f"({a},{b})" for a, b in word)


def parse_vector(text: str) -> tuple:
    """'poly=...; v=(...)' for a cubic-field vector, otherwise rationals like '(1, 2/3, 5)'."""
    if "poly" in text:
        from .algebraic import parse_algebraic_vector

        try:
            return parse_algebraic_vector(text)
        except (ValueError, ArithmeticError) as e:
            raise click.BadParameter(str(e)) from None
    body = text.strip().strip("()")
    try:
        v = tuple(Fraction(p.strip()) for p in body.split(","))
    except ValueError:
        raise click.BadParameter(f"cannot read a vector from {text!r}") from None
    if len(v) != 3:
        raise click.BadParameter("vector needs three coordinates")
    return v


def emit(obj, fmt: str = "json") -> None:
    click.echo(json.dumps(obj, indent=1, sort_keys=True) if fmt == "json" else obj)


# ---------------------------------------------------------------------------
# commands


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli() -> None:
    """Dual substitutions, discrete planes and Rauzy fractals for Brun and Jacobi-Perron expansions."""


@cli.command()
@click.option("--vector", required=True, help="'(1,2/3,5)' or 'poly=x^3-3x^2-x+1;v=(1,x,x^2)'.")
@click.option("--family", type=FAMILIES, default="brun", show_default=True)
@click.option("--digits", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def expand(vector: str, family: str, digits: int, fmt: str) -> None:
    """Print the first digits of the Brun or Jacobi-Perron expansion of a vector."""
    v = parse_vector(vector)
    stopped = None
    try:
        word = cf.brun_expansion(v, digits) if family == "brun" else cf.jp_expansion(v, digits)
    except cf.TruncatedExpansion as e:
        word, stopped = e.digits, str(e)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--vector") from None
    if fmt == "json":
        emit({"family": family, "digits": [list(d) if family == "jp" else d for d in word], "stopped": stopped})
    else:
        click.echo(format_word(word, family))
        if stopped:
            click.echo(f"expansion stops after {len(word)} digits: {stopped}", err=True)


def _seed_pattern(name: str):
    from .fixtures import seed

    try:
        return seed(name)
    except KeyError:
        raise click.BadParameter(f"unknown seed {name!r}", param_hint="--seed") from None


@cli.command()
@click.option("--family", type=FAMILIES, required=True)
@click.option("--word", required=True, help="Digits w_1..w_n; the map is Sigma_(w_1) ... Sigma_(w_n).")
@click.option("--iters", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--seed", "seed_name", default="U", show_default=True, help="U, V1, V2, VJ1..VJ4 or W1..W4.")
@click.option("--format", "fmt", type=click.Choice(["json", "svg"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the final pattern as SVG.")
def gen(family: str, word: str, iters: int, seed_name: str, fmt: str, out: str | None) -> None:
    """Iterate a digit word on a starting pattern; report size, radius and seed translates."""
    from .fixtures import brun_seeds, jp_seeds
    from .rauzy import dual_word_iterates, pattern_svg

    w = parse_word(word, family)
    if family == "jp" and not cf.jp_admissible(w):
        raise click.BadParameter("digits are not Jacobi-Perron admissible", param_hint="--word")
    start = _seed_pattern(seed_name)
    seeds = brun_seeds() if family == "brun" else {"VJ" + k[1:]: v for k, v in jp_seeds().items()}
    steps = []
    P = start
    for it in dual_word_iterates(w, iters, family, start):
        P = it.pattern
        found = {}
        for name, S in seeds.items():
            t = contains_translate(P, S)
            if t is not None:
                found[name] = list(t)
        steps.append({"k": it.k, "faces": len(P), "radius": it.radius, "seed_translates": found})
    if out:
        Path(out).write_text(pattern_svg(P))
    if fmt == "svg" and not out:
        click.echo(pattern_svg(P), nl=False)
        return
    emit({
        "family": family,
        "word": format_word(w, family),
        "seed": seed_name,
        "initial": {"faces": len(start), "radius": combinatorial_radius(start)},
        "steps": steps,
    })


# ---------------------------------------------------------------------------
# graphs


def _graph_for(family: str, initial: str, iters: int):
    from .certificates import BRUN_SUBS, THETA_SUBS
    from .fixtures import brun_seeds, brun_w_annuli, jp_seeds
    from .generation_graphs import build_generation_graph

    if family == "brun":
        subs, cone = BRUN_SUBS, BRUN_CONE
        S = brun_seeds()
        sets = {
            "annuli": (S["V1"].faces | S["V2"].faces) - U.faces,
            "seeds": S["V1"].faces | S["V2"].faces,
            "w": set().union(*(w.faces for w in brun_w_annuli().values())),
        }
    else:
        subs, cone = THETA_SUBS, JP_CONE
        J = set().union(*(v.faces for v in jp_seeds().values()))
        sets = {"annuli": J - U.faces, "seeds": J}
    if initial not in sets:
        raise click.BadParameter(f"initial set {initial!r} not available for {family}", param_hint="--initial")
    return build_generation_graph(subs, cone, sets[initial], max_iters=iters)


def _names(family: str, depth: int):
    from .certificates import brun_pruned_names, jp_pruned_names

    return brun_pruned_names() if family == "brun" else jp_pruned_names(depth)


def graph_options(f):
    f = click.option("--iters", type=click.IntRange(min=1), default=None, help="Iteration cap (default 50 Brun, 3 JP).")(f)
    f = click.option(
        "--initial",
        type=click.Choice(["annuli", "seeds", "w"]),
        default=None,
        help="Initial faces: minimal annuli of U (default Brun), seeds with U (default JP), or W1..W4.",
    )(f)
    f = click.option("--family", type=FAMILIES, required=True)(f)
    return f


def _defaults(family: str, initial: str | None, iters: int | None) -> tuple[str, int]:
    if initial is None:
        initial = "annuli" if family == "brun" else "seeds"
    if iters is None:
        iters = 50 if family == "brun" else 3
    return initial, iters


@cli.group()
def graph() -> None:
    """Build, summarize and prune generation graphs; test words against the bad automaton."""


@graph.command("build")
@graph_options
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json", show_default=True)
def graph_build(family: str, initial: str | None, iters: int | None, fmt: str) -> None:
    initial, iters = _defaults(family, initial, iters)
    G, fix, n = _graph_for(family, initial, iters)
    if fmt == "dot":
        click.echo(G.to_dot(), nl=False)
    else:
        emit({"fixpoint": fix, "iterations": n, **G.to_json()})


@graph.command("stats")
@graph_options
def graph_stats(family: str, initial: str | None, iters: int | None) -> None:
    initial, iters = _defaults(family, initial, iters)
    G, fix, n = _graph_for(family, initial, iters)
    emit({
        "family": family,
        "initial": initial,
        "fixpoint": fix,
        "iterations": n,
        "vertices": len(G.vertices),
        "edges": len(G.edges),
    })


@graph.command("prune")
@graph_options
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json", show_default=True)
def graph_prune(family: str, initial: str | None, iters: int | None, fmt: str) -> None:
    """Keep vertices ending an infinite backward path with infinitely many 3s (Brun) or 3s and 4s (JP)."""
    from .generation_graphs import prune_to_recurrent

    initial, iters = _defaults(family, initial, iters)
    G, _, _ = _graph_for(family, initial, iters)
    P = prune_to_recurrent(G, {3} if family == "brun" else {3, 4}, U.faces)
    names = _names(family, iters + 2)
    if fmt == "dot":
        click.echo(P.to_dot(names), nl=False)
    else:
        emit({
            "vertices": sorted(names.get(f, str(f)) for f in P.vertices),
            "edges": sorted([names.get(a, str(a)), i, names.get(b, str(b))] for a, i, b in P.edges),
        })


@graph.command("check-word")
@click.option("--family", type=FAMILIES, default="brun", show_default=True)
@click.option("--word", required=True)
def graph_check_word(family: str, word: str) -> None:
    """Whether the periodic product given by the word is bad (origin not interior)."""
    from .fixtures import load
    from .generation_graphs import LabelAutomaton, brun_bad_cycle_check, jp_bad_check

    w = parse_word(word, family)
    try:
        if family == "brun":
            bad = brun_bad_cycle_check(w, LabelAutomaton.from_json(load("bad_automaton.json")))
        else:
            bad = jp_bad_check(w)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--word") from None
    emit({"family": family, "word": format_word(w, family), "bad": bad})


# ---------------------------------------------------------------------------
# certificates, classification, pictures


@cli.command()
@click.option("--suite", type=click.Choice(["brun", "jp", "all"]), default="all", show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes for enumerations.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Also write the certificates to this file.")
def verify(suite: str, jobs: int, out: str | None) -> None:
    """Recompute the reference claims; exit 1 if any certificate fails."""
    from .certificates import run_suite

    certs = run_suite(suite, jobs)
    data = [c.to_json() for c in certs]
    text = json.dumps(data, indent=1, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    click.echo(text)
    for c in certs:
        click.echo(f"{'PASS' if c.passed else 'FAIL'} {c.name}", err=True)
    if not all(c.passed for c in certs):
        sys.exit(1)


@cli.command()
@click.option("--family", type=FAMILIES, required=True)
@click.option("--word", required=True)
@click.option("--levels", type=click.IntRange(min=0), default=4, show_default=True)
def classify(family: str, word: str, levels: int) -> None:
    """Pisot test, origin-interior verdict and subtile connectedness of a periodic product."""
    from .rauzy import classify_product

    w = parse_word(word, family)
    try:
        res = classify_product(w, family, levels)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--word") from None
    emit({"family": family, "word": format_word(w, family), **res})


@cli.command()
@click.option("--family", type=FAMILIES, required=True)
@click.option("--word", required=True)
@click.option("--level", type=click.IntRange(min=0), default=4, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="SVG file; standard output when omitted.")
def rauzy(family: str, word: str, level: int, out: str | None) -> None:
    """Draw the level-n approximation of the Rauzy fractal of a product."""
    from .rauzy import rauzy_approximation, rauzy_svg

    w = parse_word(word, family)
    s = cf.brun_product(w) if family == "brun" else cf.jp_product(w)
    try:
        patch = rauzy_approximation(s, level)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--word") from None
    svg = rauzy_svg(patch)
    if out:
        Path(out).write_text(svg)
        click.echo(json.dumps({"polygons": len(patch.polygons), "level": level, "out": out}))
    else:
        click.echo(svg, nl=False)


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the exit code instead of raising SystemExit when argv is given."""
    try:
        cli.main(args=argv, prog_name="planegen", standalone_mode=True)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
        if argv is None:
            raise
        return code
    return 0


if __name__ == "__main__":
    main()
