import pytest

from planegen.certificates import BRUN_SUBS, THETA_SUBS, brun_graph_g, brun_pruned_names
from planegen.core_geometry import BRUN_CONE, U
from planegen.fixtures import brun_seeds, load, seed
from planegen.generation_graphs import (
    GenerationGraph,
    LabelAutomaton,
    brun_bad_cycle_check,
    build_generation_graph,
    jp_bad_check,
    path_is_sound,
    prune_to_recurrent,
    scc_seed_certificate,
    verify_translate_edges,
)


@pytest.fixture(scope="module")
def graph_g():
    return brun_graph_g()


@pytest.fixture(scope="module")
def automaton():
    return LabelAutomaton.from_json(load("bad_automaton.json"))


def test_graph_g_size(graph_g):
    G, fix, n = graph_g
    assert fix and n == 2
    assert (len(G.vertices), len(G.edges)) == (19, 47)


def test_graph_g_deterministic(graph_g):
    G, _, _ = graph_g
    again, _, _ = brun_graph_g()
    assert again.snapshot() == G.snapshot()


def test_graph_needs_initial_faces():
    with pytest.raises(ValueError):
        build_generation_graph(BRUN_SUBS, BRUN_CONE, [])


def test_paths_are_sound(graph_g):
    G, _, _ = graph_g
    # paths of length two, listed from f_0 backwards
    into = {}
    for e in G.edges:
        into.setdefault(e[2], []).append(e)
    for g, i, f in sorted(G.edges):
        assert path_is_sound(BRUN_SUBS, [(g, i, f)])
        for e in into.get(g, []):
            assert path_is_sound(BRUN_SUBS, [(g, i, f), e])


def test_pruned_graph_names(graph_g):
    G, _, _ = graph_g
    P = prune_to_recurrent(G, {3}, U.faces)
    assert set(P.vertices) == set(brun_pruned_names())


def test_prune_without_labels_is_empty(graph_g):
    G, _, _ = graph_g
    assert not prune_to_recurrent(G, set()).vertices


def test_seed_certificate(graph_g):
    G, _, _ = graph_g
    assert not scc_seed_certificate(G, U.faces, 3)
    assert scc_seed_certificate(GenerationGraph(), U.faces, 3)


@pytest.mark.parametrize(
    "word,bad",
    [((2, 3, 3, 3), True), ((2, 3), True), ((2, 3, 3), False), ((1, 1, 3, 2), True), ((2, 3, 2), False), ((2, 3, 1, 1), False)],
)
def test_brun_bad_words(automaton, word, bad):
    assert brun_bad_cycle_check(word, automaton) is bad


def test_brun_bad_word_needs_a_three(automaton):
    with pytest.raises(ValueError):
        brun_bad_cycle_check((1, 2), automaton)


def test_power_loop_but_no_plain_loop(automaton):
    assert not automaton.relation((3, 2)) & {(s, s) for s in automaton.states}
    assert automaton.has_loop_labelled_by_power((3, 2))


def test_jp_bad_check():
    assert jp_bad_check(((0, 1), (1, 1), (1, 2)))
    assert not jp_bad_check(((0, 1),))


def test_translate_chain_negative_control():
    V1, V2 = seed("V1"), seed("V2")
    assert not verify_translate_edges(BRUN_SUBS, {"a": U, "b": V1 | V2.translate((9, 9, -9))}, [("a", 1, "b")]).ok


def test_json_and_dot(graph_g):
    G, _, _ = graph_g
    data = G.to_json()
    assert len(data["vertices"]) == 19 and len(data["edges"]) == 47
    dot = G.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 47


def test_automaton_json_round_trip(automaton):
    assert LabelAutomaton.from_json(automaton.to_json()) == automaton


def test_theta_family_available():
    assert sorted(THETA_SUBS) == [1, 2, 3, 4]
    assert set(brun_seeds()) == {"V1", "V2"}
