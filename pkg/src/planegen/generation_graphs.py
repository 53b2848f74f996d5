"""Generation graphs, label-recurrence pruning, bad-sequence automata and translate certificates.

A generation graph has faces as vertices and an edge g -i-> f whenever f is
in Sigma_i(g).  It is grown backwards from an initial set of faces, keeping
only preimages that pass a cone filter.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .core_geometry import Cone, Face, Pattern, face_in_cone_family
from .coverings import contains_translate
from .substitutions import Substitution, dual_image_pattern, dual_preimages

GraphEdge = tuple[Face, int, Face]


@dataclass
class GenerationGraph:
    """Vertices with their birth iteration and labelled edges g -i-> f."""

    generations: dict[Face, int] = field(default_factory=dict)
    edges: set[GraphEdge] = field(default_factory=set)

    @property
    def vertices(self) -> frozenset[Face]:
        return frozenset(self.generations)

    def labels(self) -> set[int]:
        return {i for _, i, _ in self.edges}

    def snapshot(self) -> tuple[tuple[Face, ...], tuple[GraphEdge, ...]]:
        return tuple(sorted(self.generations)), tuple(sorted(self.edges))

    def to_networkx(self) -> nx.MultiDiGraph:
        G = nx.MultiDiGraph()
        for f, n in self.generations.items():
            G.add_node(f, generation=n)
        for g, i, f in sorted(self.edges):
            G.add_edge(g, f, key=i, label=i)
        return G

    def subgraph(self, keep: Iterable[Face]) -> "GenerationGraph":
        keep = set(keep)
        return GenerationGraph(
            {f: n for f, n in self.generations.items() if f in keep},
            {(g, i, f) for g, i, f in self.edges if g in keep and f in keep},
        )

    def to_json(self) -> dict:
        return {
            "vertices": [{"x": list(f.pos), "t": f.kind, "generation": self.generations[f]} for f in sorted(self.generations)],
            "edges": [
                {"src": [list(g.pos), g.kind], "label": i, "dst": [list(f.pos), f.kind]}
                for g, i, f in sorted(self.edges)
            ],
        }

    def to_dot(self, names: Mapping[Face, str] | None = None) -> str:
        names = dict(names or {})

        def label(f: Face) -> str:
            return names.get(f) or f"[{f.pos[0]},{f.pos[1]},{f.pos[2]};{f.kind}]"

        lines = ["digraph G {"]
        for f in sorted(self.generations):
            lines.append(f'  "{label(f)}";')
        for g, i, f in sorted(self.edges):
            lines.append(f'  "{label(g)}" -> "{label(f)}" [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_generation_graph(
    subs: Mapping[int, Substitution],
    filter: Cone | None,
    initial: Iterable[Face],
    max_iters: int = 50,
) -> tuple[GenerationGraph, bool, int]:
    """Grow G_0, G_1, ... until G_n = G_(n+1) or max_iters steps.

    Returns (graph, reached_fixpoint, n): with a fixpoint, n is the index of
    the last step that changed the graph, so G_n = G_(n+1); otherwise n is
    max_iters and the graph is G_max_iters.
    """
    initial = sorted(set(initial))
    if not initial:
        raise ValueError("initial set must be nonempty")
    graph = GenerationGraph({f: 0 for f in initial}, set())
    cache: dict[tuple[int, Face], frozenset[Face]] = {}
    filter_cache: dict[Face, bool] = {}

    def allowed(g: Face) -> bool:
        if filter is None:
            return True
        hit = filter_cache.get(g)
        if hit is None:
            hit = filter_cache[g] = face_in_cone_family(g, filter)
        return hit

    for n in range(1, max_iters + 1):
        before = graph.snapshot()
        new_vertices: dict[Face, int] = {}
        new_edges: set[GraphEdge] = set()
        for f in sorted(graph.generations):
            for i in sorted(subs):
                key = (i, f)
                if key not in cache:
                    cache[key] = frozenset(g for g in dual_preimages(subs[i], f) if allowed(g))
                for g in sorted(cache[key]):
                    if g not in graph.generations:
                        new_vertices.setdefault(g, n)
                    new_edges.add((g, i, f))
        graph.generations.update(new_vertices)
        graph.edges |= new_edges
        if graph.snapshot() == before:
            return graph, True, n - 1
    return graph, False, max_iters


def prune_to_recurrent(
    graph: GenerationGraph, required_labels: Iterable[int], exclude: Iterable[Face] = ()
) -> GenerationGraph:
    """Vertices at the end of an infinite backward path with infinitely many required labels.

    Such a path eventually stays in one strongly connected component that
    carries a required label on an internal edge, so the answer is every
    vertex reachable (along edges) from such a component.  Excluded faces
    are dropped first.
    """
    required = set(required_labels)
    drop = set(exclude)
    sub = graph.subgraph(f for f in graph.generations if f not in drop)
    G = sub.to_networkx()
    core: set[Face] = set()
    for comp in nx.strongly_connected_components(G):
        if any(f in comp and i in required for g, i, f in sub.edges if g in comp):
            core |= comp
    keep = set(core)
    for v in core:
        keep |= nx.descendants(G, v)
    return sub.subgraph(keep)


def recurrent_components(graph: GenerationGraph, label: int) -> list[frozenset[Face]]:
    G = graph.to_networkx()
    out = []
    for comp in nx.strongly_connected_components(G):
        if any(g in comp and f in comp and i == label for g, i, f in graph.edges):
            out.append(frozenset(comp))
    return sorted(out, key=sorted)


def scc_seed_certificate(graph: GenerationGraph, seed_faces: Iterable[Face], required_label: int) -> bool:
    """Every strongly connected component carrying the label lies inside the seed faces."""
    seeds = set(seed_faces)
    return all(comp <= seeds for comp in recurrent_components(graph, required_label))


def path_is_sound(subs: Mapping[int, Substitution], path: Sequence[GraphEdge]) -> bool:
    """For f_n -i_n-> ... -i_1-> f_0 (given from f_0 backwards), f_0 is in Sigma_i1 ... Sigma_in(f_n)."""
    if not path:
        return True
    target = path[0][2]
    P = Pattern((path[-1][0],))
    for g, i, f in reversed(path):
        P = dual_image_pattern(subs[i], P)
    return target in P.faces


# ---------------------------------------------------------------------------
# label automata


@dataclass(frozen=True)
class LabelAutomaton:
    """Labelled directed graph read along its edges; no accepting states."""

    states: tuple[str, ...]
    transitions: tuple[tuple[str, int, str], ...]

    @classmethod
    def from_graph(cls, graph: GenerationGraph, names: Mapping[Face, str] | None = None) -> "LabelAutomaton":
        names = dict(names or {})
        nm = {f: names.get(f, str(f)) for f in graph.generations}
        return cls(
            tuple(sorted(nm.values())),
            tuple(sorted((nm[g], i, nm[f]) for g, i, f in graph.edges)),
        )

    @classmethod
    def from_json(cls, data: dict) -> "LabelAutomaton":
        return cls(tuple(data["states"]), tuple((a, int(i), b) for a, i, b in data["transitions"]))

    def to_json(self) -> dict:
        return {"states": list(self.states), "transitions": [list(t) for t in self.transitions]}

    def step(self, sources: Iterable[str], label: int) -> frozenset[str]:
        src = set(sources)
        return frozenset(b for a, i, b in self.transitions if a in src and i == label)

    def relation(self, word: Sequence[int]) -> frozenset[tuple[str, str]]:
        """Pairs (p, q) joined by a path whose labels read word."""
        pairs = set()
        for p in self.states:
            cur = frozenset((p,))
            for a in word:
                cur = self.step(cur, a)
                if not cur:
                    break
            pairs.update((p, q) for q in cur)
        return frozenset(pairs)

    def has_loop_labelled_by_power(self, word: Sequence[int]) -> bool:
        """Some loop reads word^k for a k >= 1.

        The relation R of word is a map on a finite set of states, so a loop
        under some power shows up within the first len(states) powers.
        """
        if not word:
            raise ValueError("empty word")
        R = self.relation(word)
        power = R
        for _ in range(len(self.states)):
            if any(p == q for p, q in power):
                return True
            power = frozenset((p, r) for p, q in power for q2, r in R if q == q2)
        return False

    def words(self, length: int) -> set[tuple[int, ...]]:
        """All label words of the given length read along some path."""
        labels = sorted({i for _, i, _ in self.transitions})
        out: set[tuple[int, ...]] = set()

        def grow(word: tuple[int, ...], cur: frozenset[str]) -> None:
            if len(word) == length:
                out.add(word)
                return
            for a in labels:
                nxt = self.step(cur, a)
                if nxt:
                    grow(word + (a,), nxt)

        grow((), frozenset(self.states))
        return out

    def bisimulation_quotient(self) -> "LabelAutomaton":
        """Merge states with the same labelled successor classes (coarsest partition refinement)."""
        block = {s: 0 for s in self.states}
        while True:
            sig = {
                s: (block[s], frozenset((i, block[b]) for a, i, b in self.transitions if a == s))
                for s in self.states
            }
            keys = sorted(set(sig.values()), key=repr)
            new = {s: keys.index(sig[s]) for s in self.states}
            if len(set(new.values())) == len(set(block.values())):
                break
            block = new
        name = {k: "q" + str(k) for k in set(block.values())}
        return LabelAutomaton(
            tuple(sorted(set(name.values()))),
            tuple(sorted({(name[block[a]], i, name[block[b]]) for a, i, b in self.transitions})),
        )


def quotient_maps(big: LabelAutomaton, small: LabelAutomaton) -> list[dict[str, str]]:
    """State maps big -> small sending the transitions of big exactly onto those of small.

    Such a map merges vertices; every path of big maps to a path of small
    with the same labels.  Found by backtracking over states.
    """
    states = list(big.states)
    target = set(small.transitions)
    out: list[dict[str, str]] = []

    def consistent(m: dict[str, str]) -> bool:
        for a, i, b in big.transitions:
            if a in m and b in m and (m[a], i, m[b]) not in target:
                return False
        return True

    def extend(k: int, m: dict[str, str]) -> None:
        if k == len(states):
            if {(m[a], i, m[b]) for a, i, b in big.transitions} == target:
                out.append(dict(m))
            return
        for q in small.states:
            m[states[k]] = q
            if consistent(m):
                extend(k + 1, m)
            del m[states[k]]

    extend(0, {})
    return out


def same_language(A: LabelAutomaton, B: LabelAutomaton) -> bool:
    """Same sets of finite path label words, by exploring pairs of reachable state sets."""
    labels = sorted({i for _, i, _ in A.transitions} | {i for _, i, _ in B.transitions})
    start = (frozenset(A.states), frozenset(B.states))
    seen = {start}
    todo = [start]
    while todo:
        sa, sb = todo.pop()
        for a in labels:
            na, nb = A.step(sa, a), B.step(sb, a)
            if bool(na) != bool(nb):
                return False
            if na and (na, nb) not in seen:
                seen.add((na, nb))
                todo.append((na, nb))
    return True


def brun_bad_cycle_check(word: Sequence[int], automaton: LabelAutomaton) -> bool:
    """Whether the Brun product sigma_(i_1) ... sigma_(i_m) is bad.

    Bad means the iterates E1*(sigma)^n(U) miss part of the discrete plane,
    which happens iff some power of i_m ... i_1 labels a loop read against
    the edges, that is iff some power of i_1 ... i_m labels a loop read
    along them.
    """
    word = tuple(int(a) for a in word)
    if any(a not in (1, 2, 3) for a in word) or 3 not in word:
        raise ValueError("Brun-admissible word (over 1, 2, 3 and containing a 3) expected")
    return automaton.has_loop_labelled_by_power(word)


def jp_bad_check(seq: Sequence[tuple[int, int]], preperiod: Sequence[tuple[int, int]] = ()) -> bool:
    """Whether preperiod . seq^infinity has a position l with, for all k >= 0,
    a_(l+3k) = 0, a_(l+3k+1) = b_(l+3k+1) and 0 < a_(l+3k+2) < b_(l+3k+2).

    Positions are 1-based.  The sequence is eventually periodic, so it is
    enough to try l over the preperiod plus one period and k over three
    periods past it.
    """
    from .cf_families import jp_admissible

    seq = [tuple(d) for d in seq]
    pre = [tuple(d) for d in preperiod]
    if not seq:
        raise ValueError("a nonempty period is required")
    if not jp_admissible(pre + seq + seq, periodic=False) or not jp_admissible(seq, periodic=True):
        raise ValueError("sequence is not Jacobi-Perron admissible")
    p, q = len(seq), len(pre)

    def digit(n: int) -> tuple[int, int]:
        return pre[n - 1] if n <= q else seq[(n - q - 1) % p]

    checks = (
        lambda a, b: a == 0,
        lambda a, b: a == b,
        lambda a, b: 0 < a < b,
    )
    for l in range(1, q + p + 1):
        if all(checks[(n - l) % 3](*digit(n)) for n in range(l, l + q + 3 * p + 3)):
            return True
    return False


# ---------------------------------------------------------------------------
# translate certificates


@dataclass
class TranslateReport:
    checked: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_translate_edges(
    subs: Mapping[int, Substitution],
    patterns: Mapping[str, Pattern],
    edges: Iterable[tuple[str, int, str]],
) -> TranslateReport:
    """Every edge P -i-> Q has Sigma_i(P) containing a translate of Q."""
    checked, failures = 0, []
    for a, i, b in edges:
        checked += 1
        if contains_translate(dual_image_pattern(subs[i], patterns[a]), patterns[b]) is None:
            failures.append(f"{a} -{i}-> {b}")
    return TranslateReport(checked, failures)


def replay_translate_paths(
    subs: Mapping[int, Substitution],
    start: str,
    start_pattern: Pattern,
    targets: Mapping[str, Pattern],
    edges: Iterable[tuple[str, int, str]],
    max_loops: int = 1,
) -> TranslateReport:
    """Follow every path from start to a target node, taking each loop at most max_loops times.

    Inner nodes carry no stored pattern: the pattern along a path is the
    image of start_pattern by the labels read so far, and each target must
    occur as a translate in it.  The graph without loops must be acyclic.
    """
    edges = list(edges)
    out: dict[str, list[tuple[int, str]]] = {}
    loops: dict[str, list[int]] = {}
    for a, i, b in edges:
        if a == b:
            loops.setdefault(a, []).append(i)
        else:
            out.setdefault(a, []).append((i, b))
    checked, failures = 0, []

    def walk(node: str, P: Pattern, word: str, used: dict[str, int]) -> None:
        nonlocal checked
        if node in targets:
            checked += 1
            if contains_translate(P, targets[node]) is None:
                failures.append(f"{word or '-'} -> {node}")
            return
        if used.get(node, 0) < max_loops:
            for i in loops.get(node, []):
                walk(node, dual_image_pattern(subs[i], P), word + str(i), {**used, node: used.get(node, 0) + 1})
        for i, b in out.get(node, []):
            walk(b, dual_image_pattern(subs[i], P), word + str(i), used)

    walk(start, start_pattern, "", {})
    return TranslateReport(checked, failures)


def words_with_min_count(letters: Sequence[int], length: int, letter: int, count: int):
    for w in itertools.product(letters, repeat=length):
        if w.count(letter) >= count:
            yield w


def pattern_in_all_images(
    subs: Mapping[int, Substitution], Q: Pattern, start: Pattern, words: Iterable[Sequence[int]]
) -> list[tuple[int, ...]]:
    """Words w = i_1 ... i_n for which Sigma_i1 ... Sigma_in(start) has no translate of Q."""
    bad = []
    for w in words:
        P = start
        for i in reversed(w):
            P = dual_image_pattern(subs[i], P)
        if contains_translate(P, Q) is None:
            bad.append(tuple(w))
    return bad


def load_translate_graph(data: dict) -> tuple[list[tuple[str, int, str]], dict[str, Pattern]]:
    edges = [(a, int(i), b) for a, i, b in data["edges"]]
    patterns = {
        k: Pattern(Face(tuple(x), t) for x, t in v) if isinstance(v, list) else Pattern.from_json(v)
        for k, v in data.get("patterns", {}).items()
    }
    return edges, patterns


def face_names_from_json(data: Mapping[str, dict]) -> dict[Face, str]:
    return {Face(tuple(v["x"]), v["t"]): k for k, v in data.items()}


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True)
