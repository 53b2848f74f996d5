"""L-coverings, strong L-coverings, annuli, Property A and minimal annuli.

A cover set L is given by one representative per translation class.  An
occurrence of L in P is a translate of a representative contained in P.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core_geometry import (
    BRUN_CONE,
    JP_CONE,
    ORIGIN,
    U,
    Cone,
    Face,
    Pattern,
    Vec,
    adjacency_offsets,
    faces_edge_adjacent,
    faces_share_edge,
    faces_touch,
    is_annulus_shape,
    is_simply_connected,
    pattern,
    pattern_cone_witness,
    pattern_translate_in_cone_family,
    translate_configuration_feasible,
    vadd,
    vsub,
)
from .substitutions import Substitution, dual_image, dual_image_pattern


@dataclass(frozen=True)
class CoverSet:
    name: str
    representatives: tuple[Pattern, ...]

    def __iter__(self):
        return iter(self.representatives)


E12b = pattern(((0, 0, 0), 1), ((-1, 1, 0), 2))
E13a = pattern(((0, 0, 0), 1), ((0, 0, 0), 3))
E13b = pattern(((0, 0, 0), 1), ((-1, 0, 1), 3))
E23a = pattern(((0, 0, 0), 2), ((0, 0, 0), 3))
E23b = pattern(((0, -1, 1), 3), ((0, 0, 0), 2))
E33a = pattern(((0, 0, 0), 3), ((1, 0, 0), 3))
E33b = pattern(((0, 0, 0), 3), ((0, 1, 0), 3))
E22a_BRUN = pattern(((0, 0, 0), 2), ((0, 0, 0), 3), ((1, 0, 0), 3), ((1, 0, 0), 2))
E22a_JP = pattern(((0, 0, 0), 2), ((1, 0, 0), 2), ((0, 0, 0), 3))
E11a_JP = pattern(((0, 0, 0), 1), ((0, 1, 0), 3), ((0, 0, 0), 3), ((0, 1, 0), 1))

# two-face patterns ruled out by the cone inequalities
E11a = pattern(((0, 0, 0), 1), ((0, 0, 1), 1))
E22b = pattern(((0, 0, 0), 2), ((0, 0, 1), 2))
E11b = pattern(((0, 0, 0), 1), ((0, 1, 0), 1))

L_BRUN = CoverSet("brun", (E12b, E13b, E23a, E23b, E33a, E33b, U, E22a_BRUN))
L_JP = CoverSet("jp", (E12b, E13a, E13b, E23a, E23b, E33a, E33b, U, E22a_JP, E11a_JP))


# ---------------------------------------------------------------------------
# occurrences and coverings


def occurrences(P: Pattern, L: Iterable[Pattern]) -> list[Pattern]:
    """All translates of representatives of L contained in P (deduplicated, sorted)."""
    found: set[Pattern] = set()
    for Q in L:
        anchor = Q.sorted()[0]
        for f in P.faces:
            if f.kind != anchor.kind:
                continue
            t = vsub(f.pos, anchor.pos)
            if all(Face(vadd(q.pos, t), q.kind) in P.faces for q in Q.faces):
                found.add(Q.translate(t))
    return sorted(found, key=lambda X: X.sorted())


def _cover_components(P: Pattern, occ: Sequence[Pattern]) -> dict[Face, Face]:
    parent: dict[Face, Face] = {}

    def find(x: Face) -> Face:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for Q in occ:
        for f in Q.faces:
            parent.setdefault(f, f)
    for Q in occ:
        fs = Q.sorted()
        r0 = find(fs[0])
        for f in fs[1:]:
            r = find(f)
            if r != r0:
                parent[r] = r0
    return {f: find(f) for f in parent}


def is_covered(P: Pattern, L: Iterable[Pattern]) -> bool:
    """Every two faces of P are linked by a chain of L-occurrences inside P sharing faces.

    One-face patterns count as covered; the empty pattern is covered.
    """
    if len(P) <= 1:
        return True
    occ = occurrences(P, L)
    comp = _cover_components(P, occ)
    if any(f not in comp for f in P.faces):
        return False
    return len(set(comp.values())) == 1


def two_face_subpatterns(P: Pattern, rel: Callable[[Face, Face], bool] = faces_share_edge) -> list[Pattern]:
    faces = P.sorted()
    out = []
    for a, b in itertools.combinations(faces, 2):
        if rel(a, b):
            out.append(Pattern((a, b)))
    return out


def uncovered_pairs(P: Pattern, L: Iterable[Pattern], rel=faces_share_edge) -> list[Pattern]:
    """Two-face related sub-patterns X of P with no occurrence Y of L such that X <= Y <= P."""
    occ = occurrences(P, L)
    return [X for X in two_face_subpatterns(P, rel) if not any(X <= Y for Y in occ)]


def is_strongly_covered(P: Pattern, L: Iterable[Pattern], rel=faces_share_edge) -> bool:
    L = tuple(L)
    return is_covered(P, L) and not uncovered_pairs(P, L, rel)


def is_L_annulus(A: Pattern, P: Pattern, L: Iterable[Pattern]) -> bool:
    """A is strongly L-covered, disjoint from P, and P avoids the boundary of P u A."""
    if not is_simply_connected(P):
        raise ValueError("the inner pattern must be simply connected")
    if not A:
        return False
    return is_strongly_covered(A, L) and is_annulus_shape(A, P)


# ---------------------------------------------------------------------------
# cover preservation


@dataclass
class CoverReport:
    """Images of the cover-set patterns under each substitution and their verdicts."""

    images: dict[str, list[Pattern]]
    failures: list[tuple[str, int]]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_cover_preservation(subs: Sequence[Substitution], L: Iterable[Pattern]) -> CoverReport:
    """Check that the dual image of every pattern of L is L-covered.

    Failures are (substitution name, index into L).
    """
    L = tuple(L)
    images: dict[str, list[Pattern]] = {}
    failures: list[tuple[str, int]] = []
    for k, s in enumerate(subs):
        name = s.name or f"s{k}"
        images[name] = [dual_image_pattern(s, Q) for Q in L]
        for j, img in enumerate(images[name]):
            if not is_covered(img, L):
                failures.append((name, j))
    return CoverReport(images, failures)


def same_up_to_translation(P: Pattern, Q: Pattern) -> bool:
    return P.translation_class() == Q.translation_class()


def contains_translate(P: Pattern, Q: Pattern) -> Vec | None:
    """A vector t with Q + t inside P, or None."""
    if not Q:
        return ORIGIN
    a = Q.sorted()[0]
    for f in P.sorted():
        if f.kind != a.kind:
            continue
        t = vsub(f.pos, a.pos)
        if all(Face(vadd(q.pos, t), q.kind) in P.faces for q in Q.faces):
            return t
    return None


# ---------------------------------------------------------------------------
# Property A


@dataclass(frozen=True)
class DisconnectedPreimage:
    """A disconnected pair f0 u g0 whose images contain a connected pair f u g.

    Stored with f0 at the origin; images lists every connected f u g found.
    """

    preimage: Pattern
    images: tuple[Pattern, ...]


def _pair_key(f0: Face, g0: Face) -> tuple[Face, Face]:
    a, b = sorted((f0, g0))
    t = vsub(ORIGIN, a.pos)
    return a.translate(t), b.translate(t)


def enumerate_disconnected_preimage_pairs(
    s: Substitution, cone: Cone, window: int = 2
) -> list[DisconnectedPreimage]:
    """All translation classes of disconnected f0 u g0 with connected f u g, f in s(f0), g in s(g0).

    f0 u g0 must fit (up to translation) in a generic plane of the cone, as
    the preimage of a pair from a cone plane does.  By translation f0 sits at
    the origin and g0 ranges over the max-norm window around it.
    """
    found: dict[tuple[Face, Face], set[Pattern]] = {}
    offsets = list(itertools.product(range(-window, window + 1), repeat=3))
    for i in (1, 2, 3):
        f0 = Face(ORIGIN, i)
        img_f = dual_image(s, f0)
        for d in offsets:
            for j in (1, 2, 3):
                g0 = Face(d, j)
                if g0 == f0 or faces_edge_adjacent(f0, g0):
                    continue
                img_g = dual_image(s, g0)
                links = [
                    Pattern((f, g))
                    for f in img_f
                    for g in img_g
                    if f != g and faces_edge_adjacent(f, g)
                ]
                if not links:
                    continue
                if not pattern_translate_in_cone_family((f0, g0), cone):
                    continue
                key = _pair_key(f0, g0)
                found.setdefault(key, set()).update(X.translate(vsub(key[0].pos, f0.pos)) for X in links)
    out = [
        DisconnectedPreimage(Pattern(k), tuple(sorted(v, key=lambda X: X.sorted())))
        for k, v in found.items()
    ]
    return sorted(out, key=lambda D: D.preimage.sorted())


def _shares_vertex(f: Face, g: Face) -> bool:
    return bool(set(f.vertices()) & set(g.vertices()))


def _neighbourhood(f: Face) -> list[Face]:
    out = []
    for d in itertools.product((-1, 0, 1), repeat=3):
        for k in (1, 2, 3):
            g = Face(vadd(f.pos, d), k)
            if g != f and _shares_vertex(f, g):
                out.append(g)
    return out


@dataclass
class PropertyACase:
    preimage: tuple[Face, Face]
    members: Pattern
    forced: Pattern
    contradiction: str


def property_a_cases(f0: Face, g0: Face, L: Iterable[Pattern], cone: Cone) -> list[PropertyACase]:
    """Case analysis refuting an L-annulus A of some P with f0 in P and g0 outside A u P.

    In a plane G containing f0 and g0, every face of G sharing a corner with
    f0 lies in P u A (corners of P are interior), and a face sharing a
    corner with g0 cannot lie in P (that corner is on the boundary).  So the
    faces of G touching both are forced into A.  Cases are the exact sets
    of such faces present in G.  Each case is refuted when a forced face, or
    an edge-sharing pair of forced faces, has no L-translate around it that
    avoids f0 and g0 and fits in G.  An empty contradiction string means the
    case could not be refuted.
    """
    L = tuple(L)
    cand = sorted(h for h in _neighbourhood(f0) if h != g0 and _shares_vertex(h, g0))
    cases: list[PropertyACase] = []
    for r in range(len(cand) + 1):
        for S in itertools.combinations(cand, r):
            members = (f0, g0) + S
            excluded = [h for h in cand if h not in S]
            if not translate_configuration_feasible(members, excluded, cone):
                continue
            forced = Pattern(S)
            reason = ""
            targets = [(h,) for h in forced.sorted()]
            targets += [X.sorted() for X in two_face_subpatterns(forced)]
            for X in targets:
                ok = False
                for Y in translates_containing(X, L):
                    if f0 in Y.faces or g0 in Y.faces:
                        continue
                    extra = [h for h in excluded if h not in Y.faces]
                    if any(h in Y.faces for h in excluded):
                        continue
                    if translate_configuration_feasible(set(members) | Y.faces, extra, cone):
                        ok = True
                        break
                if not ok:
                    reason = "no L-pattern around " + " u ".join(str(f) for f in X)
                    break
            cases.append(PropertyACase((f0, g0), Pattern(members), forced, reason))
    return cases


def disconnected_preimage_classes(
    subs: Iterable[Substitution], cone: Cone, window: int = 2
) -> list[Pattern]:
    """Union over subs of the preimage classes found by the enumeration."""
    keys: set[frozenset[Face]] = set()
    for s in subs:
        keys.update(D.preimage.faces for D in enumerate_disconnected_preimage_pairs(s, cone, window))
    return sorted((Pattern(k) for k in keys), key=lambda X: X.sorted())


def property_a_failures(
    pairs: Iterable[Pattern], L: Iterable[Pattern], cone: Cone
) -> list[PropertyACase]:
    """Unrefuted cases over the given two-face preimage classes, both roles of each pair."""
    L = tuple(L)
    bad: list[PropertyACase] = []
    for D in pairs:
        a, b = D.sorted()
        for f0, g0 in ((a, b), (b, a)):
            bad.extend(c for c in property_a_cases(f0, g0, L, cone) if not c.contradiction)
    return bad


def property_a_holds(
    subs: Iterable[Substitution], L: Iterable[Pattern], cone: Cone, window: int = 2
) -> bool:
    return not property_a_failures(disconnected_preimage_classes(subs, cone, window), L, cone)


# ---------------------------------------------------------------------------
# minimal annuli


def faces_on_edge(e) -> list[Face]:
    """The four unit faces having the lattice edge e as a side."""
    p, q = e
    k = next(m for m in range(3) if p[m] != q[m])
    out = []
    for i in range(3):
        if i == k:
            continue
        m = 3 - i - k
        shift = [0, 0, 0]
        shift[m] = -1
        out.append(Face(p, i + 1))
        out.append(Face(vadd(p, shift), i + 1))
    return out


def translates_containing(faces: Sequence[Face], L: Iterable[Pattern]) -> list[Pattern]:
    """All translates of L-representatives that contain every face in faces."""
    a = faces[0]
    out = set()
    for Q in L:
        for q in Q.faces:
            if q.kind != a.kind:
                continue
            t = vsub(a.pos, q.pos)
            Y = Q.translate(t)
            if all(f in Y.faces for f in faces):
                out.add(Y)
    return sorted(out, key=lambda X: X.sorted())


@dataclass
class AnnulusSearch:
    """Depth-first enumeration of the L-annuli of P0 inside a cone's discrete planes.

    Each step repairs one violated requirement, branching over every way the
    repair can happen inside any larger solution; so every inclusion-minimal
    annulus is reached as a leaf.
    """

    P0: Pattern
    L: tuple[Pattern, ...]
    cone: Cone
    window: int
    generic: bool = True
    rel: Callable[[Face, Face], bool] = faces_share_edge
    leaves: set[Pattern] = field(default_factory=set)
    _seen: set[frozenset] = field(default_factory=set)
    _feasible: dict[frozenset, bool] = field(default_factory=dict)

    def in_window(self, f: Face) -> bool:
        return max(abs(c) for c in f.pos) <= self.window

    def feasible(self, faces: frozenset) -> bool:
        hit = self._feasible.get(faces)
        if hit is None:
            hit = pattern_cone_witness(faces, self.cone, self.generic) is not None
            self._feasible[faces] = hit
        return hit

    def run(self) -> list[Pattern]:
        if pattern_cone_witness(self.P0.faces, self.cone, self.generic) is None:
            raise ValueError("initial pattern lies in no plane of the cone")
        self._dfs(frozenset())
        leaves = sorted(self.leaves, key=len)
        minimal: list[Pattern] = []
        for A in leaves:
            if not any(B <= A for B in minimal):
                minimal.append(A)
        return sorted(minimal, key=lambda X: X.sorted())

    def _extend(self, A: frozenset, new: Iterable[Face]) -> None:
        new = frozenset(new) - A
        if not new:
            return
        if any(f in self.P0.faces or not self.in_window(f) for f in new):
            return
        B = A | new
        if B in self._seen:
            return
        if not self.feasible(B | self.P0.faces):
            return
        self._dfs(B)

    def _dfs(self, A: frozenset) -> None:
        if A in self._seen:
            return
        self._seen.add(A)
        if any(B.faces <= A for B in self.leaves):
            return
        whole = Pattern(A | self.P0.faces)
        # 1. every corner of P0 must be interior to P0 u A
        bd = pattern_boundary_edges(whole)
        p0_points = {p for f in self.P0.faces for p in f.vertices()}
        for e in sorted(bd):
            if e[0] in p0_points or e[1] in p0_points:
                for g in faces_on_edge(e):
                    if g not in whole.faces:
                        self._extend(A, (g,))
                return
        Ap = Pattern(A)
        occ = occurrences(Ap, self.L)
        # 2. every edge-sharing pair inside A extends to an occurrence
        for X in two_face_subpatterns(Ap, self.rel):
            if not any(X <= Y for Y in occ):
                for Y in translates_containing(X.sorted(), self.L):
                    self._extend(A, Y.faces)
                return
        # 3. every face of A lies in an occurrence
        covered = {f for Y in occ for f in Y.faces}
        for f in Ap.sorted():
            if f not in covered:
                for Y in translates_containing((f,), self.L):
                    self._extend(A, Y.faces)
                return
        # 4. occurrences link all of A
        comp = _cover_components(Ap, occ)
        roots = sorted(set(comp.values()))
        if len(roots) > 1:
            first = {f for f, r in comp.items() if r == roots[0]}
            cands = set()
            for f in first:
                for Y in translates_containing((f,), self.L):
                    if not Y.faces <= A:
                        cands.add(Y)
            for Y in sorted(cands, key=lambda X: X.sorted()):
                self._extend(A, Y.faces)
            return
        self.leaves.add(Ap)


def pattern_boundary_edges(P: Pattern):
    from .core_geometry import pattern_boundary

    return pattern_boundary(P)


def enumerate_minimal_annuli(P0: Pattern, L: Iterable[Pattern], cone: Cone, window: int = 3) -> list[Pattern]:
    """Inclusion-minimal L-annuli A of P0 with P0 u A inside one discrete plane of the cone."""
    return AnnulusSearch(P0, tuple(L), cone, window).run()


def enumerate_minimal_annulus_seeds(P0: Pattern, L: Iterable[Pattern], cone: Cone, window: int = 3) -> list[Pattern]:
    """The patterns P0 u A for the minimal annuli A."""
    return sorted((P0 | A for A in enumerate_minimal_annuli(P0, L, cone, window)), key=lambda X: X.sorted())
