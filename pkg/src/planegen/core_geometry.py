"""Faces, patterns, discrete planes, adjacency, boundaries and cones.

A face [x, i] is the unit square x + {s e_j + t e_k : 0 <= s, t <= 1}
where {j, k} = {1, 2, 3} minus {i}.  Everything here is exact: integer
lattice geometry for the squares, rational (or exact algebraic) arithmetic
for normal vectors, and an exact rational feasibility test for cones.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

Vec = tuple[int, int, int]
Edge = tuple[Vec, Vec]

E = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
ORIGIN: Vec = (0, 0, 0)


def vadd(a: Sequence[int], b: Sequence[int]) -> Vec:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def vsub(a: Sequence[int], b: Sequence[int]) -> Vec:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def vneg(a: Sequence[int]) -> Vec:
    return (-a[0], -a[1], -a[2])


def dot(a: Sequence, b: Sequence):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


class Face(NamedTuple):
    """Pointed unit face [pos, kind]; tuples order lexicographically on (pos, kind)."""

    pos: Vec
    kind: int

    def translate(self, t: Sequence[int]) -> "Face":
        return Face(vadd(self.pos, t), self.kind)

    def vertices(self) -> tuple[Vec, Vec, Vec, Vec]:
        """Corners in cyclic order."""
        a, b = (E[k] for k in range(3) if k != self.kind - 1)
        x = self.pos
        return (x, vadd(x, a), vadd(vadd(x, a), b), vadd(x, b))

    def edges(self) -> tuple[Edge, ...]:
        v = self.vertices()
        return tuple(_edge(v[k], v[(k + 1) % 4]) for k in range(4))

    def __str__(self) -> str:
        return f"[({self.pos[0]},{self.pos[1]},{self.pos[2]}),{self.kind}]"


def face(pos: Sequence[int], kind: int) -> Face:
    if kind not in (1, 2, 3):
        raise ValueError(f"face type must be 1, 2 or 3, got {kind}")
    return Face((int(pos[0]), int(pos[1]), int(pos[2])), kind)


def _edge(p: Vec, q: Vec) -> Edge:
    return (p, q) if p <= q else (q, p)


class Pattern:
    """Finite set of faces, iterated in canonical sorted order."""

    __slots__ = ("faces", "_sorted")

    def __init__(self, faces: Iterable[Face] = ()):
        self.faces = frozenset(faces)
        self._sorted: tuple[Face, ...] | None = None

    def sorted(self) -> tuple[Face, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.faces))
        return self._sorted

    def __iter__(self) -> Iterator[Face]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.faces)

    def __contains__(self, f: object) -> bool:
        return f in self.faces

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Pattern) and self.faces == other.faces

    def __hash__(self) -> int:
        return hash(self.faces)

    def __or__(self, other: "Pattern") -> "Pattern":
        return Pattern(self.faces | other.faces)

    def __and__(self, other: "Pattern") -> "Pattern":
        return Pattern(self.faces & other.faces)

    def __sub__(self, other: "Pattern") -> "Pattern":
        return Pattern(self.faces - other.faces)

    def __le__(self, other: "Pattern") -> bool:
        return self.faces <= other.faces

    def __lt__(self, other: "Pattern") -> bool:
        return self.faces < other.faces

    def __bool__(self) -> bool:
        return bool(self.faces)

    def __repr__(self) -> str:
        return "Pattern{" + " ".join(str(f) for f in self) + "}"

    def translate(self, t: Sequence[int]) -> "Pattern":
        return Pattern(f.translate(t) for f in self.faces)

    def normalized(self) -> tuple["Pattern", Vec]:
        """Translate so the smallest face sits at the origin; returns (pattern, shift applied)."""
        if not self.faces:
            return self, ORIGIN
        shift = vneg(self.sorted()[0].pos)
        return self.translate(shift), shift

    def translation_class(self) -> frozenset[Face]:
        """Hashable key identifying the pattern up to translation."""
        return self.normalized()[0].faces

    def to_json(self) -> dict:
        return {"faces": [{"x": list(f.pos), "t": f.kind} for f in self]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Pattern":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(face(item["x"], item["t"]) for item in data["faces"])


def pattern(*items: tuple[Sequence[int], int]) -> Pattern:
    """Shorthand: pattern(((0,0,0),1), ((1,0,0),3))."""
    return Pattern(face(x, t) for x, t in items)


U = pattern((ORIGIN, 1), (ORIGIN, 2), (ORIGIN, 3))


# ---------------------------------------------------------------------------
# discrete planes


def _check_positive(v: Sequence) -> None:
    if len(v) != 3 or not all(c > 0 for c in v):
        raise ValueError("normal vector must have three strictly positive entries")


def plane_contains(v: Sequence, f: Face) -> bool:
    """0 <= <x, v> < v_i, evaluated with the exact arithmetic of v's entries."""
    _check_positive(v)
    s = dot(f.pos, v)
    return 0 <= s and s < v[f.kind - 1]


def plane_patch(v: Sequence, window: int) -> Pattern:
    """All faces of the discrete plane with max-norm of position at most window."""
    if window < 0:
        raise ValueError("window must be nonnegative")
    _check_positive(v)
    r = range(-window, window + 1)
    out = []
    for x in itertools.product(r, r, r):
        s = dot(x, v)
        if s < 0:
            continue
        for i in (1, 2, 3):
            if s < v[i - 1]:
                out.append(Face(x, i))
    return Pattern(out)


# ---------------------------------------------------------------------------
# adjacency

_V_HALF = {
    (1, 1): [(0, 1, 0), (0, 0, 1), (0, 1, -1), (0, 1, 1)],
    (2, 2): [(1, 0, 0), (0, 0, 1), (1, 0, -1), (1, 0, 1)],
    (3, 3): [(1, 0, 0), (0, 1, 0), (1, -1, 0), (1, 1, 0)],
}
_V_TABLE: dict[tuple[int, int], frozenset[Vec]] = {
    key: frozenset(vals + [vneg(d) for d in vals]) for key, vals in _V_HALF.items()
}
_V_TABLE[(1, 2)] = frozenset(
    [(0, 0, 0), (-1, 1, 0), (0, 0, 1), (0, 0, -1), (0, 1, -1), (-1, 1, -1), (-1, 1, 1), (-1, 0, 1)]
)
_V_TABLE[(1, 3)] = frozenset(
    [(0, 0, 0), (-1, 0, 1), (0, 1, 0), (0, -1, 0), (-1, 1, 0), (-1, 1, 1), (-1, -1, 1), (0, -1, 1)]
)
_V_TABLE[(2, 3)] = frozenset(
    [(0, 0, 0), (0, -1, 1), (1, 0, 0), (-1, 0, 0), (-1, 0, 1), (-1, -1, 1), (1, -1, 1), (1, -1, 0)]
)
for (_i, _j) in [(1, 2), (1, 3), (2, 3)]:
    _V_TABLE[(_j, _i)] = frozenset(vneg(d) for d in _V_TABLE[(_i, _j)])


def adjacency_offsets(i: int, j: int) -> frozenset[Vec]:
    """Offsets d such that [0,i] and [d,j] form a connected two-face pattern of some discrete plane."""
    return _V_TABLE[(i, j)]


def faces_edge_adjacent(f: Face, g: Face) -> bool:
    """Table-driven connectivity of the two-face pattern f u g.

    The offset tables characterize the pairs of distinct faces that can
    coexist in one discrete plane and whose closed squares meet (in an edge
    or in a single corner).
    """
    return vsub(g.pos, f.pos) in _V_TABLE[(f.kind, g.kind)]


def faces_share_edge(f: Face, g: Face) -> bool:
    """Geometric edge sharing of the two unit squares."""
    if f == g:
        return False
    return bool(set(f.edges()) & set(g.edges()))


def faces_touch(f: Face, g: Face) -> bool:
    """The closed unit squares have a common point (always a lattice corner)."""
    if f == g:
        return False
    return bool(set(f.vertices()) & set(g.vertices()))


def _neighbours(P: Pattern, rel) -> dict[Face, list[Face]]:
    faces = P.sorted()
    nb: dict[Face, list[Face]] = {f: [] for f in faces}
    by_vertex: dict[Vec, list[Face]] = {}
    for f in faces:
        for p in f.vertices():
            by_vertex.setdefault(p, []).append(f)
    for f in faces:
        cand = {g for p in f.vertices() for g in by_vertex[p] if g != f}
        nb[f] = sorted(g for g in cand if rel(f, g))
    return nb


def components(P: Pattern, rel=faces_edge_adjacent) -> list[Pattern]:
    """Connected components under the closure of rel, sorted by smallest face."""
    nb = _neighbours(P, rel)
    seen: set[Face] = set()
    out = []
    for f in P.sorted():
        if f in seen:
            continue
        comp = {f}
        queue = deque([f])
        while queue:
            h = queue.popleft()
            for g in nb[h]:
                if g not in comp:
                    comp.add(g)
                    queue.append(g)
        seen |= comp
        out.append(Pattern(comp))
    return out


def edge_connected_components(P: Pattern) -> list[Pattern]:
    """Partition of P under the closure of faces_edge_adjacent."""
    return components(P, faces_edge_adjacent)


def is_connected(P: Pattern, rel=faces_edge_adjacent) -> bool:
    return len(components(P, rel)) <= 1


# ---------------------------------------------------------------------------
# boundary, annulus shape, radius


def pattern_boundary(P: Pattern) -> frozenset[Edge]:
    """Unit edges belonging to exactly one face of P."""
    count: dict[Edge, int] = {}
    for f in P.faces:
        for e in f.edges():
            count[e] = count.get(e, 0) + 1
    return frozenset(e for e, c in count.items() if c == 1)


def is_annulus_shape(A: Pattern, P: Pattern) -> bool:
    """A and P share no face and no point of P lies on the boundary of P u A.

    A lattice edge meets a closed unit square only at shared corners or
    along a shared side, so checking corners of P suffices.
    """
    if A.faces & P.faces:
        return False
    if not A:
        return False if P else True
    bd = pattern_boundary(P | A)
    bd_points = {p for e in bd for p in e}
    return not any(p in bd_points for f in P.faces for p in f.vertices())


def combinatorial_radius(P: Pattern) -> int:
    """Length of the shortest face chain from U to a face touching the boundary.

    Chains move between faces sharing an edge; the chain starting and ending
    at a single face of U has length 1.
    """
    if not U <= P:
        raise ValueError("pattern must contain U")
    bd = pattern_boundary(P)
    nb = _neighbours(P, faces_share_edge)
    dist = {f: 1 for f in U}
    queue = deque(U.sorted())
    while queue:
        f = queue.popleft()
        if any(e in bd for e in f.edges()):
            return dist[f]
        for g in nb[f]:
            if g not in dist:
                dist[g] = dist[f] + 1
                queue.append(g)
    raise AssertionError("finite pattern without boundary")


def is_simply_connected(P: Pattern) -> bool:
    """Connected with Euler characteristic 1 on the square complex.

    Faces of a discrete plane project injectively onto the antidiagonal
    plane, so the square complex is a planar 2-complex and V - E + F = 1
    together with connectedness rules out holes.
    """
    if not P:
        return False
    if not is_connected(P, faces_touch):
        return False
    verts = {p for f in P.faces for p in f.vertices()}
    edges = {e for f in P.faces for e in f.edges()}
    return len(verts) - len(edges) + len(P) == 1


# ---------------------------------------------------------------------------
# cones and exact strict feasibility


class Cone:
    """Open polyhedral cone {v : a.v > 0 for every row a}, always within v > 0."""

    def __init__(self, rows: Iterable[Sequence[int]], name: str = ""):
        self.rows = tuple(tuple(int(c) for c in r) for r in rows)
        if any(len(r) != 3 for r in self.rows):
            raise ValueError("cone rows must have three entries")
        self.name = name
        if strict_feasible_point(self.rows, ()) is None:
            raise ValueError("empty cone")

    def __repr__(self) -> str:
        return f"Cone({self.name or list(self.rows)})"

    def contains(self, v: Sequence) -> bool:
        return all(c > 0 for c in v) and all(dot(r, v) > 0 for r in self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, data: list | str, name: str = "") -> "Cone":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data, name)


def face_constraints(f: Face, generic: bool = False) -> tuple[tuple[Vec, bool], ...]:
    """Homogeneous constraints (row, strict) on v expressing f in the plane of v.

    With generic=True the plane is required to avoid every lattice point
    other than the origin (as for totally irrational v), which makes
    <x, v> >= 0 strict whenever x != 0.
    """
    ei = E[f.kind - 1]
    return ((f.pos, generic and f.pos != ORIGIN), (vsub(ei, f.pos), True))


def strict_feasible_point(
    strict_rows: Iterable[Sequence[int]],
    nonstrict_rows: Iterable[Sequence[int]],
) -> tuple[Fraction, Fraction, Fraction] | None:
    """A rational v > 0 with r.v > 0 for strict rows and r.v >= 0 otherwise, or None.

    Restricting to v1 + v2 + v3 = 1 turns the homogeneous system into
    half-planes in the (v1, v2) triangle.  The closed polygon is clipped
    exactly; the centroid of its vertices lies in its relative interior, and
    a point of the relative interior satisfies every constraint strictly
    unless that constraint vanishes on the whole polygon.  So the system is
    feasible iff the centroid satisfies it.
    """
    strict = [tuple(r) for r in strict_rows] + [E[0], E[1], E[2]]
    nonstrict = [tuple(r) for r in nonstrict_rows]
    poly = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    for r in strict + nonstrict:
        # r.v with v3 = 1 - v1 - v2 gives a*v1 + b*v2 + c >= 0
        a, b, c = r[0] - r[2], r[1] - r[2], r[2]
        poly = _clip(poly, a, b, c)
        if not poly:
            return None
    n = len(poly)
    cx = sum(p[0] for p in poly) / n
    cy = sum(p[1] for p in poly) / n
    v = (cx, cy, 1 - cx - cy)
    if all(dot(r, v) > 0 for r in strict) and all(dot(r, v) >= 0 for r in nonstrict):
        return v
    return None


def _clip(poly, a, b, c):
    def val(p):
        return a * p[0] + b * p[1] + c

    out = []
    n = len(poly)
    for k in range(n):
        p, q = poly[k], poly[(k + 1) % n]
        vp, vq = val(p), val(q)
        if vp >= 0:
            out.append(p)
        if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    dedup = []
    for p in out:
        if p not in dedup:
            dedup.append(p)
    return dedup


def pattern_cone_witness(
    P: Iterable[Face], cone: Cone, generic: bool = False
) -> tuple[Fraction, Fraction, Fraction] | None:
    """A rational normal vector in the cone whose discrete plane contains every face of P.

    With generic=True the answer certifies an open set of such vectors, so
    that P also lies in the planes of totally irrational vectors of the cone.
    """
    strict: list[Sequence[int]] = list(cone.rows)
    nonstrict: list[Sequence[int]] = []
    for f in P:
        for row, is_strict in face_constraints(f, generic):
            (strict if is_strict else nonstrict).append(row)
    return strict_feasible_point(strict, nonstrict)


def face_in_cone_family(f: Face, c: Cone, generic: bool = False) -> bool:
    """Whether f lies in some discrete plane whose normal vector is in the cone."""
    return pattern_cone_witness((f,), c, generic) is not None


def pattern_in_cone_family(P: Iterable[Face], c: Cone, generic: bool = False) -> bool:
    return pattern_cone_witness(P, c, generic) is not None


def translate_configuration_feasible(
    members: Iterable[Face], excluded: Iterable[Face], c: Cone
) -> bool:
    """Whether one translate of a cone plane contains all members and none of excluded.

    The translate is the free offset s = <t, v>.  Each member f gives
    -<x_f, v> <= s < v_(type f) - <x_f, v>; an excluded face h sits either
    below (s < -<x_h, v>) or above (s >= v_(type h) - <x_h, v>), and every
    choice of sides is tried.  Eliminating s leaves strict linear rows in v
    (strict because the planes are generic).
    """
    members = list(members)
    excluded = list(excluded)
    if excluded and not translate_configuration_feasible(members, (), c):
        return False
    lower = [vneg(f.pos) for f in members]
    upper = [vsub(E[f.kind - 1], f.pos) for f in members]
    for sides in itertools.product((False, True), repeat=len(excluded)):
        lo, up = list(lower), list(upper)
        for h, above in zip(excluded, sides):
            if above:
                lo.append(vsub(E[h.kind - 1], h.pos))
            else:
                up.append(vneg(h.pos))
        rows = list(c.rows) + [vsub(u, l) for u in up for l in lo]
        if strict_feasible_point(rows, ()) is not None:
            return True
    return False


def pattern_translate_in_cone_family(P: Iterable[Face], c: Cone) -> bool:
    """Whether some translate of P lies in a discrete plane with normal vector in the cone."""
    return translate_configuration_feasible(P, (), c)


BRUN_CONE = Cone([(1, 0, 0), (-1, 1, 0), (0, -1, 1)], "brun")
JP_CONE = Cone([(1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)], "jp")
