"""Substitutions on {1,2,3}, incidence matrices, Pisot tests and the dual map E1*.

E1*(s)([x, i]) is the union over all factorizations s(j) = p i q of the
faces [M^-1 (x + P(q)), j], where M is the incidence matrix of s and P the
abelianization.  It is contravariant: E1*(s s') = E1*(s') o E1*(s).
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import sympy

from .core_geometry import Cone, Face, Pattern, Vec, face_in_cone_family, vadd, vsub

Matrix3 = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]
LETTERS = (1, 2, 3)


def abelianization(w: str | Iterable[int]) -> Vec:
    """Letter counts of a word, given as '13331' or as a sequence of letters."""
    counts = [0, 0, 0]
    for a in parse_word(w) if isinstance(w, str) else w:
        counts[a - 1] += 1
    return (counts[0], counts[1], counts[2])


def parse_word(text: str | Sequence[int]) -> tuple[int, ...]:
    """'32' or '3,2' or [3, 2] -> (3, 2)."""
    if isinstance(text, str):
        letters = [c for c in text if not c.isspace() and c != ","]
        word = tuple(int(c) for c in letters)
    else:
        word = tuple(int(c) for c in text)
    if any(a not in LETTERS for a in word):
        raise ValueError(f"word over {{1,2,3}} expected, got {text!r}")
    return word


def mat_mul(A: Matrix3, B: Matrix3) -> Matrix3:
    return tuple(  # type: ignore[return-value]
        tuple(sum(A[r][k] * B[k][c] for k in range(3)) for c in range(3)) for r in range(3)
    )


def mat_vec(A: Sequence[Sequence[int]], x: Sequence) -> tuple:
    return tuple(A[r][0] * x[0] + A[r][1] * x[1] + A[r][2] * x[2] for r in range(3))


def transpose(A: Matrix3) -> Matrix3:
    return tuple(tuple(A[c][r] for c in range(3)) for r in range(3))  # type: ignore[return-value]


def det3(A: Sequence[Sequence[int]]) -> int:
    return (
        A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
        - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
        + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])
    )


def unimodular_inverse(A: Matrix3) -> Matrix3:
    d = det3(A)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    cof = [[0] * 3 for _ in range(3)]
    for r in range(3):
        for c in range(3):
            minor = [[A[i][j] for j in range(3) if j != c] for i in range(3) if i != r]
            cof[r][c] = (-1) ** (r + c) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    # inverse = adjugate / det = transpose(cofactor) / det
    return tuple(tuple(cof[c][r] * d for c in range(3)) for r in range(3))  # type: ignore[return-value]


def char_poly(A: Sequence[Sequence[int]]) -> tuple[int, int, int, int]:
    """Coefficients of det(X I - A), highest degree first."""
    tr = A[0][0] + A[1][1] + A[2][2]
    m2 = (
        A[0][0] * A[1][1] - A[0][1] * A[1][0]
        + A[0][0] * A[2][2] - A[0][2] * A[2][0]
        + A[1][1] * A[2][2] - A[1][2] * A[2][1]
    )
    return (1, -tr, m2, -det3(A))


class Substitution:
    """Non-erasing morphism of {1,2,3}*, stored as its three images."""

    __slots__ = ("images", "name", "_matrix", "_inverse", "_table")

    def __init__(self, images: Mapping[int, Sequence[int]] | Sequence[Sequence[int]], name: str = ""):
        if isinstance(images, Mapping):
            imgs = tuple(parse_word(images[a]) for a in LETTERS)
        else:
            imgs = tuple(parse_word(w) for w in images)
        if len(imgs) != 3 or any(len(w) == 0 for w in imgs):
            raise ValueError("a substitution needs three non-empty images")
        self.images: tuple[tuple[int, ...], ...] = imgs
        self.name = name
        self._matrix: Matrix3 | None = None
        self._inverse: Matrix3 | None = None
        self._table: dict[int, tuple[tuple[Vec, int], ...]] | None = None

    def __call__(self, w: Iterable[int]) -> tuple[int, ...]:
        out: list[int] = []
        for a in w:
            out.extend(self.images[a - 1])
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Substitution) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{''.join(map(str, self.images[a - 1]))}" for a in LETTERS)
        return f"Substitution({body})"

    def to_json(self) -> dict[str, str]:
        return {str(a): "".join(map(str, self.images[a - 1])) for a in LETTERS}

    @classmethod
    def from_json(cls, data: dict | str, name: str = "") -> "Substitution":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({a: data[str(a)] for a in LETTERS}, name)

    @property
    def matrix(self) -> Matrix3:
        """Incidence matrix: column j is the abelianization of the image of j."""
        if self._matrix is None:
            cols = [abelianization(w) for w in self.images]
            self._matrix = tuple(tuple(cols[c][r] for c in range(3)) for r in range(3))  # type: ignore[assignment]
        return self._matrix  # type: ignore[return-value]

    @property
    def inverse_matrix(self) -> Matrix3:
        if self._inverse is None:
            self._inverse = unimodular_inverse(self.matrix)
        return self._inverse

    def dual_table(self) -> dict[int, tuple[tuple[Vec, int], ...]]:
        """For each type i, the (offset, type) pairs with E1*(s)([0,i]) = u [offset, type]."""
        if self._table is None:
            minv = self.inverse_matrix
            table: dict[int, list[tuple[Vec, int]]] = {a: [] for a in LETTERS}
            for j in LETTERS:
                w = self.images[j - 1]
                for k, i in enumerate(w):
                    suffix = abelianization(w[k + 1:])
                    item = (mat_vec(minv, suffix), j)
                    if item not in table[i]:
                        table[i].append(item)
            self._table = {a: tuple(v) for a, v in table.items()}
        return self._table


IDENTITY = Substitution(((1,), (2,), (3,)), "id")


def compose(s1: Substitution, s2: Substitution) -> Substitution:
    """(s1 o s2)(a) = s1(s2(a))."""
    return Substitution(tuple(s1(s2.images[a - 1]) for a in LETTERS))


def compose_all(subs: Sequence[Substitution]) -> Substitution:
    out = IDENTITY
    for s in subs:
        out = compose(out, s)
    return out


def is_unimodular(s: Substitution) -> bool:
    return det3(s.matrix) in (1, -1)


def is_irreducible_pisot(s: Substitution) -> bool:
    """Irreducible characteristic polynomial with a dominant root > 1 and all others inside the unit circle."""
    return is_irreducible_pisot_poly(char_poly(s.matrix))


@lru_cache(maxsize=4096)
def is_irreducible_pisot_poly(coeffs: tuple[int, ...]) -> bool:
    """Exact test for a monic integer cubic.

    An irreducible cubic has no root of modulus one (such a root would be
    +-1 or come with its conjugate 1/z, forcing a rational third root), so
    root counts on real intervals settle everything: with three real roots
    we need one above 1 and two in (-1, 1); with one real root beta and a
    complex pair of modulus squared |p(0)|/beta we need beta > max(1, |p(0)|).
    """
    if len(coeffs) != 4 or coeffs[0] != 1:
        raise ValueError("monic cubic expected")
    x = sympy.Symbol("x")
    p = sympy.Poly(list(coeffs), x)
    if not p.is_irreducible:
        return False
    n_real = p.count_roots()
    above_one = p.count_roots(1, None)
    if n_real == 3:
        return above_one == 1 and p.count_roots(-1, 1) == 2
    c0 = abs(coeffs[3])
    return above_one == 1 and p.count_roots(max(1, c0), None) == 1


def dual_image(s: Substitution, f: Face) -> Pattern:
    if not is_unimodular(s):
        raise ValueError("dual substitution needs a unimodular substitution")
    base = mat_vec(s.inverse_matrix, f.pos)
    return Pattern(Face(vadd(base, off), j) for off, j in s.dual_table()[f.kind])


def dual_image_pattern(s: Substitution, P: Iterable[Face]) -> Pattern:
    if not is_unimodular(s):
        raise ValueError("dual substitution needs a unimodular substitution")
    minv = s.inverse_matrix
    table = s.dual_table()
    out = set()
    for f in P:
        base = mat_vec(minv, f.pos)
        for off, j in table[f.kind]:
            out.add(Face(vadd(base, off), j))
    return Pattern(out)


def dual_iterate(subs: Sequence[Substitution], P: Pattern) -> Pattern:
    """Apply the duals of subs in the order given (first element first)."""
    for s in subs:
        P = dual_image_pattern(s, P)
    return P


def dual_preimages(s: Substitution, f: Face, filter: Cone | None = None) -> frozenset[Face]:
    """All faces g with f in E1*(s)(g), optionally restricted to the cone filter.

    f = [M^-1 y + off, j] for g = [y, i] and (off, j) in the table of i,
    so y = M (x - off) whenever j = type(f).
    """
    if not is_unimodular(s):
        raise ValueError("dual substitution needs a unimodular substitution")
    out = set()
    M = s.matrix
    for i, items in s.dual_table().items():
        for off, j in items:
            if j != f.kind:
                continue
            y = mat_vec(M, vsub(f.pos, off))
            out.add(Face(y, i))
    if filter is not None:
        out = {g for g in out if face_in_cone_family(g, filter)}
    return frozenset(out)


def dual_max_displacement(s: Substitution) -> int:
    """Largest max-norm of an offset in the dual table (used as a window margin)."""
    return max((max(abs(c) for c in off) for items in s.dual_table().values() for off, _ in items), default=0)


def is_primitive(M: Sequence[Sequence[int]]) -> bool:
    """Some power of the nonnegative matrix is entrywise positive (Wielandt bound)."""
    if any(c < 0 for row in M for c in row):
        return False
    n = len(M)
    P = [list(r) for r in M]
    for _ in range((n - 1) ** 2 + 1):
        if all(c > 0 for row in P for c in row):
            return True
        P = [[sum(P[r][k] * M[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
    return all(c > 0 for row in P for c in row)


def rational(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)
