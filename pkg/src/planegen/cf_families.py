"""Brun and Jacobi-Perron algorithms, their substitutions and expansions.

Normal vectors may hold ints, Fractions or exact algebraic numbers; only
ring operations, comparisons and floor are used.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .substitutions import (
    Substitution,
    char_poly,
    compose,
    compose_all,
    is_irreducible_pisot,
    is_primitive,
    mat_vec,
    transpose,
)

# ---------------------------------------------------------------------------
# substitutions

_BRUN = {
    1: Substitution(((1,), (2,), (3, 2)), "brun1"),
    2: Substitution(((1,), (3,), (2, 3)), "brun2"),
    3: Substitution(((2,), (3,), (1, 3)), "brun3"),
}
_TAU = {
    1: Substitution(((1,), (2, 1), (3,)), "tau1"),
    2: Substitution(((1,), (2,), (3, 1)), "tau2"),
    3: Substitution(((3,), (1,), (2,)), "tau3"),
}


def brun_substitution(i: int) -> Substitution:
    if i not in _BRUN:
        raise ValueError("Brun index must be 1, 2 or 3")
    return _BRUN[i]


def tau(i: int) -> Substitution:
    if i not in _TAU:
        raise ValueError("tau index must be 1, 2 or 3")
    return _TAU[i]


_THETA = {
    1: _TAU[2],
    2: compose(_TAU[1], _TAU[2]),
    3: compose(_TAU[3], _TAU[2]),
    4: compose(_TAU[3], compose(_TAU[1], _TAU[2])),
}
for _k, _s in _THETA.items():
    _s.name = f"theta{_k}"


def theta(i: int) -> Substitution:
    if i not in _THETA:
        raise ValueError("theta index must be 1, 2, 3 or 4")
    return _THETA[i]


def jp_substitution(a: int, b: int) -> Substitution:
    """1 -> 3, 2 -> 1 3^a, 3 -> 2 3^b."""
    if a < 0 or b < 0:
        raise ValueError("Jacobi-Perron digits must be nonnegative")
    return Substitution(((3,), (1,) + (3,) * a, (2,) + (3,) * b), f"jp:{a},{b}")


def substitution_by_name(name: str) -> Substitution:
    """Registry: brun1..3, tau1..3, theta1..4, jp:a,b."""
    name = name.strip()
    if name.startswith("jp:"):
        a, b = (int(t) for t in name[3:].split(","))
        return jp_substitution(a, b)
    for prefix, fn in (("brun", brun_substitution), ("theta", theta), ("tau", tau)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return fn(int(name[len(prefix):]))
    raise ValueError(f"unknown substitution {name!r}")


# ---------------------------------------------------------------------------
# Brun


def brun_step(v: Sequence) -> tuple[int, tuple]:
    """One step of the ordered Brun map; returns (index, new vector).

    Case 1: v1 <= v2 <= v3 - v2, case 2: v1 <= v3 - v2 < v2, otherwise case 3.
    In all cases v = M_index v' with M_i the transposed incidence matrix of brun_i.
    """
    v1, v2, v3 = v
    if not (0 <= v1 and v1 <= v2 and v2 <= v3):
        raise ValueError("Brun step needs 0 <= v1 <= v2 <= v3")
    d = v3 - v2
    if v2 <= d:
        return 1, (v1, v2, d)
    if v1 <= d:
        return 2, (v1, d, v2)
    return 3, (d, v1, v2)


def brun_matrix(i: int):
    return transpose(brun_substitution(i).matrix)


class TruncatedExpansion(ValueError):
    """The expansion reached a vector with a zero coordinate."""

    def __init__(self, digits, message: str):
        super().__init__(message)
        self.digits = digits


def brun_expansion(v: Sequence, n: int) -> tuple[int, ...]:
    digits: list[int] = []
    w = tuple(v)
    for _ in range(n):
        if not w[0] > 0:
            raise TruncatedExpansion(tuple(digits), "zero coordinate reached")
        i, w = brun_step(w)
        digits.append(i)
    return tuple(digits)


def brun_admissible(seq: Sequence[int], infinite_period: bool = False) -> bool:
    """Finite products need a 3; a periodic infinite sequence needs a 3 in its period."""
    if any(i not in (1, 2, 3) for i in seq):
        return False
    return 3 in seq


# ---------------------------------------------------------------------------
# Jacobi-Perron


def _floor_ratio(num, den) -> int:
    """floor(num / den) for den > 0, using comparisons only."""
    if isinstance(num, (int, Fraction)) and isinstance(den, (int, Fraction)):
        return int(Fraction(num) // Fraction(den))
    guess = int(float(num) // float(den))
    while num < guess * den:
        guess -= 1
    while num >= (guess + 1) * den:
        guess += 1
    return guess


def jp_step(v: Sequence) -> tuple[tuple[int, int], tuple]:
    """v -> (v2 - a v1, v3 - b v1, v1) with a = floor(v2/v1), b = floor(v3/v1)."""
    v1, v2, v3 = v
    if not (v1 > 0 and v2 >= 0 and v3 >= 0):
        raise ValueError("Jacobi-Perron step needs v1 > 0 and v2, v3 >= 0")
    a = _floor_ratio(v2, v1)
    b = _floor_ratio(v3, v1)
    return (a, b), (v2 - a * v1, v3 - b * v1, v1)


def jp_matrix(a: int, b: int):
    return transpose(jp_substitution(a, b).matrix)


def jp_expansion(v: Sequence, n: int) -> tuple[tuple[int, int], ...]:
    digits: list[tuple[int, int]] = []
    w = tuple(v)
    for _ in range(n):
        if not w[0] > 0:
            raise TruncatedExpansion(tuple(digits), "zero coordinate reached")
        d, w = jp_step(w)
        digits.append(d)
    return tuple(digits)


def jp_admissible(seq: Sequence[tuple[int, int]], periodic: bool = False) -> bool:
    """0 <= a <= b, b != 0 and a = b forces the next a to be nonzero.

    With periodic=True the sequence is read as its infinite repetition, so
    the last digit is followed by the first.
    """
    seq = list(seq)
    if not seq:
        return False
    for k, (a, b) in enumerate(seq):
        if not (0 <= a <= b and b != 0):
            return False
        if a == b:
            if k + 1 < len(seq):
                nxt = seq[k + 1][0]
            elif periodic:
                nxt = seq[0][0]
            else:
                continue
            if nxt == 0:
                return False
    return True


def jp_additive_decompose(a: int, b: int) -> tuple[int, ...]:
    """Theta indices whose product is jp(a, b)."""
    if not (0 <= a <= b and b != 0):
        raise ValueError("digits must satisfy 0 <= a <= b, b != 0")
    if a == 0:
        return (3,) + (1,) * (b - 1)
    if a < b:
        return (3,) + (1,) * (b - a - 1) + (2,) * a
    return (4,) + (2,) * (a - 1)


def jp_additive_expansion(seq: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    out: list[int] = []
    for a, b in seq:
        out.extend(jp_additive_decompose(a, b))
    return tuple(out)


def theta_product(word: Sequence[int]) -> Substitution:
    return compose_all([theta(i) for i in word])


# ---------------------------------------------------------------------------
# products


def brun_product(word: Sequence[int]) -> Substitution:
    return compose_all([brun_substitution(i) for i in word])


def jp_product(seq: Sequence[tuple[int, int]]) -> Substitution:
    return compose_all([jp_substitution(a, b) for a, b in seq])


def reconstruct(matrices: Sequence, tail: Sequence) -> tuple:
    """M_1 ... M_n tail."""
    w = tuple(tail)
    for M in reversed(matrices):
        w = mat_vec(M, w)
    return w


def cubic_field_substitution(c1: int, c2: int) -> Substitution:
    """jp(0,1) jp(0,1) jp(c1-3, c2-c1), whose matrix has char poly X^3 - c2 X^2 + c1 X - 1."""
    if c1 < 3:
        raise ValueError("c1 must be at least 3")
    if c2 < 2 * c1 - 2:
        raise ValueError("c2 must be at least 2 c1 - 2")
    s = jp_product([(0, 1), (0, 1), (c1 - 3, c2 - c1)])
    if char_poly(s.matrix) != (1, -c2, c1, -1):
        raise ArithmeticError("characteristic polynomial check failed")
    return s


def product_is_pisot(word: Sequence, family: str) -> bool:
    if family == "brun":
        return is_irreducible_pisot(brun_product(word))
    return is_irreducible_pisot(jp_product(word))


__all__ = [
    "brun_substitution",
    "tau",
    "theta",
    "jp_substitution",
    "substitution_by_name",
    "brun_step",
    "brun_matrix",
    "brun_expansion",
    "brun_admissible",
    "jp_step",
    "jp_matrix",
    "jp_expansion",
    "jp_admissible",
    "jp_additive_decompose",
    "jp_additive_expansion",
    "theta_product",
    "brun_product",
    "jp_product",
    "reconstruct",
    "cubic_field_substitution",
    "product_is_pisot",
    "is_primitive",
    "TruncatedExpansion",
]
