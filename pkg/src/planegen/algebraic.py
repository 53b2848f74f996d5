"""Exact arithmetic in a real number field Q(beta).

An element is a polynomial in beta with rational coefficients, reduced
modulo the minimal polynomial of beta.  The real embedding is fixed by a
rational isolating interval for beta; signs are decided by refining that
interval until interval evaluation excludes zero.  Since the minimal
polynomial is irreducible, a nonzero residue never vanishes at beta, so
refinement always terminates.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Sequence

import sympy

_X = sympy.Symbol("x")


class NumberField:
    """Q[x]/(p) embedded in R by choosing the real root of p in (lo, hi)."""

    def __init__(self, poly: Sequence[int | Fraction], lo: Fraction, hi: Fraction):
        # poly is given highest degree first and must be monic after scaling
        coeffs = [Fraction(c) for c in poly]
        if coeffs[0] == 0:
            raise ValueError("leading coefficient is zero")
        lead = coeffs[0]
        self.poly = tuple(c / lead for c in coeffs)
        self.degree = len(self.poly) - 1
        if self.degree < 1:
            raise ValueError("polynomial must have positive degree")
        sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in self.poly], _X)
        if not sp.is_irreducible:
            raise ValueError("polynomial is reducible over Q")
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        if self._peval(self.lo) * self._peval(self.hi) > 0 and self.lo != self.hi:
            raise ValueError("interval does not isolate a sign change")
        # reduction table: x^(d+k) expressed in the basis 1, x, ..., x^(d-1)
        self._powers = self._reduction_table()

    @classmethod
    def from_poly_string(cls, text: str, approx: float | None = None) -> "NumberField":
        """Parse e.g. 'x^3-3x^2-x+1'; pick the real root nearest approx, else the largest."""
        expr = sympy.sympify(_normalize_poly_text(text), locals={"x": _X})
        sp = sympy.Poly(expr, _X)
        if not sp.is_irreducible:
            raise ValueError("polynomial is reducible over Q")
        intervals = sp.intervals()
        if not intervals:
            raise ValueError("polynomial has no real root")
        if approx is None:
            (lo, hi), _ = intervals[-1]
        else:
            (lo, hi), _ = min(intervals, key=lambda it: abs((it[0][0] + it[0][1]) / 2 - sympy.Rational(approx)))
        coeffs = [Fraction(int(c.p), int(c.q)) for c in sp.all_coeffs()]
        return cls(coeffs, Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q)))

    def _peval(self, t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in self.poly:
            acc = acc * t + c
        return acc

    def _reduction_table(self) -> list[tuple[Fraction, ...]]:
        d = self.degree
        # x^d = -(p_1 x^(d-1) + ... + p_d)
        top = tuple(-self.poly[d - k] for k in range(d))  # coefficients of x^0..x^(d-1)
        table = [top]
        for _ in range(d - 2):
            prev = table[-1]
            shifted = (Fraction(0),) + prev[:-1]
            carry = prev[-1]
            table.append(tuple(s + carry * t for s, t in zip(shifted, top)))
        return table

    def reduce(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        out = [Fraction(0)] * d
        for k, c in enumerate(coeffs):
            if c == 0:
                continue
            if k < d:
                out[k] += c
            else:
                row = self._powers[k - d]
                for m in range(d):
                    out[m] += c * row[m]
        return tuple(out)

    def refine(self) -> None:
        mid = (self.lo + self.hi) / 2
        pm = self._peval(mid)
        if pm == 0:
            self.lo = self.hi = mid
        elif (self._peval(self.lo) < 0) == (pm < 0):
            self.lo = mid
        else:
            self.hi = mid

    def element(self, coeffs: Sequence[int | Fraction]) -> "AlgebraicNumber":
        """The element sum coeffs[k] * beta^k."""
        return AlgebraicNumber(self, self.reduce([Fraction(c) for c in coeffs]))

    def generator(self) -> "AlgebraicNumber":
        return self.element([0, 1])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NumberField) and self.poly == other.poly and self._same_root(other)

    def _same_root(self, other: "NumberField") -> bool:
        return max(self.lo, other.lo) <= min(self.hi, other.hi)

    def __hash__(self) -> int:
        return hash(self.poly)

    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)


def _normalize_poly_text(text: str) -> str:
    text = text.replace("^", "**").replace(" ", "")
    # insert explicit products like 3x -> 3*x
    return re.sub(r"(\d)(x)", r"\1*\2", text)


def _interval_mul(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(prods), max(prods)


class AlgebraicNumber:
    """Element of a NumberField; supports ring operations and exact comparison."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    def _lift(self, other: object) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "AlgebraicNumber":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other: object) -> "AlgebraicNumber":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "AlgebraicNumber":
        return (-self) + other

    def __mul__(self, other: object) -> "AlgebraicNumber":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        return AlgebraicNumber(self.field, self.field.reduce(prod))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _interval(self) -> tuple[Fraction, Fraction]:
        lo, hi = self.field.lo, self.field.hi
        acc = (Fraction(0), Fraction(0))
        for c in reversed(self.coeffs):
            acc = _interval_mul(acc, (lo, hi))
            acc = (acc[0] + c, acc[1] + c)
        return acc

    def sign(self) -> int:
        if self.is_zero():
            return 0
        while True:
            lo, hi = self._interval()
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.field.refine()

    def _cmp(self, other: object) -> int:
        o = self._lift(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other: object) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: object) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: object) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: object) -> bool:
        return self._cmp(other) >= 0

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __float__(self) -> float:
        while True:
            lo, hi = self._interval()
            if hi - lo < Fraction(1, 10**18) * max(1, abs(lo)):
                return float((lo + hi) / 2)
            self.field.refine()

    def floor(self) -> int:
        guess = math.floor(float(self))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def __repr__(self) -> str:
        terms = [f"{c}*b^{k}" for k, c in enumerate(self.coeffs) if c]
        return "(" + " + ".join(terms or ["0"]) + ")"


def parse_algebraic_vector(text: str) -> tuple[AlgebraicNumber, ...]:
    """Parse 'poly=x^3-3x^2-x+1; root~3.21; v=(1,x,x^2)' into exact field elements.

    The root entry is optional (the largest real root is used when absent);
    both '~' and '≈' and '=' are accepted as separators for it.
    """
    parts = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = re.match(r"(\w+)\s*(?:=|≈|~)\s*(.*)$", chunk)
        if not m:
            raise ValueError(f"cannot parse {chunk!r}")
        parts[m.group(1)] = m.group(2).strip()
    if "poly" not in parts or "v" not in parts:
        raise ValueError("expected 'poly=...' and 'v=(...)'")
    approx = float(parts["root"]) if "root" in parts else None
    field = NumberField.from_poly_string(parts["poly"], approx)
    body = parts["v"].strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError("vector must be parenthesized")
    out = []
    for comp in body[1:-1].split(","):
        expr = sympy.Poly(sympy.sympify(_normalize_poly_text(comp), locals={"x": _X}), _X)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(expr.all_coeffs())]
        out.append(field.element(coeffs))
    return tuple(out)
