"""Rauzy fractal approximations, SVG rendering and topological classification.

Floating point is used here only for pictures; every yes/no answer is
computed exactly on patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
import sympy

from .core_geometry import U, Face, Pattern, combinatorial_radius, edge_connected_components
from .substitutions import (
    Substitution,
    char_poly,
    dual_image_pattern,
    is_irreducible_pisot,
    is_irreducible_pisot_poly,
)

Point = tuple[float, float]


# ---------------------------------------------------------------------------
# projection


@dataclass(frozen=True)
class ContractingProjection:
    """Projection along the expanding eigenvector onto the contracting plane of M.

    matrix is 2x3 and gives coordinates in the orthonormal basis obtained
    from the projections of e1 and e2.
    """

    eigenvalue: float
    expanding: np.ndarray
    left: np.ndarray
    basis: np.ndarray
    matrix: np.ndarray

    def project3(self, x) -> np.ndarray:
        """The projection as a vector of R^3 (lying in the contracting plane)."""
        x = np.asarray(x, dtype=float)
        return x - (self.left @ x) / (self.left @ self.expanding) * self.expanding

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=float)


def dominant_root(M) -> float:
    """Largest real root of det(X I - M): isolated exactly, then polished by Newton steps."""
    coeffs = char_poly(M)
    x = sympy.Symbol("x")
    p = sympy.Poly(list(coeffs), x)
    lo, hi = p.intervals(eps=sympy.Rational(1, 10**6))[-1][0]
    r = float((lo + hi) / 2)
    c = [float(a) for a in coeffs]
    for _ in range(8):
        val = ((c[0] * r + c[1]) * r + c[2]) * r + c[3]
        der = (3 * c[0] * r + 2 * c[1]) * r + c[2]
        if der == 0:
            break
        r -= val / der
    return r


def _null_vector(A: np.ndarray) -> np.ndarray:
    _, _, vt = np.linalg.svd(A)
    v = vt[-1]
    if v.sum() < 0:
        v = -v
    return v / np.linalg.norm(v)


def contracting_projection(M) -> ContractingProjection:
    """Projection for an irreducible Pisot incidence matrix M."""
    if not is_irreducible_pisot_poly(char_poly(M)):
        raise ValueError("matrix is not irreducible Pisot")
    A = np.array(M, dtype=float)
    lam = dominant_root(M)
    u = _null_vector(A - lam * np.eye(3))
    w = _null_vector(A.T - lam * np.eye(3))
    proj = ContractingProjection(lam, u, w, np.zeros((2, 3)), np.zeros((2, 3)))
    b1 = proj.project3((1, 0, 0))
    b1 = b1 / np.linalg.norm(b1)
    b2 = proj.project3((0, 1, 0))
    b2 = b2 - (b2 @ b1) * b1
    b2 = b2 / np.linalg.norm(b2)
    basis = np.vstack([b1, b2])
    P = np.column_stack([basis @ proj.project3(e) for e in np.eye(3)])
    return ContractingProjection(lam, u, w, basis, P)


# ---------------------------------------------------------------------------
# Rauzy fractal approximations


@dataclass
class ProjectedPatch:
    polygons: list[tuple[int, tuple[Point, Point, Point, Point]]]
    level: int

    def bounding_box(self) -> tuple[float, float, float, float]:
        pts = [p for _, poly in self.polygons for p in poly]
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return min(xs), min(ys), max(xs), max(ys)

    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bounding_box()
        return float(np.hypot(x1 - x0, y1 - y0))


def iterate_dual(s: Substitution, P: Pattern, n: int) -> Pattern:
    for _ in range(n):
        P = dual_image_pattern(s, P)
    return P


def rauzy_approximation(s: Substitution, n: int) -> ProjectedPatch:
    """M^n pi_c E1*(s)^n([0, i]) for i = 1, 2, 3, labelled by i."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    if not is_irreducible_pisot(s):
        raise ValueError("substitution is not irreducible Pisot")
    proj = contracting_projection(s.matrix)
    Mn = np.linalg.matrix_power(np.array(s.matrix, dtype=float), n)
    polygons = []
    for i in (1, 2, 3):
        P = iterate_dual(s, Pattern((Face((0, 0, 0), i),)), n)
        for f in P:
            pts = []
            for v in f.vertices():
                y = Mn @ proj.project3(v)
                q = proj.basis @ y
                pts.append((float(q[0]), float(q[1])))
            polygons.append((i, tuple(pts)))
    return ProjectedPatch(polygons, n)


def subtiles_connected(s: Substitution, n: int) -> bool:
    """Each E1*(s)^k([0, i]) is edge-connected for k <= n."""
    for i in (1, 2, 3):
        P = Pattern((Face((0, 0, 0), i),))
        for _ in range(n):
            P = dual_image_pattern(s, P)
            if len(edge_connected_components(P)) != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# SVG

_COLOURS = {1: "#d94f4f", 2: "#4f8fd9", 3: "#e8c547"}
_ANTIDIAGONAL = np.array(
    [[1 / np.sqrt(2), -1 / np.sqrt(2), 0.0], [1 / np.sqrt(6), 1 / np.sqrt(6), -2 / np.sqrt(6)]]
)


def _svg(polys: list[tuple[int, Sequence[Point]]], scale: float = 20.0) -> str:
    if not polys:
        return '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="1" height="1"></svg>\n'
    xs = [p[0] for _, poly in polys for p in poly]
    ys = [p[1] for _, poly in polys for p in poly]
    x0, y0 = min(xs), min(ys)
    w = (max(xs) - x0) * scale + 2
    h = (max(ys) - y0) * scale + 2
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2f}" height="{h:.2f}">']
    for k, poly in polys:
        # flip y so that the picture is upright
        pts = " ".join(f"{(p[0] - x0) * scale + 1:.3f},{h - 1 - (p[1] - y0) * scale:.3f}" for p in poly)
        out.append(f'<polygon points="{pts}" fill="{_COLOURS[k]}" stroke="black" stroke-width="0.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def pattern_svg(P: Pattern) -> str:
    """Faces projected orthogonally onto the plane x1 + x2 + x3 = 0, coloured by type."""
    polys = []
    for f in P:
        pts = [tuple(float(c) for c in _ANTIDIAGONAL @ np.array(v, dtype=float)) for v in f.vertices()]
        polys.append((f.kind, pts))
    return _svg(polys)


def rauzy_svg(patch: ProjectedPatch) -> str:
    x0, y0, x1, y1 = patch.bounding_box() if patch.polygons else (0, 0, 1, 1)
    size = max(x1 - x0, y1 - y0, 1e-12)
    return _svg(patch.polygons, scale=400.0 / size)


def render_pattern_svg(P: Pattern, path: str | Path) -> None:
    Path(path).write_text(pattern_svg(P))


def render_rauzy_svg(patch: ProjectedPatch, path: str | Path) -> None:
    Path(path).write_text(rauzy_svg(patch))


# ---------------------------------------------------------------------------
# classification


def growth_radii(s: Substitution, k: int, start: Pattern = U) -> list[int]:
    """combinatorial_radius(E1*(s)^j(start)) for j = 1..k."""
    out = []
    P = start
    for _ in range(k):
        P = dual_image_pattern(s, P)
        out.append(combinatorial_radius(P))
    return out


@dataclass
class Iterate:
    k: int
    pattern: Pattern
    radius: int


def dual_word_substitution(word, family: str = "brun") -> Substitution:
    """The product whose dual map is Sigma_(w_1) ... Sigma_(w_n).

    Duals compose contravariantly, so this is sigma_(w_n) ... sigma_(w_1).
    """
    from . import cf_families as cf

    word = list(word)
    if family == "brun":
        return cf.brun_product(tuple(int(a) for a in reversed(word)))
    if family == "jp":
        return cf.jp_product([(int(a), int(b)) for a, b in reversed(word)])
    raise ValueError("family must be 'brun' or 'jp'")


def dual_word_iterates(word, k: int, family: str = "brun", start: Pattern = U) -> list[Iterate]:
    """Sigma_w^j(start) with its combinatorial radius for j = 1..k."""
    s = dual_word_substitution(word, family)
    out = []
    P = start
    for j in range(1, k + 1):
        P = dual_image_pattern(s, P)
        out.append(Iterate(j, P, combinatorial_radius(P)))
    return out


def classify_product(word, family: str, levels: int = 4) -> dict:
    """Pisot test, origin-interior verdict and subtile connectedness up to the given level.

    word is a Brun digit word (family 'brun') or a sequence of (a, b) pairs
    (family 'jp'); the product is read as the period of an infinite expansion.
    """
    from . import cf_families as cf
    from .fixtures import load
    from .generation_graphs import LabelAutomaton, brun_bad_cycle_check, jp_bad_check

    if family == "brun":
        word = tuple(int(a) for a in word)
        if not cf.brun_admissible(word):
            raise ValueError("Brun word must be over 1, 2, 3 and contain a 3")
        s = cf.brun_product(word)
        bad = brun_bad_cycle_check(word, LabelAutomaton.from_json(load("bad_automaton.json")))
    elif family == "jp":
        word = tuple((int(a), int(b)) for a, b in word)
        if not cf.jp_admissible(word, periodic=True):
            raise ValueError("Jacobi-Perron digits are not admissible")
        s = cf.jp_product(word)
        bad = jp_bad_check(word)
    else:
        raise ValueError("family must be 'brun' or 'jp'")
    return {
        "pisot": is_irreducible_pisot(s),
        "origin_interior": not bad,
        "connected_levels_checked": levels if subtiles_connected(s, levels) else -1,
    }
