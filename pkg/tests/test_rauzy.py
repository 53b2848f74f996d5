import numpy as np
import pytest

from planegen import cf_families as cf
from planegen.core_geometry import U, Pattern
from planegen.rauzy import (
    classify_product,
    contracting_projection,
    dual_word_iterates,
    growth_radii,
    pattern_svg,
    rauzy_approximation,
    rauzy_svg,
)
from planegen.substitutions import dual_image_pattern, transpose


def test_projection_kernel_and_rank():
    s = cf.brun_product((2, 3, 2))
    p = contracting_projection(s.matrix)
    M = np.array(s.matrix, dtype=float)
    assert np.linalg.norm(M @ p.expanding - p.eigenvalue * p.expanding) < 1e-9
    assert np.linalg.norm(p(p.expanding)) < 1e-9
    assert np.linalg.matrix_rank(p.matrix) == 2


def test_projection_rejects_non_pisot():
    with pytest.raises(ValueError):
        contracting_projection(cf.brun_substitution(1).matrix)


def test_level_zero_is_u():
    patch = rauzy_approximation(cf.brun_product((2, 3, 2)), 0)
    assert sorted(k for k, _ in patch.polygons) == [1, 2, 3]


def test_face_counts_follow_matrix():
    s = cf.brun_product((2, 3, 2))
    n = 3
    Mn = np.linalg.matrix_power(np.array(s.matrix), n)
    patch = rauzy_approximation(s, n)
    # tile i is E1*(s)^n([0, i]), which has sum_j (M^n)_ij faces
    tiles = [sum(1 for k, _ in patch.polygons if k == i) for i in (1, 2, 3)]
    assert tiles == [int(c) for c in Mn.sum(axis=1)]
    # faces of E1*(s)^n(U) by type: (M^t)^n (1, 1, 1)
    P = U
    for _ in range(n):
        P = dual_image_pattern(s, P)
    by_type = [sum(1 for f in P if f.kind == k) for k in (1, 2, 3)]
    Mt = np.linalg.matrix_power(np.array(transpose(s.matrix)), n)
    assert by_type == [int(c) for c in Mt @ np.ones(3, dtype=int)]


def test_bounding_box_stabilizes():
    s = cf.brun_product((2, 3, 2))
    a = rauzy_approximation(s, 4).bounding_box()
    b = rauzy_approximation(s, 5).bounding_box()
    span = max(a[2] - a[0], a[3] - a[1])
    assert max(abs(x - y) for x, y in zip(a, b)) <= 0.05 * span


def test_diameters_bounded():
    s = cf.brun_product((2, 3, 2))
    d = [rauzy_approximation(s, n).diameter() for n in range(1, 8)]
    assert max(d) <= 2 * d[0] + 2


def test_svg_deterministic_and_valid():
    s = cf.brun_product((2, 3, 2))
    a = rauzy_svg(rauzy_approximation(s, 3))
    assert a == rauzy_svg(rauzy_approximation(s, 3))
    assert a.startswith("<svg") and a.rstrip().endswith("</svg>")
    assert pattern_svg(U).count("<polygon") == 3
    assert "<polygon" not in pattern_svg(Pattern())


def test_growth_radii():
    assert growth_radii(cf.brun_product((2, 3, 2)), 4) == [1, 2, 4, 5]


def test_dual_word_iterates_order():
    # Sigma_2 Sigma_3 Sigma_1 Sigma_1 applies Sigma_1 first
    its = dual_word_iterates((2, 3, 1, 1), 1)
    P = U
    for i in (1, 1, 3, 2):
        P = dual_image_pattern(cf.brun_substitution(i), P)
    assert its[0].pattern == P
    assert [it.radius for it in dual_word_iterates((2, 3, 1, 1), 3)] == [1, 1, 1]


@pytest.mark.parametrize("word,interior", [((2, 3, 2), True), ((1, 1, 3, 2), False), ((2, 3, 1, 1), True)])
def test_classify_brun(word, interior):
    res = classify_product(word, "brun", levels=3)
    assert res["pisot"]
    assert res["origin_interior"] is interior
    assert res["connected_levels_checked"] == 3


def test_classify_rejects_bad_words():
    with pytest.raises(ValueError):
        classify_product((1, 2), "brun")
    with pytest.raises(ValueError):
        classify_product(((1, 1), (0, 1)), "jp")
