from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from invariants import (
    adjacency_mismatches,
    check_adjointness,
    check_contravariance,
    check_plane_covariance,
    faces,
    fixed,
    normals,
    products,
)
from planegen import cf_families as cf
from planegen.core_geometry import U, faces_edge_adjacent, plane_contains
from planegen.coverings import L_BRUN, is_covered
from planegen.substitutions import dual_image_pattern, mat_vec


def test_contravariance():
    check_contravariance()


def test_plane_covariance():
    check_plane_covariance()


def test_adjointness():
    check_adjointness()


def test_adjacency_tables_match_geometry():
    assert adjacency_mismatches(3) == []


@fixed(100)
@given(faces, faces)
def test_adjacency_symmetric(f, g):
    assert faces_edge_adjacent(f, g) == faces_edge_adjacent(g, f)


@fixed(100)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=6))
def test_u_grows_inside_every_plane(word):
    # the iterates of U stay inside the plane of the expanded vector
    v = (Fraction(1), Fraction(7, 5), Fraction(13, 5))
    w = v
    P = U
    for i in word:
        w = mat_vec(cf.brun_matrix(i), w)
        P = dual_image_pattern(cf.brun_substitution(i), P)
    assert U <= P
    assert all(plane_contains(w, f) for f in P)


@fixed(60)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_brun_images_of_u_are_covered(word):
    P = U
    for i in word:
        P = dual_image_pattern(cf.brun_substitution(i), P)
    assert is_covered(P, L_BRUN)


@fixed(100)
@given(normals)
def test_brun_step_reconstructs(v):
    v = tuple(sorted(v))
    i, w = cf.brun_step(v)
    assert mat_vec(cf.brun_matrix(i), w) == v


@fixed(50)
@given(products, faces)
def test_preimage_filter_is_subset(s, f):
    from planegen.core_geometry import BRUN_CONE
    from planegen.substitutions import dual_preimages

    assert dual_preimages(s, f, BRUN_CONE) <= dual_preimages(s, f)
