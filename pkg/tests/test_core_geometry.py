import itertools
from fractions import Fraction

import pytest

from planegen.core_geometry import (
    BRUN_CONE,
    JP_CONE,
    U,
    Cone,
    Pattern,
    combinatorial_radius,
    edge_connected_components,
    face,
    face_in_cone_family,
    faces_edge_adjacent,
    faces_share_edge,
    is_annulus_shape,
    is_simply_connected,
    pattern,
    pattern_boundary,
    pattern_cone_witness,
    plane_contains,
    plane_patch,
    strict_feasible_point,
)
from planegen.fixtures import brun_seeds, faces_from_list, load


def examples():
    return {k: faces_from_list(v) for k, v in load("covering_examples.json")["A"].items()}


def test_plane_contains():
    v = (1, 2, 3)
    assert plane_contains(v, face((0, 0, 0), 1))
    assert not plane_contains(v, face((0, 0, 1), 1))
    # <x, v> = -1 lies outside [0, 3)
    assert not plane_contains(v, face((1, -1, 0), 3))


def test_plane_contains_rejects_nonpositive_normal():
    with pytest.raises(ValueError):
        plane_contains((0, 1, 1), face((0, 0, 0), 1))


def test_plane_patch_window_zero_is_u():
    assert plane_patch((1, 1, 1), 0) == U


def test_plane_patch_matches_brute_force():
    v = (1, 2, 3)
    r = range(-1, 2)
    brute = {
        face(x, i)
        for x in itertools.product(r, r, r)
        for i in (1, 2, 3)
        if 0 <= sum(a * b for a, b in zip(x, v)) < v[i - 1]
    }
    assert plane_patch(v, 1).faces == brute


def test_plane_patch_negative_window():
    with pytest.raises(ValueError):
        plane_patch((1, 2, 3), -1)


def test_plane_patch_exact_for_fractions():
    v = (Fraction(1, 3), Fraction(1, 2), Fraction(5, 7))
    P = plane_patch(v, 2)
    assert U <= P
    assert all(plane_contains(v, f) for f in P)


def test_adjacency_examples():
    assert faces_edge_adjacent(face((0, 0, 0), 1), face((0, 1, 0), 1))
    assert faces_edge_adjacent(face((0, 0, 0), 1), face((0, 0, 0), 2))
    assert not faces_edge_adjacent(face((0, 0, 0), 3), face((2, 0, 0), 3))


def test_cone_membership_examples():
    assert face_in_cone_family(face((0, 0, 0), 2), BRUN_CONE)
    assert not face_in_cone_family(face((0, 0, 1), 2), JP_CONE)
    assert face_in_cone_family(face((1, 1, -1), 1), BRUN_CONE)


def test_cone_witness_is_in_cone_and_plane():
    P = pattern(((1, 1, -1), 1), ((0, 0, 0), 3))
    v = pattern_cone_witness(P, BRUN_CONE)
    assert v is not None and BRUN_CONE.contains(v)
    assert all(plane_contains(v, f) for f in P)


def test_strict_feasibility():
    assert strict_feasible_point([(1, -1, 0), (-1, 1, 0)], ()) is None
    assert strict_feasible_point([(1, -1, 0)], [(-1, 1, 0)]) is None
    assert strict_feasible_point((), [(1, -1, 0), (-1, 1, 0)]) is not None


def test_empty_cone_rejected():
    with pytest.raises(ValueError):
        Cone([(1, -1, 0), (-1, 1, 0)])


def test_boundary():
    f = face((0, 0, 0), 3)
    assert pattern_boundary(Pattern([f])) == frozenset(f.edges())
    assert len(pattern_boundary(U)) == 6
    assert pattern_boundary(Pattern()) == frozenset()


def test_annulus_shape_examples():
    A = examples()
    assert is_annulus_shape(A["A4"], U)
    assert not is_annulus_shape(A["A1"], U)
    assert not is_annulus_shape(A["A2"], U)
    assert not is_annulus_shape(Pattern(), U)


def test_radius():
    assert combinatorial_radius(U) == 1
    assert combinatorial_radius(brun_seeds()["V1"]) == 2
    with pytest.raises(ValueError):
        combinatorial_radius(U - pattern(((0, 0, 0), 2)))


def test_components():
    assert len(edge_connected_components(U)) == 1
    assert edge_connected_components(Pattern()) == []
    far = pattern(((0, 0, 0), 3), ((5, 0, 0), 3))
    assert len(edge_connected_components(far)) == 2


def test_simple_connectivity():
    assert is_simply_connected(U)
    V = brun_seeds()["V1"]
    assert is_simply_connected(V)
    assert not is_simply_connected(V - U)


def test_share_edge_is_symmetric_and_irreflexive():
    f = face((0, 0, 0), 1)
    assert not faces_share_edge(f, f)
    g = face((0, 1, 0), 1)
    assert faces_share_edge(f, g) and faces_share_edge(g, f)


def test_pattern_json_round_trip():
    V = brun_seeds()["V2"]
    assert Pattern.from_json(V.to_json()) == V


def test_translation_class():
    V = brun_seeds()["V1"]
    assert V.translate((3, -1, 2)).translation_class() == V.translation_class()


def test_face_rejects_bad_type():
    with pytest.raises(ValueError):
        face((0, 0, 0), 4)
