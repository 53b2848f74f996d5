from planegen import cf_families as cf
from planegen.core_geometry import BRUN_CONE, JP_CONE, U, Cone, Pattern, face, pattern
from planegen.coverings import (
    L_BRUN,
    L_JP,
    contains_translate,
    enumerate_disconnected_preimage_pairs,
    enumerate_minimal_annulus_seeds,
    is_covered,
    is_L_annulus,
    is_strongly_covered,
    occurrences,
    same_up_to_translation,
    verify_cover_preservation,
)
from planegen.fixtures import brun_seeds, faces_from_list, jp_seeds, load
from planegen.substitutions import IDENTITY


def examples(key):
    return {k: faces_from_list(v) for k, v in load("covering_examples.json")[key].items()}


def test_covering_examples():
    P = examples("P")
    assert not is_covered(P["P1"], L_BRUN) and not is_covered(P["P1"], L_JP)
    assert not is_covered(P["P2"], L_BRUN) and is_strongly_covered(P["P2"], L_JP)
    assert is_covered(P["P3"], L_BRUN) and not is_strongly_covered(P["P3"], L_BRUN)
    assert is_strongly_covered(P["P4"], L_BRUN) and is_strongly_covered(P["P4"], L_JP)
    assert is_covered(P["P4"], L_BRUN)


def test_single_face_is_covered():
    f = Pattern([face((4, 1, -2), 2)])
    assert is_covered(f, L_BRUN) and is_covered(f, L_JP)


def test_annulus_examples():
    A = examples("A")
    assert is_L_annulus(A["A4"], U, L_BRUN)
    assert not is_L_annulus(A["A3"], U, L_BRUN)
    assert not is_L_annulus(Pattern(), U, L_BRUN)


def test_occurrences_in_u():
    occ = occurrences(U, L_BRUN)
    assert U in occ
    assert all(Q <= U for Q in occ)


def test_cover_preservation_identity_and_brun():
    assert verify_cover_preservation([IDENTITY], L_BRUN).ok
    assert verify_cover_preservation([cf.brun_substitution(i) for i in (1, 2, 3)], L_BRUN).ok


def test_translate_search():
    V = brun_seeds()["V1"]
    assert contains_translate(V.translate((2, -1, 1)) | U, V) == (2, -1, 1)
    assert contains_translate(U, V) is None
    assert same_up_to_translation(V, V.translate((1, 1, -1)))


def test_disconnected_pairs_cone_and_orthant():
    ORTHANT = Cone([(1, 0, 0)], "orthant")
    table = load("property_a_table.json")
    s1 = cf.brun_substitution(1)
    in_cone = enumerate_disconnected_preimage_pairs(s1, BRUN_CONE, 3)
    assert [D.preimage for D in in_cone] == [pattern(((0, 0, 0), 2), ((1, -1, 0), 2))]
    # without the cone every tabulated pair occurs, among others
    for i in (1, 2, 3):
        found = enumerate_disconnected_preimage_pairs(cf.brun_substitution(i), ORTHANT, 3)
        assert len(found) == 8
        for P in map(faces_from_list, table[f"brun{i}"]):
            assert any(same_up_to_translation(P, D.preimage) for D in found)


def test_minimal_annuli_brun_window_two():
    S = brun_seeds()
    assert set(enumerate_minimal_annulus_seeds(U, L_BRUN, BRUN_CONE, 2)) == {S["V1"], S["V2"]}


def test_minimal_annuli_jp_window_two():
    assert set(enumerate_minimal_annulus_seeds(U, L_JP, JP_CONE, 2)) == set(jp_seeds().values())


def test_seeds_are_annulus_closures():
    for V in brun_seeds().values():
        assert is_L_annulus(V - U, U, L_BRUN)
    for V in jp_seeds().values():
        assert is_L_annulus(V - U, U, L_JP)
