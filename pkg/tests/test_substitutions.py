import pytest

from planegen import cf_families as cf
from planegen.core_geometry import U, Pattern, face, plane_patch
from planegen.substitutions import (
    IDENTITY,
    Substitution,
    abelianization,
    char_poly,
    compose,
    dual_image,
    dual_image_pattern,
    dual_preimages,
    is_irreducible_pisot,
    is_primitive,
    is_unimodular,
    parse_word,
)


def test_abelianization():
    assert abelianization("32") == (0, 1, 1)
    assert abelianization("") == (0, 0, 0)
    assert abelianization("13331") == (2, 0, 3)


def test_parse_word():
    assert parse_word("3,2") == (3, 2)
    with pytest.raises(ValueError):
        parse_word("14")


def test_compose_brun3_twice():
    s3 = cf.brun_substitution(3)
    assert compose(s3, s3) == Substitution(((3,), (1, 3), (2, 1, 3)))


def test_compose_applies_right_factor_first():
    s1, s3 = cf.brun_substitution(1), cf.brun_substitution(3)
    s = compose(s1, s3)
    for a in (1, 2, 3):
        assert s((a,)) == s1(s3((a,)))


def test_pisot_examples():
    assert is_irreducible_pisot(cf.brun_substitution(3))
    assert not is_irreducible_pisot(cf.brun_substitution(1))
    assert not is_irreducible_pisot(cf.brun_substitution(2))
    assert not is_irreducible_pisot(cf.brun_product((1, 2)))
    assert is_irreducible_pisot(cf.brun_product((2, 3, 2)))


def test_unimodular():
    assert is_unimodular(cf.brun_substitution(2))
    assert not is_unimodular(Substitution(((1, 1), (2,), (3,))))


def test_nonunimodular_dual_rejected():
    with pytest.raises(ValueError):
        dual_image(Substitution(((1, 1), (2,), (3,))), face((0, 0, 0), 1))


def test_identity_dual_is_identity():
    P = plane_patch((2, 3, 5), 2)
    assert dual_image_pattern(IDENTITY, P) == P


def test_dual_image_of_empty():
    assert dual_image_pattern(cf.brun_substitution(3), Pattern()) == Pattern()


def test_u_maps_into_image_plane():
    # E1*(sigma)(U) contains U for the Brun duals
    for i in (1, 2, 3):
        assert U <= dual_image_pattern(cf.brun_substitution(i), U)


def test_iterated_image_face_count():
    s = cf.brun_product((2, 3, 2))
    P = U
    for _ in range(4):
        P = dual_image_pattern(s, P)
    assert len(P) == 355
    assert P == dual_image_pattern(s, dual_image_pattern(s, dual_image_pattern(s, dual_image_pattern(s, U))))


def test_preimage_inverts_image():
    s = cf.jp_substitution(1, 3)
    f = face((2, -1, 0), 2)
    for g in dual_preimages(s, f):
        assert f in dual_image(s, g)


def test_char_poly_and_primitive():
    s = cf.brun_substitution(3)
    assert char_poly(s.matrix) == (1, -1, 0, -1)
    assert is_primitive(s.matrix)
    assert not is_primitive(cf.brun_substitution(1).matrix)


def test_json_round_trip():
    s = cf.jp_substitution(2, 5)
    assert Substitution.from_json(s.to_json()) == s
