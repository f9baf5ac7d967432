import pytest

from src.common.errors import NotAPositiveRoot, NotPrime, ParseError, PTooSmall
from src.geometry.affine_weyl import (
    Reflection,
    as_reflection,
    check_prime,
    finite_projection,
    format_element,
    identity,
    is_weyl_matrix,
    parse_element,
    parse_reflection,
    reduce_to_fundamental_alcove,
    reflection_elt,
    reflection_matrix,
    simple_reflections_Sp,
    tau_weight,
    translation,
    weyl_group,
)
from src.geometry.rootdata import root_system


def test_reflection_dot_matches_element(a1, s5):
    assert s5.dot((0,)) == (8,)
    assert s5.elt.dot((0,)) == (8,)
    assert s5.level == 5
    assert s5.label == "s[1,1]"
    assert s5.fixes((4,))


def test_translation(a1):
    t = translation(a1, (1,), 5)
    assert t.dot((0,)) == (10,)
    assert format_element(t) == "t[1]*M[1]"


def test_compose_is_left_to_right(a1):
    w = parse_element(a1, 5, "s[1,1]*s[1,0]")
    assert w.dot((0,)) == (10,)
    assert w == Reflection(0, 1, 5, a1).elt * Reflection(0, 0, 5, a1).elt


def test_inverse_and_identity(a2):
    w = parse_element(a2, 5, "s[1,0]*s[3,1]*s[2,0]")
    assert w.compose(w.inverse()).is_identity
    assert w.inverse().compose(w) == identity(a2, 5)
    assert format_element(identity(a2, 5)) == "e"


def test_conjugate_moves_hyperplanes(a1, s0, s5):
    conj = s5.elt.conjugate(s0.elt)
    assert as_reflection(conj) == Reflection(0, 2, 5, a1)
    assert format_element(conj) == "s[1,2]"


def test_as_reflection_rejects_translations(a1):
    assert as_reflection(translation(a1, (1,), 5)) is None


def test_parse_errors(a1):
    with pytest.raises(ParseError):
        parse_element(a1, 5, "q")
    with pytest.raises(NotAPositiveRoot):
        parse_element(a1, 5, "s[2,0]")
    with pytest.raises(ParseError):
        parse_reflection(a1, 5, "t[1]")
    with pytest.raises(NotAPositiveRoot):
        reflection_elt(a1, (2,), 0, 5)


def test_walls_of_fundamental_alcove(a1, a2, b2):
    assert [s.label for s in simple_reflections_Sp(a1, 5)] == ["s[1,0]", "s[1,1]"]
    assert [s.label for s in simple_reflections_Sp(a2, 5)] == ["s[1,0]", "s[2,0]", "s[3,1]"]
    assert [s.label for s in simple_reflections_Sp(b2, 5)] == ["s[1,0]", "s[2,0]", "s[3,1]"]


def test_p_gates(a1):
    with pytest.raises(PTooSmall):
        simple_reflections_Sp(a1, 1)
    with pytest.raises(NotPrime):
        simple_reflections_Sp(a1, 4)
    with pytest.raises(NotPrime):
        check_prime(9)
    check_prime(7)


def test_weyl_group_orders(a2, b2):
    assert len(weyl_group(a2)) == 6
    assert len(weyl_group(b2)) == 8
    assert len(weyl_group(root_system("G2"))) == 12
    assert len(weyl_group(a2, [0])) == 2


def test_is_weyl_matrix(a2):
    assert is_weyl_matrix(a2, reflection_matrix(a2, 2))
    assert not is_weyl_matrix(a2, ((2, 0), (0, 1)))


def test_tau_weight(a1):
    assert tau_weight(a1, (3,), [0]) == (3,)
    assert tau_weight(a1, (3,), []) == (-3,)


@pytest.mark.parametrize("weight", [(8,), (10,), (-2,), (18,), (-12,)])
def test_reduce_a1_block_of_zero(a1, weight):
    w, base = reduce_to_fundamental_alcove(a1, weight, 5)
    assert base == (0,)
    assert w.dot(base) == weight


def test_reduce_a2(a2):
    w, base = reduce_to_fundamental_alcove(a2, (3, 3), 5)
    assert base == (0, 0)
    assert w.dot((0, 0)) == (3, 3)
    w, wall = reduce_to_fundamental_alcove(a2, (0, 3), 5)
    assert wall == (0, 3)
    assert w.is_identity


def test_finite_projection_drops_translation(a1, s5, s0):
    bar = finite_projection(s5.elt)
    assert bar == s0.elt
    assert bar.dot((0,)) == (-2,)
    assert finite_projection(translation(a1, (3,), 5)).is_identity
