import pytest

from src.blocks.levi_block import (
    N_I,
    brute_orbit_size,
    choose_mu,
    in_CI,
    in_CI_closure,
    in_WIp,
    make_levi,
    n_i_formula,
    orbit_rep,
    orbit_rep_with_elt,
    parse_levi,
    refl_stays_regular,
    regular_labels,
    stabilizer_order,
    wall_labels,
)
from src.common.errors import InvalidLevi, NoSuchWeight, NotAWallReflection, NotInCI, ParseError
from src.geometry.affine_weyl import Reflection, identity, translation


@pytest.mark.parametrize("text,nodes", [("I=1,3", (0, 2)), ("3,1", (0, 2)), ("", ()), (None, ())])
def test_parse_levi(text, nodes):
    assert parse_levi(text) == nodes


def test_parse_levi_rejects_letters():
    with pytest.raises(ParseError):
        parse_levi("a")


def test_make_levi_range(a1):
    with pytest.raises(InvalidLevi):
        make_levi(a1, (1,), 5)


def test_levi_group_orders(a2):
    assert make_levi(a2, (0, 1), 5).order_WI == 6
    assert make_levi(a2, (0,), 5).order_WI == 2
    assert make_levi(a2, (), 5).order_WI == 1
    assert make_levi(a2, (0, 1), 5).highest_levi_roots == (2,)


def test_orbit_rep_a1(sl2_levi):
    assert orbit_rep((8,), sl2_levi) == (0,)
    assert orbit_rep((13,), sl2_levi) == (3,)
    u, rep = orbit_rep_with_elt((13,), sl2_levi)
    assert u.dot(rep) == (13,)
    assert in_WIp(u, sl2_levi)


def test_orbit_rep_is_identity_for_empty_levi(sl2):
    assert orbit_rep((8,), sl2) == (8,)
    assert orbit_rep((-12,), sl2) == (-12,)


def test_orbit_rep_a2(a2):
    L = make_levi(a2, (0, 1), 5)
    assert orbit_rep((3, 3), L) == (0, 0)


def test_domain_membership(sl2_levi):
    assert in_CI((0,), sl2_levi)
    assert not in_CI((4,), sl2_levi)
    assert in_CI_closure((4,), sl2_levi)
    assert not in_CI_closure((5,), sl2_levi)


@pytest.mark.parametrize("weight,n", [((0,), 2), ((4,), 1), ((-1,), 1), ((3,), 2)])
def test_n_i_a1(sl2_levi, weight, n):
    assert N_I(weight, sl2_levi) == n
    assert brute_orbit_size(weight, sl2_levi) == n


def test_n_i_formula_and_stabilizer(sl2, sl2_levi):
    assert n_i_formula((4,), sl2_levi) == 1
    assert n_i_formula((4,), sl2) == 1
    assert stabilizer_order((4,), sl2_levi) == 2
    assert stabilizer_order((0,), sl2_levi) == 1
    assert N_I((8,), sl2) == 1


def test_n_i_a2_full_levi(a2):
    L = make_levi(a2, (0, 1), 5)
    assert N_I((0, 0), L) == 6
    # on the wall of the highest root only
    assert N_I((0, 3), L) == 3


def test_choose_mu_a1(a1, s0, s5):
    assert choose_mu(s5, a1, 5).mu == (4,)
    assert choose_mu(s0, a1, 5).mu == (-1,)
    assert choose_mu(s5, a1, 5).lambda_star == (0,)


def test_choose_mu_a2(a2):
    assert choose_mu(Reflection(2, 1, 5, a2), a2, 5).mu == (0, 3)
    assert choose_mu(Reflection(0, 0, 5, a2), a2, 5).mu == (-1, 0)
    assert choose_mu(Reflection(1, 0, 5, a2), a2, 5).mu == (0, -1)


def test_choose_mu_errors(a1, a2):
    with pytest.raises(NoSuchWeight):
        choose_mu(Reflection(0, 0, 2, a2), a2, 2)
    with pytest.raises(NotAWallReflection):
        choose_mu(Reflection(0, 2, 5, a1), a1, 5)


def test_refl_stays_regular(a1, sl2, sl2_levi, wall5):
    e = identity(a1, 5)
    # 8 leaves C_I when I = {alpha}
    assert not refl_stays_regular(e, wall5, sl2_levi)
    assert refl_stays_regular(e, wall5, sl2)
    with pytest.raises(NotInCI):
        refl_stays_regular(translation(a1, (1,), 5), wall5, sl2_levi)


def test_labels_in_box(sl2_levi, wall5):
    assert regular_labels(sl2_levi, 10) == [(0,)]
    assert wall_labels(wall5, sl2_levi, 10) == [(4,)]
