import pytest

from src.common.errors import (
    DimensionMismatch,
    ParseError,
    RankCapExceeded,
    StandardAssumptionViolated,
    UnknownType,
)
from src.geometry.rootdata import (
    check_standard_assumptions,
    pairing,
    parse_type_spec,
    rho,
    root_leq,
    root_system,
)


def test_parse_type_spec_accepts_products():
    assert parse_type_spec("A2xA1") == (("A", 2), ("A", 1))
    assert parse_type_spec("b2, a1") == (("B", 2), ("A", 1))
    assert parse_type_spec("G2") == (("G", 2),)


@pytest.mark.parametrize("text", ["", "2A", "A-1"])
def test_parse_type_spec_rejects_garbage(text):
    with pytest.raises(ParseError):
        parse_type_spec(text)


@pytest.mark.parametrize("text", ["E9", "D3", "Q2", "B1"])
def test_unknown_types(text):
    with pytest.raises(UnknownType):
        root_system(text)


def test_rank_cap():
    with pytest.raises(RankCapExceeded):
        root_system("A9")
    assert root_system("A9", rank_cap=9).rank == 9


def test_a1(a1):
    assert a1.positive_roots == ((1,),)
    assert a1.coroots == ((1,),)
    assert a1.coxeter_number == 2
    assert a1.fundamental_group_order == 2


def test_a2_roots_sorted_by_height(a2):
    assert a2.positive_roots == ((1, 0), (0, 1), (1, 1))
    assert a2.root_weights[2] == (1, 1)
    assert a2.coxeter_number == 3
    assert a2.fundamental_group_order == 3


def test_b2_coroots_and_highest_short_root(b2):
    assert b2.positive_roots == ((1, 0), (0, 1), (1, 1), (1, 2))
    assert b2.coroots[2] == (2, 1)
    assert b2.coroots[3] == (1, 1)
    # alpha_1 + alpha_2 is short; its coroot is the highest coroot
    assert b2.highest_short_roots == (2,)
    assert b2.coxeter_number == 4


def test_g2_and_products():
    assert root_system("G2").coxeter_number == 6
    assert len(root_system("G2").positive_roots) == 6
    prod = root_system("A2xA1")
    assert prod.components == ((0, 1), (2,))
    assert len(prod.highest_short_roots) == 2
    assert prod.coxeter_number == 3


def test_pairing(a2):
    assert pairing((2, 3), (1, 1)) == 5
    assert a2.pair_shifted((2, 3), 2) == 7
    with pytest.raises(DimensionMismatch):
        pairing((1,), (1, 1))


def test_check_weight_dimension(a2):
    assert a2.check_weight([1, -2]) == (1, -2)
    with pytest.raises(DimensionMismatch):
        a2.check_weight((1,))


def test_root_order(a1, a2):
    assert root_leq(a1, (0,), (8,))
    assert not root_leq(a1, (0,), (1,))
    assert not root_leq(a1, (1,), (0,))
    assert root_leq(a2, (0, 0), (1, 1))
    assert root_leq(a2, (0, 0), (2, -1))
    assert not root_leq(a2, (0, 0), (1, 0))


def test_root_coords(a2):
    assert a2.root_coords((1, 1)) == (1, 1)
    assert a2.root_coords((2, -1)) == (1, 0)
    assert a2.root_coords((1, 0)) is None


def test_rho_and_reflect(a2):
    assert rho(a2) == (1, 1)
    assert a2.simple_reflect((1, 0), 0) == (-1, 1)
    assert a2.reflect((1, 1), 2) == (-1, -1)


def test_standard_assumptions(a1, a2):
    check_standard_assumptions(a1, 5)
    with pytest.raises(StandardAssumptionViolated):
        check_standard_assumptions(a1, 2)
    with pytest.raises(StandardAssumptionViolated):
        check_standard_assumptions(a2, 3)
