import random

import pytest

from src.blocks.groth import Basis, GVector
from src.blocks.levi_block import N_I, make_levi
from src.blocks.sections import (
    SectionKind,
    SectionSkeleton,
    delta_to_deltabar,
    deltabar_to_delta,
    off_wall_transform,
    onto_wall_transform,
    skeleton_from_char,
    theta_transform,
)
from src.common.errors import NotDivisible, ParseError, WrongBasis, WrongBlock

ZERO = (0,)
WALL = (4,)


def skeleton(kind, block, items):
    return SectionSkeleton.build(kind, block, [((k,), c) for k, c in items.items()])


def test_skeleton_from_costandard(sl2_levi):
    nabla_zero = GVector.basis_vector(Basis.ZBAR, ZERO, ZERO, 2)
    assert skeleton_from_char(nabla_zero, SectionKind.DELTABAR, sl2_levi).as_dict() == {ZERO: 1}
    assert skeleton_from_char(nabla_zero, SectionKind.DELTA, sl2_levi).as_dict() == {ZERO: 2}


def test_build_drops_empty_labels():
    sk = skeleton(SectionKind.DELTA, ZERO, {0: 2, 8: 0})
    assert sk.sizes == ((ZERO, 2),)
    assert sk.total() == 2


def test_dict_form():
    sk = skeleton(SectionKind.DELTABAR, ZERO, {0: 1, 8: 3})
    assert SectionSkeleton.from_dict(sk.to_dict()) == sk
    with pytest.raises(ParseError):
        SectionSkeleton.from_dict({"kind": "NEITHER"})


class TestTransforms:
    def test_inside_levi_sections_double_onto_wall(self, sl2_levi, wall5):
        onto = onto_wall_transform(skeleton(SectionKind.DELTABAR, ZERO, {0: 1}), wall5, sl2_levi)
        assert onto.block == WALL
        assert onto.as_dict() == {WALL: 2}
        assert off_wall_transform(onto, wall5, sl2_levi).as_dict() == {ZERO: 2}

    def test_regular_case_splits_off_wall(self, sl2, wall5):
        sk = skeleton(SectionKind.DELTABAR, ZERO, {0: 1})
        assert onto_wall_transform(sk, wall5, sl2).as_dict() == {WALL: 1}
        assert theta_transform(sk, wall5, sl2).as_dict() == {ZERO: 1, (8,): 1}

    def test_guards(self, sl2, wall5):
        with pytest.raises(WrongBasis):
            onto_wall_transform(skeleton(SectionKind.DELTA, ZERO, {0: 1}), wall5, sl2)
        with pytest.raises(WrongBlock):
            off_wall_transform(skeleton(SectionKind.DELTABAR, ZERO, {0: 1}), wall5, sl2)


def test_kind_conversion(sl2_levi):
    bar = skeleton(SectionKind.DELTABAR, ZERO, {0: 1})
    full = deltabar_to_delta(bar, sl2_levi)
    assert full == skeleton(SectionKind.DELTA, ZERO, {0: 2})
    assert delta_to_deltabar(full, sl2_levi) == bar
    with pytest.raises(NotDivisible):
        delta_to_deltabar(skeleton(SectionKind.DELTA, ZERO, {0: 3}), sl2_levi)
    with pytest.raises(WrongBasis):
        delta_to_deltabar(bar, sl2_levi)


@pytest.mark.parametrize("I", [(), (0,), (0, 1)])
def test_kind_round_trip_on_random_skeletons(a2, block_labels, I):
    L = make_levi(a2, I, 5)
    blocks = block_labels(L)
    rng = random.Random(11)
    for _ in range(200):
        block, labels = rng.choice(blocks)
        picks = rng.sample(labels, rng.randint(1, min(4, len(labels))))
        bar = SectionSkeleton.build(SectionKind.DELTABAR, block, [(k, rng.randint(0, 5)) for k in picks])
        full = deltabar_to_delta(bar, L)
        assert delta_to_deltabar(full, L) == bar
        assert full.as_dict() == {k: c * N_I(k, L) for k, c in bar.sizes}
