"""Shared root systems, Levi data and wall setups."""

import pytest

from src.blocks.levi_block import choose_mu, make_levi, regular_labels, wall_labels
from src.geometry.affine_weyl import Reflection, simple_reflections_Sp
from src.geometry.rootdata import root_system

P = 5


@pytest.fixture
def a1():
    return root_system("A1")


@pytest.fixture
def a2():
    return root_system("A2")


@pytest.fixture
def b2():
    return root_system("B2")


@pytest.fixture
def sl2(a1):
    """A1 at p=5 with I empty."""
    return make_levi(a1, (), P)


@pytest.fixture
def sl2_levi(a1):
    """A1 at p=5 with I = {alpha}."""
    return make_levi(a1, (0,), P)


@pytest.fixture
def sl3(a2):
    return make_levi(a2, (), P)


@pytest.fixture
def s0(a1):
    return Reflection(0, 0, P, a1)


@pytest.fixture
def s5(a1):
    return Reflection(0, 1, P, a1)


@pytest.fixture
def wall5(a1, s5):
    """mu = 4 on the wall <x + rho, alpha^vee> = 5."""
    return choose_mu(s5, a1, P)


@pytest.fixture
def wall0(a1, s0):
    """mu = -1 on the wall through -rho."""
    return choose_mu(s0, a1, P)


@pytest.fixture
def history_file(tmp_path):
    return tmp_path / "history.json"


@pytest.fixture
def block_labels():
    """(block, labels) for the 0 block and every wall block of L, radius 10."""
    def collect(L):
        blocks = [(L.rs.zero, regular_labels(L, 10))]
        for s in simple_reflections_Sp(L.rs, L.p):
            setup = choose_mu(s, L.rs, L.p)
            blocks.append((setup.mu, wall_labels(setup, L, 10)))
        return [(block, labels) for block, labels in blocks if labels]
    return collect
