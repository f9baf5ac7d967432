from fractions import Fraction

import pytest

from src.geometry.linalg import determinant, identity_matrix, invert, invert_integral, mat_mul, solve_integral

A2_CARTAN = ((2, -1), (-1, 2))
B2_CARTAN = ((2, -2), (-1, 2))


def test_determinant():
    assert determinant(A2_CARTAN) == 3
    assert determinant(B2_CARTAN) == 2
    assert determinant(((0, 1), (0, 2))) == 0


def test_invert_is_exact():
    inv = invert(A2_CARTAN)
    assert inv == ((Fraction(2, 3), Fraction(1, 3)), (Fraction(1, 3), Fraction(2, 3)))
    assert all(isinstance(x, Fraction) for row in inv for x in row)
    assert invert(((1, 2), (2, 4))) is None


def test_invert_integral():
    # s_1 on fundamental-weight coordinates for A2
    s1 = ((-1, 0), (1, 1))
    assert invert_integral(s1) == s1
    rotation = ((0, -1), (1, -1))
    assert mat_mul(rotation, invert_integral(rotation)) == identity_matrix(2)
    with pytest.raises(ValueError):
        invert_integral(A2_CARTAN)


def test_solve_integral():
    inv = invert(A2_CARTAN)
    assert solve_integral(inv, (1, 1)) == (1, 1)
    assert solve_integral(inv, (2, -1)) == (1, 0)
    assert solve_integral(inv, (1, 0)) is None
