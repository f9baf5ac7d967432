"""Exact integer/rational matrix helpers for small lattices."""

from fractions import Fraction as Q
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import sympy

IntMatrix = Tuple[Tuple[int, ...], ...]
RatMatrix = Tuple[Tuple[Q, ...], ...]
Vector = Tuple[int, ...]


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def _to_fraction(x: sympy.Rational) -> Q:
    return Q(int(x.p), int(x.q))


def invert(a: Sequence[Sequence[int]]) -> Optional[RatMatrix]:
    """Exact inverse over the rationals, or None when a is singular."""
    m = sympy.Matrix(a)
    if m.det() == 0:
        return None
    inv = m.inv()
    return tuple(
        tuple(_to_fraction(inv[i, j]) for j in range(inv.cols))
        for i in range(inv.rows)
    )


def determinant(a: Sequence[Sequence[int]]) -> int:
    return int(sympy.Matrix(a).det())


@lru_cache(maxsize=4096)
def invert_integral(a: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix (Weyl group matrices)."""
    m = sympy.Matrix(a)
    if abs(m.det()) != 1:
        raise ValueError("matrix is not invertible over the integers")
    inv = m.inv()
    return tuple(tuple(int(inv[i, j]) for j in range(inv.cols)) for i in range(inv.rows))


def solve_integral(inv: RatMatrix, v: Sequence[int]) -> Optional[Vector]:
    """Apply a rational inverse to v; None unless the result is integral."""
    out = []
    for row in inv:
        x = sum((c * y for c, y in zip(row, v)), Q(0))
        if x.denominator != 1:
            return None
        out.append(int(x))
    return tuple(out)
