"""Exact Grothendieck-group vectors over orbit labels, translation and wall crossing.

A GVector is a sparse rational combination of classes [Z(nu)] (basis ZBAR)
or [nabla(nu)] (basis NABLA), all in one linkage class. The two bases are
related by [nabla(nu)] = N_I(nu) [Z(nu)].
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction as Q
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from src.blocks.levi_block import (
    LeviDatum,
    N_I,
    OrbitLabel,
    WallSetup,
    in_WIp,
    orbit_rep,
)
from src.common.errors import (
    NegativeCoefficient,
    NotIntegral,
    ParseError,
    WrongBasis,
    WrongBlock,
)
from src.geometry.affine_weyl import AffineElt, as_reflection, reduce_to_fundamental_alcove
from src.geometry.alcoves import BELOW, single_reflection_compare

logger = logging.getLogger(__name__)

Coefficient = Union[int, Q]

ONTO_WALL = "onto_wall"
OFF_WALL = "off_wall"


class Basis(str, Enum):
    ZBAR = "ZBAR"
    NABLA = "NABLA"


def _accumulate(acc: Dict[OrbitLabel, Q], label: OrbitLabel, coeff: Coefficient) -> None:
    """acc[label] += coeff, dropping zeros."""
    if coeff == 0:
        return
    total = acc.get(label, Q(0)) + coeff
    if total == 0:
        acc.pop(label, None)
    else:
        acc[label] = total


@dataclass(frozen=True)
class GVector:
    basis: Basis
    block: OrbitLabel
    terms: Tuple[Tuple[OrbitLabel, Q], ...]

    @classmethod
    def build(cls, basis: Basis, block: Sequence[int], items: Iterable[Tuple[Sequence[int], Coefficient]]) -> "GVector":
        acc: Dict[OrbitLabel, Q] = {}
        for label, coeff in items:
            _accumulate(acc, tuple(label), Q(coeff))
        return cls(Basis(basis), tuple(block), tuple(sorted(acc.items())))

    @classmethod
    def zero(cls, basis: Basis, block: Sequence[int]) -> "GVector":
        return cls(Basis(basis), tuple(block), ())

    @classmethod
    def basis_vector(cls, basis: Basis, block: Sequence[int], label: Sequence[int], coeff: Coefficient = 1) -> "GVector":
        return cls.build(basis, block, [(label, coeff)])

    @classmethod
    def from_weights(cls, basis: Basis, block: Sequence[int], weights: Iterable[Sequence[int]], L: LeviDatum) -> "GVector":
        """Sum of basis classes, normalising each weight to its orbit label."""
        return cls.build(basis, block, [(orbit_rep(w, L), 1) for w in weights])

    # --- access ------------------------------------------------------------

    def as_dict(self) -> Dict[OrbitLabel, Q]:
        return dict(self.terms)

    def coeff(self, label: Sequence[int]) -> Q:
        return self.as_dict().get(tuple(label), Q(0))

    def support(self) -> List[OrbitLabel]:
        return [label for label, _ in self.terms]

    def __iter__(self) -> Iterator[Tuple[OrbitLabel, Q]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for _, c in self.terms)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    # --- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "GVector") -> None:
        if self.basis != other.basis:
            raise WrongBasis(f"cannot combine {self.basis.value} with {other.basis.value}")
        if self.block != other.block:
            raise WrongBlock(f"cannot combine blocks {list(self.block)} and {list(other.block)}")

    def __add__(self, other: "GVector") -> "GVector":
        self._check_compatible(other)
        return GVector.build(self.basis, self.block, list(self.terms) + list(other.terms))

    def __sub__(self, other: "GVector") -> "GVector":
        self._check_compatible(other)
        return GVector.build(self.basis, self.block, list(self.terms) + [(k, -c) for k, c in other.terms])

    def scale(self, factor: Coefficient) -> "GVector":
        return GVector.build(self.basis, self.block, [(k, c * factor) for k, c in self.terms])

    def __rmul__(self, factor: Coefficient) -> "GVector":
        return self.scale(factor)

    # --- serialisation -----------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            "basis": self.basis.value,
            "block": list(self.block),
            "terms": [{"label": list(k), "coeff": _format_q(c)} for k, c in self.terms],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "GVector":
        try:
            return cls.build(
                Basis(data["basis"]),
                data["block"],
                [(t["label"], Q(str(t["coeff"]))) for t in data.get("terms", [])],
            )
        except (KeyError, ValueError, TypeError) as e:
            raise ParseError(f"malformed character: {e}")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        symbol = "Z" if self.basis is Basis.ZBAR else "N"
        parts = []
        for label, c in self.terms:
            head = "" if c == 1 else f"{_format_q(c)}*"
            parts.append(f"{head}{symbol}({','.join(str(x) for x in label)})")
        return " + ".join(parts)


def _format_q(c: Q) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# --- basis change -------------------------------------------------------------------

def convert_basis(v: GVector, target: Basis, L: LeviDatum) -> GVector:
    target = Basis(target)
    if v.basis is target:
        return v
    if target is Basis.ZBAR:
        return GVector.build(target, v.block, [(k, c * N_I(k, L)) for k, c in v.terms])
    return GVector.build(target, v.block, [(k, c / N_I(k, L)) for k, c in v.terms])


# --- locating labels -------------------------------------------------------------------

def locate(nu: Sequence[int], base: Sequence[int], L: LeviDatum) -> AffineElt:
    """Some w in W_p with w . base == nu; WrongBlock if nu is not linked to base."""
    w, found = reduce_to_fundamental_alcove(L.rs, nu, L.p)
    if found != tuple(base):
        raise WrongBlock(
            f"{list(nu)} lies in the block of {list(found)}, not {list(base)}",
            weight=tuple(nu), block=tuple(base),
        )
    return w


def wall_pair(nu: Sequence[int], setup: WallSetup, L: LeviDatum) -> Tuple[OrbitLabel, OrbitLabel]:
    """(rep(ws . lambda), rep(w . lambda)) for a mu-block label, lower one first."""
    w = locate(nu, setup.mu, L)
    upper = w.dot(setup.lambda_star)
    lower = w.compose(setup.s.elt).dot(setup.lambda_star)
    t = as_reflection(w.conjugate(setup.s.elt))
    if single_reflection_compare(t, upper) != BELOW:
        upper, lower = lower, upper
    return orbit_rep(lower, L), orbit_rep(upper, L)


def _require(v: GVector, basis: Basis, block: Sequence[int]) -> None:
    if v.basis is not basis:
        raise WrongBasis(f"expected a {basis.value} vector, got {v.basis.value}", basis=v.basis.value)
    if v.block != tuple(block):
        raise WrongBlock(f"expected block {list(block)}, got {list(v.block)}", block=v.block)


def _check_direction(direction: str) -> None:
    if direction not in (ONTO_WALL, OFF_WALL):
        raise ParseError(f"unknown translation direction {direction!r}", direction=direction)


# --- translation functors ----------------------------------------------------------------

def translate(v: GVector, direction: str, setup: WallSetup, L: LeviDatum) -> GVector:
    """Translation onto or off the s-wall on proper costandard classes."""
    _check_direction(direction)
    lam, mu, s = setup.lambda_star, setup.mu, setup.s.elt
    acc: Dict[OrbitLabel, Q] = {}
    if direction == ONTO_WALL:
        _require(v, Basis.ZBAR, lam)
        for nu, c in v.terms:
            w = locate(nu, lam, L)
            _accumulate(acc, orbit_rep(w.dot(mu), L), c)
        return GVector(Basis.ZBAR, mu, tuple(sorted(acc.items())))

    _require(v, Basis.ZBAR, mu)
    for nu, c in v.terms:
        w = locate(nu, mu, L)
        _accumulate(acc, orbit_rep(w.dot(lam), L), c)
        _accumulate(acc, orbit_rep(w.compose(s).dot(lam), L), c)
    return GVector(Basis.ZBAR, lam, tuple(sorted(acc.items())))


def theta_s(v: GVector, setup: WallSetup, L: LeviDatum) -> GVector:
    """Wall crossing: off_wall after onto_wall."""
    return translate(translate(v, ONTO_WALL, setup, L), OFF_WALL, setup, L)


def translate_standard(v: GVector, direction: str, setup: WallSetup, L: LeviDatum) -> GVector:
    """Translation on costandard classes, using the closed multiplicity rules."""
    _check_direction(direction)
    lam, mu, s = setup.lambda_star, setup.mu, setup.s.elt
    acc: Dict[OrbitLabel, Q] = {}
    if direction == ONTO_WALL:
        _require(v, Basis.NABLA, lam)
        for nu, c in v.terms:
            w = locate(nu, lam, L)
            copies = 2 if in_WIp(w.conjugate(s), L) else 1
            _accumulate(acc, orbit_rep(w.dot(mu), L), copies * c)
        return GVector(Basis.NABLA, mu, tuple(sorted(acc.items())))

    _require(v, Basis.NABLA, mu)
    for nu, c in v.terms:
        w = locate(nu, mu, L)
        _accumulate(acc, orbit_rep(w.dot(lam), L), c)
        if not in_WIp(w.conjugate(s), L):
            _accumulate(acc, orbit_rep(w.compose(s).dot(lam), L), c)
    return GVector(Basis.NABLA, lam, tuple(sorted(acc.items())))


# --- multiplicities -----------------------------------------------------------------------

HOM_DELTA = "delta"
HOM_DELTABAR = "deltabar"


def integral_coefficients(v: GVector) -> Dict[OrbitLabel, int]:
    """Coefficients of v as non-negative integers, or raise."""
    out = {}
    for label, c in v.terms:
        if c < 0:
            raise NegativeCoefficient(f"coefficient {_format_q(c)} at {list(label)}", label=label)
        if c.denominator != 1:
            raise NotIntegral(f"coefficient {_format_q(c)} at {list(label)}", label=label)
        out[label] = int(c)
    return out


def hom_dim(kind: str, xi: Sequence[int], M: GVector, L: LeviDatum) -> int:
    """dim Hom(Delta-bar(xi), M) (kind deltabar) or dim Hom(Delta(xi), M) (kind delta)."""
    integral_coefficients(M)
    if kind == HOM_DELTABAR:
        target = Basis.NABLA
    elif kind == HOM_DELTA:
        target = Basis.ZBAR
    else:
        raise ParseError(f"unknown Hom kind {kind!r}", kind=kind)
    c = convert_basis(M, target, L).coeff(xi)
    if c.denominator != 1:
        raise NotIntegral(f"{kind} multiplicity {_format_q(c)} at {list(xi)}", label=tuple(xi))
    return int(c)
