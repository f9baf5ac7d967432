"""Cardinality calculus for Delta-bar and Delta sections of nabla-flags.

A section is recorded only by how many morphisms it holds per label; the
transforms below mirror how translation onto and off a wall rebuilds a
section from an old one.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, Mapping, Sequence, Tuple

from src.blocks.groth import Basis, GVector, convert_basis, integral_coefficients, locate
from src.blocks.levi_block import LeviDatum, N_I, OrbitLabel, WallSetup, in_WIp, orbit_rep
from src.common.errors import NotDivisible, ParseError, WrongBasis, WrongBlock

logger = logging.getLogger(__name__)


class SectionKind(str, Enum):
    DELTABAR = "DELTABAR"
    DELTA = "DELTA"


@dataclass(frozen=True)
class SectionSkeleton:
    kind: SectionKind
    block: OrbitLabel
    sizes: Tuple[Tuple[OrbitLabel, int], ...]

    @classmethod
    def build(cls, kind: SectionKind, block: Sequence[int], items: Iterable[Tuple[Sequence[int], int]]) -> "SectionSkeleton":
        acc: Dict[OrbitLabel, int] = {}
        for label, count in items:
            acc[tuple(label)] = acc.get(tuple(label), 0) + count
        return cls(SectionKind(kind), tuple(block), tuple(sorted((k, v) for k, v in acc.items() if v)))

    def as_dict(self) -> Dict[OrbitLabel, int]:
        return dict(self.sizes)

    def total(self) -> int:
        return sum(c for _, c in self.sizes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "block": list(self.block),
            "sizes": [{"label": list(k), "count": c} for k, c in self.sizes],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SectionSkeleton":
        try:
            return cls.build(
                SectionKind(data["kind"]),
                data.get("block", []),
                [(s["label"], int(s["count"])) for s in data.get("sizes", [])],
            )
        except (KeyError, ValueError, TypeError) as e:
            raise ParseError(f"malformed section skeleton: {e}")


def skeleton_from_char(M: GVector, kind: SectionKind, L: LeviDatum) -> SectionSkeleton:
    """Section sizes read off a costandard-filtered character."""
    kind = SectionKind(kind)
    basis = Basis.NABLA if kind is SectionKind.DELTABAR else Basis.ZBAR
    counts = integral_coefficients(convert_basis(M, basis, L))
    return SectionSkeleton.build(kind, M.block, counts.items())


def _require(sk: SectionSkeleton, kind: SectionKind, block: Sequence[int]) -> None:
    if sk.kind is not kind:
        raise WrongBasis(f"expected a {kind.value} skeleton, got {sk.kind.value}")
    if sk.block != tuple(block):
        raise WrongBlock(f"expected block {list(block)}, got {list(sk.block)}", block=sk.block)


def onto_wall_transform(sk: SectionSkeleton, setup: WallSetup, L: LeviDatum) -> SectionSkeleton:
    """Each pi at rep(w.lambda) lands at rep(w.mu), doubled when wsw^-1 in W_{I,p}."""
    _require(sk, SectionKind.DELTABAR, setup.lambda_star)
    s = setup.s.elt
    out = []
    for nu, count in sk.sizes:
        w = locate(nu, setup.lambda_star, L)
        copies = 2 if in_WIp(w.conjugate(s), L) else 1
        out.append((orbit_rep(w.dot(setup.mu), L), copies * count))
    return SectionSkeleton.build(SectionKind.DELTABAR, setup.mu, out)


def off_wall_transform(sk: SectionSkeleton, setup: WallSetup, L: LeviDatum) -> SectionSkeleton:
    """Each pi at rep(w.mu) splits over rep(ws.lambda) and rep(w.lambda) unless wsw^-1 in W_{I,p}."""
    _require(sk, SectionKind.DELTABAR, setup.mu)
    s = setup.s.elt
    out = []
    for nu, count in sk.sizes:
        w = locate(nu, setup.mu, L)
        out.append((orbit_rep(w.dot(setup.lambda_star), L), count))
        if not in_WIp(w.conjugate(s), L):
            out.append((orbit_rep(w.compose(s).dot(setup.lambda_star), L), count))
    return SectionSkeleton.build(SectionKind.DELTABAR, setup.lambda_star, out)


def theta_transform(sk: SectionSkeleton, setup: WallSetup, L: LeviDatum) -> SectionSkeleton:
    return off_wall_transform(onto_wall_transform(sk, setup, L), setup, L)


def deltabar_to_delta(sk: SectionSkeleton, L: LeviDatum) -> SectionSkeleton:
    if sk.kind is not SectionKind.DELTABAR:
        raise WrongBasis("expected a DELTABAR skeleton")
    return SectionSkeleton.build(SectionKind.DELTA, sk.block, [(k, c * N_I(k, L)) for k, c in sk.sizes])


def delta_to_deltabar(sk: SectionSkeleton, L: LeviDatum) -> SectionSkeleton:
    if sk.kind is not SectionKind.DELTA:
        raise WrongBasis("expected a DELTA skeleton")
    out = []
    for label, count in sk.sizes:
        n, rem = divmod(count, N_I(label, L))
        if rem:
            raise NotDivisible(
                f"{count} sections at {list(label)} not divisible by N_I={N_I(label, L)}",
                label=label, count=count,
            )
        out.append((label, n))
    return SectionSkeleton.build(SectionKind.DELTABAR, sk.block, out)
