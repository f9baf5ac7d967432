"""Theta-product tilting characters and the checks built on them."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from src.blocks.groth import (
    HOM_DELTA,
    HOM_DELTABAR,
    Basis,
    GVector,
    convert_basis,
    hom_dim,
    locate,
    theta_s,
)
from src.blocks.levi_block import LeviDatum, N_I, OrbitLabel, choose_mu, in_CI, in_WIp, orbit_rep, stabilizer_order
from src.common.errors import CheckFailed, NotInCI
from src.geometry.affine_weyl import Reflection, as_reflection
from src.geometry.alcoves import BELOW, d_value, single_reflection_compare
from src.tilting.words import ReducedWord, check_letters

logger = logging.getLogger(__name__)

DOUBLE = "double"
ONE_PLUS_LOWER = "one-plus-lower"


def starting_char(L: LeviDatum) -> GVector:
    """[T(0)] = [nabla(0)] = N_I(0) [Z(0)]."""
    zero = L.rs.zero
    return GVector.basis_vector(Basis.ZBAR, zero, zero, N_I(zero, L))


def theta_product_char(word: Union[ReducedWord, Sequence[Reflection]], L: LeviDatum) -> GVector:
    """Theta_{s_n} ... Theta_{s_1} applied to [T(0)], in the ZBAR basis."""
    letters = word.letters if isinstance(word, ReducedWord) else tuple(word)
    check_letters(letters, L)
    v = starting_char(L)
    for s in letters:
        v = theta_s(v, choose_mu(s, L.rs, L.p), L)
    return v


@dataclass(frozen=True)
class TiltSummandReport:
    top: OrbitLabel
    top_coeff: int
    character: GVector
    residual: GVector

    def to_dict(self) -> Dict[str, Any]:
        return {
            "top": list(self.top),
            "top_coeff": self.top_coeff,
            "character": self.character.to_dict(),
            "residual": self.residual.to_dict(),
        }


def tilt_summand_check(word: ReducedWord, L: LeviDatum) -> TiltSummandReport:
    """Top NABLA coefficient is 1 and everything else sits strictly lower in d."""
    rs, p = L.rs, L.p
    top = word.target
    character = theta_product_char(word, L)
    nabla = convert_basis(character, Basis.NABLA, L)
    lead = nabla.coeff(top)
    if lead != 1:
        raise CheckFailed(f"coefficient {lead} at top label {list(top)}", label=top)
    top_d = d_value(rs, top, p)
    for label in nabla.support():
        if label != top and d_value(rs, label, p) >= top_d:
            raise CheckFailed(f"label {list(label)} is not below {list(top)} in d", label=label)
    residual = nabla - GVector.basis_vector(Basis.NABLA, nabla.block, top)
    return TiltSummandReport(top, int(lead), character, residual)


@dataclass(frozen=True)
class TransWallDecomposition:
    """Certain part of Theta_s(T(nu)); remainder_below bounds the unknown summands by d."""
    tag: str
    parts: Tuple[OrbitLabel, ...]
    remainder_below: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"tag": self.tag, "parts": [list(x) for x in self.parts]}
        if self.remainder_below is not None:
            payload["remainder"] = {"d_below": self.remainder_below, "multiplicities": "unknown"}
        return payload


def refl_transwall_decompose(nu: OrbitLabel, s: Reflection, L: LeviDatum) -> TransWallDecomposition:
    rs, p = L.rs, L.p
    check_letters([s], L)
    if not in_CI(nu, L):
        raise NotInCI(f"{list(nu)} is not in C_I", weight=tuple(nu))
    w = locate(nu, rs.zero, L)
    conj = w.conjugate(s.elt)
    if in_WIp(conj, L):
        return TransWallDecomposition(DOUBLE, (tuple(nu), tuple(nu)))
    here = w.dot(rs.zero)
    if single_reflection_compare(as_reflection(conj), here) == BELOW:
        return TransWallDecomposition(DOUBLE, (tuple(nu), tuple(nu)))
    upper = w.compose(s.elt).dot(rs.zero)
    return TransWallDecomposition(ONE_PLUS_LOWER, (orbit_rep(upper, L),), d_value(rs, upper, p))


def end_stand_orders(nu: OrbitLabel, L: LeviDatum) -> Tuple[int, int]:
    """(|Stab_{W_I}(nu + pX)|, |W_I|)."""
    return stabilizer_order(nu, L), L.order_WI


def section_sizes_for_hom_bases(nu: OrbitLabel, M: GVector, L: LeviDatum) -> Tuple[int, int]:
    """(delta count, deltabar count) of the morphism families for label nu."""
    return hom_dim(HOM_DELTA, nu, M, L), hom_dim(HOM_DELTABAR, nu, M, L)
