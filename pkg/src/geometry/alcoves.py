"""Alcove coordinates, the d-function, alcove walls and the up-arrow order."""

import logging
from collections import deque
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from src.common.errors import FixedPoint, InvariantViolation, WallPoint
from src.geometry.affine_weyl import Reflection
from src.geometry.rootdata import RootSystem, Weight, root_leq, scale, sub

logger = logging.getLogger(__name__)

BELOW = "below"
ABOVE = "above"


@dataclass(frozen=True)
class AlcoveCoords:
    """n[k] p < <nu+rho, beta_k^vee> < (n[k]+1) p for every positive root."""
    n: Tuple[int, ...]

    @property
    def d(self) -> int:
        return sum(self.n)


@dataclass(frozen=True)
class WallDatum:
    """Hyperplane <. + rho, beta^vee> = n p supporting a wall of an alcove.

    side is -1 when reflecting across it lowers d, +1 when it raises d.
    """
    beta_index: int
    n: int
    side: int

    def to_dict(self) -> dict:
        return {"beta": self.beta_index + 1, "n": self.n, "side": self.side}


def alcove_coords(rs: RootSystem, nu: Sequence[int], p: int) -> AlcoveCoords:
    nu = rs.check_weight(nu)
    coords = []
    for k in range(len(rs.positive_roots)):
        x = rs.pair_shifted(nu, k)
        if x % p == 0:
            raise WallPoint(
                f"{nu} lies on the hyperplane of root {k + 1} at level {x}",
                weight=nu, beta=k + 1,
            )
        coords.append(x // p)
    return AlcoveCoords(tuple(coords))


def d_value(rs: RootSystem, nu: Sequence[int], p: int) -> int:
    return alcove_coords(rs, nu, p).d


def is_regular(rs: RootSystem, nu: Sequence[int], p: int) -> bool:
    return all(rs.pair_shifted(nu, k) % p for k in range(len(rs.positive_roots)))


def is_dominant(rs: RootSystem, nu: Sequence[int]) -> bool:
    """<nu + rho, alpha^vee> >= 0 for all positive alpha (simple ones suffice)."""
    return all(x + 1 >= 0 for x in rs.check_weight(nu))


def walls_of_alcove(rs: RootSystem, nu: Sequence[int], p: int) -> List[WallDatum]:
    """Walls of the alcove containing the regular weight nu.

    H_{beta,k} is a wall exactly when reflecting across it changes the alcove
    coordinates in the beta slot alone.
    """
    here = alcove_coords(rs, nu, p)
    walls = []
    for k, n_k in enumerate(here.n):
        for level in (n_k, n_k + 1):
            image = Reflection(k, level, p, rs).dot(nu)
            there = alcove_coords(rs, image, p)
            if all(a == b for j, (a, b) in enumerate(zip(here.n, there.n)) if j != k):
                walls.append(WallDatum(k, level, -1 if level == n_k else 1))
    return walls


def alcove_walls_lower(rs: RootSystem, nu: Sequence[int], p: int) -> List[WallDatum]:
    return [w for w in walls_of_alcove(rs, nu, p) if w.side < 0]


def single_reflection_compare(t: Reflection, nu: Sequence[int]) -> str:
    """Decide t.nu < nu or t.nu > nu in the up-arrow order by comparing d."""
    rs, p = t.rs, t.p
    image = t.dot(nu)
    if image == tuple(nu):
        raise FixedPoint(f"{t.label} fixes {tuple(nu)}", weight=tuple(nu), reflection=t.label)
    before, after = d_value(rs, nu, p), d_value(rs, image, p)
    if after == before:
        raise InvariantViolation(f"{t.label} preserves d at {tuple(nu)}", weight=tuple(nu))
    return BELOW if after < before else ABOVE


def _down_steps(rs: RootSystem, nu: Weight, floor: Weight, p: int):
    """Targets s_{beta,mp} . nu with <nu+rho,beta^vee> > mp that stay >= floor."""
    for k in range(len(rs.positive_roots)):
        x = rs.pair_shifted(nu, k)
        m = x // p
        while True:
            shift = x - m * p
            m -= 1
            if shift == 0:
                continue
            target = sub(nu, scale(shift, rs.root_weights[k]))
            # lower m only moves further down
            if not root_leq(rs, floor, target):
                break
            yield target


def uparrow_leq(rs: RootSystem, mu: Sequence[int], lam: Sequence[int], p: int) -> bool:
    """Decide mu (up-arrow) lam by a downward search from lam.

    Every chain from lam down to mu stays inside the root-order interval
    [mu, lam], which is finite, so the search terminates.
    """
    mu, lam = rs.check_weight(mu), rs.check_weight(lam)
    if mu == lam:
        return True
    if not root_leq(rs, mu, lam):
        return False
    seen = {lam}
    queue = deque([lam])
    while queue:
        nu = queue.popleft()
        for target in _down_steps(rs, nu, mu, p):
            if target == mu:
                return True
            if target not in seen:
                seen.add(target)
                queue.append(target)
    logger.debug(f"uparrow search from {lam} visited {len(seen)} weights without reaching {mu}")
    return False


def uparrow_less(rs: RootSystem, mu: Sequence[int], lam: Sequence[int], p: int) -> bool:
    """Strict version: mu below lam and mu != lam."""
    return tuple(mu) != tuple(lam) and uparrow_leq(rs, mu, lam, p)
