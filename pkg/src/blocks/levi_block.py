"""Standard Levi data: W_I, W_{I,p}, the domain C-bar_I, orbit labels and N_I."""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from src.common.errors import (
    FormulaMismatch,
    InvalidLevi,
    InvariantViolation,
    NoSuchWeight,
    NotAWallReflection,
    NotInCI,
    ParseError,
)
from src.geometry.affine_weyl import (
    AffineElt,
    Reflection,
    identity,
    reduce_to_fundamental_alcove,
    simple_reflections_Sp,
    weyl_group,
)
from src.geometry.linalg import IntMatrix
from src.geometry.rootdata import RootSystem, Weight, check_standard_assumptions

logger = logging.getLogger(__name__)

OrbitLabel = Weight


@dataclass(frozen=True, eq=False)
class LeviDatum:
    """The subset I of simple roots (0-based), with p and derived group data."""
    rs: RootSystem
    I: Tuple[int, ...]
    p: int
    weyl_matrices: FrozenSet[IntMatrix]
    levi_roots: Tuple[int, ...]
    highest_levi_roots: Tuple[int, ...]

    @property
    def order_WI(self) -> int:
        return len(self.weyl_matrices)

    @property
    def label(self) -> str:
        return ",".join(str(i + 1) for i in self.I)


@dataclass(frozen=True)
class WallSetup:
    """A wall reflection s of C with a weight mu whose W_p-stabilizer is {1, s}."""
    s: Reflection
    mu: Weight
    lambda_star: Weight

    def to_dict(self) -> dict:
        return {"s": self.s.label, "mu": list(self.mu), "lambda_star": list(self.lambda_star)}


def parse_levi(text: Optional[str]) -> Tuple[int, ...]:
    """Read "I=1,3", "1,3" or "" into sorted 0-based node indices."""
    if not text:
        return ()
    body = text.strip()
    if body.upper().startswith("I="):
        body = body[2:]
    try:
        nodes = sorted({int(x) - 1 for x in body.split(",") if x.strip()})
    except ValueError:
        raise ParseError(f"cannot read Levi subset {text!r}", text=text)
    return tuple(nodes)


def _highest_in(rs: RootSystem, roots: Sequence[int], nodes: Set[int]) -> int:
    members = [k for k in roots if all(rs.positive_roots[k][i] == 0 for i in range(rs.rank) if i not in nodes)]
    return max(members, key=lambda k: sum(rs.coroots[k]))


@lru_cache(maxsize=None)
def make_levi(rs: RootSystem, I: Tuple[int, ...], p: int) -> LeviDatum:
    """Validate p and I and precompute W_I and the roots of Phi_I."""
    simple_reflections_Sp(rs, p)
    check_standard_assumptions(rs, p)
    I = tuple(sorted(set(I)))
    if any(not 0 <= i < rs.rank for i in I):
        raise InvalidLevi(f"Levi subset {[i + 1 for i in I]} out of range for rank {rs.rank}", I=[i + 1 for i in I])

    levi_roots = tuple(
        k for k, beta in enumerate(rs.positive_roots)
        if all(c == 0 for i, c in enumerate(beta) if i not in I)
    )
    # one highest root per connected piece of I inside its Dynkin diagram
    pieces: List[Set[int]] = []
    for i in I:
        linked = [piece for piece in pieces if any(rs.cartan_matrix[i][j] for j in piece)]
        merged = {i}.union(*linked) if linked else {i}
        pieces = [piece for piece in pieces if piece not in linked] + [merged]
    highest = tuple(sorted(_highest_in(rs, levi_roots, piece) for piece in pieces))

    levi = LeviDatum(rs, I, p, weyl_group(rs, I), levi_roots, highest)
    logger.debug(f"Levi I={{{levi.label}}} of {rs.name} at p={p}: |W_I|={levi.order_WI}")
    return levi


# --- membership ---------------------------------------------------------------

def in_WI(matrix: IntMatrix, L: LeviDatum) -> bool:
    """A Weyl matrix lies in W_I iff it fixes every fundamental weight outside I."""
    n = L.rs.rank
    return all(matrix[i][j] == (1 if i == j else 0) for j in range(n) if j not in L.I for i in range(n))


def in_WIp(w: AffineElt, L: LeviDatum) -> bool:
    """w in W_{I,p} = pZI x W_I."""
    return in_WI(w.matrix, L) and all(c == 0 for i, c in enumerate(w.gamma) if i not in L.I)


def in_CI_closure(nu: Sequence[int], L: LeviDatum) -> bool:
    return all(0 <= L.rs.pair_shifted(nu, k) <= L.p for k in L.levi_roots)


def in_CI(nu: Sequence[int], L: LeviDatum) -> bool:
    return all(0 < L.rs.pair_shifted(nu, k) < L.p for k in L.levi_roots)


# --- orbit representatives ----------------------------------------------------------

def orbit_rep_with_elt(weight: Sequence[int], L: LeviDatum) -> Tuple[AffineElt, OrbitLabel]:
    """Walk into C-bar_I using the walls of C_I; returns (u, rep) with u . rep == weight."""
    rs, p = L.rs, L.p
    nu = rs.check_weight(weight)
    u = identity(rs, p)
    while True:
        step = next((Reflection(i, 0, p, rs) for i in L.I if nu[i] + 1 < 0), None)
        if step is None:
            step = next(
                (Reflection(k, 1, p, rs) for k in L.highest_levi_roots if rs.pair_shifted(nu, k) > p),
                None,
            )
        if step is None:
            return u, nu
        nu = step.dot(nu)
        u = u.compose(step.elt)


def orbit_rep(weight: Sequence[int], L: LeviDatum) -> OrbitLabel:
    """Unique point of W_{I,p} . weight inside C-bar_I."""
    return orbit_rep_with_elt(weight, L)[1]


def box_weights(rank: int, radius: int) -> Iterable[Weight]:
    return itertools.product(range(-radius, radius + 1), repeat=rank)


def block_base(weight: Sequence[int], L: LeviDatum) -> Weight:
    """The point of C-bar in the W_p . weight orbit (the linkage-class anchor)."""
    return reduce_to_fundamental_alcove(L.rs, weight, L.p)[1]


def regular_labels(L: LeviDatum, radius: int) -> List[OrbitLabel]:
    """Labels of the lambda_star = 0 block inside a coordinate box."""
    zero = L.rs.zero
    return [nu for nu in box_weights(L.rs.rank, radius) if in_CI_closure(nu, L) and block_base(nu, L) == zero]


def wall_labels(setup: WallSetup, L: LeviDatum, radius: int) -> List[OrbitLabel]:
    """Labels of the mu block inside a coordinate box."""
    return [nu for nu in box_weights(L.rs.rank, radius) if in_CI_closure(nu, L) and block_base(nu, L) == setup.mu]


# --- N_I -----------------------------------------------------------------------------------

def brute_orbit_size(weight: Sequence[int], L: LeviDatum) -> int:
    """|W_I . (weight + pX)| from the residues of the W_I dot orbit mod p."""
    rs, p = L.rs, L.p
    shifted = tuple(x + 1 for x in weight)
    residues = set()
    for m in L.weyl_matrices:
        image = tuple(sum(row[j] * shifted[j] for j in range(rs.rank)) - 1 for row in m)
        residues.add(tuple(x % p for x in image))
    return len(residues)


def n_i_formula(weight: Sequence[int], L: LeviDatum) -> Optional[int]:
    """Closed form when at most one positive root pairs to a multiple of p."""
    rs, p = L.rs, L.p
    walls = [k for k in range(len(rs.positive_roots)) if rs.pair_shifted(weight, k) % p == 0]
    if not walls:
        return L.order_WI
    if len(walls) == 1:
        return L.order_WI // 2 if walls[0] in L.levi_roots else L.order_WI
    return None


@lru_cache(maxsize=65536)
def _n_i(weight: Weight, L: LeviDatum) -> int:
    brute = brute_orbit_size(weight, L)
    formula = n_i_formula(weight, L)
    if formula is not None and formula != brute:
        raise FormulaMismatch(
            f"N_I({list(weight)}) orbit count {brute} != closed form {formula}",
            weight=weight, brute=brute, formula=formula,
        )
    return brute


def N_I(weight: Sequence[int], L: LeviDatum) -> int:
    return _n_i(L.rs.check_weight(weight), L)


def stabilizer_order(weight: Sequence[int], L: LeviDatum) -> int:
    """|Stab_{W_I}(weight + pX)|."""
    return L.order_WI // N_I(weight, L)


# --- wall setups ----------------------------------------------------------------------------

def refl_stays_regular(w: AffineElt, setup: WallSetup, L: LeviDatum) -> bool:
    """Whether ws . lambda_star stays in C_I, given w . lambda_star does.

    Cross-checked against wsw^-1 not in W_{I,p}.
    """
    nu = w.dot(setup.lambda_star)
    if not in_CI(nu, L):
        raise NotInCI(f"{list(nu)} is not in C_I", weight=nu)
    image = w.compose(setup.s.elt).dot(setup.lambda_star)
    stays = in_CI(image, L)
    if stays == in_WIp(w.conjugate(setup.s.elt), L):
        raise InvariantViolation(
            f"reflection test disagrees with conjugate membership at {list(nu)}",
            weight=nu, reflection=setup.s.label,
        )
    return stays


def _theta_solution(coeffs: Sequence[int], total: int) -> Optional[List[int]]:
    """Lexicographically smallest positive x with sum coeffs[i] x[i] == total."""
    if not coeffs:
        return [] if total == 0 else None
    rest = sum(coeffs[1:])
    x = 1
    while coeffs[0] * x + rest <= total:
        tail = _theta_solution(coeffs[1:], total - coeffs[0] * x)
        if tail is not None:
            return [x] + tail
        x += 1
    return None


@lru_cache(maxsize=None)
def choose_mu(s: Reflection, rs: RootSystem, p: int) -> WallSetup:
    """Pick mu in C-bar lying on the wall of s and on no other wall of C."""
    if p < rs.coxeter_number:
        raise NoSuchWeight(f"no wall weight for p={p} < h={rs.coxeter_number}", p=p)
    walls = simple_reflections_Sp(rs, p)
    if s not in walls:
        raise NotAWallReflection(f"{s.label} is not a wall of the fundamental alcove", reflection=s.label)

    shifted = [1] * rs.rank
    if s.n == 0:
        shifted[s.beta_index] = 0
    else:
        nodes = rs.components[s.rs.component_of(next(i for i, c in enumerate(s.beta) if c))]
        coeffs = [rs.coroots[s.beta_index][i] for i in nodes]
        solution = _theta_solution(coeffs, p)
        if solution is None:
            raise NoSuchWeight(f"no integral point on the wall of {s.label} at p={p}", reflection=s.label)
        for i, x in zip(nodes, solution):
            shifted[i] = x
    mu = tuple(x - 1 for x in shifted)

    fixing = [t for t in walls if t.fixes(mu)]
    if fixing != [s]:
        raise NoSuchWeight(
            f"{list(mu)} is fixed by {[t.label for t in fixing]}, not just {s.label}",
            reflection=s.label,
        )
    logger.debug(f"Wall weight for {s.label} at p={p}: {mu}")
    return WallSetup(s, mu, rs.zero)
