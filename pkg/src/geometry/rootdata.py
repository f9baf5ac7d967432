"""Root systems and weight-lattice arithmetic for types A-G.

Weights are integer tuples in the fundamental-weight basis, so the pairing
of a weight with the i-th simple coroot is its i-th coordinate. Roots are
integer tuples in the simple-root basis; coroots in the simple-coroot basis.
Simple roots and components follow Bourbaki numbering.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from src.common.errors import (
    DimensionMismatch,
    ParseError,
    RankCapExceeded,
    StandardAssumptionViolated,
    UnknownType,
)
from src.geometry.linalg import IntMatrix, RatMatrix, determinant, invert, solve_integral

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]
Root = Tuple[int, ...]
Coroot = Tuple[int, ...]
TypeSpec = Tuple[Tuple[str, int], ...]

DEFAULT_RANK_CAP = 8

# Allowed ranks per family letter
FAMILY_RANKS = {
    "A": range(1, 100),
    "B": range(2, 100),
    "C": range(2, 100),
    "D": range(4, 100),
    "E": (6, 7, 8),
    "F": (4,),
    "G": (2,),
}

_TOKEN = re.compile(r"^([A-Za-z])(\d+)$")
_SEPARATORS = re.compile(r"\s*(?:x|×|,|\+|\s)\s*")


# --- Cartan matrices -------------------------------------------------------

def _edges(letter: str, n: int) -> List[Tuple[int, int]]:
    """Simply-laced skeleton of the Dynkin diagram (0-based nodes)."""
    if letter in "ABCFG":
        return [(i, i + 1) for i in range(n - 1)]
    if letter == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    # E_n: 1-3-4-5-...-n with 2 attached to 4
    return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]


def cartan_matrix_irreducible(letter: str, n: int) -> List[List[int]]:
    """Cartan matrix with entries <alpha_i^vee, alpha_j>."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(letter, n):
        a[i][j] = a[j][i] = -1
    if letter == "B":
        a[n - 1][n - 2] = -2
    elif letter == "C":
        a[n - 2][n - 1] = -2
    elif letter == "F":
        a[2][1] = -2
    elif letter == "G":
        a[0][1] = -3
    return a


# --- the root system --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootSystem:
    """A (possibly reducible) crystallographic root system.

    Instances are cached per type spec, so identity comparison is enough.
    """
    cartan_type: TypeSpec
    rank: int
    cartan_matrix: IntMatrix
    inverse_cartan: RatMatrix
    positive_roots: Tuple[Root, ...]
    coroots: Tuple[Coroot, ...]
    root_weights: Tuple[Weight, ...]
    components: Tuple[Tuple[int, ...], ...]
    highest_short_roots: Tuple[int, ...]
    coxeter_number: int
    fundamental_group_order: int

    @property
    def name(self) -> str:
        return "x".join(f"{letter}{n}" for letter, n in self.cartan_type)

    @property
    def simple_roots(self) -> Tuple[Root, ...]:
        return self.positive_roots[: self.rank]

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    def check_weight(self, weight: Sequence[int]) -> Weight:
        if len(weight) != self.rank:
            raise DimensionMismatch(
                f"expected {self.rank} coordinates, got {len(weight)}",
                expected=self.rank, got=len(weight),
            )
        return tuple(int(x) for x in weight)

    def pair(self, weight: Sequence[int], k: int) -> int:
        """<weight, beta_k^vee> for the k-th positive root (0-based)."""
        return sum(x * d for x, d in zip(weight, self.coroots[k]))

    def pair_shifted(self, weight: Sequence[int], k: int) -> int:
        """<weight + rho, beta_k^vee>."""
        return sum((x + 1) * d for x, d in zip(weight, self.coroots[k]))

    def root_index(self, beta: Sequence[int]) -> Optional[int]:
        try:
            return self.positive_roots.index(tuple(beta))
        except ValueError:
            return None

    def component_of(self, i: int) -> int:
        for c, nodes in enumerate(self.components):
            if i in nodes:
                return c
        raise DimensionMismatch(f"node {i} out of range", node=i)

    def root_coords(self, weight: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """Simple-root coordinates of weight, or None off the root lattice."""
        return solve_integral(self.inverse_cartan, weight)

    def simple_reflect(self, weight: Sequence[int], i: int) -> Weight:
        """Linear action of s_{alpha_i} on a weight."""
        x = weight[i]
        col = self.root_weights[i]
        return tuple(w - x * c for w, c in zip(weight, col))

    def reflect(self, weight: Sequence[int], k: int) -> Weight:
        """Linear action of s_beta for the k-th positive root."""
        x = self.pair(weight, k)
        return tuple(w - x * c for w, c in zip(weight, self.root_weights[k]))


def pairing(weight: Sequence[int], coroot: Sequence[int]) -> int:
    """<weight, coroot> with the coroot in simple-coroot coordinates."""
    if len(weight) != len(coroot):
        raise DimensionMismatch(
            f"weight has {len(weight)} coordinates, coroot has {len(coroot)}",
            expected=len(coroot), got=len(weight),
        )
    return sum(x * d for x, d in zip(weight, coroot))


def rho(rs: RootSystem) -> Weight:
    return (1,) * rs.rank


def add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(c: int, a: Sequence[int]) -> Weight:
    return tuple(c * x for x in a)


def root_leq(rs: RootSystem, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """mu <= lam: lam - mu is a non-negative integer sum of simple roots."""
    coords = rs.root_coords(sub(lam, mu))
    return coords is not None and all(c >= 0 for c in coords)


def check_standard_assumptions(rs: RootSystem, p: int) -> None:
    """Reject p dividing |X/ZPhi| (p-torsion in the fundamental group)."""
    if rs.fundamental_group_order % p == 0:
        raise StandardAssumptionViolated(
            f"p={p} divides |X/ZPhi|={rs.fundamental_group_order} for {rs.name}",
            p=p, order=rs.fundamental_group_order,
        )


# --- construction ------------------------------------------------------------

def parse_type_spec(text: str) -> TypeSpec:
    """Parse strings such as "A2", "B2,A1" or "A2xA1"."""
    tokens = [t for t in _SEPARATORS.split(text.strip()) if t]
    if not tokens:
        raise ParseError("empty type spec", text=text)
    spec = []
    for token in tokens:
        m = _TOKEN.match(token)
        if not m:
            raise ParseError(f"cannot read Dynkin type {token!r}", text=text)
        spec.append((m.group(1).upper(), int(m.group(2))))
    return tuple(spec)


def _symmetrizer(a: Sequence[Sequence[int]], nodes: Sequence[int]) -> Dict[int, Q]:
    """Half squared lengths l_i with a[i][j] l_i = a[j][i] l_j on one component."""
    lengths = {nodes[0]: Q(1)}
    queue = deque([nodes[0]])
    while queue:
        i = queue.popleft()
        for j in nodes:
            if j in lengths or a[i][j] == 0:
                continue
            lengths[j] = Q(a[i][j]) * lengths[i] / a[j][i]
            queue.append(j)
    return lengths


def _positive_roots(a: Sequence[Sequence[int]], n: int) -> List[Root]:
    """Close the simple roots under simple reflections, keeping positives."""
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            x = sum(a[i][j] * beta[j] for j in range(n))
            image = tuple(c - x if k == i else c for k, c in enumerate(beta))
            if all(c >= 0 for c in image) and any(image) and image not in seen:
                seen.add(image)
                queue.append(image)
    return sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r)))


@lru_cache(maxsize=None)
def build_root_system(type_spec: TypeSpec, rank_cap: int = DEFAULT_RANK_CAP) -> RootSystem:
    """Build the root system for a tuple of (family letter, rank) pairs."""
    if not type_spec:
        raise UnknownType("empty type spec")
    for letter, n in type_spec:
        if letter not in FAMILY_RANKS or n not in FAMILY_RANKS[letter]:
            raise UnknownType(f"unsupported Dynkin type {letter}{n}", letter=letter, rank=n)
    total = sum(n for _, n in type_spec)
    if total > rank_cap:
        raise RankCapExceeded(f"total rank {total} exceeds cap {rank_cap}", rank=total, cap=rank_cap)

    a = [[0] * total for _ in range(total)]
    components = []
    offset = 0
    for letter, n in type_spec:
        block = cartan_matrix_irreducible(letter, n)
        for i in range(n):
            for j in range(n):
                a[offset + i][offset + j] = block[i][j]
        components.append(tuple(range(offset, offset + n)))
        offset += n

    lengths: Dict[int, Q] = {}
    for nodes in components:
        lengths.update(_symmetrizer(a, nodes))

    roots = _positive_roots(a, total)
    coroots = []
    for beta in roots:
        norm = sum(beta[i] * beta[j] * a[i][j] * lengths[i] for i in range(total) for j in range(total))
        d = [Q(2) * beta[j] * lengths[j] / norm for j in range(total)]
        if any(x.denominator != 1 for x in d):
            raise UnknownType(f"non-integral coroot for {beta}")
        coroots.append(tuple(int(x) for x in d))
    weights = [tuple(sum(a[i][j] * beta[j] for j in range(total)) for i in range(total)) for beta in roots]

    highest = []
    for nodes in components:
        members = [k for k, beta in enumerate(roots) if all(beta[i] == 0 for i in range(total) if i not in nodes)]
        highest.append(max(members, key=lambda k: sum(coroots[k])))

    cartan = tuple(tuple(row) for row in a)
    inverse = invert(cartan)
    rs = RootSystem(
        cartan_type=tuple(type_spec),
        rank=total,
        cartan_matrix=cartan,
        inverse_cartan=inverse,
        positive_roots=tuple(roots),
        coroots=tuple(coroots),
        root_weights=tuple(weights),
        components=tuple(components),
        highest_short_roots=tuple(highest),
        coxeter_number=max(sum(d) for d in coroots) + 1,
        fundamental_group_order=abs(determinant(cartan)),
    )
    logger.debug(f"Built {rs.name}: {len(roots)} positive roots, h={rs.coxeter_number}")
    return rs


def root_system(text: str, rank_cap: int = DEFAULT_RANK_CAP) -> RootSystem:
    """Convenience wrapper: parse a type string and build it."""
    return build_root_system(parse_type_spec(text), rank_cap)
