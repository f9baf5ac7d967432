"""Elements of W and W_p, the dot action and the simple affine reflections S_p."""

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from src.common.errors import (
    BoundExceeded,
    DimensionMismatch,
    NotAPositiveRoot,
    NotPrime,
    ParseError,
    PTooSmall,
)
from src.geometry.linalg import IntMatrix, identity_matrix, invert_integral, mat_mul, mat_vec
from src.geometry.rootdata import RootSystem, Weight, add, rho, scale, sub

logger = logging.getLogger(__name__)

MAX_GROUP_ORDER = 100_000


@dataclass(frozen=True)
class AffineElt:
    """t_{p gamma} composed with a finite Weyl element.

    matrix acts on fundamental-weight coordinates; gamma is in simple-root
    coordinates. Equality and hashing use (matrix, gamma, p) only.
    """
    matrix: IntMatrix
    gamma: Tuple[int, ...]
    p: int
    rs: RootSystem = field(compare=False, repr=False)

    def apply(self, weight: Sequence[int]) -> Weight:
        """Linear-affine action w(lambda) = M lambda + p A gamma."""
        shift = _root_to_weight(self.rs, self.gamma)
        return add(mat_vec(self.matrix, weight), scale(self.p, shift))

    def dot(self, weight: Sequence[int]) -> Weight:
        weight = self.rs.check_weight(weight)
        r = rho(self.rs)
        return sub(self.apply(add(weight, r)), r)

    def compose(self, other: "AffineElt") -> "AffineElt":
        """self o other."""
        if other.rs is not self.rs or other.p != self.p:
            raise DimensionMismatch("cannot compose elements of different groups")
        moved = mat_vec(self.matrix, _root_to_weight(self.rs, other.gamma))
        gamma = add(self.rs.root_coords(moved), self.gamma)
        return AffineElt(mat_mul(self.matrix, other.matrix), gamma, self.p, self.rs)

    def __mul__(self, other: "AffineElt") -> "AffineElt":
        return self.compose(other)

    def inverse(self) -> "AffineElt":
        inv = invert_integral(self.matrix)
        moved = mat_vec(inv, _root_to_weight(self.rs, self.gamma))
        gamma = tuple(-c for c in self.rs.root_coords(moved))
        return AffineElt(inv, gamma, self.p, self.rs)

    def conjugate(self, other: "AffineElt") -> "AffineElt":
        """self o other o self^-1."""
        return self.compose(other).compose(self.inverse())

    @property
    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(self.rs.rank) and not any(self.gamma)


def _root_to_weight(rs: RootSystem, gamma: Sequence[int]) -> Weight:
    return mat_vec(rs.cartan_matrix, gamma)


def identity(rs: RootSystem, p: int) -> AffineElt:
    return AffineElt(identity_matrix(rs.rank), rs.zero, p, rs)


def translation(rs: RootSystem, gamma: Sequence[int], p: int) -> AffineElt:
    """t_{p gamma}, gamma in root coordinates."""
    if len(gamma) != rs.rank:
        raise DimensionMismatch(f"translation needs {rs.rank} root coordinates")
    return AffineElt(identity_matrix(rs.rank), tuple(gamma), p, rs)


def reflection_matrix(rs: RootSystem, k: int) -> IntMatrix:
    """Matrix of s_beta on fundamental-weight coordinates."""
    bw, d = rs.root_weights[k], rs.coroots[k]
    n = rs.rank
    return tuple(tuple((1 if i == j else 0) - bw[i] * d[j] for j in range(n)) for i in range(n))


def finite_projection(w: AffineElt) -> AffineElt:
    """w-bar: drop the translation part."""
    return AffineElt(w.matrix, w.rs.zero, w.p, w.rs)


@dataclass(frozen=True)
class Reflection:
    """s_{beta, n p} = t_{n p beta} o s_beta for the positive root beta_index."""
    beta_index: int
    n: int
    p: int
    rs: RootSystem = field(compare=False, repr=False)

    @property
    def beta(self) -> Tuple[int, ...]:
        return self.rs.positive_roots[self.beta_index]

    @property
    def level(self) -> int:
        return self.n * self.p

    @property
    def elt(self) -> AffineElt:
        return AffineElt(
            reflection_matrix(self.rs, self.beta_index),
            scale(self.n, self.beta),
            self.p,
            self.rs,
        )

    def dot(self, weight: Sequence[int]) -> Weight:
        x = self.rs.pair_shifted(weight, self.beta_index) - self.level
        return sub(weight, scale(x, self.rs.root_weights[self.beta_index]))

    def fixes(self, weight: Sequence[int]) -> bool:
        return self.rs.pair_shifted(weight, self.beta_index) == self.level

    @property
    def label(self) -> str:
        return f"s[{self.beta_index + 1},{self.n}]"

    def __str__(self) -> str:
        return self.label


def reflection_elt(rs: RootSystem, beta: Sequence[int], n: int, p: int) -> Reflection:
    k = rs.root_index(beta)
    if k is None:
        raise NotAPositiveRoot(f"{tuple(beta)} is not a positive root of {rs.name}", beta=tuple(beta))
    return Reflection(k, n, p, rs)


def check_prime(p: int) -> None:
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise NotPrime(f"{p} is not prime", p=p)


@lru_cache(maxsize=None)
def simple_reflections_Sp(rs: RootSystem, p: int) -> Tuple[Reflection, ...]:
    """Reflections in the walls of the fundamental alcove C.

    One per simple root (level 0), then one per component for its highest
    short root at level p.
    """
    if p < rs.coxeter_number:
        raise PTooSmall(f"p={p} is below the Coxeter number h={rs.coxeter_number}", p=p, h=rs.coxeter_number)
    check_prime(p)
    walls = [Reflection(i, 0, p, rs) for i in range(rs.rank)]
    walls.extend(Reflection(k, 1, p, rs) for k in rs.highest_short_roots)
    return tuple(walls)


def as_reflection(w: AffineElt) -> Optional[Reflection]:
    """Recognise w as some s_{beta, n p}, or return None."""
    rs = w.rs
    for k, beta in enumerate(rs.positive_roots):
        if reflection_matrix(rs, k) != w.matrix:
            continue
        # gamma must be n * beta
        j = next(i for i, c in enumerate(beta) if c)
        n, rem = divmod(w.gamma[j], beta[j])
        if rem == 0 and scale(n, beta) == w.gamma:
            return Reflection(k, n, w.p, rs)
        return None
    return None


def tau_weight(rs: RootSystem, weight: Sequence[int], levi: Iterable[int]) -> Weight:
    """-w_I(lambda) for the longest element w_I of W_I."""
    nodes = sorted(set(levi))
    word = []
    v = rho(rs)
    while True:
        i = next((i for i in nodes if v[i] > 0), None)
        if i is None:
            break
        v = rs.simple_reflect(v, i)
        word.append(i)
    out = rs.check_weight(weight)
    for i in word:
        out = rs.simple_reflect(out, i)
    return tuple(-x for x in out)


def is_weyl_matrix(rs: RootSystem, matrix: IntMatrix) -> bool:
    """Decide M in W by reducing M(rho) back to rho with simple reflections."""
    v = mat_vec(matrix, rho(rs))
    u = identity_matrix(rs.rank)
    for _ in range(MAX_GROUP_ORDER):
        i = next((i for i, x in enumerate(v) if x < 0), None)
        if i is None:
            break
        v = rs.simple_reflect(v, i)
        u = mat_mul(reflection_matrix(rs, i), u)
    else:
        return False
    return v == rho(rs) and mat_mul(u, matrix) == identity_matrix(rs.rank)


def weyl_group(rs: RootSystem, nodes: Optional[Iterable[int]] = None) -> FrozenSet[IntMatrix]:
    """All matrices of the parabolic subgroup W_I (W itself when nodes is None)."""
    nodes = range(rs.rank) if nodes is None else sorted(set(nodes))
    gens = [reflection_matrix(rs, i) for i in nodes]
    start = identity_matrix(rs.rank)
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for g in gens:
            image = mat_mul(g, m)
            if image not in seen:
                seen.add(image)
                if len(seen) > MAX_GROUP_ORDER:
                    raise BoundExceeded(f"group order exceeds {MAX_GROUP_ORDER}")
                queue.append(image)
    return frozenset(seen)


def reduce_to_fundamental_alcove(rs: RootSystem, weight: Sequence[int], p: int) -> Tuple[AffineElt, Weight]:
    """Walk lambda into the closed fundamental alcove.

    Returns (w, base) with base in C-bar and w . base == lambda.
    """
    nu = rs.check_weight(weight)
    w = identity(rs, p)
    while True:
        step = next((Reflection(i, 0, p, rs) for i in range(rs.rank) if nu[i] + 1 < 0), None)
        if step is None:
            step = next(
                (Reflection(k, 1, p, rs) for k in rs.highest_short_roots if rs.pair_shifted(nu, k) > p),
                None,
            )
        if step is None:
            return w, nu
        nu = step.dot(nu)
        w = w.compose(step.elt)


# --- textual syntax ----------------------------------------------------------

_ELEMENT = re.compile(r"^(s)\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]$|^(t)\[([-\d,\s]*)\]$|^(e)$")


def parse_element(rs: RootSystem, p: int, text: str) -> AffineElt:
    """Parse "s[i,n]", "t[c1,...]", "e" joined by "*" (left to right composition)."""
    result = identity(rs, p)
    for part in (x.strip() for x in text.split("*")):
        m = _ELEMENT.match(part)
        if not m:
            raise ParseError(f"cannot read element {part!r}", text=text)
        if m.group(1):
            k = int(m.group(2)) - 1
            if not 0 <= k < len(rs.positive_roots):
                raise NotAPositiveRoot(f"no positive root with index {k + 1}", index=k + 1)
            factor = Reflection(k, int(m.group(3)), p, rs).elt
        elif m.group(4):
            gamma = tuple(int(x) for x in m.group(5).split(",") if x.strip())
            factor = translation(rs, gamma, p)
        else:
            factor = identity(rs, p)
        result = result.compose(factor)
    return result


def parse_reflection(rs: RootSystem, p: int, text: str) -> Reflection:
    refl = as_reflection(parse_element(rs, p, text))
    if refl is None:
        raise ParseError(f"{text!r} is not a reflection", text=text)
    return refl


def format_element(w: AffineElt) -> str:
    """Render as a reflection when possible, else as t[gamma]*matrix form."""
    if w.is_identity:
        return "e"
    refl = as_reflection(w)
    if refl is not None:
        return refl.label
    rows = ";".join(",".join(str(x) for x in row) for row in w.matrix)
    return f"t[{','.join(str(c) for c in w.gamma)}]*M[{rows}]"
