"""Brute-force verifiers that avoid the closed forms they check.

Only root-system and affine Weyl primitives are used here; nothing from the
Levi-block, Grothendieck-group or tilting formulas.
"""

import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, Sequence

import networkx as nx

from src.blocks.levi_block import LeviDatum
from src.common.errors import BoundExceeded
from src.geometry.affine_weyl import AffineElt, reflection_matrix
from src.geometry.linalg import IntMatrix, identity_matrix, mat_mul, mat_vec
from src.geometry.rootdata import RootSystem, Weight, add, root_leq, scale, sub

logger = logging.getLogger(__name__)

DEFAULT_NODE_LIMIT = 200_000


def _dot_simple(rs: RootSystem, weight: Sequence[int], i: int) -> Weight:
    """s_i . weight = weight - (weight_i + 1) alpha_i."""
    return sub(weight, scale(weight[i] + 1, rs.root_weights[i]))


def brute_n_i(weight: Sequence[int], L: LeviDatum) -> int:
    """Size of the W_I dot orbit of weight + pX, explored on residues mod p."""
    rs, p = L.rs, L.p
    nodes = sorted(L.I)
    start = tuple(x % p for x in weight)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in nodes:
            image = tuple(x % p for x in _dot_simple(rs, v, i))
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return len(seen)


def enumerate_levi_weyl(rs: RootSystem, I: Iterable[int]) -> FrozenSet[IntMatrix]:
    """W_I as matrices, by closure under its simple reflections."""
    gens = [reflection_matrix(rs, i) for i in sorted(set(I))]
    start = identity_matrix(rs.rank)
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for g in gens:
            image = mat_mul(m, g)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return frozenset(seen)


def brute_in_WIp(w: AffineElt, L: LeviDatum) -> bool:
    """Finite part among the enumerated W_I and translation inside pZI."""
    nodes = set(L.I)
    if w.matrix not in enumerate_levi_weyl(w.rs, nodes):
        return False
    return all(c == 0 for i, c in enumerate(w.gamma) if i not in nodes)


def brute_linked(lam: Sequence[int], mu: Sequence[int], L: LeviDatum) -> bool:
    """Some u in W_I has u . mu - lam in pZI."""
    rs, p, nodes = L.rs, L.p, set(L.I)
    shifted = tuple(x + 1 for x in mu)
    for m in enumerate_levi_weyl(rs, nodes):
        image = tuple(x - 1 for x in mat_vec(m, shifted))
        coords = rs.root_coords(sub(image, lam))
        if coords is None:
            continue
        if all(c % p == 0 for c in coords) and all(c == 0 for i, c in enumerate(coords) if i not in nodes):
            return True
    return False


def _in_box(weight: Sequence[int], radius: int) -> bool:
    return all(-radius <= x <= radius for x in weight)


def brute_orbit(
    weight: Sequence[int],
    L: LeviDatum,
    radius: int,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> FrozenSet[Weight]:
    """W_{I,p} dot orbit of weight reachable inside the box by generator moves."""
    rs, p = L.rs, L.p
    weight = rs.check_weight(weight)
    if not _in_box(weight, radius):
        raise BoundExceeded(f"{list(weight)} lies outside the box of radius {radius}", weight=weight)
    nodes = sorted(L.I)
    seen = {weight}
    queue = deque([weight])
    while queue:
        v = queue.popleft()
        moves = [_dot_simple(rs, v, i) for i in nodes]
        for i in nodes:
            step = scale(p, rs.root_weights[i])
            moves.append(add(v, step))
            moves.append(sub(v, step))
        for image in moves:
            if image in seen or not _in_box(image, radius):
                continue
            seen.add(image)
            if len(seen) > node_limit:
                raise BoundExceeded(f"orbit exceeds {node_limit} weights", limit=node_limit)
            queue.append(image)
    return frozenset(seen)


def _up_steps(rs: RootSystem, nu: Weight, ceiling: Weight, p: int):
    """s_{beta,mp} . nu with mp > <nu+rho,beta^vee>, staying <= ceiling."""
    for k in range(len(rs.positive_roots)):
        x = rs.pair_shifted(nu, k)
        m = x // p + 1
        while True:
            target = add(nu, scale(m * p - x, rs.root_weights[k]))
            if not root_leq(rs, target, ceiling):
                break
            yield target
            m += 1


def uparrow_graph(rs: RootSystem, mu: Sequence[int], lam: Sequence[int], p: int,
                  node_limit: int = DEFAULT_NODE_LIMIT) -> nx.DiGraph:
    """Ascending generating steps from mu, restricted to the interval [mu, lam]."""
    mu, lam = rs.check_weight(mu), rs.check_weight(lam)
    graph = nx.DiGraph()
    graph.add_node(mu)
    if not root_leq(rs, mu, lam):
        return graph
    queue = deque([mu])
    while queue:
        nu = queue.popleft()
        for target in _up_steps(rs, nu, lam, p):
            if target not in graph:
                queue.append(target)
            graph.add_edge(nu, target)
            if graph.number_of_nodes() > node_limit:
                raise BoundExceeded(f"up-arrow closure exceeds {node_limit} weights", limit=node_limit)
    return graph


def brute_uparrow(rs: RootSystem, mu: Sequence[int], lam: Sequence[int], p: int,
                  node_limit: int = DEFAULT_NODE_LIMIT) -> bool:
    """Forward closure from mu by ascending steps; true if lam is reached."""
    lam = rs.check_weight(lam)
    graph = uparrow_graph(rs, mu, lam, p, node_limit)
    return lam in graph and nx.has_path(graph, tuple(mu), lam)


def sl2_tilting_table(p: int, d_min: int, d_max: int) -> Dict[Weight, Dict[Weight, int]]:
    """A1 tilting characters in the block of 0 for labels with d_min <= d <= d_max.

    T(nu) = [Z(nu)] + [Z(nu')] for d(nu) >= 1, nu' the reflection of nu in
    its lower wall; T(nu) = [Z(nu)] for d(nu) <= 0.
    """
    table: Dict[Weight, Dict[Weight, int]] = {}
    for x in range(d_min * p, (d_max + 1) * p):
        # x = <nu + rho, alpha^vee>; block of 0 is x = +-1 mod 2p
        if x % (2 * p) not in (1, 2 * p - 1):
            continue
        nu = (x - 1,)
        d = x // p
        if d >= 1:
            lower = (2 * d * p - x - 1,)
            table[nu] = {nu: 1, lower: 1}
        else:
            table[nu] = {nu: 1}
    logger.debug(f"sl2 table at p={p}: {len(table)} labels, d in [{d_min}, {d_max}]")
    return table
