"""Exact single-draw conversions between the three Ising formulations.

Each function turns one draw from its source distribution, plus a few
runtime Bernoulli draws, into one exact draw from its target
distribution.  The conversions compose: a subgraphs draw reaches the
spins world through the random-cluster world and vice versa, never
consuming more than one Bernoulli per edge plus one per cluster.

All functions are pure in (graph, configuration, rng); concurrent calls
are safe when each owns its own :class:`~isingworlds.rng.RngStream`.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

from .errors import InvalidConfigError
from .graph import WeightedGraph
from .rng import RngStream
from .worlds import (
    RcConfig,
    SpinConfig,
    SubgraphConfig,
    clusters,
    validate_edge_config,
    validate_spin_config,
)


def _require_field_free(g: WeightedGraph) -> None:
    # the three-world correspondence is stated for field-free models
    if g.has_field():
        raise InvalidConfigError(
            "graph carries a magnetic field; apply reduce_unidirectional_field first"
        )


def subs_to_rc(g: WeightedGraph, y: Sequence[int], rng: RngStream) -> RcConfig:
    """Convert a subgraphs draw into a random-cluster draw.

    Each edge is resolved independently in ascending edge order: an open
    edge stays open with probability 1, a closed edge opens with
    probability lambda(e).  Extreme couplings are deterministic, so at
    most one Bernoulli per edge is consumed.  The output dominates the
    input pointwise.
    """
    _require_field_free(g)
    validate_edge_config(g, y)
    lams = g.lambdas
    parity = [0] * g.num_nodes
    for e, (i, j) in enumerate(g.edges):
        if y[e]:
            if lams[e] == 0.0:
                raise InvalidConfigError(f"edge {e} is open but has zero coupling (zero weight)")
            parity[i] ^= 1
            parity[j] ^= 1
    if any(parity):
        raise InvalidConfigError("subgraphs configuration has odd degree (zero weight)")

    out = []
    for e in range(g.num_edges):
        if y[e]:
            out.append(1)
        elif lams[e] >= 1.0:
            out.append(1)
        elif lams[e] <= 0.0:
            out.append(0)
        else:
            out.append(1 if rng.bernoulli(lams[e]) else 0)
    return tuple(out)


def _open_forest(g: WeightedGraph, z: Sequence[int]) -> tuple[list[int], list[int]]:
    """Maximal spanning forest of the open subgraph via iterative DFS.

    Returns ``(parent_edge, order)`` where ``parent_edge[v]`` is the
    forest edge joining ``v`` to its parent (-1 for roots) and ``order``
    is node-discovery order.  Scanning ``order`` backwards retires each
    non-root node's unique parent edge while it is a leaf of what remains.
    """
    n = g.num_nodes
    adj = g.adjacency
    parent_edge = [-1] * n
    order: list[int] = []
    visited = [False] * n
    for root in range(n):
        if visited[root]:
            continue
        visited[root] = True
        order.append(root)
        stack = [root]
        while stack:
            v = stack.pop()
            for w, e in adj[v]:
                if z[e] and not visited[w]:
                    visited[w] = True
                    parent_edge[w] = e
                    order.append(w)
                    stack.append(w)
    return parent_edge, order


def _rc_to_subs_core(
    g: WeightedGraph,
    z: Sequence[int],
    coin: Callable[[int], int],
) -> SubgraphConfig:
    """Shared deterministic skeleton of the random-cluster-to-subgraphs map.

    ``coin(e)`` supplies the fair bit for each open non-forest edge, in
    ascending edge order; everything else is forced.  Exposing the coins
    lets the exact-kernel machinery convolve over them.
    """
    parent_edge, order = _open_forest(g, z)
    in_forest = [False] * g.num_edges
    for e in parent_edge:
        if e >= 0:
            in_forest[e] = True

    y = [0] * g.num_edges
    parity = [0] * g.num_nodes
    for e, (i, j) in enumerate(g.edges):
        if in_forest[e] or not z[e]:
            continue  # closed edges stay closed and cost no randomness
        bit = coin(e)
        if bit:
            y[e] = 1
            parity[i] ^= 1
            parity[j] ^= 1

    for v in reversed(order):
        e = parent_edge[v]
        if e < 0:
            continue
        if parity[v]:
            y[e] = 1
            i, j = g.edges[e]
            parity[i] ^= 1
            parity[j] ^= 1

    assert not any(parity), "leaf peeling must leave every degree even"
    assert all(ye <= ze for ye, ze in zip(y, z)), "output must stay below the input"
    return tuple(y)


def rc_to_subs(g: WeightedGraph, z: Sequence[int], rng: RngStream) -> SubgraphConfig:
    """Convert a random-cluster draw into a subgraphs draw.

    Open edges outside a maximal spanning forest each get a fair coin;
    forest edges are then forced, leaf by leaf in reverse discovery
    order, to the parity bit that keeps every node's degree even.  The
    output is dominated by the input pointwise.
    """
    _require_field_free(g)
    validate_edge_config(g, z)
    lams = g.lambdas
    for e in range(g.num_edges):
        if z[e] and lams[e] == 0.0:
            raise InvalidConfigError(f"edge {e} is open but has zero coupling (zero weight)")
    return _rc_to_subs_core(g, z, lambda e: 1 if rng.bernoulli(0.5) else 0)


def rc_to_spins(g: WeightedGraph, z: Sequence[int], rng: RngStream) -> SpinConfig:
    """Assign one fair +/-1 spin per cluster; one Bernoulli per cluster."""
    _require_field_free(g)
    part = clusters(g, z)  # validates z
    spin_of: dict[int, int] = {}
    x = [0] * g.num_nodes
    for v in range(g.num_nodes):
        cid = part.component_id[v]
        if cid == v:  # canonical (smallest) member draws for its cluster
            spin_of[cid] = 1 if rng.bernoulli(0.5) else -1
        x[v] = spin_of[cid]
    return tuple(x)


def spins_to_rc(g: WeightedGraph, x: Sequence[int], rng: RngStream) -> RcConfig:
    """Convert a spins draw into a random-cluster draw.

    Disagreeing edges close deterministically; agreeing edges open with
    probability p(e).  At most one Bernoulli per edge.
    """
    _require_field_free(g)
    validate_spin_config(g, x)
    ps = g.ps
    out = []
    for e, (i, j) in enumerate(g.edges):
        if x[i] != x[j]:
            if math.isinf(g.betas[e]):
                raise InvalidConfigError(
                    f"edge {e} has infinite coupling but disagreeing endpoints (zero weight)"
                )
            out.append(0)
        else:
            out.append(1 if rng.bernoulli(ps[e]) else 0)
    return tuple(out)


def subs_to_spins(g: WeightedGraph, y: Sequence[int], rng: RngStream) -> SpinConfig:
    """Subgraphs draw to spins draw via the random-cluster world."""
    return rc_to_spins(g, subs_to_rc(g, y, rng), rng)


def spins_to_subs(g: WeightedGraph, x: Sequence[int], rng: RngStream) -> SubgraphConfig:
    """Spins draw to subgraphs draw via the random-cluster world."""
    return rc_to_subs(g, spins_to_rc(g, x, rng), rng)


REDUCTIONS = {
    ("subs", "rc"): subs_to_rc,
    ("rc", "subs"): rc_to_subs,
    ("rc", "spins"): rc_to_spins,
    ("spins", "rc"): spins_to_rc,
    ("subs", "spins"): subs_to_spins,
    ("spins", "subs"): spins_to_subs,
}
