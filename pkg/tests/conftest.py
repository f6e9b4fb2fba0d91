"""Shared helpers for the test-suite.

The routines here are deliberately independent re-derivations (plain DFS
instead of union-find, explicit parity counting, dict-based
distributions) so they can serve as oracles for the production code.
"""

from __future__ import annotations

import random

from isingworlds import WeightedGraph, enumerate_world, reduce_unidirectional_field


def random_graph(
    rnd: random.Random,
    max_nodes: int = 6,
    max_edges: int = 10,
    extreme_share: float = 0.0,
) -> WeightedGraph:
    """Random simple graph with couplings; extreme_share mixes in 0/inf."""
    n = rnd.randint(1, max_nodes)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rnd.shuffle(pairs)
    m = rnd.randint(0, min(len(pairs), max_edges))
    chosen = sorted(pairs[:m])
    betas = []
    for _ in chosen:
        r = rnd.random()
        if r < extreme_share / 2:
            betas.append(0.0)
        elif r < extreme_share:
            betas.append(float("inf"))
        else:
            betas.append(rnd.uniform(0.05, 1.6))
    return WeightedGraph(n, tuple(chosen), tuple(betas))


def dfs_component_labels(g: WeightedGraph, z) -> tuple[tuple[int, ...], int]:
    """Independent component labeling by plain DFS (no union-find).

    Because start nodes are scanned in ascending order, each component's
    label is its smallest node id, matching the canonical convention.
    """
    label = [-1] * g.num_nodes
    count = 0
    for start in range(g.num_nodes):
        if label[start] >= 0:
            continue
        count += 1
        stack = [start]
        label[start] = start
        while stack:
            v = stack.pop()
            for w, e in g.adjacency[v]:
                if z[e] and label[w] < 0:
                    label[w] = start
                    stack.append(w)
    return tuple(label), count


def brute_degrees(g: WeightedGraph, y) -> list[int]:
    degrees = [0] * g.num_nodes
    for e, (i, j) in enumerate(g.edges):
        if y[e]:
            degrees[i] += 1
            degrees[j] += 1
    return degrees


def distribution_dict(table) -> dict[tuple[int, ...], float]:
    return {config: float(p) for config, p in zip(table.configs, table.probs) if p > 0.0}


def field_model_distribution(g: WeightedGraph) -> dict[tuple[int, ...], float]:
    """Exact spins+field distribution by enumeration."""
    return distribution_dict(enumerate_world(g, "spins"))


def reduced_conditioned_distribution(g: WeightedGraph) -> dict[tuple[int, ...], float]:
    """Exact field-free distribution conditioned on the anchor, lifted back."""
    red = reduce_unidirectional_field(g)
    table = enumerate_world(red.graph, "spins")
    dist: dict[tuple[int, ...], float] = {}
    total = 0.0
    for config, w in zip(table.configs, table.weights):
        if w <= 0.0:
            continue
        if red.anchor is not None and config[red.anchor] != 1:
            continue
        total += w
        lifted = red.lift_spins(config)
        dist[lifted] = dist.get(lifted, 0.0) + w
    return {config: w / total for config, w in dist.items()}


def max_pointwise_gap(a: dict, b: dict) -> float:
    gap = 0.0
    for key in set(a) | set(b):
        gap = max(gap, abs(a.get(key, 0.0) - b.get(key, 0.0)))
    return gap
