"""Configurations and weight functions for the three Ising formulations.

A spins configuration assigns ``+1``/``-1`` to every node; the two edge
worlds assign ``0``/``1`` to every edge.  Configurations are plain tuples
aligned with the graph's node and edge ordering, so they are hashable and
usable as table keys.  All weight functions are unnormalized and have
log-domain companions that agree wherever the linear value is positive
and representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidConfigError, UnknownStatisticError
from .graph import WeightedGraph

SpinConfig = tuple[int, ...]
SubgraphConfig = tuple[int, ...]
RcConfig = tuple[int, ...]

WORLDS = ("spins", "subs", "rc")


class UnionFind:
    """Disjoint sets over dense integer ids with path compression."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> bool:
        i, j = self.find(i), self.find(j)
        if i == j:
            return False
        if self.size[i] < self.size[j]:
            i, j = j, i
        self.parent[j] = i
        self.size[i] += self.size[j]
        return True


@dataclass(frozen=True)
class ClusterPartition:
    """Partition of nodes into open-edge connected components.

    ``component_id[v]`` is the smallest node id in ``v``'s component, so
    labels are canonical and deterministic.
    """

    component_id: tuple[int, ...]
    count: int


def validate_spin_config(g: WeightedGraph, x: Sequence[int]) -> None:
    if len(x) != g.num_nodes:
        raise InvalidConfigError(f"spin configuration has length {len(x)}, expected {g.num_nodes}")
    for value in x:
        if value not in (-1, 1):
            raise InvalidConfigError(f"spin values must be -1 or +1, got {value!r}")


def validate_edge_config(g: WeightedGraph, y: Sequence[int]) -> None:
    if len(y) != g.num_edges:
        raise InvalidConfigError(f"edge configuration has length {len(y)}, expected {g.num_edges}")
    for value in y:
        if value not in (0, 1):
            raise InvalidConfigError(f"edge values must be 0 or 1, got {value!r}")


def clusters(g: WeightedGraph, z: Sequence[int]) -> ClusterPartition:
    """Connected components induced by the open edges of ``z``."""
    validate_edge_config(g, z)
    uf = UnionFind(g.num_nodes)
    for e, (i, j) in enumerate(g.edges):
        if z[e]:
            uf.union(i, j)
    label: dict[int, int] = {}
    component_id = []
    for v in range(g.num_nodes):
        root = uf.find(v)
        if root not in label:
            label[root] = v  # v ascending, so first hit is the minimum
        component_id.append(label[root])
    return ClusterPartition(tuple(component_id), len(label))


def degree_parity(
    g: WeightedGraph,
    y: Sequence[int],
    restricted_to: Iterable[int] | None = None,
) -> tuple[int, ...]:
    """Per-node parity of the open degree, optionally over an edge subset."""
    validate_edge_config(g, y)
    parity = [0] * g.num_nodes
    edge_indices = range(g.num_edges) if restricted_to is None else restricted_to
    for e in edge_indices:
        if y[e]:
            i, j = g.edges[e]
            parity[i] ^= 1
            parity[j] ^= 1
    return tuple(parity)


def _require_field_free(g: WeightedGraph) -> None:
    if g.has_field():
        raise InvalidConfigError(
            "graph carries a magnetic field; apply reduce_unidirectional_field "
            "first or evaluate weight_spins_field"
        )


def weight_spins(g: WeightedGraph, x: Sequence[int]) -> float:
    """Product of edge factors exp(beta * x_i * x_j); infinite couplings
    contribute an agreement indicator instead."""
    validate_spin_config(g, x)
    _require_field_free(g)
    acc = 1.0
    for (i, j), beta in zip(g.edges, g.betas):
        if math.isinf(beta):
            if x[i] != x[j]:
                return 0.0
            # agreeing infinite coupling contributes factor 1
        else:
            acc *= _exp(beta * x[i] * x[j])
    return acc


def weight_spins_log(g: WeightedGraph, x: Sequence[int]) -> float:
    validate_spin_config(g, x)
    _require_field_free(g)
    total = 0.0
    for (i, j), beta in zip(g.edges, g.betas):
        if math.isinf(beta):
            if x[i] != x[j]:
                return -math.inf
        else:
            total += beta * x[i] * x[j]
    return total


def weight_spins_field(g: WeightedGraph, x: Sequence[int]) -> float:
    """Spins weight including the external-field node factors.

    A node with field value B contributes ``exp(B)`` when its spin is up
    and 1 when it is down; ``B = +inf`` pins the spin up and ``B = -inf``
    pins it down (those limits make the pinned factor exactly 1).  Used as
    the reference weight when enumerating field models exactly.
    """
    validate_spin_config(g, x)
    acc = 1.0
    for (i, j), beta in zip(g.edges, g.betas):
        if math.isinf(beta):
            if x[i] != x[j]:
                return 0.0
        else:
            acc *= _exp(beta * x[i] * x[j])
    if g.field is None:
        return acc
    for v, b in enumerate(g.field):
        if b == 0.0:
            continue
        if math.isinf(b):
            if (b > 0 and x[v] != 1) or (b < 0 and x[v] != -1):
                return 0.0
        elif x[v] == 1:
            acc *= _exp(b)
    return acc


def weight_spins_field_log(g: WeightedGraph, x: Sequence[int]) -> float:
    validate_spin_config(g, x)
    total = 0.0
    for (i, j), beta in zip(g.edges, g.betas):
        if math.isinf(beta):
            if x[i] != x[j]:
                return -math.inf
        else:
            total += beta * x[i] * x[j]
    if g.field is None:
        return total
    for v, b in enumerate(g.field):
        if b == 0.0:
            continue
        if math.isinf(b):
            if (b > 0 and x[v] != 1) or (b < 0 and x[v] != -1):
                return -math.inf
        elif x[v] == 1:
            total += b
    return total


def weight_subs(g: WeightedGraph, y: Sequence[int]) -> float:
    """Product of lambda over open edges if every node has even open
    degree, else 0."""
    validate_edge_config(g, y)
    parity = [0] * g.num_nodes
    acc = 1.0
    lams = g.lambdas
    for e, (i, j) in enumerate(g.edges):
        if y[e]:
            parity[i] ^= 1
            parity[j] ^= 1
            acc *= lams[e]
    if any(parity):
        return 0.0
    return acc


def weight_subs_log(g: WeightedGraph, y: Sequence[int]) -> float:
    validate_edge_config(g, y)
    parity = [0] * g.num_nodes
    total = 0.0
    lams = g.lambdas
    for e, (i, j) in enumerate(g.edges):
        if y[e]:
            parity[i] ^= 1
            parity[j] ^= 1
            lam = lams[e]
            if lam == 0.0:
                return -math.inf
            total += math.log(lam)
    if any(parity):
        return -math.inf
    return total


def weight_rc(g: WeightedGraph, z: Sequence[int]) -> float:
    """Open/closed probability products times 2 to the number of clusters."""
    part = clusters(g, z)  # validates z
    acc = 1.0
    for e, p in enumerate(g.ps):
        acc *= p if z[e] else 1.0 - p
    return math.ldexp(acc, part.count)


def weight_rc_log(g: WeightedGraph, z: Sequence[int]) -> float:
    part = clusters(g, z)  # validates z
    total = part.count * math.log(2.0)
    for e, p in enumerate(g.ps):
        if z[e]:
            if p == 0.0:
                return -math.inf
            total += math.log(p)
        else:
            if p == 1.0:
                return -math.inf
            total += math.log1p(-p)
    return total


def _exp(value: float) -> float:
    try:
        return math.exp(value)
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------------------
# Observables recorded by chains and sample summaries
# ---------------------------------------------------------------------------

def magnetization(x: Sequence[int]) -> int:
    """Sum of spins."""
    return sum(x)


def spins_energy(g: WeightedGraph, x: Sequence[int]) -> float:
    """Interaction energy -sum(beta * x_i * x_j) over finite couplings.

    Infinite couplings act as hard constraints and are excluded.
    """
    total = 0.0
    for (i, j), beta in zip(g.edges, g.betas):
        if not math.isinf(beta):
            total -= beta * x[i] * x[j]
    return total


def open_edge_count(y: Sequence[int]) -> int:
    return sum(y)


def agreement_clusters(g: WeightedGraph, x: Sequence[int]) -> ClusterPartition:
    """Components of the subgraph of edges whose endpoints agree."""
    agree = tuple(1 if x[i] == x[j] else 0 for i, j in g.edges)
    return clusters(g, agree)


STATISTICS = {
    "spins": ("m", "energy", "clusters"),
    "subs": ("edges", "clusters"),
    "rc": ("edges", "clusters"),
}


def statistic(g: WeightedGraph, world: str, config: Sequence[int], name: str) -> float:
    """Evaluate a named observable of a configuration in its world."""
    allowed = STATISTICS.get(world)
    if allowed is None or name not in allowed:
        raise UnknownStatisticError(f"statistic {name!r} is not defined for world {world!r}")
    if world == "spins":
        if name == "m":
            return float(magnetization(config))
        if name == "energy":
            return spins_energy(g, config)
        return float(agreement_clusters(g, config).count)
    if name == "edges":
        return float(open_edge_count(config))
    return float(clusters(g, config).count)


# ---------------------------------------------------------------------------
# Compact text serialization (bit strings for edge worlds, sign strings
# for spins), aligned with the graph's edge / node ordering.
# ---------------------------------------------------------------------------

def config_to_string(world: str, config: Sequence[int]) -> str:
    if world == "spins":
        return "".join("+" if v == 1 else "-" for v in config)
    return "".join(str(v) for v in config)


def config_from_string(world: str, text: str) -> tuple[int, ...]:
    text = text.strip()
    if world == "spins":
        values = []
        for ch in text:
            if ch == "+":
                values.append(1)
            elif ch == "-":
                values.append(-1)
            else:
                raise InvalidConfigError(f"spin strings use '+'/'-', got {ch!r}")
        return tuple(values)
    values = []
    for ch in text:
        if ch not in "01":
            raise InvalidConfigError(f"edge strings use '0'/'1', got {ch!r}")
        values.append(int(ch))
    return tuple(values)
