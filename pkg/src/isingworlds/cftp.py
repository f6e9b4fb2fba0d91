"""Perfect sampling of the random-cluster world by coupling from the past.

The single-bond heat-bath kernel is monotone for the two-state
random-cluster model: under a shared (edge, uniform) update, a pointwise
larger configuration stays larger.  Running the all-open and all-closed
extremal chains from epochs doubling into the past with shared,
cached randomness therefore yields an exactly stationary draw once they
coalesce at time zero.  Composing with the subgraphs conversion gives
exact subgraphs-world samples.

Edges with open probability 1 are pinned open (and probability-0 edges
pinned closed) and excluded from random updates; connectivity queries
still see them, which realizes the usual contraction of forced edges
without rebuilding the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidConfigError, InvalidParameterError, NoCoalescenceError
from .graph import WeightedGraph
from .reductions import rc_to_subs
from .rng import RngStream
from .worlds import RcConfig, SubgraphConfig, validate_edge_config

DEFAULT_MAX_EPOCH = 24


def _connected_without_edge(g: WeightedGraph, z: Sequence[int], e: int) -> bool:
    """Are e's endpoints joined by open edges other than e itself?"""
    i, j = g.edges[e]
    adj = g.adjacency
    seen = [False] * g.num_nodes
    seen[i] = True
    stack = [i]
    while stack:
        v = stack.pop()
        for w, ei in adj[v]:
            if ei != e and z[ei] and not seen[w]:
                if w == j:
                    return True
                seen[w] = True
                stack.append(w)
    return False


def _heat_bath_prob(g: WeightedGraph, z: Sequence[int], e: int) -> float:
    """Conditional open probability of edge e given the rest of z.

    Opening an edge whose endpoints are already connected elsewhere does
    not change the cluster count, so the odds are p : (1-p); otherwise
    closing it splits a cluster and doubles the weight, giving odds
    p : 2(1-p).
    """
    p = g.ps[e]
    if _connected_without_edge(g, z, e):
        return p
    return p / (2.0 - p)


def heat_bath_rc_step(g: WeightedGraph, z: Sequence[int], edge: int, u: float) -> RcConfig:
    """Resample one edge from its conditional law using the uniform ``u``."""
    validate_edge_config(g, z)
    if not 0 <= edge < g.num_edges:
        raise InvalidParameterError(f"edge index {edge} out of range")
    if not 0.0 <= u < 1.0:
        raise InvalidParameterError(f"uniform variate must lie in [0, 1), got {u}")
    out = list(z)
    out[edge] = 1 if u < _heat_bath_prob(g, z, edge) else 0
    return tuple(out)


def _heat_bath_inplace(g: WeightedGraph, state: list[int], edge: int, u: float) -> None:
    state[edge] = 1 if u < _heat_bath_prob(g, state, edge) else 0


@dataclass
class CftpSchedule:
    """Cached per-step randomness, indexed by distance into the past.

    The record for step ``-t`` is generated once and replayed verbatim by
    every deeper restart; that reuse is what makes the output exact.
    Each record holds a uniformly chosen updatable edge and the uniform
    variate for the heat-bath threshold.
    """

    rng: RngStream
    free_edges: tuple[int, ...]
    records: list[tuple[int, float]] = field(default_factory=list)

    def ensure(self, steps: int) -> None:
        while len(self.records) < steps:
            edge = self.free_edges[self.rng.randrange(len(self.free_edges))]
            self.records.append((edge, self.rng.uniform()))

    def record(self, t: int) -> tuple[int, float]:
        return self.records[t - 1]


@dataclass(frozen=True)
class CftpRun:
    """A coalesced run: the exact sample plus how hard it was to get."""

    config: tuple[int, ...]
    epoch: int
    steps: int


def _pinned_base(g: WeightedGraph) -> tuple[list[int], list[int]]:
    base = [0] * g.num_edges
    free = []
    for e, p in enumerate(g.ps):
        if p >= 1.0:
            base[e] = 1
        elif p > 0.0:
            free.append(e)
    return base, free


def cftp_rc_run(g: WeightedGraph, rng: RngStream, max_epoch: int = DEFAULT_MAX_EPOCH) -> CftpRun:
    """Run monotone coupling from the past until coalescence.

    Epoch k starts the extremal chains 2**k steps in the past.  Raises
    :class:`NoCoalescenceError` if they have not met by the time the
    ``max_epoch`` schedule is exhausted; callers may retry with a larger
    budget.
    """
    if max_epoch < 0:
        raise InvalidParameterError("max_epoch must be nonnegative")
    if g.has_field():
        raise InvalidConfigError(
            "graph carries a magnetic field; apply reduce_unidirectional_field first"
        )
    base, free = _pinned_base(g)
    if not free:
        return CftpRun(tuple(base), 0, 0)

    schedule = CftpSchedule(rng, tuple(free))
    sweep = len(free)
    total_steps = 0
    for epoch in range(max_epoch + 1):
        horizon = 1 << epoch
        schedule.ensure(horizon)
        top = list(base)
        bot = list(base)
        for e in free:
            top[e] = 1
        merged = False
        for step, t in enumerate(range(horizon, 0, -1), start=1):
            edge, u = schedule.record(t)
            _heat_bath_inplace(g, top, edge, u)
            if not merged:
                _heat_bath_inplace(g, bot, edge, u)
                if step % sweep == 0 and top == bot:
                    merged = True  # chains evolve identically from here on
            total_steps += 1
        if merged or top == bot:
            return CftpRun(tuple(top), epoch, total_steps)
    raise NoCoalescenceError(
        f"no coalescence within 2**{max_epoch} steps; raise max_epoch to search deeper"
    )


def cftp_rc_sample(g: WeightedGraph, rng: RngStream, max_epoch: int = DEFAULT_MAX_EPOCH) -> RcConfig:
    """One exact random-cluster draw."""
    return cftp_rc_run(g, rng, max_epoch).config


def perfect_subs_sample(
    g: WeightedGraph, rng: RngStream, max_epoch: int = DEFAULT_MAX_EPOCH
) -> SubgraphConfig:
    """One exact subgraphs-world draw: perfect random-cluster sampling
    followed by the exact conversion."""
    return rc_to_subs(g, cftp_rc_sample(g, rng, max_epoch), rng)
