"""Brute-force exact computation on small graphs.

Everything here exists to pin down the sampling code against ground
truth: full weight tables and partition sums per world, the
partition-function identities linking the worlds, exact one-step
transition matrices obtained by convolving a kernel over its internal
Bernoulli outcomes, and the closed-form even-subgraph count.

Enumeration is capped; callers see :class:`CapExceededError` rather than
an accidental exponential blowup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from .errors import CapExceededError, InvalidConfigError, InvalidParameterError
from .graph import WeightedGraph
from .reductions import _open_forest, _rc_to_subs_core
from .rng import RngStream
from .worlds import (
    clusters,
    weight_rc,
    weight_rc_log,
    weight_spins,
    weight_spins_field,
    weight_spins_field_log,
    weight_spins_log,
    weight_subs,
    weight_subs_log,
)

SPINS_ENUM_NODE_CAP = 16
EDGE_ENUM_CAP = 20
KERNEL_EDGE_CAP = 10
KERNEL_NODE_CAP = 12

CAPS = {
    "spins_enum_nodes": SPINS_ENUM_NODE_CAP,
    "edge_enum_edges": EDGE_ENUM_CAP,
    "kernel_edges": KERNEL_EDGE_CAP,
    "kernel_nodes": KERNEL_NODE_CAP,
}


@dataclass(frozen=True, eq=False)
class WorldTable:
    """Exhaustive (configuration, weight) table for one world.

    Configurations are listed in lexicographic order of their serialized
    bit/sign strings, which keeps golden outputs stable.
    """

    world: str
    configs: tuple[tuple[int, ...], ...]
    weights: np.ndarray

    @cached_property
    def Z(self) -> float:
        return float(self.weights.sum())

    @cached_property
    def probs(self) -> np.ndarray:
        return self.weights / self.Z

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.weights > 0.0))

    @cached_property
    def support_configs(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.configs[i] for i in self.support)

    @cached_property
    def support_probs(self) -> np.ndarray:
        return self.probs[list(self.support)]

    @cached_property
    def config_index(self) -> dict[tuple[int, ...], int]:
        return {config: i for i, config in enumerate(self.configs)}


def _check_caps(g: WeightedGraph, world: str) -> None:
    if world == "spins":
        if g.num_nodes > SPINS_ENUM_NODE_CAP:
            raise CapExceededError(
                f"spins enumeration needs num_nodes <= {SPINS_ENUM_NODE_CAP}, got {g.num_nodes}"
            )
    elif g.num_edges > EDGE_ENUM_CAP:
        raise CapExceededError(
            f"edge-world enumeration needs num_edges <= {EDGE_ENUM_CAP}, got {g.num_edges}"
        )


def enumerate_world(g: WeightedGraph, world: str) -> WorldTable:
    """Exhaustive weight table of one world.

    For the spins world, a graph carrying a field is enumerated with the
    field factors included; the edge worlds ignore the field.
    """
    _check_caps(g, world)
    if world == "spins":
        weight = weight_spins_field if g.has_field() else weight_spins
        configs = tuple(product((1, -1), repeat=g.num_nodes))
    elif world == "subs":
        weight = weight_subs
        configs = tuple(product((0, 1), repeat=g.num_edges))
    elif world == "rc":
        weight = weight_rc
        configs = tuple(product((0, 1), repeat=g.num_edges))
    else:
        raise InvalidParameterError(f"unknown world {world!r}")
    weights = np.array([weight(g, c) for c in configs], dtype=float)
    return WorldTable(world, configs, weights)


@dataclass(frozen=True, eq=False)
class ExactTables:
    """All three world tables of one graph, plus the partition sums."""

    graph: WeightedGraph
    spins: WorldTable
    subs: WorldTable
    rc: WorldTable

    @property
    def Z_spins(self) -> float:
        return self.spins.Z

    @property
    def Z_subs(self) -> float:
        return self.subs.Z

    @property
    def Z_rc(self) -> float:
        return self.rc.Z


def exact_tables(g: WeightedGraph) -> ExactTables:
    return ExactTables(
        g,
        enumerate_world(g, "spins"),
        enumerate_world(g, "subs"),
        enumerate_world(g, "rc"),
    )


def world_table_for(tables: ExactTables, world: str) -> WorldTable:
    table = getattr(tables, world, None)
    if not isinstance(table, WorldTable):
        raise InvalidParameterError(f"unknown world {world!r}")
    return table


# ---------------------------------------------------------------------------
# Partition-function identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: float
    rhs: float
    relative_error: float
    tolerance: float
    passed: bool
    used_log_domain: bool

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relative_error": self.relative_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "used_log_domain": self.used_log_domain,
        }


def _log_partition(g: WeightedGraph, world: str) -> float:
    _check_caps(g, world)
    if world == "spins":
        weight_log = weight_spins_field_log if g.has_field() else weight_spins_log
        configs = product((1, -1), repeat=g.num_nodes)
    elif world == "subs":
        weight_log = weight_subs_log
        configs = product((0, 1), repeat=g.num_edges)
    else:
        weight_log = weight_rc_log
        configs = product((0, 1), repeat=g.num_edges)
    logs = np.array([weight_log(g, c) for c in configs], dtype=float)
    return float(np.logaddexp.reduce(logs))


def _log_cosh(beta: float) -> float:
    # cosh overflows past ~710; beta + log1p(exp(-2 beta)) - log 2 does not
    return beta + math.log1p(math.exp(-2.0 * beta)) - math.log(2.0)


def _report(name: str, lhs: float, rhs: float, tol: float, log_domain: bool) -> IdentityReport:
    if log_domain:
        rel = abs(math.expm1(lhs - rhs)) if abs(lhs - rhs) < 700 else math.inf
    else:
        rel = abs(lhs - rhs) / lhs if lhs > 0 else math.inf
    return IdentityReport(name, lhs, rhs, rel, tol, rel < tol, log_domain)


def check_relate_identity(
    g: WeightedGraph, tol: float = 1e-10, tables: ExactTables | None = None
) -> list[IdentityReport]:
    """Verify the two partition-sum bridges out of the spins world.

    ``Z_spins = Z_rc * prod(exp(beta))`` and
    ``Z_spins = Z_subs * 2**num_nodes * prod(cosh(beta))``.
    Requires finite couplings (the agreement-indicator convention for
    infinite couplings rescales Z_spins).  Switches to log-domain sums
    when the linear products overflow.
    """
    if any(math.isinf(b) for b in g.betas):
        raise InvalidParameterError("relate identities need finite couplings")
    if g.has_field():
        raise InvalidConfigError("identities are stated for field-free models")
    tables = tables or exact_tables(g)
    sum_beta = sum(g.betas)
    linear_ok = True
    try:
        prod_exp = math.exp(sum_beta)
        prod_cosh = math.prod(math.cosh(b) for b in g.betas)
    except OverflowError:
        linear_ok = False
        prod_exp = prod_cosh = math.inf
    values = (tables.Z_spins, tables.Z_rc, tables.Z_subs, prod_exp, prod_cosh)
    if linear_ok and all(math.isfinite(v) for v in values):
        return [
            _report("spins_vs_rc", tables.Z_spins, tables.Z_rc * prod_exp, tol, False),
            _report(
                "spins_vs_subs",
                tables.Z_spins,
                tables.Z_subs * math.ldexp(prod_cosh, g.num_nodes),
                tol,
                False,
            ),
        ]
    log_zs = _log_partition(g, "spins")
    log_zrc = _log_partition(g, "rc")
    log_zsubs = _log_partition(g, "subs")
    log_cosh_sum = sum(_log_cosh(b) for b in g.betas)
    return [
        _report("spins_vs_rc", log_zs, log_zrc + sum_beta, tol, True),
        _report(
            "spins_vs_subs",
            log_zs,
            log_zsubs + g.num_nodes * math.log(2.0) + log_cosh_sum,
            tol,
            True,
        ),
    ]


def check_rc_normalizer(
    g: WeightedGraph, tol: float = 1e-10, tables: ExactTables | None = None
) -> IdentityReport:
    """Verify ``Z_rc = Z_subs * 2**(num_nodes - num_edges) * prod(1 + exp(-2 beta))``.

    Infinite couplings are fine here: their factor is exactly 1.
    """
    if g.has_field():
        raise InvalidConfigError("identities are stated for field-free models")
    z_rc = tables.rc.Z if tables else enumerate_world(g, "rc").Z
    z_subs = tables.subs.Z if tables else enumerate_world(g, "subs").Z
    factor = math.prod(1.0 + math.exp(-2.0 * b) if not math.isinf(b) else 1.0 for b in g.betas)
    rhs = z_subs * math.ldexp(factor, g.num_nodes - g.num_edges)
    if math.isfinite(z_rc) and math.isfinite(rhs):
        return _report("rc_normalizer", z_rc, rhs, tol, False)
    log_lhs = _log_partition(g, "rc")
    log_rhs = (
        _log_partition(g, "subs")
        + (g.num_nodes - g.num_edges) * math.log(2.0)
        + sum(math.log1p(math.exp(-2.0 * b)) if not math.isinf(b) else 0.0 for b in g.betas)
    )
    return _report("rc_normalizer", log_lhs, log_rhs, tol, True)


# ---------------------------------------------------------------------------
# Exact kernel matrices
# ---------------------------------------------------------------------------

KERNEL_SPECS = {
    "subs_to_rc": ("subs", "rc"),
    "rc_to_subs": ("rc", "subs"),
    "rc_to_spins": ("rc", "spins"),
    "spins_to_rc": ("spins", "rc"),
    "subs_to_spins": ("subs", "spins"),
    "spins_to_subs": ("spins", "subs"),
    "sw_classic": ("spins", "spins"),
    "sw_subgraphs": ("subs", "subs"),
}


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Exact transition matrix of a kernel, over positive-weight configs.

    Rows index the source world's support, columns the target world's
    support; every kernel provably never leaves the target support, so
    each row sums to one.
    """

    kernel: str
    source_world: str
    target_world: str
    source_configs: tuple[tuple[int, ...], ...]
    target_configs: tuple[tuple[int, ...], ...]
    matrix: np.ndarray


def _edgewise_rows(
    targets: np.ndarray,
    open_probs_per_row: list[np.ndarray],
) -> np.ndarray:
    rows = np.empty((len(open_probs_per_row), targets.shape[0]))
    for r, q1 in enumerate(open_probs_per_row):
        rows[r] = np.prod(np.where(targets.astype(bool), q1, 1.0 - q1), axis=1)
    return rows


def exact_kernel_matrix(g: WeightedGraph, kernel: str, tables: ExactTables | None = None) -> KernelMatrix:
    """Exact one-step transition probabilities of a reduction or chain kernel.

    Per-edge kernels factorize exactly; the forest-based kernel is
    convolved by enumerating its fair coins through the production code
    path.  Chain kernels compose the two legs by matrix product over the
    intermediate world.
    """
    if kernel not in KERNEL_SPECS:
        raise InvalidParameterError(f"unknown kernel {kernel!r}")
    if g.num_edges > KERNEL_EDGE_CAP:
        raise CapExceededError(f"kernel matrices need num_edges <= {KERNEL_EDGE_CAP}")
    if g.num_nodes > KERNEL_NODE_CAP:
        raise CapExceededError(f"kernel matrices need num_nodes <= {KERNEL_NODE_CAP}")

    if kernel == "sw_classic":
        return _compose(g, "spins_to_rc", "rc_to_spins", "sw_classic", tables)
    if kernel == "sw_subgraphs":
        return _compose(g, "subs_to_rc", "rc_to_subs", "sw_subgraphs", tables)
    if kernel == "subs_to_spins":
        return _compose(g, "subs_to_rc", "rc_to_spins", "subs_to_spins", tables)
    if kernel == "spins_to_subs":
        return _compose(g, "spins_to_rc", "rc_to_subs", "spins_to_subs", tables)

    tables = tables or exact_tables(g)
    source_world, target_world = KERNEL_SPECS[kernel]
    source = world_table_for(tables, source_world)
    target = world_table_for(tables, target_world)
    src_configs = source.support_configs
    tgt_configs = target.support_configs
    tgt_matrix = np.array(tgt_configs, dtype=np.int8) if tgt_configs else np.zeros((0, 0), np.int8)

    if kernel == "subs_to_rc":
        lams = np.array(g.lambdas)
        per_row = [np.where(np.array(y, dtype=bool), 1.0, lams) for y in src_configs]
        matrix = _edgewise_rows(tgt_matrix, per_row)
    elif kernel == "spins_to_rc":
        ps = np.array(g.ps)
        per_row = []
        for x in src_configs:
            agree = np.array([x[i] == x[j] for i, j in g.edges], dtype=bool)
            per_row.append(np.where(agree, ps, 0.0))
        matrix = _edgewise_rows(tgt_matrix, per_row)
    elif kernel == "rc_to_spins":
        matrix = np.zeros((len(src_configs), len(tgt_configs)))
        xs = np.array(tgt_configs, dtype=np.int8)
        for r, z in enumerate(src_configs):
            part = clusters(g, z)
            rep = list(part.component_id)
            constant = np.all(xs == xs[:, rep], axis=1)
            matrix[r] = constant * math.ldexp(1.0, -part.count)
    else:  # rc_to_subs
        index = {config: c for c, config in enumerate(tgt_configs)}
        matrix = np.zeros((len(src_configs), len(tgt_configs)))
        for r, z in enumerate(src_configs):
            parent_edge, _ = _open_forest(g, z)
            in_forest = set(e for e in parent_edge if e >= 0)
            coin_edges = [e for e in range(g.num_edges) if z[e] and e not in in_forest]
            share = math.ldexp(1.0, -len(coin_edges))
            for bits in product((0, 1), repeat=len(coin_edges)):
                assignment = dict(zip(coin_edges, bits))
                y = _rc_to_subs_core(g, z, assignment.__getitem__)
                matrix[r, index[y]] += share

    return KernelMatrix(kernel, source_world, target_world, src_configs, tgt_configs, matrix)


def _compose(
    g: WeightedGraph,
    first: str,
    second: str,
    name: str,
    tables: ExactTables | None,
) -> KernelMatrix:
    tables = tables or exact_tables(g)
    k1 = exact_kernel_matrix(g, first, tables)
    k2 = exact_kernel_matrix(g, second, tables)
    if k1.target_configs != k2.source_configs:
        raise InvalidConfigError("kernel composition needs matching intermediate supports")
    return KernelMatrix(
        name,
        k1.source_world,
        k2.target_world,
        k1.source_configs,
        k2.target_configs,
        k1.matrix @ k2.matrix,
    )


def kernel_stationarity_error(g: WeightedGraph, kernel: str, tables: ExactTables | None = None) -> float:
    """Max pointwise error of pushing the exact source law through a kernel.

    Zero (up to rounding) certifies that the kernel maps its source
    distribution onto the target distribution exactly.
    """
    tables = tables or exact_tables(g)
    km = exact_kernel_matrix(g, kernel, tables)
    source = world_table_for(tables, km.source_world)
    target = world_table_for(tables, km.target_world)
    pushed = source.support_probs @ km.matrix
    return float(np.max(np.abs(pushed - target.support_probs)))


# ---------------------------------------------------------------------------
# Sampling against tables
# ---------------------------------------------------------------------------

def sample_from_table(table: WorldTable, rng: RngStream, n: int) -> list[tuple[int, ...]]:
    """n i.i.d. draws from an exact table by inverse CDF."""
    cum = np.cumsum(table.support_probs)
    us = np.array([rng.uniform() for _ in range(n)])
    idx = np.minimum(np.searchsorted(cum, us, side="right"), len(cum) - 1)
    configs = table.support_configs
    return [configs[i] for i in idx]


def empirical_distribution(samples: Sequence[tuple[int, ...]], table: WorldTable) -> np.ndarray:
    """Histogram of samples aligned to a table's configuration order."""
    counts = np.zeros(len(table.configs))
    index = table.config_index
    for s in samples:
        i = index.get(tuple(s))
        if i is None:
            raise InvalidConfigError(f"sample {s!r} is not a configuration of this table")
        counts[i] += 1.0
    return counts / len(samples)


def tv_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Total variation distance between two aligned distributions."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"mismatched support: {p.shape} vs {q.shape}")
    return 0.5 * float(np.abs(p - q).sum())


# ---------------------------------------------------------------------------
# Even-subgraph counting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvenCountReport:
    enumerated: int
    closed_form: int

    @property
    def passed(self) -> bool:
        return self.enumerated == self.closed_form

    def as_dict(self) -> dict:
        return {
            "enumerated": self.enumerated,
            "closed_form": self.closed_form,
            "passed": self.passed,
        }


def check_even_subgraph_count(g: WeightedGraph, z: Sequence[int]) -> EvenCountReport:
    """Count even-degree subgraphs dominated by ``z`` two ways.

    Brute-force enumeration over subsets of the open edges is compared
    with ``2 ** (open - num_nodes + clusters)``.
    """
    part = clusters(g, z)  # validates z
    open_edges = [e for e in range(g.num_edges) if z[e]]
    if len(open_edges) > EDGE_ENUM_CAP:
        raise CapExceededError(f"even-subgraph enumeration needs <= {EDGE_ENUM_CAP} open edges")
    count = 0
    for bits in product((0, 1), repeat=len(open_edges)):
        parity = [0] * g.num_nodes
        for e, bit in zip(open_edges, bits):
            if bit:
                i, j = g.edges[e]
                parity[i] ^= 1
                parity[j] ^= 1
        if not any(parity):
            count += 1
    closed_form = 1 << (len(open_edges) - g.num_nodes + part.count)
    return EvenCountReport(count, closed_form)
