"""Enumeration tables, identities, kernel matrices, and counting."""

import math
import random

import numpy as np
import pytest

from conftest import random_graph
from isingworlds import (
    CapExceededError,
    InvalidConfigError,
    RngStream,
    WeightedGraph,
    check_even_subgraph_count,
    check_rc_normalizer,
    check_relate_identity,
    empirical_distribution,
    enumerate_world,
    exact_kernel_matrix,
    exact_tables,
    sample_from_table,
    tv_distance,
)
from isingworlds.fixtures import FIXTURE_NAMES, complete_graph, fixture_graph, path_graph


class TestEnumeration:
    def test_k2_partition_sums(self):
        beta = 0.8
        tables = exact_tables(fixture_graph("k2", beta))
        assert tables.Z_spins == pytest.approx(4 * math.cosh(beta), rel=1e-12)
        assert tables.Z_subs == 1.0  # only the empty subgraph is even
        p = 1 - math.exp(-2 * beta)
        assert tables.Z_rc == pytest.approx(4 - 2 * p, rel=1e-12)

    def test_triangle_subs_partition(self):
        lam = math.tanh(0.6)
        tables = exact_tables(fixture_graph("triangle", 0.6))
        assert tables.Z_subs == pytest.approx(1 + lam**3, rel=1e-12)

    def test_probabilities_sum_to_one(self):
        for name in FIXTURE_NAMES:
            g = fixture_graph(name, 0.5)
            for world in ("spins", "subs", "rc"):
                table = enumerate_world(g, world)
                assert abs(float(table.probs.sum()) - 1.0) < 1e-12
                assert (table.weights >= 0.0).all()

    def test_lexicographic_order(self):
        table = enumerate_world(fixture_graph("k2", 0.5), "spins")
        assert table.configs == ((1, 1), (1, -1), (-1, 1), (-1, -1))
        table = enumerate_world(fixture_graph("k2", 0.5), "rc")
        assert table.configs == ((0,), (1,))

    def test_caps(self):
        with pytest.raises(CapExceededError):
            enumerate_world(WeightedGraph(17, (), ()), "spins")
        big = path_graph(22, 0.5)
        with pytest.raises(CapExceededError):
            enumerate_world(big, "subs")

    def test_field_graph_uses_field_weight(self):
        g = WeightedGraph.from_edges(1, [], field={0: math.log(3.0)})
        table = enumerate_world(g, "spins")
        # up weighs 3, down weighs 1
        assert table.probs[table.config_index[(1,)]] == pytest.approx(0.75)


class TestIdentities:
    @pytest.mark.parametrize("beta", [0.0, 0.25, 0.5, 1.0, 2.0])
    def test_relate_uniform(self, beta):
        for name in ("k2", "path3", "triangle", "cycle4"):
            for report in check_relate_identity(fixture_graph(name, beta)):
                assert report.passed and report.relative_error < 1e-12

    def test_relate_triangle_closed_form(self):
        beta = 0.5
        tables = exact_tables(fixture_graph("triangle", beta))
        rhs = 8 * math.cosh(beta) ** 3 * (1 + math.tanh(beta) ** 3)
        assert abs(tables.Z_spins - rhs) / tables.Z_spins < 1e-12

    def test_relate_rejects_infinite(self):
        from isingworlds import InvalidParameterError

        with pytest.raises(InvalidParameterError):
            check_relate_identity(complete_graph(2, math.inf))

    def test_relate_log_domain_path(self):
        # beta large enough that exp(sum beta) overflows the linear route
        g = fixture_graph("k2", 800.0)
        for report in check_relate_identity(g):
            assert report.used_log_domain
            assert report.passed and report.relative_error < 1e-10

    def test_rc_normalizer_k2_closed_form(self):
        beta = 0.8
        g = fixture_graph("k2", beta)
        report = check_rc_normalizer(g)
        assert report.passed
        p = 1 - math.exp(-2 * beta)
        assert report.lhs == pytest.approx(4 - 2 * p, rel=1e-12)
        assert report.rhs == pytest.approx(2 * (2 - p), rel=1e-12)

    def test_rc_normalizer_handles_infinite(self):
        g = WeightedGraph.from_edges(3, [(0, 1, math.inf), (1, 2, 0.5)])
        assert check_rc_normalizer(g).passed

    def test_rc_normalizer_edgeless(self):
        g = WeightedGraph(3, (), ())
        report = check_rc_normalizer(g)
        assert report.passed and report.lhs == 8.0

    def test_rc_normalizer_mixed_cycle(self):
        g = fixture_graph("cycle4", [0.1, 0.6, 1.3, 2.2])
        report = check_rc_normalizer(g)
        assert report.passed and report.relative_error < 1e-12


class TestKernelMatrices:
    def test_rows_stochastic(self):
        g = fixture_graph("cycle4", [0.0, 0.4, 1.0, math.inf])
        tables = exact_tables(g)
        for kernel in ("subs_to_rc", "rc_to_subs", "spins_to_rc", "rc_to_spins",
                       "sw_classic", "sw_subgraphs"):
            km = exact_kernel_matrix(g, kernel, tables)
            assert np.max(np.abs(km.matrix.sum(axis=1) - 1.0)) < 1e-12

    def test_k2_subs_to_rc_row(self):
        lam = math.tanh(0.5)
        km = exact_kernel_matrix(fixture_graph("k2", 0.5), "subs_to_rc")
        assert km.matrix.tolist() == [pytest.approx([1 - lam, lam], rel=1e-12)]

    def test_unknown_kernel(self):
        from isingworlds import InvalidParameterError

        with pytest.raises(InvalidParameterError):
            exact_kernel_matrix(fixture_graph("k2", 0.5), "teleport")

    def test_cap(self):
        with pytest.raises(CapExceededError):
            exact_kernel_matrix(fixture_graph("grid3x3", 0.5), "subs_to_rc")


class TestTvDistance:
    def test_identical(self):
        assert tv_distance([0.5, 0.5], [0.5, 0.5]) == 0.0

    def test_point_mass_vs_uniform(self):
        assert tv_distance([1.0, 0.0], [0.5, 0.5]) == 0.5

    def test_disjoint(self):
        assert tv_distance([1.0, 0.0], [0.0, 1.0]) == 1.0

    def test_mismatched_support(self):
        with pytest.raises(ValueError):
            tv_distance([1.0], [0.5, 0.5])

    def test_empirical_distribution_checks_membership(self):
        table = enumerate_world(fixture_graph("k2", 0.5), "rc")
        with pytest.raises(InvalidConfigError):
            empirical_distribution([(0, 1)], table)

    def test_sampling_round_trip(self):
        table = enumerate_world(fixture_graph("triangle", 0.9), "rc")
        samples = sample_from_table(table, RngStream(6), 20000)
        assert tv_distance(empirical_distribution(samples, table), table.probs) < 0.02


class TestEvenSubgraphCount:
    def test_triangle_all_open(self):
        report = check_even_subgraph_count(fixture_graph("triangle", 0.5), (1, 1, 1))
        assert report.enumerated == 2 and report.closed_form == 2

    def test_k4_all_open(self):
        report = check_even_subgraph_count(fixture_graph("k4", 0.5), (1,) * 6)
        assert report.enumerated == 8 and report.closed_form == 8  # 2**(6-4+1)

    def test_forest_counts_one(self):
        g = path_graph(5, 0.5)
        for z in [(1, 1, 1, 1), (1, 0, 1, 0), (0, 0, 0, 0)]:
            report = check_even_subgraph_count(g, z)
            assert report.enumerated == 1 and report.closed_form == 1

    def test_random_pairs(self):
        rnd = random.Random(2718)
        for _ in range(50):
            g = random_graph(rnd, max_nodes=6, max_edges=10)
            z = tuple(rnd.randint(0, 1) for _ in range(g.num_edges))
            assert check_even_subgraph_count(g, z).passed
