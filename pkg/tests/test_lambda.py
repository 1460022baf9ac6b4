import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from herext.graphs import (
    complete_graph,
    complete_multipartite,
    cycle_graph,
    empty_graph,
    graph_from_edges,
    path_graph,
    turan_graph,
)
from herext.lambda_alpha import (
    lambda_alpha,
    lambda_lower_bound,
    lambda_one,
    spectral_radius,
)

from conftest import labeled_classes


def random_graph(rng, n, p=0.5):
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return graph_from_edges(n, edges)


graphs_st = st.builds(
    lambda seed, n, p: random_graph(random.Random(seed), n, p),
    st.integers(0, 2**31),
    st.integers(1, 7),
    st.sampled_from([0.2, 0.5, 0.8]),
)

alphas_st = st.sampled_from([1.0, 1.25, 1.5, 2.0, 3.0, 10.0])


def eigen_oracle(g) -> float:
    if g.n == 0:
        return 0.0
    return float(np.linalg.eigvalsh(g.adjacency_matrix()).max())


class TestLambdaOne:
    def test_clique_formula(self):
        for n in range(1, 8):
            r = lambda_one(complete_graph(n))
            assert r.value_exact == Fraction(n - 1, n)
            assert r.converged
            assert r.kkt_residual == 0.0

    def test_uses_clique_number(self):
        # value depends only on the clique number
        g = turan_graph(3, 9)
        assert lambda_one(g).value_exact == Fraction(2, 3)
        assert lambda_one(cycle_graph(5)).value_exact == Fraction(1, 2)
        assert lambda_one(empty_graph(4)).value_exact == 0

    def test_witness_is_feasible_and_attains_value(self):
        g = turan_graph(2, 6)
        r = lambda_one(g)
        x = np.array(r.vector.entries)
        assert abs(x.sum() - 1.0) <= 1e-12
        val = float(x @ g.adjacency_matrix() @ x)
        assert abs(val - float(r.value_exact)) <= 1e-12

    def test_cross_check_against_optimizer(self):
        for g in (complete_graph(4), cycle_graph(5), turan_graph(2, 5)):
            lambda_one(g, cross_check=True)  # raises on disagreement

    @given(graphs_st)
    @settings(max_examples=15, deadline=None)
    def test_near_one_continuity(self, g):
        exact = float(lambda_one(g).value_exact)
        approx = lambda_alpha(g, 1.0 + 1e-4).value
        assert abs(exact - approx) <= 1e-2


class TestClosedForms:
    @pytest.mark.parametrize("alpha", [1.25, 1.5, 2.0, 3.0])
    def test_clique(self, alpha):
        for n in range(2, 7):
            want = (n - 1) * n ** (1.0 - 2.0 / alpha)
            got = lambda_alpha(complete_graph(n), alpha)
            assert got.converged
            assert abs(got.value - want) <= 1e-8

    def test_alpha_two_equals_spectral_radius_on_named_graphs(self):
        for g in (
            cycle_graph(5),
            path_graph(6),
            complete_multipartite((3, 3)),
            turan_graph(3, 7),
        ):
            r = lambda_alpha(g, 2.0)
            assert abs(r.value - eigen_oracle(g)) <= 1e-8

    def test_known_irrational_values(self):
        assert abs(lambda_alpha(path_graph(3), 2.0).value - math.sqrt(2)) <= 1e-8
        assert abs(lambda_alpha(complete_multipartite((1, 4)), 2.0).value - 2.0) <= 1e-8
        assert abs(lambda_alpha(complete_multipartite((2, 3)), 2.0).value - math.sqrt(6)) <= 1e-8

    def test_regular_uniform_bound_and_alpha2_equality(self):
        # on a d-regular graph the uniform vector is feasible with value
        # d * n^(1-2/alpha), so lambda is at least that; at alpha=2 on a
        # connected regular graph it is exactly d
        for g, d in ((cycle_graph(6), 2), (complete_graph(5), 4), (turan_graph(2, 8), 4)):
            n = g.n
            for alpha in (1.25, 1.5, 2.0, 3.0):
                r = lambda_alpha(g, alpha)
                assert r.value >= d * n ** (1.0 - 2.0 / alpha) - 1e-9
            assert abs(lambda_alpha(g, 2.0).value - d) <= 1e-8

    def test_cycle_concentrates_below_alpha_two(self):
        # at alpha<2 the optimum on C5 beats the uniform value strictly
        r = lambda_alpha(cycle_graph(5), 1.25)
        assert r.value > 2 * 5 ** (1.0 - 2.0 / 1.25) + 1e-3


class TestOptimizerAgainstEigenOracle:
    def test_all_classes_up_to_five(self, classes_by_n):
        for n in range(1, 6):
            for g in classes_by_n[n]:
                r = lambda_alpha(g, 2.0)
                assert abs(r.value - eigen_oracle(g)) <= 1e-6

    @given(graphs_st)
    @settings(max_examples=20, deadline=None)
    def test_random_graphs(self, g):
        assert abs(lambda_alpha(g, 2.0).value - eigen_oracle(g)) <= 1e-6

    @given(graphs_st)
    @settings(max_examples=20, deadline=None)
    def test_power_iteration_route_agrees(self, g):
        assert abs(spectral_radius(g) - eigen_oracle(g)) <= 1e-8


class TestResultInvariants:
    @given(graphs_st, alphas_st)
    @settings(max_examples=40, deadline=None)
    def test_vector_feasible_and_value_consistent(self, g, alpha):
        r = lambda_alpha(g, alpha)
        x = np.array(r.vector.entries)
        assert (x >= 0.0).all()
        assert r.vector.alpha == alpha
        if g.edge_count() > 0:
            assert r.vector.norm_defect() <= 1e-12
        twice = 2.0 * sum(x[u] * x[v] for u, v in g.edges())
        assert abs(r.value - twice) <= 1e-10

    @given(graphs_st, alphas_st)
    @settings(max_examples=40, deadline=None)
    def test_lower_bound(self, g, alpha):
        r = lambda_alpha(g, alpha)
        assert r.value >= lambda_lower_bound(g, alpha) - 1e-9

    @given(graphs_st, st.integers(0, 2**31), alphas_st)
    @settings(max_examples=25, deadline=None)
    def test_edge_monotone(self, g, seed, alpha):
        non_edges = [
            (u, v)
            for u, v in itertools.combinations(range(g.n), 2)
            if not g.has_edge(u, v)
        ]
        if not non_edges:
            return
        u, v = random.Random(seed).choice(non_edges)
        bigger = g.add_edge(u, v)
        assert lambda_alpha(bigger, alpha).value >= lambda_alpha(g, alpha).value - 1e-8

    def test_gradient_matches_central_differences(self):
        rng = np.random.default_rng(5)
        g = graph_from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)])
        adj = g.adjacency_matrix()
        x = rng.random(6) + 0.5
        grad = 2.0 * adj @ x

        def f(y):
            return float(y @ adj @ y)

        h = 1e-6
        for u in range(6):
            e = np.zeros(6)
            e[u] = h
            fd = (f(x + e) - f(x - e)) / (2 * h)
            assert abs(fd - grad[u]) <= 1e-5

    def test_deterministic_for_fixed_seed(self):
        g = cycle_graph(7)
        a = lambda_alpha(g, 1.5, seed=99)
        b = lambda_alpha(g, 1.5, seed=99)
        assert a.value == b.value
        assert a.vector.entries == b.vector.entries

    def test_threads_do_not_change_result(self):
        g = turan_graph(3, 8)
        a = lambda_alpha(g, 1.5)
        b = lambda_alpha(g, 1.5, threads=4)
        assert a.value == b.value


class TestEdgeCasesAndValidation:
    def test_alpha_below_one_rejected(self):
        with pytest.raises(ValueError):
            lambda_alpha(complete_graph(3), 0.99)

    def test_empty_graph(self):
        r = lambda_alpha(empty_graph(0), 2.0)
        assert r.value == 0.0
        assert r.converged

    def test_edgeless_graph(self):
        r = lambda_alpha(empty_graph(5), 1.5)
        assert r.value == 0.0
        assert r.converged

    def test_isolated_vertices_get_zero_weight(self):
        g = graph_from_edges(4, [(0, 1)])
        r = lambda_alpha(g, 2.0)
        x = r.vector.entries
        assert x[2] == 0.0 and x[3] == 0.0
        assert abs(r.value - 1.0) <= 1e-9

    def test_alpha_snap_to_one(self):
        r = lambda_alpha(complete_graph(4), 1.0)
        assert r.value_exact == Fraction(3, 4)

    def test_lower_bound_rejects_empty(self):
        with pytest.raises(ValueError):
            lambda_lower_bound(empty_graph(0), 2.0)

    def test_spectral_radius_trivial_cases(self):
        assert spectral_radius(empty_graph(0)) == 0.0
        assert spectral_radius(empty_graph(3)) == 0.0
        assert abs(spectral_radius(complete_graph(2)) - 1.0) <= 1e-9

    def test_json_dict_shape(self):
        d = lambda_alpha(path_graph(3), 2.0).to_json_dict()
        assert set(d) >= {"value", "alpha", "kkt_residual", "converged", "vector", "iterations"}
        assert isinstance(d["vector"], list)
        assert len(d["vector"]) == 3
        assert d["value_exact"] is None
        exact = lambda_alpha(path_graph(3), 1.0).to_json_dict()
        assert exact["value_exact"] == "1/2"
