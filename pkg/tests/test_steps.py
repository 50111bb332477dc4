import numpy as np
import pytest

from graphonsp.kernels import empirical_graphon, erdos_renyi, exp_distance
from graphonsp.sampling import apply_shift, sample_graph, scaled_adjacency
from graphonsp.steps import (apply_empirical_operator, lift,
                             step_operator_matrix, unlift)


class TestLiftUnlift:
    def test_roundtrip(self):
        x = np.array([1.0, 2.0, 3.0])
        np.testing.assert_array_equal(unlift(lift(x)), x)

    def test_zero_vector_is_zero_function(self):
        f = lift(np.zeros(4))
        ts = np.linspace(0, 1, 17)
        assert np.all(f.evaluate(ts) == 0.0)

    def test_negative_coefficients_allowed(self):
        np.testing.assert_array_equal(unlift(lift(np.array([1.0, -1.0]))),
                                      np.array([1.0, -1.0]))

    def test_basis_amplitude(self):
        # e1 with N=2 lifts to the value 2 on [0, 1/2) and 0 on [1/2, 1]
        f = lift(np.array([1.0, 0.0]))
        assert f.evaluate(0.0) == 2.0
        assert f.evaluate(0.49) == 2.0
        assert f.evaluate(0.5) == 0.0
        assert f.evaluate(1.0) == 0.0

    def test_singleton(self):
        np.testing.assert_array_equal(unlift(lift(np.array([5.0]))), [5.0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            lift(np.array([]))

    def test_symmetric_domain(self):
        f = lift(np.array([1.0, 0.0]), domain="symmetric")
        assert f.evaluate(-1.0) == 2.0
        assert f.evaluate(0.5) == 0.0

    def test_bijection_on_random_vectors(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            x = rng.standard_normal(rng.integers(1, 40))
            np.testing.assert_array_equal(unlift(lift(x)), x)


class TestStepOperatorMatrix:
    def test_complete_graph_recovers_adjacency(self):
        g = sample_graph(erdos_renyi(1.0), 4, seed=0)
        m = step_operator_matrix(empirical_graphon(g))
        np.testing.assert_array_equal(m, g.adjacency.astype(float))

    def test_zero_grid(self):
        g = sample_graph(erdos_renyi(0.0), 5, seed=0)
        np.testing.assert_array_equal(step_operator_matrix(empirical_graphon(g)),
                                      np.zeros((5, 5)))

    def test_random_graph_recovers_adjacency(self):
        g = sample_graph(erdos_renyi(0.5), 20, seed=13)
        m = step_operator_matrix(empirical_graphon(g))
        np.testing.assert_array_equal(m, g.adjacency.astype(float))

    def test_analytic_kernel_rejected(self):
        with pytest.raises(ValueError):
            step_operator_matrix(erdos_renyi(0.5))


class TestEmpiricalOperator:
    def test_complete_graph_ones(self):
        g = sample_graph(erdos_renyi(1.0), 4, seed=0)
        out = apply_empirical_operator(empirical_graphon(g), lift(np.ones(4)))
        np.testing.assert_allclose(unlift(out), 0.75 * np.ones(4))

    def test_zero_grid_annihilates(self):
        g = sample_graph(erdos_renyi(0.0), 3, seed=0)
        out = apply_empirical_operator(empirical_graphon(g),
                                       lift(np.array([1.0, 2.0, 3.0])))
        np.testing.assert_array_equal(unlift(out), np.zeros(3))

    def test_single_edge(self):
        g = sample_graph(erdos_renyi(1.0), 2, seed=0)
        out = apply_empirical_operator(empirical_graphon(g),
                                       lift(np.array([1.0, 0.0])))
        np.testing.assert_allclose(unlift(out), np.array([0.0, 0.5]))

    def test_dimension_mismatch(self):
        g = sample_graph(erdos_renyi(1.0), 4, seed=0)
        with pytest.raises(ValueError):
            apply_empirical_operator(empirical_graphon(g), lift(np.ones(5)))

    def test_adjacency_equivalence_exact(self):
        # lifted operator application equals scaled-adjacency application
        # to machine precision for any sampled graph
        rng = np.random.default_rng(99)
        for w in (erdos_renyi(0.5), exp_distance(10.0)):
            for n in (5, 20, 50, 200):
                g = sample_graph(w, n, seed=n)
                we = empirical_graphon(g)
                s = scaled_adjacency(g)
                for _ in range(20):
                    x = rng.standard_normal(n)
                    lifted = unlift(apply_empirical_operator(we, lift(x)))
                    np.testing.assert_allclose(lifted, apply_shift(s, x),
                                               atol=1e-13)

    def test_operator_powers_match_shift_powers(self):
        g = sample_graph(erdos_renyi(0.5), 60, seed=21)
        we = empirical_graphon(g)
        s = scaled_adjacency(g)
        rng = np.random.default_rng(0)
        x = rng.standard_normal(60)
        f = lift(x)
        y = x.copy()
        for _ in range(5):
            f = apply_empirical_operator(we, f)
            y = apply_shift(s, y)
            np.testing.assert_allclose(unlift(f), y, atol=1e-13)
