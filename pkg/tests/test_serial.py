"""Serial power iteration: stop rule, trace, invariants, end-to-end quality."""

import numpy as np
import pytest

from picluster import (
    Cosine,
    DataSet,
    GaussianRbf,
    PicParams,
    build_affinity,
    degree,
    initial_vector,
    normalize,
    power_iterate,
    serial,
)
from picluster.errors import InvalidSpec, ZeroDegree
from picluster.validation import adjusted_rand_index, contingency

from oracles import cosine_angle, dominant_right_eigenvector, random_points

TINY_EPS = 5e-324  # smallest positive double: disables the stop rule in practice


def random_row_stochastic(rng, n):
    w = rng.uniform(0.1, 1.0, (n, n))
    return w / w.sum(axis=1, keepdims=True)


class TestInitialVector:
    def test_degree_init(self):
        v = initial_vector(np.array([1.0, 1.0, 2.0]), "degree")
        assert np.array_equal(v, [0.25, 0.25, 0.5])

    def test_uniform(self):
        assert np.array_equal(initial_vector(np.ones(4), "uniform"), np.full(4, 0.25))

    def test_explicit_passthrough(self):
        v = initial_vector(np.ones(2), np.array([0.3, 0.7]))
        assert np.array_equal(v, [0.3, 0.7])

    def test_explicit_must_be_unit_mass(self):
        with pytest.raises(InvalidSpec):
            initial_vector(np.ones(2), np.array([0.3, 0.3]))

    def test_zero_degree_rejected(self):
        with pytest.raises(ZeroDegree):
            initial_vector(np.array([1.0, 0.0]), "degree")


class TestPowerIterate:
    def test_identity_matrix_fixed_point(self):
        w = np.eye(3)
        v0 = np.full(3, 1.0 / 3.0)
        v, trace = power_iterate(w, PicParams(k=2, epsilon=1e-8, max_iterations=50), v0)
        assert np.array_equal(v, v0)
        assert trace.converged and trace.iterations_run == 2

    def test_swap_matrix_symmetric_fixed_point(self):
        w = np.array([[0.0, 1.0], [1.0, 0.0]])
        v0 = np.array([0.5, 0.5])
        v, trace = power_iterate(w, PicParams(k=2, epsilon=1e-8, max_iterations=50), v0)
        assert np.array_equal(v, v0)
        assert trace.converged and trace.iterations_run == 2

    def test_block_diagonal_embedding_flat_per_block(self):
        rng = np.random.default_rng(2)
        blocks = [random_row_stochastic(rng, 3) for _ in range(2)]
        w = np.zeros((6, 6))
        w[:3, :3], w[3:, 3:] = blocks
        v0 = np.full(6, 1.0 / 6.0)
        v, _ = power_iterate(w, PicParams(k=2, epsilon=TINY_EPS, max_iterations=50), v0)
        assert np.ptp(v[:3]) <= 1e-6 and np.ptp(v[3:]) <= 1e-6
        # independent eigen-oracle: each block's dominant right eigenvector is flat
        for blk in blocks:
            vec = dominant_right_eigenvector(blk)
            assert np.abs(vec - vec.mean()).max() <= 1e-9

    def test_l1_mass_and_nonnegativity_preserved_each_iteration(self):
        rng = np.random.default_rng(4)
        w = random_row_stochastic(rng, 12)
        v0 = np.full(12, 1.0 / 12.0)
        for t in range(1, 6):
            v, _ = power_iterate(w, PicParams(k=2, epsilon=TINY_EPS, max_iterations=t), v0)
            assert abs(np.abs(v).sum() - 1.0) <= 1e-9
            assert v.min() >= 0.0

    def test_trace_contract(self):
        rng = np.random.default_rng(6)
        for seed in range(10):
            w = random_row_stochastic(np.random.default_rng(seed), 8)
            params = PicParams(k=2, epsilon=1e-6, max_iterations=int(rng.integers(1, 30)))
            _, trace = power_iterate(w, params, np.full(8, 1.0 / 8.0))
            assert trace.iterations_run <= params.max_iterations
            assert len(trace.delta_history) == trace.iterations_run
            if trace.converged:
                d = trace.delta_history
                assert abs(d[-1] - d[-2]) <= params.epsilon

    def test_converges_to_dominant_eigenvector(self):
        for seed in range(5):
            rng = np.random.default_rng(100 + seed)
            w = random_row_stochastic(rng, 32)
            v0 = np.full(32, 1.0 / 32.0)
            v, _ = power_iterate(w, PicParams(k=2, epsilon=TINY_EPS, max_iterations=500), v0)
            ref = dominant_right_eigenvector(w)
            assert cosine_angle(v, ref) >= 1.0 - 1e-6

    def test_rejects_non_stochastic_matrix(self):
        with pytest.raises(InvalidSpec):
            power_iterate(np.ones((2, 2)), PicParams(k=2), np.array([0.5, 0.5]))


class TestClusterEndToEnd:
    def test_two_blobs_exact_recovery(self):
        rng = np.random.default_rng(0)
        scale = 0.1
        a = rng.normal(0.0, scale, (100, 2)) + [2.0, 2.0]
        b = rng.normal(0.0, scale, (100, 2)) + [6.0, 6.0]  # 10+ sigma apart
        d = DataSet(np.vstack([a, b]), labels=np.array([0] * 100 + [1] * 100))
        labels, _, _ = serial.cluster(d, GaussianRbf(scale / 2.0), PicParams(k=2), seed=1)
        assert adjusted_rand_index(contingency(d.labels, labels)) == 1.0

    def test_identical_points_collapse(self):
        d = DataSet(np.tile([1.0, 2.0], (8, 1)))
        labels, _, _ = serial.cluster(d, Cosine(), PicParams(k=2), seed=0)
        assert len(set(labels.tolist())) == 1

    def test_six_point_block_toy(self):
        # two cliques with different edge weights: degrees 2,2,2 and 1,1,1
        a = np.zeros((6, 6))
        a[:3, :3] = 1.0 - np.eye(3)
        a[3:, 3:] = 0.5 * (1.0 - np.eye(3))
        deg = degree(a)
        assert np.array_equal(deg, [2.0, 2.0, 2.0, 1.0, 1.0, 1.0])
        w = normalize(a, deg)
        v0 = initial_vector(deg, "degree")
        v, trace = power_iterate(w, PicParams(k=2), v0)
        # the degree vector is an exact eigenvector here, so two flat levels
        from picluster import KMeansParams, kmeans_1d

        labels = kmeans_1d(v, KMeansParams(k=2, seed=0))
        assert np.array_equal(labels, [1, 1, 1, 0, 0, 0])

    def test_scale_invariance_through_pipeline(self):
        rng = np.random.default_rng(42)
        pts = random_points(rng, 30)
        d = DataSet(pts)
        a1 = build_affinity(d, GaussianRbf(0.7))
        a2 = 2.0 * a1  # exact power-of-two scaling
        w1 = normalize(a1, degree(a1))
        w2 = normalize(a2, degree(a2))
        assert np.array_equal(w1, w2)
        params = PicParams(k=2)
        v1, t1 = power_iterate(w1, params, initial_vector(degree(a1), "degree"))
        v2, t2 = power_iterate(w2, params, initial_vector(degree(a2), "degree"))
        assert np.array_equal(v1, v2)
        assert np.array_equal(t1.delta_history, t2.delta_history)
