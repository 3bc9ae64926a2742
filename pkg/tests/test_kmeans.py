"""Scalar k-means: examples, determinism, canonical form, and optimality."""

import numpy as np
import pytest

from picluster import KMeansParams, kmeans_1d
from picluster.kmeans import _assign, _is_contiguous, _split_at_largest_gaps
from picluster.errors import InvalidSpec, KTooLarge

from oracles import best_contiguous_wcss, wcss_of


def test_two_separated_value_groups():
    v = np.array([0.05, 0.05, 0.45, 0.45])
    labels = kmeans_1d(v, KMeansParams(k=2, seed=0))
    assert np.array_equal(labels, [0, 0, 1, 1])


def test_all_equal_values_collapse_to_one_cluster():
    v = np.full(6, 0.25)
    labels = kmeans_1d(v, KMeansParams(k=2, seed=3))
    assert np.array_equal(labels, np.zeros(6, dtype=np.int64))


def test_k_too_large():
    with pytest.raises(KTooLarge):
        kmeans_1d(np.array([0.5, 0.5]), KMeansParams(k=3))


def test_k_below_two_rejected():
    with pytest.raises(InvalidSpec):
        KMeansParams(k=1)


def test_determinism():
    rng = np.random.default_rng(17)
    v = rng.uniform(0, 1, 200)
    a = kmeans_1d(v, KMeansParams(k=3, seed=5))
    b = kmeans_1d(v, KMeansParams(k=3, seed=5))
    assert np.array_equal(a, b)


def test_labels_ordered_by_centroid():
    rng = np.random.default_rng(9)
    for seed in range(10):
        v = rng.uniform(0, 1, 60)
        labels = kmeans_1d(v, KMeansParams(k=4, seed=seed))
        centroids = [v[labels == j].mean() for j in sorted(set(labels.tolist()))]
        assert centroids == sorted(centroids)


def test_assignment_ties_take_lower_index():
    labels = _assign(np.array([2.0]), np.array([0.0, 4.0]))
    assert labels[0] == 0


def test_clusters_are_contiguous_in_sorted_order():
    rng = np.random.default_rng(31)
    for seed in range(30):
        n = int(rng.integers(5, 80))
        k = min(int(rng.integers(2, 5)), n)
        v = rng.uniform(-2, 2, n)
        labels = kmeans_1d(v, KMeansParams(k=k, seed=seed))
        assert _is_contiguous(v, labels)


def test_gap_repair_direct():
    v = np.array([0.0, 0.1, 5.0, 5.1, 10.0, 10.1])
    labels = _split_at_largest_gaps(v, 3)
    assert np.array_equal(labels, [0, 0, 1, 1, 2, 2])


def test_duplicated_values_with_excess_k_stay_valid():
    v = np.array([0.0, 0.0, 0.0, 10.0])
    labels = kmeans_1d(v, KMeansParams(k=3, seed=1))
    assert labels.min() >= 0 and labels.max() <= 2
    assert _is_contiguous(v, labels)
    # the clear split must be respected regardless of the third cluster
    assert len(set(labels[:3].tolist()) & {labels[3]}) == 0


def test_matches_exhaustive_optimum_small_instances():
    rng = np.random.default_rng(12345)
    for trial in range(60):
        n = int(rng.integers(4, 21))
        k = min(int(rng.integers(2, 5)), n)
        v = rng.uniform(0, 1, n)
        labels = kmeans_1d(v, KMeansParams(k=k, seed=trial))
        got = wcss_of(v, labels)
        opt = best_contiguous_wcss(v, k)
        assert got <= opt + 1e-9, f"n={n} k={k}: {got} vs optimal {opt}"


def test_large_input_skips_polish_but_stays_valid():
    rng = np.random.default_rng(8)
    v = np.concatenate([rng.normal(0, 0.05, 2500), rng.normal(1, 0.05, 2500)])
    labels = kmeans_1d(v, KMeansParams(k=2, seed=2))
    assert _is_contiguous(v, labels)
    # two well separated value groups are recovered exactly
    assert np.array_equal(labels, (v > 0.5).astype(np.int64))
