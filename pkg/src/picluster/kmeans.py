"""k-means over scalar embedding values.

Pipeline: seeded k-means++ initialization, Lloyd iterations with
lowest-index tie breaking and deterministic empty-cluster repair, then an
exact refinement that replaces the Lloyd solution with the optimal
contiguous partition of the sorted values whenever that strictly lowers the
within-cluster sum of squares (optimal 1-D k-means is polynomial, so small
inputs can afford exactness; the refinement is skipped above
POLISH_LIMIT values to keep large runs linear-ish). Output labels are
renumbered so cluster ids follow ascending centroid value, which lets two
backends be compared with plain equality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec, KTooLarge

POLISH_LIMIT = 4096


@dataclass(frozen=True)
class KMeansParams:
    k: int
    max_rounds: int = 100
    seed: int = 0
    tol: float = 1e-12

    def __post_init__(self) -> None:
        if self.k < 2:
            raise InvalidSpec(f"k must be at least 2, got {self.k}")
        if self.max_rounds < 1:
            raise InvalidSpec("max_rounds must be at least 1")


def _kmeanspp_init(values: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Classic D^2-weighted seeding on scalar values."""
    n = values.shape[0]
    centers = np.empty(k)
    centers[0] = values[int(rng.integers(n))]
    d2 = (values - centers[0]) ** 2
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            # all remaining mass at existing centers; duplicate the first value
            centers[j:] = centers[0]
            break
        r = rng.random() * total
        idx = int(np.searchsorted(np.cumsum(d2), r, side="right"))
        centers[j] = values[min(idx, n - 1)]
        np.minimum(d2, (values - centers[j]) ** 2, out=d2)
    return centers


def _assign(values: np.ndarray, centers: np.ndarray) -> np.ndarray:
    # argmin breaks ties toward the lower cluster index
    return np.argmin(np.abs(values[:, None] - centers[None, :]), axis=1)


def _wcss(values: np.ndarray, labels: np.ndarray, k: int) -> float:
    total = 0.0
    for j in range(k):
        sel = values[labels == j]
        if sel.size:
            total += float(((sel - sel.mean()) ** 2).sum())
    return total


def _lloyd(values: np.ndarray, k: int, params: KMeansParams) -> np.ndarray:
    rng = np.random.default_rng(params.seed)
    centers = _kmeanspp_init(values, k, rng)
    labels = _assign(values, centers)
    for _ in range(params.max_rounds):
        # empty-cluster repair: reseed to the point farthest from the centroid
        # it is currently assigned to (lowest index wins ties)
        for j in range(k):
            if not np.any(labels == j):
                far = int(np.argmax(np.abs(values - centers[labels])))
                centers[j] = values[far]
                labels = _assign(values, centers)
        moved = 0.0
        for j in range(k):
            sel = values[labels == j]
            if sel.size:
                c = float(sel.mean())
                moved = max(moved, abs(c - centers[j]))
                centers[j] = c
        labels = _assign(values, centers)
        if moved < params.tol:
            break
    return labels


def optimal_contiguous_labels(values: np.ndarray, k: int) -> np.ndarray:
    """Optimal k-partition of scalars into contiguous blocks of sorted order.

    Dynamic program over split points with prefix-sum segment costs. Ties
    between split choices resolve to the earliest split, so the result is
    deterministic. Labels are returned in original point order, numbered in
    ascending value order.
    """
    order = np.argsort(values, kind="stable")
    x = values[order]
    n = x.shape[0]
    ps = np.concatenate([[0.0], np.cumsum(x)])
    ps2 = np.concatenate([[0.0], np.cumsum(x * x)])
    best = np.full((k + 1, n + 1), np.inf)
    split = np.zeros((k + 1, n + 1), dtype=np.int64)
    best[0, 0] = 0.0
    for kk in range(1, k + 1):
        for j in range(kk, n + 1):
            i = np.arange(kk - 1, j)
            cnt = j - i
            s = ps[j] - ps[i]
            cost = best[kk - 1, kk - 1 : j] + (ps2[j] - ps2[i]) - s * s / cnt
            b = int(np.argmin(cost))
            best[kk, j] = cost[b]
            split[kk, j] = kk - 1 + b
    labels_sorted = np.zeros(n, dtype=np.int64)
    j = n
    for kk in range(k, 0, -1):
        i = int(split[kk, j])
        labels_sorted[i:j] = kk - 1
        j = i
    labels = np.empty(n, dtype=np.int64)
    labels[order] = labels_sorted
    return labels


def _split_at_largest_gaps(values: np.ndarray, k: int) -> np.ndarray:
    """Contiguity repair: cut the sorted values at the k - 1 largest gaps."""
    order = np.argsort(values, kind="stable")
    x = values[order]
    n = x.shape[0]
    labels_sorted = np.zeros(n, dtype=np.int64)
    if n > 1 and k > 1:
        gaps = np.diff(x)
        cuts = np.sort(np.argsort(gaps, kind="stable")[::-1][: k - 1])
        for c in cuts:
            labels_sorted[c + 1 :] += 1
    labels = np.empty(n, dtype=np.int64)
    labels[order] = labels_sorted
    return labels


def _is_contiguous(values: np.ndarray, labels: np.ndarray) -> bool:
    order = np.argsort(values, kind="stable")
    seq = labels[order]
    seen: set[int] = set()
    prev = None
    for lab in seq:
        if lab != prev:
            if int(lab) in seen:
                return False
            seen.add(int(lab))
            prev = lab
    return True


def _canonicalize(values: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """Renumber ids by ascending cluster centroid; empty ids compact upward."""
    centroids = np.full(k, np.inf)
    for j in range(k):
        sel = values[labels == j]
        if sel.size:
            centroids[j] = sel.mean()
    occupied = np.flatnonzero(np.isfinite(centroids))
    ranking = occupied[np.argsort(centroids[occupied], kind="stable")]
    remap = np.zeros(k, dtype=np.int64)
    for new_id, old_id in enumerate(ranking):
        remap[old_id] = new_id
    return remap[labels]


def kmeans_1d(values: np.ndarray, params: KMeansParams) -> np.ndarray:
    """Cluster scalar values into params.k groups, canonically labelled.

    Deterministic for fixed (values, params). Raises KTooLarge when k
    exceeds the number of points.
    """
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    n = values.shape[0]
    k = params.k
    if k > n:
        raise KTooLarge(k, n)
    labels = _lloyd(values, k, params)
    if n <= POLISH_LIMIT:
        refined = optimal_contiguous_labels(values, k)
        if _wcss(values, refined, k) < _wcss(values, labels, k):
            labels = refined
    if not _is_contiguous(values, labels):
        labels = _split_at_largest_gaps(values, k)
    return _canonicalize(values, labels, k)
