"""Pairwise affinity matrix A, degree vector, and row normalization W = A / d.

The row-block routine :func:`similarity_rows` is the single source of truth
for affinity values: the serial builder computes one block spanning all rows,
the parallel backend computes many blocks. Every entry is produced by the
same fixed sequence of elementwise operations (an explicit loop over the
feature axis), so the value of A[i, j] depends only on the two points and
never on the block boundaries. That is what makes worker-count and chunk-size
invariance exact rather than approximate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import DataSet, validate_dataset
from .errors import DimensionMismatch, InvalidSpec, ZeroDegree, ZeroVector


@dataclass(frozen=True)
class Cosine:
    """Cosine similarity clamped at zero: max(0, x.y / (|x||y|))."""


@dataclass(frozen=True)
class GaussianRbf:
    """Gaussian similarity exp(-|x-y|^2 / (2 sigma^2))."""

    sigma: float

    def __post_init__(self) -> None:
        if not (self.sigma > 0):
            raise InvalidSpec(f"sigma must be positive, got {self.sigma!r}")


SimilarityKind = Cosine | GaussianRbf


def cosine_norms(points: np.ndarray) -> np.ndarray:
    """Euclidean norm of every point, accumulated feature by feature.

    Raises ZeroVector with the first offending row index.
    """
    n, m = points.shape
    sq = np.zeros(n)
    for f in range(m):
        sq += points[:, f] * points[:, f]
    zero = np.flatnonzero(sq == 0.0)
    if zero.size:
        raise ZeroVector(int(zero[0]))
    return np.sqrt(sq)


def similarity(x: np.ndarray, y: np.ndarray, kind: SimilarityKind) -> float:
    """Similarity of two points in [0, 1]. Symmetric in x and y."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise DimensionMismatch(x.shape, y.shape)
    if isinstance(kind, Cosine):
        nx = float(np.sqrt(np.sum(x * x)))
        ny = float(np.sqrt(np.sum(y * y)))
        if nx == 0.0:
            raise ZeroVector(0)
        if ny == 0.0:
            raise ZeroVector(1)
        return max(0.0, float(np.dot(x, y)) / (nx * ny))
    d2 = float(np.sum((x - y) ** 2))
    return float(np.exp(-d2 / (2.0 * kind.sigma * kind.sigma)))


def similarity_rows(
    points: np.ndarray,
    lo: int,
    hi: int,
    kind: SimilarityKind,
    norms: np.ndarray | None = None,
) -> np.ndarray:
    """Rows [lo, hi) of the affinity matrix, diagonal entries zeroed.

    ``norms`` carries precomputed cosine norms so that repeated block calls
    share one pass over the data; it is ignored for the RBF kind.
    """
    n, m = points.shape
    h = hi - lo
    if isinstance(kind, Cosine):
        if norms is None:
            norms = cosine_norms(points)
        dots = np.zeros((h, n))
        for f in range(m):
            dots += points[lo:hi, f, None] * points[None, :, f]
        block = dots / (norms[lo:hi, None] * norms[None, :])
        np.maximum(block, 0.0, out=block)
    else:
        d2 = np.zeros((h, n))
        for f in range(m):
            diff = points[lo:hi, f, None] - points[None, :, f]
            d2 += diff * diff
        block = np.exp(d2 * (-1.0 / (2.0 * kind.sigma * kind.sigma)))
    idx = np.arange(lo, hi)
    block[idx - lo, idx] = 0.0
    return block


def build_affinity(d: DataSet, kind: SimilarityKind) -> np.ndarray:
    """Dense symmetric nonnegative n x n affinity matrix with zero diagonal."""
    validate_dataset(d)
    return similarity_rows(d.points, 0, d.n, kind)


def degree(a: np.ndarray) -> np.ndarray:
    """Row sums of A. Raises ZeroDegree(i) for the first non-positive row."""
    deg = a.sum(axis=1)
    bad = np.flatnonzero(deg <= 0.0)
    if bad.size:
        raise ZeroDegree(int(bad[0]))
    return deg


def normalize(a: np.ndarray, deg: np.ndarray) -> np.ndarray:
    """Row-stochastic W with W[i, j] = a[i, j] / deg[i]."""
    bad = np.flatnonzero(deg <= 0.0)
    if bad.size:
        raise ZeroDegree(int(bad[0]))
    return a / deg[:, None]
