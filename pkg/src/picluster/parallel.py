"""Data-parallel kernel pipeline.

Six kernels mirror the stages of the serial path: affinity block
construction, row sums, row normalization, tree reduction, vector scaling,
and matrix-vector multiply. Work is split into at most p contiguous row
ranges executed on a thread pool (numpy releases the GIL inside the heavy
array operations), and affinity rows are produced in chunk-sized blocks so
the largest temporary stays inside the configured memory budget.

Determinism contract: every kernel output is a pure function of its inputs,
independent of p and chunk_rows.

* Per-row accumulations (row sums, dot products) run entirely inside one
  worker with a fixed accumulation order, so they never vary with the
  partition; ``np.einsum`` keeps that order stable across block shapes.
* The tree reduction pads to the next power of two and halves the stride
  each round, making its floating-point result a function of n alone.
* Elementwise kernels are trivially invariant.

The pipeline therefore produces identical bits for any worker count, and
matches the serial path to tight tolerances (not bitwise: the serial path
uses numpy's own pairwise summations).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .affinity import SimilarityKind, Cosine, cosine_norms, similarity_rows
from .data import DataSet, validate_dataset
from .errors import (
    DimensionMismatch,
    EmptyVector,
    InvalidSpec,
    NonPositiveTau,
    ZeroDegree,
)
from .kmeans import KMeansParams, kmeans_1d
from .serial import PicParams, PicTrace, initial_vector

DEFAULT_MEMORY_BUDGET = 256 * 1024 * 1024


@dataclass(frozen=True)
class KernelConfig:
    """Worker count, row-block height, and block memory budget.

    ``chunk_rows`` of None derives the block height from the budget at the
    point of use, where n is known; an explicit value is validated against
    the budget there (chunk_rows * n * 8 bytes must fit).
    """

    p: int = 1
    chunk_rows: int | None = None
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET

    def __post_init__(self) -> None:
        if self.p < 1:
            raise InvalidSpec(f"worker count must be at least 1, got {self.p}")
        if self.chunk_rows is not None and self.chunk_rows < 1:
            raise InvalidSpec("chunk_rows must be at least 1")
        if self.memory_budget_bytes < 8:
            raise InvalidSpec("memory budget must be positive")

    def resolved_chunk_rows(self, n: int) -> int:
        if self.chunk_rows is not None:
            if self.chunk_rows * n * 8 > self.memory_budget_bytes:
                raise InvalidSpec(
                    f"chunk_rows={self.chunk_rows} needs "
                    f"{self.chunk_rows * n * 8} bytes per block, over the "
                    f"budget of {self.memory_budget_bytes}"
                )
            return min(self.chunk_rows, n)
        return max(1, min(n, self.memory_budget_bytes // (8 * n)))


@dataclass(frozen=True)
class PartitionPlan:
    """Disjoint contiguous half-open row ranges covering [0, n)."""

    ranges: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.ranges)


def plan_rows(n: int, p: int) -> PartitionPlan:
    """Split [0, n) into at most p contiguous ranges of ceil(n / p) rows."""
    if n < 1:
        raise InvalidSpec("cannot partition an empty row space")
    step = -(-n // p)
    ranges = tuple(
        (lo, min(lo + step, n)) for lo in range(0, n, step)
    )
    return PartitionPlan(ranges)


def _run_workers(fn, plan: PartitionPlan, p: int) -> None:
    """Execute fn(lo, hi) for every range, joining before returning."""
    ranges = list(plan)
    if len(ranges) == 1:
        fn(*ranges[0])
        return
    with ThreadPoolExecutor(max_workers=min(p, len(ranges))) as pool:
        futures = [pool.submit(fn, lo, hi) for lo, hi in ranges]
        for fut in futures:
            fut.result()


def k_affinity(d: DataSet, kind: SimilarityKind, config: KernelConfig) -> np.ndarray:
    """Affinity matrix built by p workers over row ranges, in row blocks."""
    validate_dataset(d)
    n = d.n
    points = d.points
    norms = cosine_norms(points) if isinstance(kind, Cosine) else None
    chunk = config.resolved_chunk_rows(n)
    out = np.empty((n, n))

    def worker(lo: int, hi: int) -> None:
        for blk in range(lo, hi, chunk):
            stop = min(blk + chunk, hi)
            out[blk:stop] = similarity_rows(points, blk, stop, kind, norms)

    _run_workers(worker, plan_rows(n, config.p), config.p)
    return out


def k_rowsum(a: np.ndarray, config: KernelConfig) -> np.ndarray:
    """Row sums of A; each row is reduced by a single worker in fixed order."""
    n = a.shape[0]
    out = np.empty(n)

    def worker(lo: int, hi: int) -> None:
        out[lo:hi] = np.einsum("ij->i", a[lo:hi])

    _run_workers(worker, plan_rows(n, config.p), config.p)
    bad = np.flatnonzero(out <= 0.0)
    if bad.size:
        raise ZeroDegree(int(bad[0]))
    return out


def k_normalize(a: np.ndarray, deg: np.ndarray, config: KernelConfig) -> np.ndarray:
    """Row-stochastic W = A / deg; elementwise, bit-identical to the serial path."""
    bad = np.flatnonzero(deg <= 0.0)
    if bad.size:
        raise ZeroDegree(int(bad[0]))
    n = a.shape[0]
    out = np.empty_like(a)

    def worker(lo: int, hi: int) -> None:
        out[lo:hi] = a[lo:hi] / deg[lo:hi, None]

    _run_workers(worker, plan_rows(n, config.p), config.p)
    return out


def k_reduce(v: np.ndarray, config: KernelConfig) -> float:
    """Sum of v by a fixed-shape binary tree.

    The vector is padded with zeros to the next power of two and combined
    with stride halving, so the result depends only on n, never on p.
    """
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    n = v.shape[0]
    if n == 0:
        raise EmptyVector()
    size = 1 << (n - 1).bit_length()
    buf = np.zeros(size)
    buf[:n] = v
    stride = size >> 1
    while stride >= 1:
        buf[:stride] += buf[stride : 2 * stride]
        stride >>= 1
    return float(buf[0])


def k_norm(v: np.ndarray, tau: float, config: KernelConfig) -> np.ndarray:
    """Scale v by 1 / tau. tau must be positive."""
    if not (tau > 0.0):
        raise NonPositiveTau(tau)
    v = np.asarray(v, dtype=np.float64)
    n = v.shape[0]
    out = np.empty(n)

    def worker(lo: int, hi: int) -> None:
        out[lo:hi] = v[lo:hi] / tau

    _run_workers(worker, plan_rows(n, config.p), config.p)
    return out


def k_multiply(w: np.ndarray, v: np.ndarray, config: KernelConfig) -> np.ndarray:
    """W @ v with each output entry produced by one worker in fixed order."""
    n = w.shape[0]
    if w.shape[1] != v.shape[0]:
        raise DimensionMismatch(w.shape, v.shape)
    out = np.empty(n)

    def worker(lo: int, hi: int) -> None:
        out[lo:hi] = np.einsum("ij,j->i", w[lo:hi], v)

    _run_workers(worker, plan_rows(n, config.p), config.p)
    return out


def initial_embedding(deg: np.ndarray, params: PicParams, config: KernelConfig) -> np.ndarray:
    """Starting vector: degree choice goes through the reduce/scale kernels."""
    if isinstance(params.v0, str) and params.v0 == "degree":
        return k_norm(deg, k_reduce(deg, config), config)
    return initial_vector(deg, params.v0)


def iterate(
    w: np.ndarray, v: np.ndarray, params: PicParams, config: KernelConfig
) -> tuple[np.ndarray, PicTrace]:
    """Kernel-composed power iteration with the same stop rule as the serial path."""
    eps = params.resolved_epsilon(w.shape[0])
    deltas: list[float] = []
    converged = False
    for _ in range(params.max_iterations):
        wv = k_multiply(w, v, config)
        tau = k_reduce(wv, config)
        v_next = k_norm(wv, tau, config)
        deltas.append(float(np.max(np.abs(v_next - v))))
        v = v_next
        if len(deltas) >= 2 and abs(deltas[-1] - deltas[-2]) <= eps:
            converged = True
            break
    return v, PicTrace(len(deltas), np.asarray(deltas), converged)


def cluster(
    d: DataSet,
    kind: SimilarityKind,
    params: PicParams,
    config: KernelConfig = KernelConfig(),
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray, PicTrace]:
    """End-to-end clustering through the kernel pipeline.

    Same contract as the serial path; output is independent of p and
    chunk_rows. Returns (labels, embedding, trace).
    """
    a = k_affinity(d, kind, config)
    deg = k_rowsum(a, config)
    w = k_normalize(a, deg, config)
    del a
    v = initial_embedding(deg, params, config)
    v, trace = iterate(w, v, params, config)
    labels = kmeans_1d(v, KMeansParams(k=params.k, seed=seed))
    return labels, v, trace
