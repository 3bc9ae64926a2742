"""Serial reference pipeline: truncated power iteration plus 1-D k-means.

This path is written with plain numpy reductions (``@``, ``sum``) and serves
as the deterministic single-threaded baseline the parallel kernel backend is
compared against. Agreement between the two is tolerance-bounded, not bitwise;
see the equivalence tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .affinity import SimilarityKind, build_affinity, degree, normalize
from .data import DataSet
from .errors import InvalidSpec, ZeroDegree
from .kmeans import KMeansParams, kmeans_1d

ROW_SUM_TOL = 1e-9


@dataclass(frozen=True)
class PicParams:
    """Clustering parameters.

    ``epsilon`` of None means the convergence threshold defaults to 1e-5 / n
    once the dataset size is known. ``v0`` selects the starting vector:
    "degree" (degree vector normalized to unit L1 mass), "uniform", or an
    explicit nonnegative unit-L1 vector.
    """

    k: int
    epsilon: float | None = None
    max_iterations: int = 50
    v0: str | np.ndarray = "degree"

    def __post_init__(self) -> None:
        if self.k < 2:
            raise InvalidSpec(f"k must be at least 2, got {self.k}")
        if self.epsilon is not None and not (self.epsilon > 0):
            raise InvalidSpec(f"epsilon must be positive, got {self.epsilon!r}")
        if self.max_iterations < 1:
            raise InvalidSpec("max_iterations must be at least 1")

    def resolved_epsilon(self, n: int) -> float:
        return self.epsilon if self.epsilon is not None else 1e-5 / n


@dataclass(frozen=True)
class PicTrace:
    """Per-run iteration record.

    ``delta_history[t]`` is the max-norm step size of iteration t + 1; the
    stop rule compares consecutive entries against epsilon.
    """

    iterations_run: int
    delta_history: np.ndarray
    converged: bool


def check_row_stochastic(w: np.ndarray) -> np.ndarray:
    """Validate that every row of w sums to 1 within 1e-9 with entries in [0, 1]."""
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise InvalidSpec(f"expected a square matrix, got shape {w.shape}")
    sums = w.sum(axis=1)
    if np.max(np.abs(sums - 1.0)) > ROW_SUM_TOL:
        bad = int(np.argmax(np.abs(sums - 1.0)))
        raise InvalidSpec(f"row {bad} sums to {sums[bad]!r}, not 1")
    if w.min() < -1e-12 or w.max() > 1.0 + 1e-12:
        raise InvalidSpec("entries must lie in [0, 1]")
    return w


def initial_vector(deg: np.ndarray, choice: str | np.ndarray) -> np.ndarray:
    """Build the starting vector from the degree vector.

    "degree" returns deg / sum(deg), "uniform" returns the constant 1/n
    vector, and an explicit array is validated (length n, nonnegative,
    unit L1 norm within 1e-12) and returned as a copy.
    """
    deg = np.asarray(deg, dtype=np.float64)
    n = deg.shape[0]
    if isinstance(choice, str):
        if choice == "degree":
            if np.any(deg <= 0.0):
                raise ZeroDegree(int(np.flatnonzero(deg <= 0.0)[0]))
            return deg / deg.sum()
        if choice == "uniform":
            return np.full(n, 1.0 / n)
        raise InvalidSpec(f"unknown initial vector kind {choice!r}")
    v0 = np.asarray(choice, dtype=np.float64).copy()
    if v0.shape != (n,):
        raise InvalidSpec(f"explicit v0 has length {v0.size}, expected {n}")
    if v0.min() < 0.0:
        raise InvalidSpec("explicit v0 must be nonnegative")
    if abs(v0.sum() - 1.0) > 1e-12:
        raise InvalidSpec("explicit v0 must have unit L1 norm within 1e-12")
    return v0


def power_iterate(
    w: np.ndarray, params: PicParams, v0: np.ndarray
) -> tuple[np.ndarray, PicTrace]:
    """Truncated power iteration v <- W v / |W v|_1 with acceleration stop.

    Each iteration records delta = max-norm of the step. The loop stops once
    two deltas exist and their difference is at most epsilon (the iterate's
    velocity has stabilized), or after max_iterations. Returns the final
    vector and the trace.
    """
    w = check_row_stochastic(w)
    n = w.shape[0]
    eps = params.resolved_epsilon(n)
    v = np.asarray(v0, dtype=np.float64)
    deltas: list[float] = []
    converged = False
    for _ in range(params.max_iterations):
        wv = w @ v
        v_next = wv / np.abs(wv).sum()
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
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray, PicTrace]:
    """End-to-end serial clustering.

    Composes affinity, degree, row normalization, power iteration, and 1-D
    k-means. Deterministic for a fixed seed. Returns (labels, embedding,
    trace).
    """
    a = build_affinity(d, kind)
    deg = degree(a)
    w = normalize(a, deg)
    del a
    v0 = initial_vector(deg, params.v0)
    v, trace = power_iterate(w, params, v0)
    labels = kmeans_1d(v, KMeansParams(k=params.k, seed=seed))
    return labels, v, trace
