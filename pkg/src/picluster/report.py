"""Phase-timed pipeline runs and the benchmark report format.

A report captures one configuration run ``repetitions`` times: every
repetition keeps its per-phase wall-clock seconds (monotonic clock), so
aggregate statistics can be recomputed after the fact. The JSON layout is
versioned with a top-level ``schema`` field.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import parallel, serial
from .affinity import Cosine, SimilarityKind, build_affinity, degree, normalize
from .data import DataSet
from .errors import InvalidSpec
from .kmeans import KMeansParams, kmeans_1d
from .parallel import KernelConfig
from .serial import PicParams, PicTrace, initial_vector, power_iterate
from .validation import adjusted_rand_index, contingency, jaccard_index

SCHEMA_VERSION = 1
PHASES = ("affinity", "rowsum", "normalize", "iterate", "kmeans")


@dataclass
class TimedRun:
    labels: np.ndarray
    embedding: np.ndarray
    trace: PicTrace
    phases: dict[str, float]
    total: float


def similarity_to_dict(kind: SimilarityKind) -> dict:
    if isinstance(kind, Cosine):
        return {"kind": "cosine"}
    return {"kind": "rbf", "sigma": kind.sigma}


def run_timed(
    d: DataSet,
    kind: SimilarityKind,
    params: PicParams,
    backend: str = "serial",
    config: KernelConfig | None = None,
    seed: int = 0,
) -> TimedRun:
    """Run one clustering pass, timing each pipeline phase."""
    config = config or KernelConfig()
    phases: dict[str, float] = {}
    clock = time.perf_counter
    start = clock()
    if backend == "serial":
        t = clock()
        a = build_affinity(d, kind)
        phases["affinity"] = clock() - t
        t = clock()
        deg = degree(a)
        phases["rowsum"] = clock() - t
        t = clock()
        w = normalize(a, deg)
        phases["normalize"] = clock() - t
        del a
        t = clock()
        v0 = initial_vector(deg, params.v0)
        v, trace = power_iterate(w, params, v0)
        phases["iterate"] = clock() - t
        t = clock()
        labels = kmeans_1d(v, KMeansParams(k=params.k, seed=seed))
        phases["kmeans"] = clock() - t
    elif backend == "parallel":
        t = clock()
        a = parallel.k_affinity(d, kind, config)
        phases["affinity"] = clock() - t
        t = clock()
        deg = parallel.k_rowsum(a, config)
        phases["rowsum"] = clock() - t
        t = clock()
        w = parallel.k_normalize(a, deg, config)
        phases["normalize"] = clock() - t
        del a
        t = clock()
        v = parallel.initial_embedding(deg, params, config)
        v, trace = parallel.iterate(w, v, params, config)
        phases["iterate"] = clock() - t
        t = clock()
        labels = kmeans_1d(v, KMeansParams(k=params.k, seed=seed))
        phases["kmeans"] = clock() - t
    else:
        raise InvalidSpec(f"unknown backend {backend!r}")
    total = clock() - start
    return TimedRun(labels, v, trace, phases, total)


@dataclass
class BenchReport:
    """Aggregate of repeated timed runs of one configuration."""

    dataset: str
    n: int
    m: int
    backend: str
    p: int
    similarity: dict
    params: dict
    repetitions: int
    runs: list[dict] = field(default_factory=list)
    mean_seconds: float = 0.0
    stddev_seconds: float = 0.0
    affinity_share: float = 0.0
    ari: float | None = None
    jaccard: float | None = None
    baseline: str | None = None
    speedup: float | None = None

    def to_dict(self) -> dict:
        return {"schema": SCHEMA_VERSION, **self.__dict__}

    def write(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def load_report(path: str | Path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("schema") != SCHEMA_VERSION:
        raise InvalidSpec(f"unsupported report schema {doc.get('schema')!r}")
    return doc


def benchmark(
    d: DataSet,
    kind: SimilarityKind,
    params: PicParams,
    backend: str = "serial",
    config: KernelConfig | None = None,
    seed: int = 0,
    repetitions: int = 1,
    baseline: dict | None = None,
) -> tuple[BenchReport, TimedRun]:
    """Run ``repetitions`` timed passes and aggregate them into a report.

    The clustering output is identical across repetitions (fixed seed), so
    validity indices are computed once from the last run. ``baseline`` is a
    previously written report dict; the speedup field is its mean runtime
    divided by this one's.
    """
    if repetitions < 1:
        raise InvalidSpec("repetitions must be at least 1")
    config = config or KernelConfig()
    runs = []
    last: TimedRun | None = None
    for _ in range(repetitions):
        last = run_timed(d, kind, params, backend, config, seed)
        runs.append({"phases": dict(last.phases), "total": last.total})
    totals = [r["total"] for r in runs]
    mean = sum(totals) / len(totals)
    stddev = math.sqrt(sum((t - mean) ** 2 for t in totals) / len(totals))
    report = BenchReport(
        dataset=d.name,
        n=d.n,
        m=d.m,
        backend=backend,
        p=config.p,
        similarity=similarity_to_dict(kind),
        params={
            "k": params.k,
            "epsilon": params.resolved_epsilon(d.n),
            "max_iterations": params.max_iterations,
            "seed": seed,
        },
        repetitions=repetitions,
        runs=runs,
        mean_seconds=mean,
        stddev_seconds=stddev,
        affinity_share=sum(r["phases"]["affinity"] for r in runs) / sum(totals),
    )
    if d.labels is not None and last is not None:
        table = contingency(d.labels, last.labels)
        report.ari = adjusted_rand_index(table)
        report.jaccard = jaccard_index(table)
    if baseline is not None:
        report.baseline = f"{baseline['dataset']}/{baseline['backend']}/p={baseline['p']}"
        report.speedup = baseline["mean_seconds"] / mean
    return report, last
