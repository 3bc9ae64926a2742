"""External cluster-validity indices over a shared contingency table.

Both indices are pair-counting measures: the adjusted Rand index is the
chance-corrected agreement of co-clustering decisions, and the Jaccard index
here is the clustering-comparison form SS / (SS + SD + DS), not the set
overlap. All binomial sums use exact Python integers, so results are exact
rational values rounded once at the final division.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import LengthMismatch, TooFewPoints


@dataclass(frozen=True)
class ContingencyTable:
    """counts[i][j] = number of points with truth class i and predicted cluster j."""

    counts: np.ndarray
    n: int


def contingency(truth: np.ndarray, pred: np.ndarray) -> ContingencyTable:
    """Cross-tabulate two label vectors. Labels may be any integers."""
    truth = np.asarray(truth, dtype=np.int64).reshape(-1)
    pred = np.asarray(pred, dtype=np.int64).reshape(-1)
    if truth.shape[0] != pred.shape[0]:
        raise LengthMismatch(truth.shape[0], pred.shape[0])
    _, ti = np.unique(truth, return_inverse=True)
    _, pi = np.unique(pred, return_inverse=True)
    r = int(ti.max()) + 1 if ti.size else 0
    c = int(pi.max()) + 1 if pi.size else 0
    counts = np.bincount(ti * c + pi, minlength=r * c).reshape(r, c)
    return ContingencyTable(counts, int(truth.shape[0]))


def _pair_sums(t: ContingencyTable) -> tuple[int, int, int]:
    sij = sum(comb(int(x), 2) for x in t.counts.flat)
    sa = sum(comb(int(x), 2) for x in t.counts.sum(axis=1))
    sb = sum(comb(int(x), 2) for x in t.counts.sum(axis=0))
    return sij, sa, sb


def adjusted_rand_index(t: ContingencyTable) -> float:
    """Hubert-Arabie adjusted Rand index in [-1, 1].

    1.0 for identical partitions, expectation 0 under random labelling.
    Degenerate tables where the correction denominator vanishes (both
    partitions trivial and identical) return 1.0.
    """
    if t.n < 2:
        raise TooFewPoints(t.n)
    sij, sa, sb = _pair_sums(t)
    total = comb(t.n, 2)
    # ari = (sij - sa*sb/total) / ((sa+sb)/2 - sa*sb/total), cleared of
    # denominators so the arithmetic stays in exact integers
    num = 2 * (sij * total - sa * sb)
    den = total * (sa + sb) - 2 * sa * sb
    if den == 0:
        return 1.0
    return num / den


def jaccard_index(t: ContingencyTable) -> float:
    """Pair-counting Jaccard index SS / (SS + SD + DS) in [0, 1].

    SS counts pairs grouped together in both partitions, SD and DS pairs
    grouped in exactly one. Identical all-singleton partitions have no
    co-clustered pairs at all and score 1.0 by convention.
    """
    if t.n < 2:
        raise TooFewPoints(t.n)
    sij, sa, sb = _pair_sums(t)
    ss = sij
    sd = sa - sij
    ds = sb - sij
    if ss + sd + ds == 0:
        return 1.0
    return ss / (ss + sd + ds)
