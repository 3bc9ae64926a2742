"""Synthetic labelled dataset generators and the balanced subsampler.

Every generator is deterministic for a fixed seed, emits 2-D points with
class ids contiguous from 0, and balances class sizes within one point.
Noise is the standard deviation of isotropic Gaussian jitter added to the
noiseless geometry (for the blob generator it is the blob spread itself).

Parametric forms (theta sampled uniformly over the stated range):

* two-moons: unit-radius half circles, upper (cos t, sin t) for t in
  [0, pi], lower mirrored and shifted to (1 + cos t, 0.5 - sin t);
  translation (3, 2).
* three-circles: concentric circles of radii 1, 2, 3 with evenly spaced
  angles; translation (5, 4).
* cassine: two interlocking open arcs of radius 2, one spanning
  [-115, 115] degrees at the origin, the other [65, 295] degrees centered
  at (2.4, 0); translation (6, 5).
* blobs: c isotropic Gaussians with standard deviation ``noise`` whose
  centers sit on a circle of radius 5; translation (8, 8).
* shapes: Gaussian blob, uniform square, unit circle, and a sine segment
  on the corners of a square of half-width 2.5; translation (7, 7).
* smiley: two Gaussian eyes, an elongated nose, and a mouth arc of radius
  2 spanning [200, 340] degrees; translation (6, 6).

The fixed translations keep the origin well outside every cluster: cosine
similarity measures angle from the origin, and a cluster centered there
would collapse the measure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import DataSet
from .errors import FractionTooSmall, InvalidSpec, MissingLabels

KINDS = ("two-moons", "three-circles", "cassine", "blobs", "shapes", "smiley")


def class_count(kind: str, components: int = 3) -> int:
    counts = {
        "two-moons": 2,
        "three-circles": 3,
        "cassine": 2,
        "blobs": components,
        "shapes": 4,
        "smiley": 4,
    }
    if kind not in counts:
        raise InvalidSpec(f"unknown generator kind {kind!r}; choose from {KINDS}")
    return counts[kind]


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    noise: float = 0.0
    seed: int = 0
    components: int = 3  # blob count, ignored by the other kinds

    def __post_init__(self) -> None:
        if self.kind == "blobs" and self.components < 1:
            raise InvalidSpec("blobs needs at least one component")
        c = class_count(self.kind, self.components)
        if self.n < c:
            raise InvalidSpec(f"{self.kind} needs at least {c} points, got {self.n}")
        if self.noise < 0:
            raise InvalidSpec("noise must be nonnegative")


def _balanced_counts(n: int, c: int) -> list[int]:
    base, rem = divmod(n, c)
    return [base + (1 if i < rem else 0) for i in range(c)]


def _arc(count: int, start: float, stop: float, radius: float, center) -> np.ndarray:
    theta = np.linspace(start, stop, count)
    return np.column_stack(
        [center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)]
    )


def _two_moons(counts, rng):
    # interleaved half annuli; fixed offset (3, 2)
    upper = _arc(counts[0], 0.0, np.pi, 1.0, (0.0, 0.0))
    lower = _arc(counts[1], 0.0, np.pi, 1.0, (1.0, 0.5))
    lower[:, 1] = 1.0 - lower[:, 1]
    return [upper, lower], (3.0, 2.0)


def _three_circles(counts, rng):
    # concentric circles at radii 1, 2, 3; fixed offset (5, 4)
    rings = [
        _arc_closed(counts[i], (i + 1) * 1.0) for i in range(3)
    ]
    return rings, (5.0, 4.0)


def _arc_closed(count: int, radius: float) -> np.ndarray:
    theta = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    return np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])


def _cassine(counts, rng):
    # two interlocking bands: opposing open arcs whose mouths wrap around
    # each other; fixed offset (6, 5)
    a = np.deg2rad(115.0)
    left = _arc(counts[0], -a, a, 2.0, (0.0, 0.0))
    b0, b1 = np.deg2rad(65.0), np.deg2rad(295.0)
    right = _arc(counts[1], b0, b1, 2.0, (2.4, 0.0))
    return [left, right], (6.0, 5.0)


def _blobs(counts, rng, components):
    # isotropic blobs on a circle of centers of radius 5; offset (8, 8)
    groups = []
    for i, cnt in enumerate(counts):
        ang = 2.0 * np.pi * i / components
        groups.append(
            np.tile([5.0 * np.cos(ang), 5.0 * np.sin(ang)], (cnt, 1))
        )
    return groups, (8.0, 8.0)


def _shapes(counts, rng):
    # blob, square, ring, wave on the corners of a square; offset (7, 7)
    blob = 0.4 * rng.standard_normal((counts[0], 2)) + [-2.5, -2.5]
    square = rng.uniform(-0.8, 0.8, size=(counts[1], 2)) + [2.5, -2.5]
    ring = _arc_closed(counts[2], 1.0) + [-2.5, 2.5]
    xs = np.linspace(-1.0, 1.0, counts[3])
    wave = np.column_stack([xs, 0.5 * np.sin(3.0 * xs)]) + [2.5, 2.5]
    return [blob, square, ring, wave], (7.0, 7.0)


def _smiley(counts, rng):
    # two eyes, a nose, and a mouth arc; offset (6, 6)
    left = 0.25 * rng.standard_normal((counts[0], 2)) + [-1.2, 1.0]
    right = 0.25 * rng.standard_normal((counts[1], 2)) + [1.2, 1.0]
    nose = rng.standard_normal((counts[2], 2)) * [0.12, 0.35] + [0.0, -0.2]
    mouth = _arc(counts[3], np.deg2rad(200.0), np.deg2rad(340.0), 2.0, (0.0, 0.6))
    return [left, right, nose, mouth], (6.0, 6.0)


def generate(spec: GeneratorSpec) -> DataSet:
    """Generate a labelled 2-D dataset; bit-identical for equal specs."""
    rng = np.random.default_rng(spec.seed)
    c = class_count(spec.kind, spec.components)
    counts = _balanced_counts(spec.n, c)
    if spec.kind == "two-moons":
        groups, offset = _two_moons(counts, rng)
    elif spec.kind == "three-circles":
        groups, offset = _three_circles(counts, rng)
    elif spec.kind == "cassine":
        groups, offset = _cassine(counts, rng)
    elif spec.kind == "blobs":
        groups, offset = _blobs(counts, rng, spec.components)
    elif spec.kind == "shapes":
        groups, offset = _shapes(counts, rng)
    else:
        groups, offset = _smiley(counts, rng)
    points = np.vstack(groups)
    if spec.noise > 0:
        points = points + spec.noise * rng.standard_normal(points.shape)
    points = points + np.asarray(offset)
    labels = np.concatenate(
        [np.full(cnt, i, dtype=np.int64) for i, cnt in enumerate(counts)]
    )
    return DataSet(points, labels, name=spec.kind)


@dataclass(frozen=True)
class SubsampleSpec:
    fraction: float
    seed: int = 0

    def __post_init__(self) -> None:
        if not (0.0 < self.fraction <= 1.0):
            raise FractionTooSmall(self.fraction)


def subsample_balanced(d: DataSet, spec: SubsampleSpec) -> DataSet:
    """Sample the same number of points from every class, without replacement.

    The per-class count is round(fraction * n / class_count), half rounding
    up, floored at 1 and capped at the smallest class size so the result
    stays exactly balanced. Deterministic per seed.
    """
    if d.labels is None:
        raise MissingLabels()
    rng = np.random.default_rng(spec.seed)
    classes = int(d.labels.max()) + 1
    per_class = [np.flatnonzero(d.labels == c) for c in range(classes)]
    count = int(np.floor(spec.fraction * d.n / classes + 0.5))
    count = max(1, min(count, min(idx.size for idx in per_class)))
    picks = [rng.choice(idx, size=count, replace=False) for idx in per_class]
    sel = np.concatenate(picks)
    return DataSet(
        d.points[sel].copy(),
        d.labels[sel].copy(),
        name=f"{d.name}#f={spec.fraction}",
    )
