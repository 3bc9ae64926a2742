"""Dataset container, validation, and CSV interchange.

All matrices and vectors in the library are plain row-major float64 numpy
arrays. The :class:`DataSet` wrapper only adds optional ground-truth labels
and a name; everything downstream works on the ``points`` array directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DataError,
    EmptyDataSet,
    LabelLengthMismatch,
    NonFiniteEntry,
    ParseError,
    RaggedRows,
)


@dataclass(frozen=True)
class DataSet:
    """n points in m-dimensional feature space, optionally labelled.

    ``points`` is an (n, m) float64 array. ``labels``, when present, is a
    length-n integer array with class ids contiguous from 0.
    """

    points: np.ndarray
    labels: np.ndarray | None = None
    name: str = ""

    def __post_init__(self) -> None:
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.float64))
        if pts.ndim != 2:
            pts = np.atleast_2d(pts)
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            lab = np.ascontiguousarray(np.asarray(self.labels, dtype=np.int64))
            object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def m(self) -> int:
        return self.points.shape[1]

    @property
    def n_classes(self) -> int:
        if self.labels is None:
            return 0
        return int(self.labels.max()) + 1 if self.labels.size else 0


def validate_dataset(d: DataSet) -> DataSet:
    """Check all DataSet invariants and return the dataset unchanged.

    Raises EmptyDataSet, NonFiniteEntry, or LabelLengthMismatch. Idempotent.
    """
    if d.points.size == 0 or d.points.shape[0] < 1 or d.points.shape[1] < 1:
        raise EmptyDataSet()
    finite = np.isfinite(d.points)
    if not finite.all():
        row, col = np.argwhere(~finite)[0]
        raise NonFiniteEntry(int(row), int(col))
    if d.labels is not None:
        if d.labels.shape != (d.n,):
            raise LabelLengthMismatch(d.n, int(d.labels.size))
        ids = np.unique(d.labels)
        if not np.array_equal(ids, np.arange(ids.size)):
            raise DataError("class ids must be contiguous integers starting at 0")
    return d


def load_csv(path: str | Path, has_labels: bool = False, header: bool = False) -> DataSet:
    """Read a rectangular numeric CSV into a DataSet.

    Comma separated, one point per line. With ``has_labels`` the last column
    is an integer class id. ``header`` skips the first line. Raises
    ParseError(line) or RaggedRows(line) with 1-based line numbers.
    """
    path = Path(path)
    rows: list[list[float]] = []
    labels: list[int] = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if header and lineno == 1:
                continue
            line = raw.strip()
            if not line:
                continue
            fields = line.split(",")
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise RaggedRows(lineno)
            if has_labels:
                *feat, lab = fields
                try:
                    labels.append(int(lab))
                except ValueError:
                    raise ParseError(lineno, f"label {lab!r} is not an integer") from None
            else:
                feat = fields
            try:
                rows.append([float(f) for f in feat])
            except ValueError:
                raise ParseError(lineno, "non-numeric field") from None
    if not rows:
        raise EmptyDataSet()
    points = np.array(rows, dtype=np.float64)
    d = DataSet(points, np.array(labels, dtype=np.int64) if has_labels else None, name=path.stem)
    return validate_dataset(d)


def write_csv(d: DataSet, path: str | Path) -> None:
    """Write points (and labels, if present) with 17 significant digits.

    17 digits make the float64 round trip through load_csv bit-exact.
    """
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(d.n):
            cells = [f"{x:.17g}" for x in d.points[i]]
            if d.labels is not None:
                cells.append(str(int(d.labels[i])))
            fh.write(",".join(cells) + "\n")


def write_vector_csv(values: np.ndarray, path: str | Path, fmt: str = "%.17g") -> None:
    """Write a vector one value per line (used for embeddings and labels)."""
    np.savetxt(path, np.asarray(values).reshape(-1), fmt=fmt)
