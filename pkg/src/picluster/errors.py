"""Exception types raised across the library.

Two broad families matter to callers: :class:`DataError` for malformed or
inconsistent input data (bad CSV, label mismatches) and :class:`NumericError`
for conditions that make the math undefined (isolated points, zero vectors).
The CLI maps them to distinct exit codes.
"""


class PiclusterError(ValueError):
    """Base class for all library errors."""


class DataError(PiclusterError):
    """Input data is malformed or inconsistent."""


class NumericError(PiclusterError):
    """A numeric precondition is violated; the requested result is undefined."""


class EmptyDataSet(DataError):
    def __init__(self) -> None:
        super().__init__("dataset must contain at least one point and one feature")


class NonFiniteEntry(DataError):
    def __init__(self, row: int, col: int) -> None:
        self.row = row
        self.col = col
        super().__init__(f"non-finite value at row {row}, column {col}")


class LabelLengthMismatch(DataError):
    def __init__(self, n_points: int, n_labels: int) -> None:
        self.n_points = n_points
        self.n_labels = n_labels
        super().__init__(f"{n_labels} labels for {n_points} points")


class ParseError(DataError):
    def __init__(self, line: int, detail: str = "") -> None:
        self.line = line
        msg = f"cannot parse line {line}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class RaggedRows(DataError):
    def __init__(self, line: int) -> None:
        self.line = line
        super().__init__(f"line {line} has a different number of columns than line 1")


class MissingLabels(DataError):
    def __init__(self) -> None:
        super().__init__("operation requires a dataset with ground-truth labels")


class LengthMismatch(DataError):
    def __init__(self, a: int, b: int) -> None:
        super().__init__(f"label vectors differ in length: {a} vs {b}")


class ZeroVector(NumericError):
    def __init__(self, index: int) -> None:
        self.index = index
        super().__init__(
            f"point {index} has zero norm; cosine similarity is undefined"
        )


class DimensionMismatch(NumericError):
    def __init__(self, a, b) -> None:
        super().__init__(f"dimension mismatch: {a} vs {b}")


class ZeroDegree(NumericError):
    def __init__(self, index: int) -> None:
        self.index = index
        super().__init__(
            f"row {index} of the affinity matrix sums to zero; "
            "the point is isolated and row normalization is undefined"
        )


class EmptyVector(NumericError):
    def __init__(self) -> None:
        super().__init__("cannot reduce an empty vector")


class NonPositiveTau(NumericError):
    def __init__(self, tau: float) -> None:
        self.tau = tau
        super().__init__(f"normalization constant must be positive, got {tau!r}")


class KTooLarge(NumericError):
    def __init__(self, k: int, n: int) -> None:
        super().__init__(f"k={k} exceeds the number of points n={n}")


class FractionTooSmall(NumericError):
    def __init__(self, fraction: float) -> None:
        super().__init__(f"subsample fraction must lie in (0, 1], got {fraction!r}")


class TooFewPoints(NumericError):
    def __init__(self, n: int) -> None:
        super().__init__(f"validity indices need at least 2 points, got {n}")


class InvalidSpec(NumericError):
    """A generator or parameter specification violates its invariants."""
