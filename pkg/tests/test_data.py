"""Dataset container, validation, and CSV round trips."""

import numpy as np
import pytest

from picluster import DataSet, load_csv, validate_dataset, write_csv
from picluster.errors import (
    EmptyDataSet,
    LabelLengthMismatch,
    NonFiniteEntry,
    ParseError,
    RaggedRows,
)


def test_wellformed_dataset_accepted():
    d = DataSet(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert validate_dataset(d) is d


def test_nan_entry_reports_position():
    d = DataSet(np.array([[0.0, np.nan], [1.0, 0.0]]))
    with pytest.raises(NonFiniteEntry) as err:
        validate_dataset(d)
    assert (err.value.row, err.value.col) == (0, 1)


def test_label_length_mismatch():
    d = DataSet(np.ones((4, 2)), labels=np.array([0, 1, 0]))
    with pytest.raises(LabelLengthMismatch):
        validate_dataset(d)


def test_empty_dataset_rejected():
    with pytest.raises(EmptyDataSet):
        validate_dataset(DataSet(np.zeros((0, 2))))


def test_validate_is_idempotent():
    d = DataSet(np.array([[1.0, 2.0]]), labels=np.array([0]))
    assert validate_dataset(validate_dataset(d)) is d


def test_load_csv_plain(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("0,1\n1,0\n")
    d = load_csv(p)
    assert d.n == 2 and d.m == 2
    assert np.array_equal(d.points, [[0.0, 1.0], [1.0, 0.0]])
    assert d.labels is None


def test_load_csv_with_labels(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("0,1,0\n1,0,1\n")
    d = load_csv(p, has_labels=True)
    assert d.n == 2 and d.m == 2
    assert np.array_equal(d.labels, [0, 1])


def test_ragged_rows_line_number(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("0,1\n1\n")
    with pytest.raises(RaggedRows) as err:
        load_csv(p)
    assert err.value.line == 2


def test_parse_error_line_number(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("0,1\n1,zap\n")
    with pytest.raises(ParseError) as err:
        load_csv(p)
    assert err.value.line == 2


def test_header_flag_skips_first_line(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("x,y\n0,1\n1,0\n")
    d = load_csv(p, header=True)
    assert d.n == 2


def test_roundtrip_bit_exact(tmp_path):
    rng = np.random.default_rng(42)
    pts = rng.standard_normal((23, 5)) * np.pi
    labels = rng.integers(0, 3, 23)
    labels[:3] = [0, 1, 2]  # keep ids contiguous
    d = DataSet(pts, labels=labels, name="orig")
    p = tmp_path / "rt.csv"
    write_csv(d, p)
    back = load_csv(p, has_labels=True)
    assert np.array_equal(back.points, d.points)
    assert np.array_equal(back.labels, d.labels)


def test_noncontiguous_labels_rejected():
    from picluster.errors import DataError

    d = DataSet(np.ones((3, 2)), labels=np.array([0, 0, 2]))
    with pytest.raises(DataError):
        validate_dataset(d)
