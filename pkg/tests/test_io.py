import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcldpc.construction import construct
from qcldpc.errors import ParseError
from qcldpc.io import load_matrix, read_alist, read_qc_text, save_matrix, sniff_format, write_alist


def test_alist_layout(code_26):
    text = write_alist(code_26.dense())
    lines = text.splitlines()
    assert lines[0] == "26 13" and lines[1] == "3 6"
    assert len(lines) == 4 + 26 + 13
    # column 0 of the first circulant holds shifts 0, 1, 4 -> rows 1, 2, 5
    assert lines[4] == "1 2 5"


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 20), st.integers(0, 2**32 - 1))
def test_alist_round_trip_random(m, n, seed):
    dense = np.random.default_rng(seed).integers(0, 2, (m, n), dtype=np.uint8)
    dense[0, :] = 1  # keep every degree list nonempty-ish for the max header
    assert np.array_equal(read_alist(write_alist(dense)), dense)


@pytest.mark.parametrize("fmt", ["alist", "qc-text"])
def test_file_round_trip(tmp_path, fmt, code_1640):
    path = tmp_path / f"h.{fmt}"
    save_matrix(code_1640, path, fmt)
    dense, qc = load_matrix(path)
    assert np.array_equal(dense, code_1640.dense())
    assert qc == code_1640


def test_qc_text_round_trip():
    h = construct(dv=3, L=5, z=40)
    assert read_qc_text(h.to_text()) == h
    assert sniff_format(h.to_text()) == "qc-text"
    assert sniff_format(write_alist(h.dense())) == "alist"


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("3 2\n", 2),
    ("26 13\n3 6\n" + "3 " * 25 + "\n", 3),
    ("2 1\n1 2\n1 1\n2\n1\n0\n1 2\n", 6),
    ("2 1\n1 2\n1 1\n2\n1\n9\n1 2\n", 6),
    ("2 1\n1 2\n1 1\n2\n1\n1\n1 2\nextra\n", 8),
    ("2 1\n1 2\n1 x\n2\n1\n1\n1 2\n", 3),
])
def test_alist_errors_have_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        read_alist(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_alist_row_and_column_lists_must_agree():
    good = "2 1\n1 2\n1 1\n2\n1\n1\n1 2\n"
    assert read_alist(good).tolist() == [[1, 1]]
    with pytest.raises(ParseError, match="different"):
        read_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n")


@pytest.mark.parametrize("text,line", [
    ("3 2 13\n0 1 4\n", 3),
    ("3 2 13\n0 1 4\n0 2\n", 3),
    ("3 2 13\n0 1 4\n0 2 13\n", 3),
    ("3 2 13\n0 0 4\n0 2 7\n", 2),
    ("3 2 x\n", 1),
])
def test_qc_text_errors(text, line):
    with pytest.raises(ParseError) as info:
        read_qc_text(text)
    assert info.value.line == line


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_matrix(tmp_path / "nope.alist")


def test_alist_of_non_qc_matrix(tmp_path):
    dense = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    path = tmp_path / "small.alist"
    path.write_text(write_alist(dense))
    got, qc = load_matrix(path)
    assert np.array_equal(got, dense) and qc is None
