"""Matrix files: alist and the compact QC text format.

alist layout (1-based indices, lists zero-padded to the maximum degree)::

    n m
    max_col_degree max_row_degree
    <n column degrees>
    <m row degrees>
    <n lines: row indices of each column>
    <m lines: column indices of each row>

QC text layout::

    dv L z
    <L lines of dv shift values>
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from qcldpc.construction import QcParityCheckMatrix, detect_qc
from qcldpc.errors import ParseError


def _ints(line, lineno, what):
    try:
        return [int(x) for x in line.split()]
    except ValueError:
        raise ParseError(f"expected integers in {what}", line=lineno) from None


def write_alist(dense):
    dense = np.asarray(dense, dtype=np.uint8)
    m, n = dense.shape
    col_lists = [np.flatnonzero(dense[:, j]) + 1 for j in range(n)]
    row_lists = [np.flatnonzero(dense[i, :]) + 1 for i in range(m)]
    max_col = max((len(c) for c in col_lists), default=0)
    max_row = max((len(r) for r in row_lists), default=0)

    def padded(idx, width):
        vals = list(idx.tolist()) + [0] * (width - len(idx))
        return " ".join(str(v) for v in vals)

    lines = [f"{n} {m}", f"{max_col} {max_row}"]
    lines.append(" ".join(str(len(c)) for c in col_lists))
    lines.append(" ".join(str(len(r)) for r in row_lists))
    lines += [padded(c, max_col) for c in col_lists]
    lines += [padded(r, max_row) for r in row_lists]
    return "\n".join(lines) + "\n"


def read_alist(text):
    lines = text.splitlines()
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file, expected {what}", line=pos + 1)
        pos += 1
        return _ints(lines[pos - 1], pos, what), pos

    header, ln = take("'n m'")
    if len(header) != 2 or min(header) < 1:
        raise ParseError("header must be 'n m' with positive sizes", line=ln)
    n, m = header
    degs, ln = take("maximum degrees")
    if len(degs) != 2:
        raise ParseError("expected 'max_col_degree max_row_degree'", line=ln)
    max_col, max_row = degs
    col_deg, ln = take("column degrees")
    if len(col_deg) != n:
        raise ParseError(f"expected {n} column degrees, got {len(col_deg)}", line=ln)
    row_deg, ln = take("row degrees")
    if len(row_deg) != m:
        raise ParseError(f"expected {m} row degrees, got {len(row_deg)}", line=ln)
    if max(col_deg) != max_col or max(row_deg) != max_row:
        raise ParseError("maximum degrees do not match the degree lists", line=2)

    dense = np.zeros((m, n), dtype=np.uint8)
    for j in range(n):
        idx, ln = take(f"row list of column {j + 1}")
        if len(idx) != max_col:
            raise ParseError(f"column list must have {max_col} entries", line=ln)
        real = [x for x in idx if x != 0]
        if len(real) != col_deg[j] or any(x != 0 for x in idx[col_deg[j]:]):
            raise ParseError("column list disagrees with its degree", line=ln)
        if any(x < 1 or x > m for x in real) or len(set(real)) != len(real):
            raise ParseError("row index out of range or repeated", line=ln)
        dense[np.asarray(real, dtype=np.int64) - 1, j] = 1
    check = np.zeros_like(dense)
    for i in range(m):
        idx, ln = take(f"column list of row {i + 1}")
        if len(idx) != max_row:
            raise ParseError(f"row list must have {max_row} entries", line=ln)
        real = [x for x in idx if x != 0]
        if len(real) != row_deg[i] or any(x != 0 for x in idx[row_deg[i]:]):
            raise ParseError("row list disagrees with its degree", line=ln)
        if any(x < 1 or x > n for x in real) or len(set(real)) != len(real):
            raise ParseError("column index out of range or repeated", line=ln)
        check[i, np.asarray(real, dtype=np.int64) - 1] = 1
    if not np.array_equal(dense, check):
        raise ParseError("row lists and column lists describe different matrices", line=pos)
    if any(line.strip() for line in lines[pos:]):
        raise ParseError("trailing content", line=pos + 1)
    return dense


def read_qc_text(text):
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", line=1)
    header = _ints(lines[0], 1, "header")
    if len(header) != 3:
        raise ParseError("header must be 'dv L z'", line=1)
    dv, L, z = header
    if dv < 1 or L < 1 or z < 1:
        raise ParseError("dv, L and z must be positive", line=1)
    if len(lines) < L + 1:
        raise ParseError(f"expected {L} circulant lines, found {len(lines) - 1}", line=len(lines) + 1)
    circulants = []
    for lineno in range(2, L + 2):
        shifts = _ints(lines[lineno - 1], lineno, "shift values")
        if len(shifts) != dv:
            raise ParseError(f"expected {dv} shift values, got {len(shifts)}", line=lineno)
        if any(s < 0 or s >= z for s in shifts):
            raise ParseError(f"shift value outside [0, {z - 1}]", line=lineno)
        if any(b <= a for a, b in zip(shifts, shifts[1:])):
            raise ParseError("shift values must be strictly increasing", line=lineno)
        circulants.append(tuple(shifts))
    if any(line.strip() for line in lines[L + 1:]):
        raise ParseError("trailing content", line=L + 2)
    return QcParityCheckMatrix(z=z, circulants=tuple(circulants))


def write_qc_text(h):
    return h.to_text()


def sniff_format(text):
    for line in text.splitlines():
        if line.strip():
            return "qc-text" if len(line.split()) == 3 else "alist"
    raise ParseError("empty file", line=1)


def load_matrix(path):
    """Read a matrix file; returns ``(dense, qc)`` with ``qc`` None when not quasi-cyclic."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    if sniff_format(text) == "qc-text":
        qc = read_qc_text(text)
        return qc.dense(), qc
    dense = read_alist(text)
    return dense, detect_qc(dense)


def save_matrix(h, path, fmt="alist"):
    if fmt == "alist":
        text = write_alist(h.dense())
    elif fmt == "qc-text":
        text = write_qc_text(h)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    Path(path).write_text(text)
    return text
