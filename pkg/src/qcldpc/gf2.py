"""Binary linear algebra: circulant polynomials mod x^z - 1 and packed matrices.

Circulant convention: the shift values are the row indices of the ones in
the first column, and each row is the row above shifted one place right.
Entry ``(r, c)`` is therefore one iff ``(r - c) mod z`` is a shift value, and
multiplying the circulant by a vector is multiplying polynomials mod x^z - 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qcldpc.errors import ParameterError

_WORD = 64


@dataclass(frozen=True)
class Gf2Polynomial:
    """Polynomial of degree < ``z``; bit ``j`` of ``bits`` is the x^j coefficient."""

    z: int
    bits: int = 0

    def __post_init__(self):
        if self.z < 1:
            raise ValueError("z must be positive")
        if self.bits < 0 or self.bits >> self.z:
            raise ValueError(f"coefficients exceed degree bound {self.z}")

    @classmethod
    def from_coefficients(cls, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.uint8)
        bits = 0
        for j in np.flatnonzero(coeffs):
            bits |= 1 << int(j)
        return cls(len(coeffs), bits)

    @property
    def coefficients(self):
        out = np.zeros(self.z, dtype=np.uint8)
        out[self.support()] = 1
        return out

    def support(self):
        bits, out, j = self.bits, [], 0
        while bits:
            if bits & 1:
                out.append(j)
            bits >>= 1
            j += 1
        return out

    @property
    def weight(self):
        return bin(self.bits).count("1")

    def is_zero(self):
        return self.bits == 0

    def __mul__(self, other):
        return poly_mul_mod(self, other)

    def __add__(self, other):
        if other.z != self.z:
            raise ParameterError("mismatched degree bounds")
        return Gf2Polynomial(self.z, self.bits ^ other.bits)

    def __str__(self):
        if not self.bits:
            return "0"
        terms = []
        for j in self.support():
            terms.append("1" if j == 0 else "x" if j == 1 else f"x^{j}")
        return " + ".join(terms)


def circulant_to_polynomial(shifts, z):
    shifts = [int(s) for s in shifts]
    bits = 0
    for a, b in zip(shifts, shifts[1:]):
        if b <= a:
            raise ParameterError(f"shift values must be strictly increasing: {shifts}")
    for s in shifts:
        if not 0 <= s < z:
            raise ParameterError(f"shift value {s} outside [0, {z - 1}]")
        bits |= 1 << s
    return Gf2Polynomial(z, bits)


def _clmul(a, b):
    if a.bit_length() > b.bit_length():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def _fold(bits, z):
    mask = (1 << z) - 1
    while bits >> z:
        bits = (bits & mask) ^ (bits >> z)
    return bits


def poly_mul_mod(a, b):
    if a.z != b.z:
        raise ParameterError(f"mismatched degree bounds {a.z} and {b.z}")
    return Gf2Polynomial(a.z, _fold(_clmul(a.bits, b.bits), a.z))


def _divmod(a, b):
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def poly_gcd(a, b):
    x, y = a, b
    while y:
        x, y = y, _divmod(x, y)[1]
    return x


def poly_inverse_mod(a):
    """Inverse of ``a`` modulo x^z - 1, or ``None`` when ``gcd(a, x^z - 1) != 1``."""
    if a.is_zero():
        raise ParameterError("the zero polynomial has no inverse")
    modulus = (1 << a.z) | 1
    # Extended Euclid tracking only the coefficient of a.
    r0, r1 = modulus, a.bits
    s0, s1 = 0, 1
    while r1:
        q, rem = _divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 ^ _clmul(q, s1)
    if r0 != 1:
        return None
    return Gf2Polynomial(a.z, _fold(s0, a.z))


def circulant_dense(shifts, z):
    """Dense ``z x z`` circulant with first-column support ``shifts``."""
    out = np.zeros((z, z), dtype=np.uint8)
    cols = np.arange(z)
    for s in shifts:
        out[(cols + s) % z, cols] = 1
    return out


class Gf2Matrix:
    """Row-major bit-packed binary matrix; column ``j`` is bit ``j % 64`` of word ``j // 64``."""

    def __init__(self, rows, cols, words=None):
        self.rows = int(rows)
        self.cols = int(cols)
        nwords = max(1, -(-self.cols // _WORD))
        if words is None:
            words = np.zeros((self.rows, nwords), dtype=np.uint64)
        words = np.asarray(words, dtype=np.uint64)
        if words.shape != (self.rows, nwords):
            raise ValueError(f"packed storage has shape {words.shape}, expected {(self.rows, nwords)}")
        self.words = words

    @classmethod
    def from_dense(cls, dense):
        dense = np.asarray(dense, dtype=np.uint8) & 1
        rows, cols = dense.shape
        nwords = max(1, -(-cols // _WORD))
        padded = np.zeros((rows, nwords * _WORD), dtype=np.uint8)
        padded[:, :cols] = dense
        packed = np.packbits(padded.reshape(rows, nwords, _WORD), axis=2, bitorder="little")
        words = packed.view("<u8").reshape(rows, nwords).astype(np.uint64)
        return cls(rows, cols, words)

    def to_dense(self):
        raw = self.words.astype("<u8").view(np.uint8).reshape(self.rows, -1)
        bits = np.unpackbits(raw, axis=1, bitorder="little")
        return bits[:, : self.cols].copy()

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        r, c = idx
        return int((self.words[r, c // _WORD] >> np.uint64(c % _WORD)) & np.uint64(1))

    def __eq__(self, other):
        return isinstance(other, Gf2Matrix) and self.shape == other.shape and np.array_equal(self.words, other.words)

    def transpose(self):
        return Gf2Matrix.from_dense(self.to_dense().T)

    def copy(self):
        return Gf2Matrix(self.rows, self.cols, self.words.copy())

    def row_reduce(self):
        """Reduced row echelon form and the pivot columns, left to right."""
        W = self.words.copy()
        pivots = []
        r = 0
        for col in range(self.cols):
            if r == self.rows:
                break
            w = col // _WORD
            bit = np.uint64(1) << np.uint64(col % _WORD)
            hits = np.flatnonzero(W[r:, w] & bit)
            if hits.size == 0:
                continue
            p = r + int(hits[0])
            if p != r:
                W[[r, p]] = W[[p, r]]
            mask = (W[:, w] & bit) != 0
            mask[r] = False
            W[mask] ^= W[r]
            pivots.append(col)
            r += 1
        return Gf2Matrix(self.rows, self.cols, W), pivots

    def rank(self):
        W = self.words.copy()
        r = 0
        for col in range(self.cols):
            if r == self.rows:
                break
            w = col // _WORD
            bit = np.uint64(1) << np.uint64(col % _WORD)
            hits = np.flatnonzero(W[r:, w] & bit)
            if hits.size == 0:
                continue
            p = r + int(hits[0])
            if p != r:
                W[[r, p]] = W[[p, r]]
            below = np.flatnonzero(W[r + 1:, w] & bit) + r + 1
            if below.size:
                W[below] ^= W[r]
            r += 1
        return r

    def multiply_vector(self, x):
        """``M x`` over GF(2) for a 0/1 vector ``x`` of length ``cols``."""
        packed = Gf2Matrix.from_dense(np.asarray(x, dtype=np.uint8).reshape(1, -1)).words[0]
        acc = self.words & packed
        parity = np.zeros(self.rows, dtype=np.uint8)
        for w in range(acc.shape[1]):
            parity ^= _popcount_parity(acc[:, w])
        return parity

    def __repr__(self):
        return f"Gf2Matrix({self.rows}x{self.cols})"


def _popcount_parity(words):
    x = words.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        x ^= x >> np.uint64(shift)
    return (x & np.uint64(1)).astype(np.uint8)


def rank(m):
    if not isinstance(m, Gf2Matrix):
        m = Gf2Matrix.from_dense(m)
    return m.rank()
