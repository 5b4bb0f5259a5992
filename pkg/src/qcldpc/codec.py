"""Systematic encoding and sum-product decoding."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qcldpc import kernels
from qcldpc.construction import QcParityCheckMatrix
from qcldpc.errors import ParameterError
from qcldpc.gf2 import Gf2Matrix, Gf2Polynomial, circulant_dense, poly_inverse_mod, poly_mul_mod

DEFAULT_MAX_ITER = 100
DEFAULT_CLAMP = 30.0


def _bits_to_int(bits):
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _int_to_bits(value, length):
    raw = value.to_bytes(-(-length // 8) or 1, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:length]


def _as_dense(h):
    if isinstance(h, QcParityCheckMatrix):
        return h.dense()
    if isinstance(h, Gf2Matrix):
        return h.to_dense()
    return np.asarray(h, dtype=np.uint8)


@dataclass
class SystematicEncoder:
    """Maps ``k`` message bits to a codeword with the message at ``info_positions``.

    ``method`` is ``"circulant"`` when an invertible circulant ``H_p`` exists:
    the parity block is ``H_p^{-1} sum_i H_i m_i``, computed with the stored
    products ``H_p^{-1} H_i`` (``parity_generators``).  Otherwise it is
    ``"dense"`` and ``parity_matrix`` comes from the reduced row echelon form
    of H with left-to-right pivots.
    """

    n: int
    k: int
    info_positions: np.ndarray
    parity_positions: np.ndarray
    method: str
    z: int = 0
    pivot_index: int = -1
    pivot_inverse: Gf2Polynomial | None = None
    parity_generators: tuple = ()
    parity_matrix: np.ndarray | None = None

    def encode(self, message):
        message = np.asarray(message, dtype=np.uint8)
        if message.shape != (self.k,):
            raise ParameterError(f"message must have {self.k} bits, got shape {message.shape}")
        codeword = np.zeros(self.n, dtype=np.uint8)
        codeword[self.info_positions] = message
        if self.method == "circulant":
            z = self.z
            acc = 0
            for idx, g in enumerate(self.parity_generators):
                m_i = _bits_to_int(message[idx * z:(idx + 1) * z])
                if m_i:
                    acc ^= poly_mul_mod(g, Gf2Polynomial(z, m_i)).bits
            codeword[self.parity_positions] = _int_to_bits(acc, z)
        else:
            codeword[self.parity_positions] = (message.astype(np.int64) @ self.parity_matrix) & 1
        return codeword

    def generator_matrix(self):
        """Dense ``k x n`` generator matrix."""
        G = np.zeros((self.k, self.n), dtype=np.uint8)
        G[np.arange(self.k), self.info_positions] = 1
        if self.method == "circulant":
            z = self.z
            for idx, g in enumerate(self.parity_generators):
                block = circulant_dense(g.support(), z)
                G[idx * z:(idx + 1) * z, self.parity_positions[0]:self.parity_positions[0] + z] = block.T
        else:
            G[:, self.parity_positions] = self.parity_matrix
        return G

    @property
    def rate(self):
        return self.k / self.n


def build_encoder(h, allow_dense=True):
    """Systematic encoder for ``h`` (QC description or dense matrix)."""
    if isinstance(h, QcParityCheckMatrix):
        polys = h.polynomials()
        for p in range(h.L - 1, -1, -1):
            inv = poly_inverse_mod(polys[p]) if not polys[p].is_zero() else None
            if inv is None:
                continue
            z = h.z
            others = [i for i in range(h.L) if i != p]
            gens = tuple(poly_mul_mod(inv, polys[i]) for i in others)
            info = np.concatenate([np.arange(i * z, (i + 1) * z) for i in others]) if others else np.zeros(0, int)
            return SystematicEncoder(
                n=h.n, k=z * len(others),
                info_positions=info.astype(np.int64),
                parity_positions=np.arange(p * z, (p + 1) * z, dtype=np.int64),
                method="circulant", z=z, pivot_index=p, pivot_inverse=inv,
                parity_generators=gens,
            )
        if not allow_dense:
            raise ParameterError("no circulant of H is invertible modulo x^z - 1")
    return dense_encoder(_as_dense(h))


def dense_encoder(dense):
    dense = np.asarray(dense, dtype=np.uint8)
    m, n = dense.shape
    reduced, pivots = Gf2Matrix.from_dense(dense).row_reduce()
    R = reduced.to_dense()[: len(pivots)]
    pivots = np.asarray(pivots, dtype=np.int64)
    info = np.setdiff1d(np.arange(n), pivots)
    return SystematicEncoder(
        n=n, k=len(info),
        info_positions=info, parity_positions=pivots,
        method="dense",
        parity_matrix=np.ascontiguousarray(R[:, info].T).astype(np.int64),
    )


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecodeResult:
    hard: np.ndarray
    converged: bool
    iterations: int
    posterior: np.ndarray


class TannerGraph:
    """Edge arrays for message passing; edges are numbered check-major."""

    def __init__(self, m, n, rows, cols):
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        self.m, self.n = int(m), int(n)
        # Stable sort by check keeps the caller's edge order inside each check.
        order = np.argsort(rows, kind="stable")
        self.edge_check = rows[order]
        self.edge_var = cols[order].astype(np.int32)
        self.chk_ptr = np.searchsorted(self.edge_check, np.arange(self.m + 1)).astype(np.int32)
        vorder = np.lexsort((self.edge_check, self.edge_var))
        self.var_edges = vorder.astype(np.int32)
        self.var_ptr = np.searchsorted(self.edge_var[vorder], np.arange(self.n + 1)).astype(np.int32)

    @classmethod
    def from_matrix(cls, h):
        if isinstance(h, TannerGraph):
            return h
        if isinstance(h, QcParityCheckMatrix):
            rows, cols = h.edges()
            return cls(h.m, h.n, rows, cols)
        dense = _as_dense(h)
        rows, cols = np.nonzero(dense)
        return cls(dense.shape[0], dense.shape[1], rows, cols)

    @property
    def num_edges(self):
        return len(self.edge_var)

    def syndrome(self, bits):
        bits = np.asarray(bits, dtype=np.int64)
        return (np.bincount(self.edge_check, weights=bits[self.edge_var], minlength=self.m).astype(np.int64) & 1).astype(np.uint8)


class SumProductDecoder:
    """Flooding sum-product decoder with tanh-rule check updates.

    Variable-to-check messages are clamped to ``+-clamp`` before the tanh,
    and the leave-one-out product is clipped to ``tanh(clamp/2)`` so check
    messages stay within the same range.  Decoding stops as soon as the hard
    decision satisfies every check unless ``early_stop`` is off.
    Positive LLR means bit 0.
    """

    def __init__(self, h, max_iter=DEFAULT_MAX_ITER, clamp=DEFAULT_CLAMP, early_stop=True, backend=None):
        if max_iter < 1:
            raise ParameterError("max_iter must be at least 1")
        self.graph = TannerGraph.from_matrix(h)
        self.max_iter = int(max_iter)
        self.clamp = float(clamp)
        self.early_stop = bool(early_stop)
        self.backend = backend or kernels.backend

    def decode(self, llr):
        llr = np.ascontiguousarray(llr, dtype=np.float64)
        g = self.graph
        if llr.shape != (g.n,):
            raise ParameterError(f"LLR vector must have length {g.n}, got shape {llr.shape}")
        hard, post, ok, iters = self.backend.bp_decode(
            llr, g.chk_ptr, g.edge_var, g.var_ptr, g.var_edges, self.max_iter, self.clamp, self.early_stop
        )
        return DecodeResult(hard=np.asarray(hard, dtype=np.uint8), converged=bool(ok), iterations=int(iters),
                            posterior=np.asarray(post))


def decode_sum_product(h, llr, max_iter=DEFAULT_MAX_ITER, **kwargs):
    return SumProductDecoder(h, max_iter=max_iter, **kwargs).decode(llr)
