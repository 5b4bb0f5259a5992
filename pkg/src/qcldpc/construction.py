"""Parity-check matrices made of a single row of circulants.

``H = [H_1 H_2 ... H_L]`` where circulant ``H_i`` has column weight ``dv``
and shift values ``s_i1 < ... < s_idv`` taken from block ``B_i`` of a
difference family over ``Z_{dv(dv-1)L+1}``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from qcldpc import difference_families as dfam
from qcldpc.errors import NonexistentError, ParameterError
from qcldpc.gf2 import Gf2Matrix, circulant_to_polynomial


@dataclass(frozen=True)
class CodeParams:
    dv: int
    L: int
    z: int

    def __post_init__(self):
        self.validate()

    def validate(self):
        dv, L, z = self.dv, self.L, self.z
        if dv not in (3, 4):
            raise ParameterError(f"column weight dv must be 3 or 4, got {dv}")
        if dv == 3 and L < 2:
            raise ParameterError(f"dv = 3 needs L >= 2, got L = {L}")
        if dv == 4 and L < 4:
            raise ParameterError(f"dv = 4 needs L >= 4 (no (12L+1,4,1) perfect family for L = 2, 3), got L = {L}")
        zmin = dv * (dv - 1) * L + 1
        if z < zmin:
            raise ParameterError(f"z = {z} is below the minimum circulant size dv(dv-1)L+1 = {zmin}")
        if dv == 3 and L % 4 in (2, 3) and z == 6 * L + 2:
            raise NonexistentError(
                f"z = 6L+2 = {z} with dv = 3 and L = {L} (L = 2 or 3 mod 4): no shift assignment "
                "avoids 4-cycles (the sum of backward differences would have to be both odd and even)"
            )

    @property
    def n(self):
        return self.z * self.L

    @property
    def dc(self):
        return self.dv * self.L

    @property
    def design_rate(self):
        return Fraction(self.L - 1, self.L)

    @property
    def z_min(self):
        return self.dv * (self.dv - 1) * self.L + 1


@dataclass(frozen=True)
class QcParityCheckMatrix:
    """``1 x L`` array of ``z x z`` circulants given by their shift values."""

    z: int
    circulants: tuple
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        circ = tuple(tuple(int(s) for s in c) for c in self.circulants)
        object.__setattr__(self, "circulants", circ)
        if self.z < 1 or not circ:
            raise ValueError("need z >= 1 and at least one circulant")
        dv = len(circ[0])
        for i, shifts in enumerate(circ):
            if len(shifts) != dv:
                raise ValueError(f"circulant {i} has {len(shifts)} shift values, expected {dv}")
            circulant_to_polynomial(shifts, self.z)  # range and ordering checks

    @property
    def L(self):
        return len(self.circulants)

    @property
    def dv(self):
        return len(self.circulants[0])

    @property
    def n(self):
        return self.z * self.L

    @property
    def m(self):
        return self.z

    def polynomials(self):
        return [circulant_to_polynomial(s, self.z) for s in self.circulants]

    def edges(self):
        """Row and column index of every one, grouped by circulant and shift."""
        z = self.z
        cols = np.arange(z)
        rows_out, cols_out = [], []
        for i, shifts in enumerate(self.circulants):
            for s in shifts:
                rows_out.append((cols + s) % z)
                cols_out.append(cols + i * z)
        if not rows_out:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        return np.concatenate(rows_out), np.concatenate(cols_out)

    def dense(self):
        out = np.zeros((self.z, self.n), dtype=np.uint8)
        r, c = self.edges()
        out[r, c] = 1
        return out

    def to_text(self):
        lines = [f"{self.dv} {self.L} {self.z}"]
        lines += [" ".join(str(s) for s in shifts) for shifts in self.circulants]
        return "\n".join(lines) + "\n"


def expand_dense(h):
    return Gf2Matrix.from_dense(h.dense())


def detect_qc(dense):
    """Recover the circulant description of a dense ``z x zL`` matrix, if it has one."""
    dense = np.asarray(dense, dtype=np.uint8)
    z, n = dense.shape
    if z == 0 or n % z:
        return None
    circulants = []
    for i in range(n // z):
        shifts = tuple(np.flatnonzero(dense[:, i * z]).tolist())
        if not shifts or (circulants and len(shifts) != len(circulants[0])):
            return None
        circulants.append(shifts)
    h = QcParityCheckMatrix(z=z, circulants=tuple(circulants))
    return h if np.array_equal(h.dense(), dense) else None


@functools.lru_cache(maxsize=None)
def difference_family_for(dv, L):
    """The family the construction takes its shift values from."""
    if dv == 3 and L % 4 in (2, 3):
        return dfam.cdf_from_pairing(dfam.hooked_skolem(L))
    return dfam.perfect_family(dv, L)


def construct(params=None, *, dv=None, L=None, z=None):
    """Build the parity-check matrix for ``params`` (or ``dv``, ``L``, ``z``)."""
    if params is None:
        params = CodeParams(dv=dv, L=L, z=z)
    else:
        params.validate()
    family = difference_family_for(params.dv, params.L)
    return QcParityCheckMatrix(
        z=params.z,
        circulants=family.blocks,
        provenance=f"{family.provenance}; v={family.v}",
    )


def min_length(dv, L):
    """Shortest length for girth 6: (this construction, dv x dvL arrays of permutations)."""
    if dv not in (3, 4):
        raise ParameterError(f"dv must be 3 or 4, got {dv}")
    if L < 2:
        raise ParameterError(f"L must be at least 2, got {L}")
    return dv * (dv - 1) * L * L + L, dv * dv * L * L
