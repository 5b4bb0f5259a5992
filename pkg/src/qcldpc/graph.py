"""Tanner-graph structure: girth, 4-cycles via shift differences, z = 6L+2 impossibility."""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from qcldpc import kernels
from qcldpc.construction import QcParityCheckMatrix
from qcldpc.errors import ParameterError
from qcldpc.gf2 import Gf2Matrix


@dataclass(frozen=True)
class GirthReport:
    girth: float  # even int, or math.inf for a forest
    witness: tuple | None
    four_cycle_free: bool


def _edge_lists(h):
    if isinstance(h, QcParityCheckMatrix):
        rows, cols = h.edges()
        return h.m, h.n, rows, cols
    if isinstance(h, Gf2Matrix):
        h = h.to_dense()
    dense = np.asarray(h)
    rows, cols = np.nonzero(dense)
    return dense.shape[0], dense.shape[1], rows, cols


def tanner_csr(m, n, rows, cols):
    """CSR adjacency over nodes ``0..n-1`` (variables) and ``n..n+m-1`` (checks)."""
    a = np.concatenate([cols, rows + n])
    b = np.concatenate([rows + n, cols])
    order = np.lexsort((b, a))
    a, b = a[order], b[order]
    ptr = np.zeros(n + m + 1, dtype=np.int32)
    np.add.at(ptr, a + 1, 1)
    ptr = np.cumsum(ptr).astype(np.int32)
    return ptr, b.astype(np.int32)


def girth_bfs(h, symmetric=False, backend=None):
    """Exact girth of the Tanner graph of ``h`` with a shortest-cycle witness.

    A BFS is rooted at every variable node; a non-tree edge ``(u, w)`` met
    from root ``x`` closes a walk of length ``d(u) + d(w) + 1``, the minimum
    of which over all roots is the girth.  With ``symmetric=True`` and a
    quasi-cyclic ``h`` only the first column of each circulant is used as a
    root, which is exact because the cyclic shift inside every block is a
    graph automorphism.
    """
    kern = backend or kernels.backend
    m, n, rows, cols = _edge_lists(h)
    if n == 0 or m == 0:
        raise ParameterError("empty matrix")
    ptr, adj = tanner_csr(m, n, np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))
    if symmetric and isinstance(h, QcParityCheckMatrix):
        starts = np.arange(0, n, h.z, dtype=np.int32)
    else:
        starts = np.arange(n, dtype=np.int32)
    bound = 2 * (n + m) + 2
    best, root = kern.girth_search(ptr, adj, starts, bound)
    if root < 0:
        return GirthReport(girth=math.inf, witness=None, four_cycle_free=True)
    witness = _witness(ptr, adj, int(root), int(best), n)
    return GirthReport(girth=int(best), witness=witness, four_cycle_free=best >= 6)


def _witness(ptr, adj, root, length, n):
    dist = {root: 0}
    parent = {root: -1}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[ptr[u]:ptr[u + 1]].tolist():
            if w == parent[u]:
                continue
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
            elif dist[u] + dist[w] + 1 == length:
                return tuple(_label(x, n) for x in _close(parent, u, w))
    raise AssertionError("no cycle of the reported length from the reported root")


def _close(parent, u, w):
    def up(x):
        path = []
        while x != -1:
            path.append(x)
            x = parent[x]
        return path[::-1]

    pu, pw = up(u), up(w)
    return pu + pw[:0:-1]


def _label(x, n):
    return ("v", x) if x < n else ("c", x - n)


def shift_differences(h):
    """All ``(s_ij - s_ik) mod z`` with ``j != k``, circulant by circulant."""
    z = h.z
    return [(a - b) % z for shifts in h.circulants for a, b in itertools.permutations(shifts, 2)]


def backward_differences(h):
    """``s_ij - s_ik`` for ``j > k`` (shift values are sorted, so these are positive)."""
    return [b - a for shifts in h.circulants for a, b in itertools.combinations(shifts, 2)]


def four_cycle_check_by_differences(h):
    """True iff ``h`` has no 4-cycle, i.e. all shift differences are distinct."""
    diffs = shift_differences(h)
    return len(set(diffs)) == len(diffs)


# ---------------------------------------------------------------------------
# dv = 3, z = 6L + 2
# ---------------------------------------------------------------------------

MAX_SUBSETS = 2000


def _triple_masks(z):
    masks, valid = [], []
    for triple in itertools.combinations(range(z), 3):
        diffs = [(a - b) % z for a, b in itertools.permutations(triple, 2)]
        mask = 0
        for d in diffs:
            mask |= 1 << d
        masks.append(mask)
        valid.append(len(set(diffs)) == 6)
    return np.array(masks, dtype=np.uint64), np.array(valid)


def _check_l(L):
    if L < 2 or L % 4 not in (2, 3):
        raise ParameterError(f"z = 6L+2 impossibility concerns L = 2 or 3 mod 4 (L >= 2), got L = {L}")
    z = 6 * L + 2
    if z > 64 or math.comb(z, 3) > MAX_SUBSETS:
        raise ParameterError(f"enumeration over C({z},3)^{L} assignments is too large")
    return z


def _disjoint_family_exists(masks, depth):
    if depth == 0:
        return True
    for idx in range(len(masks) - depth + 1):
        rest = masks[idx + 1:]
        rest = rest[(rest & masks[idx]) == 0]
        if len(rest) >= depth - 1 and _disjoint_family_exists(rest, depth - 1):
            return True
    return False


def exhaust_z_eq_6L_plus_2(L):
    """True iff every dv = 3 shift assignment over ``Z_{6L+2}`` has a 4-cycle.

    An assignment is 4-cycle free exactly when its L difference sets (as
    bitmasks over Z_z) are each of size 6 and pairwise disjoint, so the
    enumeration reduces to a search for L disjoint valid masks.
    """
    z = _check_l(L)
    masks, valid = _triple_masks(z)
    return not _disjoint_family_exists(masks[valid], L)


def count_cycle_free_pairs(z):
    """Number of ordered pairs of 3-subsets of ``Z_z`` (all C(z,3)^2 of them) without a 4-cycle."""
    masks, valid = _triple_masks(z)
    ok = valid[:, None] & valid[None, :] & ((masks[:, None] & masks[None, :]) == 0)
    return int(ok.sum()), len(masks) ** 2


@dataclass(frozen=True)
class ParityReport:
    L: int
    required_parity: int  # parity a 4-cycle-free assignment would force on the backward-difference sum
    forced_parity: int  # parity every assignment actually has
    subsets_checked: int

    @property
    def contradiction(self):
        return self.required_parity != self.forced_parity


def parity_argument(L):
    """Both sides of the parity contradiction for ``z = 6L+2``.

    If no 4-cycle existed, the backward differences (folded by ``d -> z - d``
    above ``3L+1``, which keeps parity because z is even) would be exactly
    ``1..3L``, so their sum has the parity of ``3L(3L+1)/2``.  Per circulant,
    however, the backward differences sum to ``2(s_3 - s_1)``.  The second
    fact is checked on every sorted triple of ``Z_z``.
    """
    z = _check_l(L)
    required = (3 * L * (3 * L + 1) // 2) % 2
    parities = set()
    checked = 0
    for s1, s2, s3 in itertools.combinations(range(z), 3):
        parities.add(((s2 - s1) + (s3 - s1) + (s3 - s2)) % 2)
        checked += 1
    # A sum of L per-circulant sums that are all even is even.
    forced = parities.pop() if len(parities) == 1 else -1
    return ParityReport(L=L, required_parity=required, forced_parity=forced, subsets_checked=checked)
