"""Pure-Python versions of the compiled kernels in ``_ckernels.pyx``.

Same signatures, same visiting order.  The decoder is vectorised with numpy;
the two searches are plain Python loops and are roughly two orders of
magnitude slower than their compiled counterparts.
"""
from __future__ import annotations

import math
import sys

import numpy as np


def dlx_solve(ncols, rows, budget):
    rows = np.asarray(rows, dtype=np.int64)
    nrows, width = rows.shape
    total = 1 + ncols + nrows * width
    L = list(range(-1, total - 1))
    R = list(range(1, total + 1))
    U = list(range(total))
    D = list(range(total))
    C = list(range(total))
    ROW = [0] * total
    S = [0] * (ncols + 1)
    L[0] = ncols
    R[ncols] = 0
    node = ncols + 1
    for r, row in enumerate(rows.tolist()):
        first = node
        for col in row:
            c = col + 1
            C[node] = c
            ROW[node] = r
            U[node] = U[c]
            D[node] = c
            D[U[c]] = node
            U[c] = node
            S[c] += 1
            L[node] = node - 1
            R[node] = node + 1
            node += 1
        L[first] = node - 1
        R[node - 1] = first

    def cover(c):
        L[R[c]] = L[c]
        R[L[c]] = R[c]
        i = D[c]
        while i != c:
            j = R[i]
            while j != i:
                U[D[j]] = U[j]
                D[U[j]] = D[j]
                S[C[j]] -= 1
                j = R[j]
            i = D[i]

    def uncover(c):
        i = U[c]
        while i != c:
            j = L[i]
            while j != i:
                S[C[j]] += 1
                U[D[j]] = j
                D[U[j]] = j
                j = L[j]
            i = U[i]
        L[R[c]] = c
        R[L[c]] = c

    sol = [0] * (ncols + 1)
    nodes = 0

    def search(depth):
        nonlocal nodes
        if R[0] == 0:
            return depth
        best, bs = 0, 1 << 40
        c = R[0]
        while c != 0:
            if S[c] < bs or (S[c] == bs and c > best):
                bs, best = S[c], c
            c = R[c]
        if bs == 0:
            return -1
        c = best
        cover(c)
        r = D[c]
        while r != c:
            nodes += 1
            if nodes > budget:
                return -2
            sol[depth] = ROW[r]
            j = R[r]
            while j != r:
                cover(C[j])
                j = R[j]
            res = search(depth + 1)
            if res >= 0 or res == -2:
                return res
            j = L[r]
            while j != r:
                uncover(C[j])
                j = L[j]
            r = D[r]
        uncover(c)
        return -1

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, ncols + 100))
    try:
        res = search(0)
    finally:
        sys.setrecursionlimit(limit)
    if res >= 0:
        return 1, sol[:res], nodes
    return (0 if res == -1 else -1), None, nodes


def girth_search(ptr, adj, starts, bound):
    ptr = np.asarray(ptr).tolist()
    adj = np.asarray(adj).tolist()
    nn = len(ptr) - 1
    dist = [-1] * nn
    parent = [-1] * nn
    best, best_root = bound, -1
    for root in np.asarray(starts).tolist():
        if best <= 4:
            break
        dist[root] = 0
        parent[root] = -1
        queue = [root]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            du = dist[u]
            if 2 * du >= best:
                break
            pu = parent[u]
            for e in range(ptr[u], ptr[u + 1]):
                w = adj[e]
                if w == pu:
                    continue
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                else:
                    cand = du + dist[w] + 1
                    if cand < best:
                        best, best_root = cand, root
        for x in queue:
            dist[x] = -1
            parent[x] = -1
    return best, best_root


def _padded(ptr, idx, fill):
    ptr = np.asarray(ptr)
    deg = np.diff(ptr)
    width = int(deg.max()) if len(deg) else 0
    out = np.full((len(deg), width), fill, dtype=np.int64)
    col = np.arange(len(idx)) - np.repeat(ptr[:-1], deg)
    out[np.repeat(np.arange(len(deg)), deg), col] = idx
    return out


def bp_decode(llr, chk_ptr, edge_var, var_ptr, var_edges, max_iter, clamp, early_stop):
    llr = np.asarray(llr, dtype=np.float64)
    edge_var = np.asarray(edge_var, dtype=np.int64)
    E = len(edge_var)
    # Padding slots point one past the last edge; that slot holds tanh = 1 on
    # the check side and 0 on the variable side.
    chk_slots = _padded(chk_ptr, np.arange(E), E)
    var_slots = _padded(var_ptr, np.asarray(var_edges, dtype=np.int64), E)
    pad_c = chk_slots == E
    check_of = np.repeat(np.arange(len(chk_ptr) - 1), np.diff(chk_ptr))
    tmax = math.tanh(0.5 * clamp)

    hard = np.signbit(llr).astype(np.uint8)
    post = llr.copy()
    q = llr[edge_var]
    r = np.zeros(E + 1)
    ok = _check_parity(hard, edge_var, check_of, len(chk_ptr) - 1)
    it = 0
    while not (ok and early_stop) and it < max_iter:
        it += 1
        t = np.ones(E + 1)
        t[:E] = np.tanh(0.5 * np.clip(q, -clamp, clamp))
        tc = t[chk_slots]
        tc[pad_c] = 1.0
        prefix = np.ones_like(tc)
        suffix = np.ones_like(tc)
        if tc.shape[1] > 1:
            prefix[:, 1:] = np.cumprod(tc[:, :-1], axis=1)
            suffix[:, :-1] = np.cumprod(tc[:, :0:-1], axis=1)[:, ::-1]
        prod = prefix * suffix
        r[:E][chk_slots[~pad_c]] = 2.0 * np.arctanh(np.clip(prod[~pad_c], -tmax, tmax))
        r[E] = 0.0
        rv = r[var_slots]
        total = llr.copy()
        for j in range(rv.shape[1]):
            total = total + rv[:, j]
        post = total
        hard = np.signbit(total).astype(np.uint8)
        q = total[edge_var] - r[:E]
        ok = _check_parity(hard, edge_var, check_of, len(chk_ptr) - 1)
    return hard, post, bool(ok), it


def _check_parity(hard, edge_var, check_of, m):
    if m == 0:
        return True
    counts = np.bincount(check_of, weights=hard[edge_var], minlength=m)
    return not (counts.astype(np.int64) & 1).any()
