# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: exact-cover search, Tanner-graph BFS and sum-product decoding.

Every function here has a line-for-line twin in ``_pykernels``; the two must
visit nodes, rows and edges in the same order so that search results and
iteration counts agree between backends.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport tanh, atanh, signbit
from libc.stdlib cimport malloc, free

cnp.import_array()


# ---------------------------------------------------------------------------
# Dancing links
# ---------------------------------------------------------------------------

cdef struct Links:
    long *L
    long *R
    long *U
    long *D
    long *C
    long *ROW
    long *S
    long *sol
    long long nodes
    long long budget


cdef inline void _cover(Links *k, long c) noexcept nogil:
    cdef long i, j
    k.L[k.R[c]] = k.L[c]
    k.R[k.L[c]] = k.R[c]
    i = k.D[c]
    while i != c:
        j = k.R[i]
        while j != i:
            k.U[k.D[j]] = k.U[j]
            k.D[k.U[j]] = k.D[j]
            k.S[k.C[j]] -= 1
            j = k.R[j]
        i = k.D[i]


cdef inline void _uncover(Links *k, long c) noexcept nogil:
    cdef long i, j
    i = k.U[c]
    while i != c:
        j = k.L[i]
        while j != i:
            k.S[k.C[j]] += 1
            k.U[k.D[j]] = j
            k.D[k.U[j]] = j
            j = k.L[j]
        i = k.U[i]
    k.L[k.R[c]] = c
    k.R[k.L[c]] = c


cdef long _search(Links *k, long depth) noexcept nogil:
    # >= 0: solution depth, -1: subtree exhausted, -2: budget hit
    cdef long c, best, bs, r, j, res
    if k.R[0] == 0:
        return depth
    best = 0
    bs = 1 << 40
    c = k.R[0]
    while c != 0:
        if k.S[c] < bs or (k.S[c] == bs and c > best):
            bs = k.S[c]
            best = c
        c = k.R[c]
    if bs == 0:
        return -1
    c = best
    _cover(k, c)
    r = k.D[c]
    while r != c:
        k.nodes += 1
        if k.nodes > k.budget:
            return -2
        k.sol[depth] = k.ROW[r]
        j = k.R[r]
        while j != r:
            _cover(k, k.C[j])
            j = k.R[j]
        res = _search(k, depth + 1)
        if res >= 0 or res == -2:
            return res
        j = k.L[r]
        while j != r:
            _uncover(k, k.C[j])
            j = k.L[j]
        r = k.D[r]
    _uncover(k, c)
    return -1


def dlx_solve(long ncols, cnp.int64_t[:, ::1] rows, long long budget):
    """First exact cover of columns ``0..ncols-1`` by ``rows``.

    Returns ``(status, solution, nodes)`` with status 1 (found), 0 (no cover
    exists) or -1 (node budget exhausted).
    """
    cdef long nrows = rows.shape[0], width = rows.shape[1]
    cdef long total = 1 + ncols + nrows * width
    cdef Links k
    cdef long i, j, c, node, first, r, res
    k.L = <long*>malloc(total * sizeof(long))
    k.R = <long*>malloc(total * sizeof(long))
    k.U = <long*>malloc(total * sizeof(long))
    k.D = <long*>malloc(total * sizeof(long))
    k.C = <long*>malloc(total * sizeof(long))
    k.ROW = <long*>malloc(total * sizeof(long))
    k.S = <long*>malloc((ncols + 1) * sizeof(long))
    k.sol = <long*>malloc((ncols + 1) * sizeof(long))
    if (k.L == NULL or k.R == NULL or k.U == NULL or k.D == NULL or k.C == NULL
            or k.ROW == NULL or k.S == NULL or k.sol == NULL):
        free(k.L); free(k.R); free(k.U); free(k.D); free(k.C); free(k.ROW); free(k.S); free(k.sol)
        raise MemoryError()
    k.nodes = 0
    k.budget = budget
    for i in range(ncols + 1):
        k.L[i] = i - 1
        k.R[i] = i + 1
        k.U[i] = i
        k.D[i] = i
        k.C[i] = i
        k.S[i] = 0
    k.L[0] = ncols
    k.R[ncols] = 0
    node = ncols + 1
    for r in range(nrows):
        first = node
        for j in range(width):
            c = rows[r, j] + 1
            k.C[node] = c
            k.ROW[node] = r
            k.U[node] = k.U[c]
            k.D[node] = c
            k.D[k.U[c]] = node
            k.U[c] = node
            k.S[c] += 1
            k.L[node] = node - 1
            k.R[node] = node + 1
            node += 1
        k.L[first] = node - 1
        k.R[node - 1] = first
    with nogil:
        res = _search(&k, 0)
    solution = [k.sol[i] for i in range(res)] if res >= 0 else None
    nodes = k.nodes
    free(k.L); free(k.R); free(k.U); free(k.D); free(k.C); free(k.ROW); free(k.S); free(k.sol)
    if res >= 0:
        return 1, solution, nodes
    return (0 if res == -1 else -1), None, nodes


# ---------------------------------------------------------------------------
# Girth
# ---------------------------------------------------------------------------

def girth_search(cnp.int32_t[::1] ptr, cnp.int32_t[::1] adj, cnp.int32_t[::1] starts, long bound):
    """Shortest cycle length over BFS trees rooted at ``starts``.

    ``ptr``/``adj`` is the CSR adjacency of the whole Tanner graph.  Returns
    ``(length, root)``; length stays at ``bound`` and root at -1 when no cycle
    shorter than ``bound`` exists.
    """
    cdef long nn = ptr.shape[0] - 1
    cdef long ns = starts.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] dist_a = np.full(nn, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] parent_a = np.full(nn, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue_a = np.empty(nn, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_a
    cdef cnp.int32_t[::1] parent = parent_a
    cdef cnp.int32_t[::1] queue = queue_a
    cdef long best = bound, best_root = -1
    cdef long s, root, head, tail, u, w, du, e, cand, i
    with nogil:
        for s in range(ns):
            if best <= 4:
                break
            root = starts[s]
            dist[root] = 0
            parent[root] = -1
            queue[0] = root
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u]
                if 2 * du >= best:
                    break
                for e in range(ptr[u], ptr[u + 1]):
                    w = adj[e]
                    if w == parent[u]:
                        continue
                    if dist[w] < 0:
                        dist[w] = du + 1
                        parent[w] = u
                        queue[tail] = w
                        tail += 1
                    else:
                        cand = du + dist[w] + 1
                        if cand < best:
                            best = cand
                            best_root = root
            for i in range(tail):
                dist[queue[i]] = -1
                parent[queue[i]] = -1
    return best, best_root


# ---------------------------------------------------------------------------
# Sum-product decoding
# ---------------------------------------------------------------------------

def bp_decode(cnp.float64_t[::1] llr,
              cnp.int32_t[::1] chk_ptr, cnp.int32_t[::1] edge_var,
              cnp.int32_t[::1] var_ptr, cnp.int32_t[::1] var_edges,
              long max_iter, double clamp, bint early_stop):
    """Flooding tanh-rule belief propagation.

    Edges are numbered check-major: the edges of check ``c`` are
    ``chk_ptr[c]:chk_ptr[c+1]`` and ``edge_var`` names their variable.
    ``var_edges[var_ptr[v]:var_ptr[v+1]]`` lists the edges touching ``v``.
    Returns ``(hard, posterior, converged, iterations)``.
    """
    cdef long n = llr.shape[0]
    cdef long m = chk_ptr.shape[0] - 1
    cdef long E = edge_var.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] q_a = np.empty(E, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] r_a = np.empty(E, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t_a = np.empty(E, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] post_a = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] hard_a = np.empty(n, dtype=np.uint8)
    cdef cnp.float64_t[::1] q = q_a
    cdef cnp.float64_t[::1] r = r_a
    cdef cnp.float64_t[::1] tt = t_a
    cdef cnp.float64_t[::1] post = post_a
    cdef cnp.uint8_t[::1] hard = hard_a
    cdef double tmax = tanh(0.5 * clamp)
    cdef double acc, x, total
    cdef long it, c, e, v, lo, hi, iters = 0
    cdef int par
    cdef bint ok = False

    with nogil:
        for v in range(n):
            post[v] = llr[v]
            hard[v] = 1 if signbit(llr[v]) else 0
        for e in range(E):
            q[e] = llr[edge_var[e]]
        ok = True
        for c in range(m):
            par = 0
            for e in range(chk_ptr[c], chk_ptr[c + 1]):
                par ^= hard[edge_var[e]]
            if par:
                ok = False
                break
        it = 0
        while not (ok and early_stop) and it < max_iter:
            it += 1
            for c in range(m):
                lo = chk_ptr[c]
                hi = chk_ptr[c + 1]
                acc = 1.0
                for e in range(lo, hi):
                    x = q[e]
                    if x > clamp:
                        x = clamp
                    elif x < -clamp:
                        x = -clamp
                    tt[e] = tanh(0.5 * x)
                    r[e] = acc
                    acc = acc * tt[e]
                acc = 1.0
                for e in range(hi - 1, lo - 1, -1):
                    r[e] = r[e] * acc
                    acc = acc * tt[e]
                for e in range(lo, hi):
                    x = r[e]
                    if x > tmax:
                        x = tmax
                    elif x < -tmax:
                        x = -tmax
                    r[e] = 2.0 * atanh(x)
            for v in range(n):
                total = llr[v]
                for e in range(var_ptr[v], var_ptr[v + 1]):
                    total = total + r[var_edges[e]]
                post[v] = total
                hard[v] = 1 if signbit(total) else 0
                for e in range(var_ptr[v], var_ptr[v + 1]):
                    q[var_edges[e]] = total - r[var_edges[e]]
            ok = True
            for c in range(m):
                par = 0
                for e in range(chk_ptr[c], chk_ptr[c + 1]):
                    par ^= hard[edge_var[e]]
                if par:
                    ok = False
                    break
        iters = it
    return hard_a, post_a, bool(ok), iters
