"""Compiled vs pure-Python kernels: sum-product decoding, exact-cover search, girth BFS.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends get identical inputs; outputs are compared before timing is
reported so a speedup is never quoted for a kernel that disagrees.
"""
import argparse
import sys
import time

import numpy as np

from qcldpc import kernels
from qcldpc.codec import TannerGraph
from qcldpc.construction import construct
from qcldpc.difference_families import ruler_options
from qcldpc.graph import tanner_csr
from qcldpc.sim import frame_rng, noise_channel, noise_sigma


def _best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def decoder_case(frames=20, ebno=4.5):
    h = construct(dv=3, L=12, z=85)
    g = TannerGraph.from_matrix(h)
    rate = 935 / 1020
    sigma = noise_sigma(ebno, rate)
    llrs = [2 * noise_channel(np.ones(h.n), sigma, frame_rng(1, 0, f)) / sigma**2 for f in range(frames)]

    def run(backend):
        return [backend.bp_decode(llr, g.chk_ptr, g.edge_var, g.var_ptr, g.var_edges, 100, 30.0, True)
                for llr in llrs]

    def same(a, b):
        return all(np.array_equal(x[0], y[0]) and x[3] == y[3] for x, y in zip(a, b))

    return f"bp_decode  (1020,935), {frames} frames @ {ebno} dB", run, same


def dlx_case(t=5):
    _, rows = ruler_options(4, t)
    ncols = 6 * t
    rows = np.ascontiguousarray(rows, dtype=np.int64)

    def run(backend):
        return backend.dlx_solve(ncols, rows, 10**8)

    return f"dlx_solve  (12t+1,4,1) perfect family, t={t}", run, lambda a, b: a == b


def girth_case():
    h = construct(dv=4, L=6, z=90)
    rows, cols = h.edges()
    ptr, adj = tanner_csr(h.m, h.n, rows, cols)
    starts = np.arange(h.n, dtype=np.int32)

    def run(backend):
        return backend.girth_search(ptr, adj, starts, 2 * (h.n + h.m) + 2)

    return f"girth      dv=4 L=6 z=90, all {h.n} roots", run, lambda a, b: tuple(a) == tuple(b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled extension not built; only the Python backend is available", file=sys.stderr)
        return 1
    print(f"{'kernel':<52} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for name, run, same in (decoder_case(), dlx_case(), girth_case()):
        tc, oc = _best_of(lambda: run(kernels.compiled_backend), args.repeat)
        tp, op = _best_of(lambda: run(kernels.python_backend), args.repeat)
        if not same(oc, op):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        print(f"{name:<52} {tc:10.4f} {tp:10.4f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
