"""``qcldpc`` command line: construct, verify and simulate codes.

Exit codes: 0 success, 1 verification failed (girth < 6), 2 parameter
violation, 3 search budget exceeded, 4 I/O or parse error, 130 interrupted.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import sys
from pathlib import Path

from qcldpc import kernels
from qcldpc.construction import CodeParams, construct
from qcldpc.errors import ParameterError, ParseError, SearchBudgetExceeded
from qcldpc.gf2 import Gf2Matrix
from qcldpc.graph import four_cycle_check_by_differences, girth_bfs
from qcldpc.io import load_matrix, save_matrix
from qcldpc.sim import SimConfig, parse_snr_spec, run_sim

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARAMETER = 2
EXIT_BUDGET = 3
EXIT_IO = 4
EXIT_INTERRUPTED = 130


def _version():
    from qcldpc import __version__
    return __version__


def _now():
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _write_manifest(out_path, subcommand, params, started, inputs=(), extra=None):
    manifest = {
        "subcommand": subcommand,
        "parameters": params,
        "version": _version(),
        "backend": kernels.BACKEND,
        "inputs": [str(p) for p in inputs],
        "outputs": [str(out_path)],
        "started": started,
        "finished": _now(),
    }
    if extra:
        manifest.update(extra)
    path = Path(str(out_path) + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _fmt_girth(g):
    return "inf" if math.isinf(g) else str(int(g))


def cmd_construct(args):
    started = _now()
    params = CodeParams(dv=args.dv, L=args.L, z=args.z)
    h = construct(params)
    report = girth_bfs(h, symmetric=True)
    r = Gf2Matrix.from_dense(h.dense()).rank()
    k = params.n - r
    print(f"n={params.n} k={k} girth={_fmt_girth(report.girth)} rank={r}")
    dr = params.design_rate
    print(f"design_rate={dr.numerator}/{dr.denominator} rate={k / params.n:.6f} redundant={h.m - r}")
    print(f"shifts: {h.provenance}")
    if args.out:
        save_matrix(h, args.out, args.format)
        _write_manifest(args.out, "construct",
                        {"dv": args.dv, "L": args.L, "z": args.z, "format": args.format},
                        started, extra={"summary": {"n": params.n, "k": k, "rank": r,
                                                    "girth": _fmt_girth(report.girth)}})
        print(f"wrote {args.out}")
    return EXIT_OK if report.girth >= 6 else EXIT_VERIFY_FAILED


def cmd_verify(args):
    dense, qc = load_matrix(args.matrix)
    report = girth_bfs(qc if qc is not None else dense, symmetric=qc is not None)
    r = Gf2Matrix.from_dense(dense).rank()
    m, n = dense.shape
    print(f"n={n} k={n - r} girth={_fmt_girth(report.girth)} rank={r}")
    if qc is not None:
        diff_ok = four_cycle_check_by_differences(qc)
        print(f"four_cycle_free_by_differences={'yes' if diff_ok else 'no'} (dv={qc.dv} L={qc.L} z={qc.z})")
    else:
        print("four_cycle_free_by_differences=n/a (matrix is not a row of circulants)")
    print(f"girth={_fmt_girth(report.girth)} rank={r} redundant={m - r}")
    if report.girth < 6:
        print("cycle: " + " ".join(f"{kind}{idx}" for kind, idx in report.witness))
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_simulate(args):
    started = _now()
    dense, qc = load_matrix(args.matrix)
    cfg = SimConfig(
        snr_points=parse_snr_spec(args.snr),
        max_frames=args.max_frames,
        min_bit_errors=args.min_errors,
        max_iter=args.max_iter,
        rng_seed=args.seed,
        source=args.source,
        count=args.count,
        uncoded=args.uncoded,
        threads=args.threads,
        batch_size=args.batch_size,
    )
    cfg.validate()
    out = Path(args.out)

    def flush(result, point=None):
        out.write_text(result.to_csv())
        manifest = result.manifest(
            subcommand="simulate", version=_version(), backend=kernels.BACKEND,
            inputs=[str(args.matrix)], outputs=[str(out)], started=started, finished=_now(),
        )
        Path(str(out) + ".manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        if point is not None:
            flag = "  (low confidence)" if point.low_confidence else ""
            print(f"{point.ebno_db:8g} {point.frames:10d} {point.bit_errors:10d} {point.frame_errors:8d} "
                  f"{point.ber:12.4e} {point.fer:12.4e} {point.mean_iters:8.2f}{flag}", flush=True)

    h = qc if qc is not None else dense
    print(f"{'ebno_db':>8} {'frames':>10} {'bit_err':>10} {'frm_err':>8} {'ber':>12} {'fer':>12} {'iters':>8}")
    result = run_sim(h, cfg, on_point=flush)
    flush(result)
    print(f"# {result.ebno_convention}; BER over {result.counting}; seed={cfg.rng_seed}")
    print(f"wrote {out}")
    return EXIT_INTERRUPTED if result.interrupted else EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="qcldpc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a parity-check matrix and print its summary")
    c.add_argument("--dv", type=int, required=True, help="column weight (3 or 4)")
    c.add_argument("--L", type=int, required=True, help="number of circulants")
    c.add_argument("--z", type=int, required=True, help="circulant size")
    c.add_argument("--out", help="output matrix file (omit to only print the summary)")
    c.add_argument("--format", choices=["alist", "qc-text"], default="alist")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="girth, 4-cycle and rank report for a matrix file")
    v.add_argument("matrix", help="alist or qc-text file")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="BER/FER sweep over BPSK/AWGN")
    s.add_argument("matrix", help="alist or qc-text file")
    s.add_argument("--snr", required=True, help="Eb/N0 sweep 'start:step:stop' in dB, or a comma list")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-frames", type=int, default=10_000_000)
    s.add_argument("--min-errors", type=int, default=100, help="bit errors per point before stopping (0: off)")
    s.add_argument("--max-iter", type=int, default=100)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--uncoded", action="store_true", help="bypass encoder and decoder (rate 1)")
    s.add_argument("--source", choices=["all-zero", "random"], default="all-zero")
    s.add_argument("--count", choices=["message", "codeword"], default="message",
                   help="bits that enter the BER")
    s.add_argument("--batch-size", type=int, default=256)
    s.add_argument("--out", default="sim.csv", help="CSV output (manifest goes next to it)")
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except KeyboardInterrupt:
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
