"""Monte-Carlo BER/FER over BPSK + AWGN.

Conventions (also written into every result):

* BPSK maps bit 0 to +1 and bit 1 to -1.
* Noise variance is ``sigma^2 = 1 / (2 R 10^(EbN0/10))`` with ``R = k/n`` the
  actual code rate (``R = 1`` in uncoded mode).
* Channel LLRs are ``2 y / sigma^2``.
* Frame ``f`` of SNR point ``i`` draws all of its randomness (message, then
  noise) from ``default_rng([seed, i, f])``, so results do not depend on how
  frames are spread over threads.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from qcldpc.codec import DEFAULT_MAX_ITER, SumProductDecoder, build_encoder
from qcldpc.errors import ParameterError

CSV_HEADER = ["ebno_db", "frames", "bit_errors", "frame_errors", "ber", "fer", "mean_iters"]
EBNO_CONVENTION = "sigma^2 = 1/(2*R*10^(EbN0/10)), R = k/n (R = 1 uncoded); LLR = 2y/sigma^2; BPSK 0->+1, 1->-1"


@dataclass
class SimConfig:
    snr_points: list
    max_frames: int = 10_000_000
    min_bit_errors: int = 100  # 0 disables the error-count stopping rule
    max_iter: int = DEFAULT_MAX_ITER
    rng_seed: int = 0
    source: str = "all-zero"
    count: str = "message"
    uncoded: bool = False
    threads: int = 1
    batch_size: int = 256
    early_stop: bool = True

    def validate(self):
        if not len(self.snr_points):
            raise ParameterError("at least one SNR point is required")
        if self.max_frames < 1:
            raise ParameterError("max_frames must be at least 1")
        if self.min_bit_errors < 0:
            raise ParameterError("min_bit_errors must be non-negative")
        if self.max_iter < 1:
            raise ParameterError("max_iter must be at least 1")
        if self.source not in ("all-zero", "random"):
            raise ParameterError(f"message source must be 'all-zero' or 'random', got {self.source!r}")
        if self.count not in ("message", "codeword"):
            raise ParameterError(f"error counting must be 'message' or 'codeword', got {self.count!r}")
        if self.threads < 1 or self.batch_size < 1:
            raise ParameterError("threads and batch_size must be positive")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ParameterError("rng_seed must fit in 64 unsigned bits")


@dataclass
class SimPoint:
    ebno_db: float
    sigma: float
    frames: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    iterations: int = 0
    sum_sq_errors: int = 0  # sum over frames of (bit errors in the frame)^2
    bits_per_frame: int = 0
    wall_time: float = 0.0
    low_confidence: bool = False

    @property
    def ber(self):
        return self.bit_errors / (self.frames * self.bits_per_frame) if self.frames else math.nan

    @property
    def ber_stderr(self):
        """Standard error of the BER treating frames (not bits) as the independent samples.

        Decoder failures produce bursts of bit errors, so a per-bit binomial
        interval would be far too narrow for coded points.
        """
        if self.frames < 2:
            return math.nan
        f, b = self.frames, self.bits_per_frame
        mean = self.bit_errors / f
        var = max(self.sum_sq_errors / f - mean * mean, 0.0) * f / (f - 1)
        return math.sqrt(var / f) / b

    @property
    def fer(self):
        return self.frame_errors / self.frames if self.frames else math.nan

    @property
    def mean_iters(self):
        return self.iterations / self.frames if self.frames else math.nan


@dataclass
class SimResult:
    config: SimConfig
    n: int
    k: int
    rate: float
    points: list = field(default_factory=list)
    interrupted: bool = False
    ebno_convention: str = EBNO_CONVENTION

    @property
    def counting(self):
        if self.config.uncoded or self.config.count == "codeword":
            return "codeword bits (n per frame)"
        return "message bits (k per frame)"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for p in self.points:
            writer.writerow([
                f"{p.ebno_db:g}", p.frames, p.bit_errors, p.frame_errors,
                f"{p.ber:.6e}", f"{p.fer:.6e}", f"{p.mean_iters:.4f}",
            ])
        return buf.getvalue()

    def manifest(self, **extra):
        cfg = asdict(self.config)
        cfg["snr_points"] = [float(x) for x in cfg["snr_points"]]
        return {
            "config": cfg,
            "seed": int(self.config.rng_seed),
            "n": self.n,
            "k": self.k,
            "rate": self.rate,
            "ebno_convention": self.ebno_convention,
            "ber_counting": self.counting,
            "interrupted": self.interrupted,
            "points": [
                {"ebno_db": p.ebno_db, "sigma": p.sigma, "frames": p.frames, "bit_errors": p.bit_errors,
                 "frame_errors": p.frame_errors, "ber_stderr": None if math.isnan(p.ber_stderr) else p.ber_stderr,
                 "wall_time_s": round(p.wall_time, 6),
                 "low_confidence": p.low_confidence}
                for p in self.points
            ],
            **extra,
        }

    def manifest_text(self, **extra):
        return json.dumps(self.manifest(**extra), indent=2, sort_keys=True) + "\n"


def noise_sigma(ebno_db, rate):
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebno_db / 10.0)))


def uncoded_ber(ebno_db):
    """BPSK bit error probability ``Q(sqrt(2 Eb/N0))``."""
    return 0.5 * math.erfc(math.sqrt(10.0 ** (ebno_db / 10.0)))


def noise_channel(symbols, sigma, rng):
    """Add white Gaussian noise of standard deviation ``sigma``."""
    if not sigma > 0:
        raise ParameterError(f"noise standard deviation must be positive, got {sigma}")
    symbols = np.asarray(symbols, dtype=np.float64)
    return symbols + sigma * rng.standard_normal(symbols.shape)


def frame_rng(seed, point_index, frame_index):
    return np.random.default_rng([int(seed), int(point_index), int(frame_index)])


class _FrameRunner:
    def __init__(self, h, cfg):
        self.cfg = cfg
        if cfg.uncoded:
            self.n = h.n if hasattr(h, "n") else np.asarray(h).shape[1]
            self.encoder = None
            self.k = self.n
            self.decoder = None
            self.positions = np.arange(self.n)
        else:
            self.encoder = build_encoder(h)
            self.n, self.k = self.encoder.n, self.encoder.k
            self.decoder = SumProductDecoder(h, max_iter=cfg.max_iter, early_stop=cfg.early_stop)
            self.positions = self.encoder.info_positions if cfg.count == "message" else np.arange(self.n)
        self.rate = 1.0 if cfg.uncoded else self.k / self.n

    def run(self, point_index, frame_index, sigma):
        cfg = self.cfg
        rng = frame_rng(cfg.rng_seed, point_index, frame_index)
        if cfg.source == "random":
            if self.encoder is None:
                codeword = rng.integers(0, 2, self.n, dtype=np.uint8)
            else:
                codeword = self.encoder.encode(rng.integers(0, 2, self.k, dtype=np.uint8))
        else:
            codeword = np.zeros(self.n, dtype=np.uint8)
        received = noise_channel(1.0 - 2.0 * codeword, sigma, rng)
        if self.decoder is None:
            hard, iters = np.signbit(received).astype(np.uint8), 0
        else:
            res = self.decoder.decode(2.0 * received / (sigma * sigma))
            hard, iters = res.hard, res.iterations
        errors = int(np.count_nonzero(hard[self.positions] != codeword[self.positions]))
        return errors, iters


def run_sim(h, cfg, on_point=None):
    """Simulate every SNR point of ``cfg`` on the code ``h``.

    Frames run in batches of ``cfg.batch_size`` (spread over ``cfg.threads``
    workers); results are then scanned in frame order and the point stops
    at the first frame where ``min_bit_errors`` is reached, or after
    ``max_frames``.  The outcome is identical for any thread count.
    """
    cfg.validate()
    runner = _FrameRunner(h, cfg)
    result = SimResult(config=cfg, n=runner.n, k=runner.k, rate=runner.rate)
    bits_per_frame = len(runner.positions)
    pool = ThreadPoolExecutor(max_workers=cfg.threads) if cfg.threads > 1 else None
    try:
        for idx, ebno in enumerate(cfg.snr_points):
            sigma = noise_sigma(float(ebno), runner.rate)
            point = SimPoint(ebno_db=float(ebno), sigma=sigma, bits_per_frame=bits_per_frame)
            result.points.append(point)
            start = time.perf_counter()
            done = False
            try:
                while not done:
                    count = min(cfg.batch_size, cfg.max_frames - point.frames)
                    frames = range(point.frames, point.frames + count)
                    if pool is None:
                        outcomes = [runner.run(idx, f, sigma) for f in frames]
                    else:
                        outcomes = list(pool.map(lambda f: runner.run(idx, f, sigma), frames))
                    for errors, iters in outcomes:
                        point.frames += 1
                        point.bit_errors += errors
                        point.sum_sq_errors += errors * errors
                        point.frame_errors += errors > 0
                        point.iterations += iters
                        if point.frames >= cfg.max_frames or (
                            cfg.min_bit_errors and point.bit_errors >= cfg.min_bit_errors
                        ):
                            done = True
                            break
            except KeyboardInterrupt:
                result.interrupted = True
            point.wall_time = time.perf_counter() - start
            point.low_confidence = point.bit_errors < cfg.min_bit_errors
            if on_point is not None:
                on_point(result, point)
            if result.interrupted:
                break
    finally:
        if pool is not None:
            pool.shutdown(wait=True, cancel_futures=True)
    return result


def parse_snr_spec(spec):
    """``"start:step:stop"`` (endpoints inclusive within half a step) or a comma list."""
    if ":" not in spec:
        try:
            return [float(x) for x in spec.split(",") if x.strip()]
        except ValueError:
            raise ParameterError(f"bad SNR list {spec!r}") from None
    parts = spec.split(":")
    if len(parts) != 3:
        raise ParameterError(f"SNR sweep must be 'start:step:stop', got {spec!r}")
    try:
        start, step, stop = (float(x) for x in parts)
    except ValueError:
        raise ParameterError(f"SNR sweep must be numeric, got {spec!r}") from None
    if step <= 0 or stop < start:
        raise ParameterError("SNR sweep needs step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    return [round(start + i * step, 10) for i in range(count)]
