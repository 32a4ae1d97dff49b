"""Monte Carlo experiment driver: BLER/complexity sweeps over Eb/N0.

Every frame derives its randomness from (master seed, point index, frame
index), so aggregates are independent of worker count and scheduling.
Early stopping is only evaluated at fixed batch boundaries, which keeps
the stopping decision deterministic as well.
"""

import hashlib
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, frame_rng, transmit
from .codes import PolarCodeSpec, encode
from .decoder import sc_decode, scl_decode
from .selector import ThresholdSchedule, ida_scl_decode

BATCH_FRAMES = 2048

CSV_MODES = ("sc", "scl", "ida-single", "ida-multi")


def random_frame(spec, params, rng, noiseless=False):
    """One transmitted frame: (payload, channel LLR vector)."""
    payload = rng.integers(0, 2, spec.payload_len, dtype=np.uint8)
    x = encode(spec, payload)
    if noiseless:
        y = (2.0 / params.sigma**2) * (1.0 - 2.0 * x.astype(np.float64))
    else:
        y = transmit(x, params, rng)
    return payload, y


@dataclass(frozen=True)
class SimConfig:
    spec: PolarCodeSpec
    mode: str  # sc | scl | ida-single | ida-multi
    list_size: int = 1
    schedule: ThresholdSchedule | None = None
    ebn0_start: float = 0.0
    ebn0_stop: float = 0.0
    ebn0_step: float = 0.5
    max_frames: int = 10**6
    min_block_errors: int = 500
    seed: int = 0
    workers: int = 1
    out_path: str | None = None
    noiseless: bool = False

    def __post_init__(self):
        if self.mode not in CSV_MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode.startswith("ida") and self.schedule is None:
            raise ValueError("ida modes require a threshold schedule")
        if self.max_frames < 1:
            raise ValueError("max_frames must be >= 1")
        if self.ebn0_stop < self.ebn0_start:
            raise ValueError("empty Eb/N0 sweep")

    @property
    def l_high(self):
        if self.schedule is not None:
            return self.schedule.l_high
        return self.list_size if self.mode == "scl" else 1

    def sweep_points(self):
        n = int(math.floor((self.ebn0_stop - self.ebn0_start) / self.ebn0_step + 1e-9))
        return [self.ebn0_start + i * self.ebn0_step for i in range(n + 1)]

    def spec_hash(self):
        h = hashlib.sha256()
        h.update(self.spec.frozen_mask.tobytes())
        h.update(
            f"{self.spec.n_bits},{self.spec.k_bits},{self.spec.crc}".encode()
        )
        return h.hexdigest()[:12]


@dataclass(frozen=True)
class SimRecord:
    """Aggregate outcome of one operating point."""

    ebn0_db: float
    frames: int
    block_errors: int
    bler: float
    bler_stderr: float
    deltas: tuple  # selection fractions over list sizes 2^0 .. l_high
    complexity_pct: float
    seconds: float


def _decode_frame(spec, y, mode, list_size, schedule):
    """Returns (payload_estimate, chosen_list_size)."""
    if mode == "sc":
        return sc_decode(spec, y).payload, 1
    if mode == "scl":
        return scl_decode(spec, y, list_size).payload, list_size
    result, outcome = ida_scl_decode(spec, y, schedule)
    return result.payload, outcome.chosen_list_size


def _run_batch(spec, params, mode, list_size, schedule, seed, point_index,
               start, count, noiseless, l_high):
    errors = 0
    sel = np.zeros(int(math.log2(l_high)) + 1, dtype=np.int64)
    for i in range(start, start + count):
        rng = frame_rng(seed, point_index, i)
        payload, y = random_frame(spec, params, rng, noiseless)
        est, chosen = _decode_frame(spec, y, mode, list_size, schedule)
        if not np.array_equal(est, payload):
            errors += 1
        sel[int(math.log2(chosen))] += 1
    return errors, sel


def _run_batch_star(args):
    return _run_batch(*args)


def run_point(config, ebn0_db, point_index=0):
    """Simulate one Eb/N0 point until the stopping rule fires.

    Block error = decoded payload differs from the transmitted payload,
    whether or not the CRC verdict claimed success.
    """
    spec = config.spec
    params = ChannelParams(ebn0_db, spec.rate)
    l_high = config.l_high
    t0 = time.perf_counter()

    starts = list(range(0, config.max_frames, BATCH_FRAMES))
    tasks = (
        (spec, params, config.mode, config.list_size, config.schedule,
         config.seed, point_index, s, min(BATCH_FRAMES, config.max_frames - s),
         config.noiseless, l_high)
        for s in starts
    )
    frames = 0
    errors = 0
    sel = np.zeros(int(math.log2(l_high)) + 1, dtype=np.int64)

    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for task, (e, s_counts) in zip(starts, pool.map(_run_batch_star, tasks)):
                frames += min(BATCH_FRAMES, config.max_frames - task)
                errors += e
                sel += s_counts
                if errors >= config.min_block_errors:
                    break
    else:
        for task in tasks:
            e, s_counts = _run_batch(*task)
            frames += task[8]
            errors += e
            sel += s_counts
            if errors >= config.min_block_errors:
                break

    bler = errors / frames
    stderr = math.sqrt(bler * (1.0 - bler) / frames)
    deltas = tuple(sel / frames)
    sizes = 2.0 ** np.arange(sel.size)
    complexity = float(100.0 * (sel / frames * sizes).sum() / l_high)
    seconds = time.perf_counter() - t0
    return SimRecord(ebn0_db, frames, errors, bler, stderr, deltas,
                     complexity, seconds)


def csv_header(config):
    n_delta = int(math.log2(config.l_high)) + 1
    cols = ["ebn0_db", "frames", "block_errors", "bler", "bler_stderr"]
    cols += [f"delta_{i}" for i in range(n_delta)]
    cols += ["complexity_pct", "seconds"]
    lines = [
        f"# idascl simulation: mode={config.mode} list_size={config.list_size} "
        f"l_high={config.l_high}",
        f"# spec: N={config.spec.n_bits} K={config.spec.k_bits} "
        f"crc={config.spec.crc} design_sigma={config.spec.design_sigma} "
        f"hash={config.spec_hash()}",
        f"# seed={config.seed} max_frames={config.max_frames} "
        f"min_block_errors={config.min_block_errors} workers={config.workers}",
        ",".join(cols),
    ]
    return "\n".join(lines) + "\n"


def csv_row(record):
    vals = [f"{record.ebn0_db:g}", str(record.frames), str(record.block_errors),
            f"{record.bler:.8g}", f"{record.bler_stderr:.8g}"]
    vals += [f"{d:.8g}" for d in record.deltas]
    vals += [f"{record.complexity_pct:.6g}", f"{record.seconds:.3f}"]
    return ",".join(vals) + "\n"


def run_sweep(config):
    """run_point per sweep value; records are streamed out as completed."""
    records = []
    out = open(config.out_path, "w") if config.out_path else None
    try:
        if out:
            out.write(csv_header(config))
            out.flush()
        for idx, ebn0 in enumerate(config.sweep_points()):
            rec = run_point(config, ebn0, point_index=idx)
            records.append(rec)
            if out:
                out.write(csv_row(rec))
                out.flush()
    finally:
        if out:
            out.close()
    return records
