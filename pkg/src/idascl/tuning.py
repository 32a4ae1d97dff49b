"""Offline characterization and threshold optimization.

The expensive Monte Carlo work is done once per frame set: every frame is
decoded at the candidate list sizes and its small-LLR counts are cached,
after which any (gamma, phi) grid point or multi-layer schedule can be
evaluated by pure bookkeeping.  The cached evaluation is bit-exact with a
direct re-simulation on the same per-frame seeds.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, frame_rng
from .decoder import scl_decode
from .harness import random_frame
from .selector import (Layer, ThresholdSchedule, complexity_multi_layer,
                       complexity_single_layer)

FAIL = "fail"


def default_gamma_grid():
    return np.arange(0.25, 6.0 + 1e-9, 0.25)


def min_required_list_size(spec, y, truth_payload, l_high):
    """Smallest power-of-2 list size whose CRC-selected output is the truth.

    Scans L = 1, 2, 4, ... l_high in order (success at L does not formally
    imply success at 2L under CRC selection); returns None when even
    l_high fails.
    """
    truth_payload = np.asarray(truth_payload, dtype=np.uint8)
    l = 1
    while l <= l_high:
        res = scl_decode(spec, y, l)
        if res.crc_pass and np.array_equal(res.payload, truth_payload):
            return l
        l *= 2
    return None


@dataclass(frozen=True)
class MinListHistogram:
    """Distribution of the minimum required list size over a frame set."""

    counts: dict  # list size -> frames; key FAIL for undecodable frames
    total: int
    l_high: int
    seed: int

    def percentages(self, fold_fail_into_l_high=False):
        out = {}
        for l in [2**i for i in range(int(math.log2(self.l_high)) + 1)]:
            c = self.counts.get(l, 0)
            if fold_fail_into_l_high and l == self.l_high:
                c += self.counts.get(FAIL, 0)
            out[l] = 100.0 * c / self.total
        if not fold_fail_into_l_high:
            out[FAIL] = 100.0 * self.counts.get(FAIL, 0) / self.total
        return out

    def rows(self):
        for key, cnt in sorted(
            self.counts.items(), key=lambda kv: (kv[0] == FAIL, kv[0] if kv[0] != FAIL else 0)
        ):
            yield key, cnt, 100.0 * cnt / self.total


def build_min_list_histogram(spec, params, frames, seed, l_high=32,
                             noiseless=False):
    """Monte Carlo aggregation of min_required_list_size."""
    if frames < 1:
        raise ValueError("frames must be >= 1")
    counts = {}
    for i in range(frames):
        rng = frame_rng(seed, i)
        payload, y = random_frame(spec, params, rng, noiseless)
        l = min_required_list_size(spec, y, payload, l_high)
        key = FAIL if l is None else l
        counts[key] = counts.get(key, 0) + 1
    return MinListHistogram(counts, frames, l_high, seed)


@dataclass(frozen=True)
class LlrProfile:
    """Mean cumulative LLR-magnitude counts, bucketed by required list size."""

    magnitude_grid: np.ndarray
    curves: dict  # bucket key -> mean count of |y| < m per grid point
    bucket_frames: dict
    total: int


def profile_llr_distribution(spec, params, frames, magnitude_grid, seed,
                             l_high=32, noiseless=False):
    """Bucket frames by min_required_list_size; average |y| < m counts."""
    grid = np.asarray(magnitude_grid, dtype=np.float64)
    if grid.size == 0 or (np.diff(grid) <= 0).any():
        raise ValueError("magnitude grid must be strictly increasing")
    sums = {}
    nframes = {}
    for i in range(frames):
        rng = frame_rng(seed, i)
        payload, y = random_frame(spec, params, rng, noiseless)
        l = min_required_list_size(spec, y, payload, l_high)
        key = FAIL if l is None else l
        mags = np.sort(np.abs(y))
        cum = np.searchsorted(mags, grid, side="left")  # strict |y| < m
        if key not in sums:
            sums[key] = np.zeros(grid.size, dtype=np.float64)
            nframes[key] = 0
        sums[key] += cum
        nframes[key] += 1
    curves = {k: sums[k] / nframes[k] for k in sums}
    return LlrProfile(grid, curves, nframes, frames)


@dataclass(frozen=True)
class TuningSurface:
    """(gamma, phi) grid of estimated BLER, complexity %, and delta."""

    gamma_grid: np.ndarray
    phi_grid: np.ndarray
    bler: np.ndarray  # shape (G, P)
    complexity: np.ndarray
    delta: np.ndarray
    target_bler: float
    meta: dict

    def rows(self):
        for gi, g in enumerate(self.gamma_grid):
            for pi, p in enumerate(self.phi_grid):
                yield (g, int(p), self.bler[gi, pi], self.complexity[gi, pi],
                       self.delta[gi, pi])


@dataclass(frozen=True)
class SingleLayerTuningResult:
    feasible: bool
    gamma: float | None
    phi: int | None
    delta: float | None
    bler: float | None
    complexity_pct: float | None
    surface: TuningSurface
    bler_low: float
    bler_high: float


def _simulate_cache(spec, params, list_sizes, gammas, frames, seed):
    """Per-frame success flags at each list size and small-LLR counts.

    Returns ok (len(list_sizes), frames) bool and counts
    (len(gammas), frames) int arrays.
    """
    ok = np.zeros((len(list_sizes), frames), dtype=bool)
    counts = np.zeros((len(gammas), frames), dtype=np.int64)
    gam = np.asarray(gammas, dtype=np.float64)
    for i in range(frames):
        rng = frame_rng(seed, i)
        payload, y = random_frame(spec, params, rng)
        mags = np.sort(np.abs(y))
        counts[:, i] = np.searchsorted(mags, gam, side="right")  # |y| <= g
        for li, l in enumerate(list_sizes):
            res = scl_decode(spec, y, l)
            ok[li, i] = np.array_equal(res.payload, payload)
    return ok, counts


def default_bler_target(bler_low, bler_high, midpoint="geometric"):
    """Mid-point between the two fixed-list BLERs (log-domain by default)."""
    if midpoint == "geometric":
        lo = max(bler_high, 1e-12)
        return math.sqrt(lo * max(bler_low, lo))
    if midpoint == "arithmetic":
        return 0.5 * (bler_low + bler_high)
    raise ValueError(f"unknown midpoint rule {midpoint!r}")


def tune_single_layer(spec, params, l_low, l_high, gamma_grid=None,
                      phi_range=None, target_bler=None, frames=10**5,
                      seed=0, midpoint="geometric"):
    """Grid search over (gamma, phi) minimizing complexity under a BLER cap.

    Per-frame outcomes at l_low and l_high and per-gamma small-LLR counts
    are computed once and reused for the whole grid.  Ties are broken by
    larger delta, then smaller gamma, then smaller phi.  When no grid
    point is feasible, the result carries feasible=False and the surface.
    """
    if gamma_grid is None:
        gamma_grid = default_gamma_grid()
    gamma_grid = np.asarray(gamma_grid, dtype=np.float64)
    if phi_range is None:
        phi_range = np.arange(1, spec.n_bits + 1)
    phi_grid = np.asarray(phi_range, dtype=np.int64)
    if gamma_grid.size == 0 or phi_grid.size == 0:
        raise ValueError("grids must be non-empty")

    ok, counts = _simulate_cache(spec, params, [l_low, l_high], gamma_grid,
                                 frames, seed)
    err_low = ~ok[0]
    err_high = ~ok[1]
    bler_low = float(err_low.mean())
    bler_high = float(err_high.mean())
    if target_bler is None:
        target_bler = default_bler_target(bler_low, bler_high, midpoint)
    if target_bler <= 0:
        raise ValueError("target BLER must be positive")

    n = spec.n_bits
    G, P = gamma_grid.size, phi_grid.size
    bler = np.zeros((G, P))
    delta = np.zeros((G, P))
    total_err_high = int(err_high.sum())
    for gi in range(G):
        c = counts[gi]
        # histograms over count values 0..N
        n_c = np.bincount(c, minlength=n + 1)
        el_c = np.bincount(c, weights=err_low.astype(np.float64), minlength=n + 1)
        eh_c = np.bincount(c, weights=err_high.astype(np.float64), minlength=n + 1)
        cum_n = np.concatenate([[0], np.cumsum(n_c)])
        cum_el = np.concatenate([[0.0], np.cumsum(el_c)])
        cum_eh = np.concatenate([[0.0], np.cumsum(eh_c)])
        phi_cl = np.clip(phi_grid, 0, n + 1)
        routed = cum_n[phi_cl]  # frames with count < phi
        delta[gi] = routed / frames
        errors = cum_el[phi_cl] + (total_err_high - cum_eh[phi_cl])
        bler[gi] = errors / frames
    complexity = 100.0 * (delta * l_low + (1.0 - delta) * l_high) / l_high

    meta = {"n_bits": spec.n_bits, "k_bits": spec.k_bits,
            "ebn0_db": params.ebn0_db, "l_low": l_low, "l_high": l_high,
            "frames": frames, "seed": seed}
    surface = TuningSurface(gamma_grid, phi_grid, bler, complexity, delta,
                            float(target_bler), meta)

    feasible = bler <= target_bler
    if not feasible.any():
        return SingleLayerTuningResult(False, None, None, None, None, None,
                                       surface, bler_low, bler_high)
    # max delta, then min gamma, then min phi
    best = None
    for gi in range(G):
        for pi in range(P):
            if not feasible[gi, pi]:
                continue
            key = (-delta[gi, pi], gamma_grid[gi], phi_grid[pi])
            if best is None or key < best[0]:
                best = (key, gi, pi)
    _, gi, pi = best
    return SingleLayerTuningResult(
        True, float(gamma_grid[gi]), int(phi_grid[pi]), float(delta[gi, pi]),
        float(bler[gi, pi]), float(complexity[gi, pi]), surface,
        bler_low, bler_high)


@dataclass(frozen=True)
class MultiLayerTuningResult:
    schedule: ThresholdSchedule
    complexity_pct: float
    deltas: tuple
    bler: float
    degenerate: bool


def tune_multi_layer(spec, params, l_high, per_layer_optima,
                     matched_bler_target, frames=10**5, seed=0):
    """De-rate single-layer optima into a multi-layer schedule.

    per_layer_optima[i] = (gamma_i, phi_i) tuned for list size 2**i,
    i = 0 .. log2(l_high) - 1.  Starting from those, phi values are
    decreased greedily (smallest list size first) until the multi-layer
    BLER meets matched_bler_target.  If the target is unreachable even
    with all phi = 0, the returned schedule is degenerate and identical in
    behaviour to plain SCL at l_high.
    """
    n_layers = int(math.log2(l_high))
    if len(per_layer_optima) != n_layers:
        raise ValueError(f"need {n_layers} per-layer optima")
    gammas = [g for g, _ in per_layer_optima]
    phis = np.array([p for _, p in per_layer_optima], dtype=np.int64)

    list_sizes = [2**i for i in range(n_layers + 1)]
    ok, counts = _simulate_cache(spec, params, list_sizes, gammas, frames, seed)
    err = ~ok  # (n_layers + 1, frames)

    def evaluate(phi_vec):
        cond = counts < phi_vec[:, None]
        fired = cond.any(axis=0)
        sel = np.where(fired, cond.argmax(axis=0), n_layers)
        bler = float(err[sel, np.arange(frames)].mean())
        deltas = np.bincount(sel, minlength=n_layers + 1) / frames
        return bler, deltas

    bler, deltas = evaluate(phis)
    for i in range(n_layers):
        while bler > matched_bler_target and phis[i] > 0:
            phis[i] -= 1
            bler, deltas = evaluate(phis)
        if bler <= matched_bler_target:
            break

    degenerate = bool((phis == 0).all())
    layers = tuple(Layer(float(gammas[i]), int(phis[i]), 2**i)
                   for i in range(n_layers))
    schedule = ThresholdSchedule(layers, l_high)
    complexity = complexity_multi_layer(deltas, l_high)
    return MultiLayerTuningResult(schedule, complexity, tuple(deltas),
                                  bler, degenerate)
