"""End-to-end acceptance suite against published reference behavior.

Each test prints one CRITERION line (PASS/FAIL plus the measured numbers)
and asserts the stated tolerance.  Frame counts are sized for a desktop
CPU; the full module takes roughly an hour, dominated by criterion 2.

Reference operating points, six CRC-aided codes at a block error rate
near 1e-3.  K counts payload bits; the CRC rides on top, so the code
carries K + C bits in the non-frozen positions while the Eb/N0
conversion uses the payload rate K / N (energy per information bit).
Criteria 4 and 8 drive the simulation harness end to end, which
converts at the code rate (K + C) / N; both assert relative behavior
only, indifferent to that small offset.
"""

import math
import sys

import numpy as np
import pytest

from conftest import ml_with_crc_oracle
from idascl import (ChannelParams, CrcSpec, PolarCodeSpec, SimConfig,
                    ThresholdSchedule, build_min_list_histogram, frame_rng,
                    ida_scl_decode, polar_transform, random_frame, run_point,
                    scl_decode, sc_decode, tune_multi_layer,
                    tune_single_layer)
from idascl.crc import crc_compute, crc_verify

# (n, payload_k, crc_width, crc_poly, l_high, ebn0_db, gamma, phi)
REFERENCE_CODES = [
    (128, 64, 2, 0x3, 16, 3.25, 4.0, 65),
    (128, 112, 3, 0x3, 8, 5.30, 4.0, 9),
    (256, 128, 5, 0x15, 32, 2.40, 4.0, 153),
    (256, 224, 8, 0xD5, 32, 4.85, 4.0, 22),
    (512, 256, 8, 0xD5, 32, 2.60, 4.0, 285),
    (512, 448, 12, 0x80F, 32, 4.45, 4.5, 63),
]


def reference_spec(n, payload_k, c, poly):
    return PolarCodeSpec.construct(n, payload_k + c, 0.5, CrcSpec(c, poly))


def operating_params(spec, ebn0_db):
    return ChannelParams(ebn0_db, spec.payload_len / spec.n_bits)


_CAPTURE_MANAGER = None


@pytest.fixture(autouse=True)
def _capture_manager(request):
    global _CAPTURE_MANAGER
    _CAPTURE_MANAGER = request.config.pluginmanager.getplugin("capturemanager")
    yield


def report(num, ok, detail):
    line = f"CRITERION {num}: {'PASS' if ok else 'FAIL'} - {detail}"
    if _CAPTURE_MANAGER is not None:
        # suspend pytest's fd-level capture so the line lands in the run
        # log even when the test passes
        with _CAPTURE_MANAGER.global_and_fixture_disabled():
            print("\n" + line, flush=True)
    else:
        print("\n" + line, file=sys.__stdout__, flush=True)
    assert ok, line


def test_criterion_1_min_list_histogram():
    # N=128 rate-1/2 code at 3.25 dB: L=1 bucket 96.87 +/- 1.0 pp,
    # L=2 bucket 2.52 +/- 0.5 pp, rare buckets to order of magnitude
    spec = reference_spec(128, 64, 2, 0x3)
    params = operating_params(spec, 3.25)
    hist = build_min_list_histogram(spec, params, frames=10**5, seed=101,
                                    l_high=32)
    pct = hist.percentages()
    ok = abs(pct[1] - 96.87) <= 1.0 and abs(pct[2] - 2.52) <= 0.5
    rare = []
    for l, expect in ((8, 0.12), (16, 0.03), (32, 0.01)):
        floor = 100.0 / hist.total
        ratio = max(pct[l], floor) / expect
        rare.append(ratio)
        ok = ok and 0.1 <= ratio <= 10.0
    report(1, ok,
           f"L=1 {pct[1]:.2f}% (want 96.87+/-1.0), "
           f"L=2 {pct[2]:.2f}% (want 2.52+/-0.5), "
           f"rare-bucket ratios {[f'{r:.2f}' for r in rare]}")


def test_criterion_2_operating_point_bler():
    # each code decoded at its l_high sits within a factor of 2 of 1e-3
    frames = 2 * 10**5
    details = []
    ok = True
    for ci, (n, k, c, poly, l_high, ebn0, _, _) in enumerate(REFERENCE_CODES):
        spec = reference_spec(n, k, c, poly)
        params = operating_params(spec, ebn0)
        errors = 0
        for i in range(frames):
            rng = frame_rng(ci, i)
            payload, y = random_frame(spec, params, rng)
            res = scl_decode(spec, y, l_high)
            if not np.array_equal(res.payload, payload):
                errors += 1
        bler = errors / frames
        inside = 5e-4 <= bler <= 2e-3
        ok = ok and inside
        details.append(f"N={n},K={k}: {bler:.2e}{'' if inside else '!'}")
    report(2, ok, "; ".join(details) + " (window [5e-4, 2e-3])")


def test_criterion_3_single_layer_optimum():
    # the tuner recovers the reference optimum near (gamma=1.5, phi=14)
    # with complexity in [86, 90]% for L_low=1, L_high=32 at 3.25 dB and
    # a BLER cap of 2e-3.  The gamma grid mirrors the reference search,
    # which only examined gamma in {0.5, 1.0, 1.5}.
    spec = reference_spec(128, 64, 2, 0x3)
    params = operating_params(spec, 3.25)
    res = tune_single_layer(spec, params, l_low=1, l_high=32,
                            gamma_grid=np.array([0.5, 1.0, 1.5]),
                            target_bler=2e-3, frames=3 * 10**5, seed=0)
    ok = (res.feasible
          and abs(res.gamma - 1.5) <= 0.5
          and abs(res.phi - 14) <= 3
          and 86.0 <= res.complexity_pct <= 90.0)
    report(3, ok,
           f"gamma={res.gamma} (want 1.5+/-0.5), phi={res.phi} "
           f"(want 14+/-3), complexity={res.complexity_pct:.2f}% "
           f"(want [86, 90]), delta={res.delta:.4f}")


def test_criterion_4_complexity_floor():
    # with L_low = L_high/2 = 16 the complexity is 100 - 50*delta: it must
    # stay >= 50% and fall as Eb/N0 rises past the tuning point
    frames = 6000
    details = []
    ok = True
    for (n, k, c, poly, l_high, ebn0, gamma, phi) in (REFERENCE_CODES[2],
                                                      REFERENCE_CODES[3]):
        spec = reference_spec(n, k, c, poly)
        sched = ThresholdSchedule.single(gamma, phi, l_high // 2, l_high)
        config = SimConfig(spec=spec, mode="ida-single", schedule=sched,
                           max_frames=frames, min_block_errors=10**9, seed=17)
        at = run_point(config, ebn0).complexity_pct
        past = run_point(config, ebn0 + 0.6).complexity_pct
        good = past < at and at >= 50.0 and past >= 50.0
        ok = ok and good
        details.append(f"N={n},K={k}: {at:.1f}% -> {past:.1f}%"
                       f"{'' if good else '!'}")
    report(4, ok, "; ".join(details) + " (must fall, both >= 50%)")


def test_criterion_5_multi_layer_gain():
    # layered thresholds beat the best single-layer rule by 0.5-10 pp of
    # complexity at a matched BLER cap, on two of the reference codes;
    # the two rate-1/2 codes are used because at high rate (112/128) the
    # best single layer already captures nearly all the routable frames,
    # leaving the layered rule almost no additional headroom
    frames = 3 * 10**4
    details = []
    ok = True
    for (n, k, c, poly, l_high, ebn0, _, _) in (REFERENCE_CODES[0],
                                                REFERENCE_CODES[2]):
        spec = reference_spec(n, k, c, poly)
        params = operating_params(spec, ebn0)
        n_layers = int(math.log2(l_high))

        best_single = None
        optima = []
        target = None
        for i in range(n_layers):
            r = tune_single_layer(spec, params, 2**i, l_high,
                                  target_bler=target, frames=frames, seed=31)
            if target is None:
                # cap at twice the measured SCL(l_high) BLER, fixed across
                # all layers of this code
                target = 2.0 * r.bler_high
                r = tune_single_layer(spec, params, 2**i, l_high,
                                      target_bler=target, frames=frames,
                                      seed=31)
            assert r.feasible
            optima.append((r.gamma, r.phi))
            if best_single is None or r.complexity_pct < best_single:
                best_single = r.complexity_pct

        multi = tune_multi_layer(spec, params, l_high, optima, target,
                                 frames=frames, seed=31)
        gain = best_single - multi.complexity_pct
        good = 0.5 <= gain <= 10.0 and not multi.degenerate
        ok = ok and good
        details.append(f"N={n},K={k}: single {best_single:.2f}% -> multi "
                       f"{multi.complexity_pct:.2f}% (gain {gain:.2f} pp)"
                       f"{'' if good else '!'}")
    report(5, ok, "; ".join(details) + " (gain window [0.5, 10] pp)")


def test_criterion_6_oracle_equivalence():
    # on an exhaustively enumerable code, the CRC-selected list output is
    # never worse than the brute-force best CRC-valid candidate
    spec = PolarCodeSpec.construct(8, 6, 0.5, CrcSpec(2, 0x3))
    params = ChannelParams(0.18, spec.rate)  # sigma close to 0.8
    worst = 0.0
    violations = 0
    for i in range(1000):
        rng = frame_rng(77, i)
        payload, y = random_frame(spec, params, rng)
        res = scl_decode(spec, y, 16)
        if not res.crc_pass:
            continue
        _, best_metric = ml_with_crc_oracle(spec, y)
        gap = res.selected_path_metric - best_metric
        worst = max(worst, gap)
        if gap > 1e-9:
            violations += 1
    report(6, violations == 0,
           f"{violations} frames above the exhaustive optimum "
           f"(worst gap {worst:.2e})")


def test_criterion_7_structural_properties():
    failures = []

    # list size 1 is bit-exact successive cancellation
    spec = reference_spec(128, 64, 2, 0x3)
    params = operating_params(spec, 2.5)
    for i in range(10**4):
        rng = frame_rng(55, i)
        _, y = random_frame(spec, params, rng)
        a = sc_decode(spec, y)
        b = scl_decode(spec, y, 1)
        if not (np.array_equal(a.u_hat, b.u_hat)
                and a.crc_pass == b.crc_pass
                and a.selected_path_metric == b.selected_path_metric):
            failures.append(f"scl(1)!=sc at frame {i}")
            break

    # the encoder transform is its own inverse
    rng = np.random.default_rng(55)
    for _ in range(1000):
        n = 2 ** int(rng.integers(1, 11))  # up to N=1024
        v = rng.integers(0, 2, n, dtype=np.uint8)
        if not np.array_equal(polar_transform(polar_transform(v)), v):
            failures.append(f"involution broken at n={n}")
            break

    # append-then-verify holds for every polynomial in use
    polys = [(2, 0x3), (5, 0x15), (8, 0xD5), (12, 0x80F)]
    for width, poly in polys:
        crc = CrcSpec(width, poly)
        for _ in range(2500):
            msg = rng.integers(0, 2, int(rng.integers(1, 64)), dtype=np.uint8)
            rem = crc_compute(crc, msg)
            if not crc_verify(crc, np.concatenate([msg, rem])):
                failures.append(f"crc roundtrip failed for 0x{poly:x}")
                break

    # a schedule that can never fire is plain SCL at l_high
    sched = ThresholdSchedule.single(1.0, 0, 1, 8)
    for i in range(500):
        rng_f = frame_rng(56, i)
        _, y = random_frame(spec, params, rng_f)
        a, outcome = ida_scl_decode(spec, y, sched)
        b = scl_decode(spec, y, 8)
        if not (np.array_equal(a.u_hat, b.u_hat)
                and a.selected_path_metric == b.selected_path_metric
                and outcome.chosen_list_size == 8):
            failures.append(f"phi=0 schedule diverged at frame {i}")
            break

    # aggregates do not depend on the worker count
    kw = dict(spec=spec, mode="scl", list_size=2, max_frames=4096,
              min_block_errors=10**9, seed=57)
    r1 = run_point(SimConfig(workers=1, **kw), 2.5)
    r2 = run_point(SimConfig(workers=2, **kw), 2.5)
    if (r1.frames, r1.block_errors, r1.deltas) != (r2.frames,
                                                   r2.block_errors,
                                                   r2.deltas):
        failures.append("worker count changed the aggregate")

    report(7, not failures, "; ".join(failures) or
           "scl(1)=sc, involution, crc roundtrip, phi=0 schedule, "
           "worker determinism all exact")


def test_criterion_8_bler_sandwich():
    # SCL(l_high) <= adaptive <= SCL(l_low) at every sweep point, with
    # 3 combined standard errors of slack, on shared frame seeds
    spec = reference_spec(128, 64, 2, 0x3)
    sched = ThresholdSchedule.single(1.5, 14, 1, 32)
    frames = 2 * 10**4
    details = []
    ok = True
    for ebn0 in (2.5, 3.0, 3.5):
        recs = {}
        for mode, kw in (("scl", dict(mode="scl", list_size=32)),
                         ("ida", dict(mode="ida-single", schedule=sched)),
                         ("sc", dict(mode="sc"))):
            config = SimConfig(spec=spec, max_frames=frames,
                               min_block_errors=10**9, seed=42, **kw)
            recs[mode] = run_point(config, ebn0)
        hi, mid, lo = recs["scl"], recs["ida"], recs["sc"]
        slack_hi = 3 * math.hypot(hi.bler_stderr, mid.bler_stderr)
        slack_lo = 3 * math.hypot(lo.bler_stderr, mid.bler_stderr)
        good = (hi.bler <= mid.bler + slack_hi
                and mid.bler <= lo.bler + slack_lo)
        ok = ok and good
        details.append(f"{ebn0:g}dB: {hi.bler:.1e} <= {mid.bler:.1e} "
                       f"<= {lo.bler:.1e}{'' if good else '!'}")
    report(8, ok, "; ".join(details))
