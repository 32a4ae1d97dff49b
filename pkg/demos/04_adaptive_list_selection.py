"""Tune a small-LLR threshold rule and decode with an adaptive list size.

A frame with fewer than phi channel LLRs of magnitude <= gamma is routed
to a small list; everything else gets the full list.  The tuner picks
(gamma, phi) to maximize the routed fraction subject to a BLER cap, and
the complexity figure counts decode work relative to always running the
full list.
"""

from idascl import (ChannelParams, CrcSpec, PolarCodeSpec, SimConfig,
                    run_point, tune_single_layer)

spec = PolarCodeSpec.construct(128, 66, 0.5, CrcSpec(2, 0x3))
# rate-matched to run_point below, which converts Eb/N0 at spec.rate
params = ChannelParams(3.25, spec.rate)
l_low, l_high = 1, 32

res = tune_single_layer(spec, params, l_low, l_high, target_bler=2e-3,
                        frames=20000, seed=0)
print(f"tuned threshold: gamma={res.gamma:g} phi={res.phi}")
print(f"routed fraction delta={res.delta:.4f}")
print(f"estimated BLER {res.bler:.2e} (SCL-{l_high} alone: {res.bler_high:.2e})")
print(f"estimated complexity {res.complexity_pct:.2f}% of always-on SCL-{l_high}")

# Confirm by actually simulating with the tuned rule.
from idascl import ThresholdSchedule

schedule = ThresholdSchedule.single(res.gamma, res.phi, l_low, l_high)
config = SimConfig(spec=spec, mode="ida-single", schedule=schedule,
                   max_frames=20000, min_block_errors=10**9, seed=123)
rec = run_point(config, params.ebn0_db)
print(f"\nsimulated: BLER {rec.bler:.2e}, complexity {rec.complexity_pct:.2f}%")
