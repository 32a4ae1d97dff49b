"""How large a list does each frame actually need?

Most frames decode correctly with L = 1; only a small tail needs the full
list.  That skew is what makes input-adaptive list sizing pay off.  The
second half shows the signature the selector keys on: frames that need a
large list have more low-magnitude channel LLRs.
"""

import numpy as np

from idascl import (ChannelParams, CrcSpec, PolarCodeSpec,
                    build_min_list_histogram, profile_llr_distribution)

spec = PolarCodeSpec.construct(128, 66, 0.5, CrcSpec(2, 0x3))
params = ChannelParams(3.25, 0.5)

hist = build_min_list_histogram(spec, params, frames=5000, seed=0, l_high=32)
print("minimum required list size over 5000 frames:")
for key, count, pct in hist.rows():
    print(f"  L={key}: {count:5d}  ({pct:.2f}%)")

grid = np.array([0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0])
prof = profile_llr_distribution(spec, params, 2000, grid, seed=0, l_high=32)
print("\nmean number of |LLR| < m, by required list size:")
print("  m:    " + "  ".join(f"{m:5.1f}" for m in grid))
for key in sorted(prof.curves, key=lambda k: (isinstance(k, str), k)):
    curve = prof.curves[key]
    print(f"  L={key!s:>4}: " + "  ".join(f"{v:5.1f}" for v in curve))
