"""Construct polar codes and look at which bit channels get frozen.

The construction tracks the mean LLR of each synthetic bit channel through
the recursive transform (Gaussian approximation) and freezes the least
reliable positions.
"""

import numpy as np

from idascl import CrcSpec, PolarCodeSpec, construct_frozen_set

# Frozen set for a short rate-1/2 code.
mask = construct_frozen_set(16, 8, design_sigma=0.5)
print("N=16 K=8 frozen positions:", np.flatnonzero(mask).tolist())
print("N=16 K=8 information positions:", np.flatnonzero(~mask).tolist())

# Lower-rate codes freeze a superset of the higher-rate frozen positions:
# the reliability ordering does not depend on K.
for k in (12, 8, 4):
    mask_k = construct_frozen_set(16, k, design_sigma=0.5)
    print(f"K={k:2d} frozen:", np.flatnonzero(mask_k).tolist())

# A full code spec bundles the frozen mask with an outer CRC.  The CRC
# bits count against K, so the payload is K - C bits.
spec = PolarCodeSpec.construct(128, 64, 0.5, CrcSpec(2, 0x3))
print(f"\nN={spec.n_bits} K={spec.k_bits} rate={spec.rate:.3f} "
      f"payload={spec.payload_len} bits")

# Encoding is the binary butterfly transform over the assembled input
# vector (payload + CRC in the information positions, zeros elsewhere).
rng = np.random.default_rng(0)
payload = rng.integers(0, 2, spec.payload_len, dtype=np.uint8)
from idascl import encode

x = encode(spec, payload)
print("codeword weight:", int(x.sum()), "of", spec.n_bits)
