"""Compare SC and CRC-aided SCL block error rates over an Eb/N0 sweep.

Uses modest frame counts so the script finishes in about a minute; bump
max_frames for publication-quality curves.
"""

from idascl import CrcSpec, PolarCodeSpec, SimConfig, run_sweep

spec = PolarCodeSpec.construct(128, 66, 0.5, CrcSpec(2, 0x3))

for mode, list_size in (("sc", 1), ("scl", 8)):
    config = SimConfig(
        spec=spec,
        mode=mode,
        list_size=list_size,
        ebn0_start=1.5,
        ebn0_stop=3.0,
        ebn0_step=0.5,
        max_frames=20000,
        min_block_errors=100,
        seed=1,
    )
    label = "SC" if mode == "sc" else f"SCL(L={list_size})"
    print(f"\n{label}")
    for rec in run_sweep(config):
        print(f"  Eb/N0 {rec.ebn0_db:4.2f} dB  BLER {rec.bler:.3e} "
              f"({rec.block_errors}/{rec.frames})  {rec.seconds:.1f}s")
