"""Command-line driver: construct, simulate, min-list, profile-llr, tune."""

import argparse
import math
import os
import sys

import numpy as np

from .channel import ChannelParams
from .codes import PolarCodeSpec
from .configio import (load_keyvalues, schedule_from_config, spec_from_config,
                       spec_to_config)
from .crc import CrcSpec
from .harness import SimConfig, run_sweep
from .selector import ThresholdSchedule
from .tuning import (build_min_list_histogram, profile_llr_distribution,
                     tune_multi_layer, tune_single_layer)


def _add_common(p):
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--frames", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None, help="key = value config file")


def _load_config(args):
    if args.config is None:
        return {}
    if not os.path.exists(args.config):
        raise FileNotFoundError(f"config file not found: {args.config}")
    return load_keyvalues(args.config)


def _merged(args, values, key, cast, default=None):
    """Flag wins over config file, config file over default."""
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return flag
    if key in values:
        return cast(values[key])
    return default


def _spec_from(args, values):
    if getattr(args, "n", None) is not None:
        crc = None
        if args.crc_width is not None:
            crc = CrcSpec(args.crc_width, int(args.crc_poly, 16))
        return PolarCodeSpec.construct(args.n, args.k, args.design_sigma, crc)
    if "n" in values:
        return spec_from_config(values)
    raise ValueError("no code spec given (use --config or --n/--k)")


def _add_spec_flags(p):
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--design-sigma", type=float, default=0.5)
    p.add_argument("--crc-width", type=int, default=None)
    p.add_argument("--crc-poly", default=None, help="hex, e.g. 0x3")


def cmd_construct(args):
    values = _load_config(args)
    spec = _spec_from(args, values)
    indices = " ".join(str(i) for i in spec.frozen_indices())
    print(indices)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(spec_to_config(spec))
            fh.write(f"# frozen = {indices}\n")
    return 0


def cmd_simulate(args):
    values = _load_config(args)
    spec = _spec_from(args, values)
    schedule = schedule_from_config(values)
    if args.l_high is not None and args.gamma is not None:
        schedule = ThresholdSchedule.single(args.gamma, args.phi,
                                            args.l_low, args.l_high)
    config = SimConfig(
        spec=spec,
        mode=_merged(args, values, "mode", str, "scl"),
        list_size=_merged(args, values, "list_size", int, 1),
        schedule=schedule,
        ebn0_start=_merged(args, values, "ebn0_start", float),
        ebn0_stop=_merged(args, values, "ebn0_stop", float),
        ebn0_step=_merged(args, values, "ebn0_step", float, 0.5),
        max_frames=_merged(args, values, "frames", int, 10**6),
        min_block_errors=_merged(args, values, "min_block_errors", int, 500),
        seed=_merged(args, values, "seed", int, 0),
        workers=_merged(args, values, "workers", int, 1),
        out_path=_merged(args, values, "out", str),
        noiseless=args.noiseless,
    )
    records = run_sweep(config)
    for rec in records:
        print(f"Eb/N0 {rec.ebn0_db:g} dB: BLER {rec.bler:.3e} "
              f"({rec.block_errors}/{rec.frames}), "
              f"complexity {rec.complexity_pct:.2f}%")
    return 0


def cmd_min_list(args):
    values = _load_config(args)
    spec = _spec_from(args, values)
    ebn0 = _merged(args, values, "ebn0", float)
    frames = _merged(args, values, "frames", int, 10**4)
    seed = _merged(args, values, "seed", int, 0)
    l_high = _merged(args, values, "l_high", int, 32)
    params = ChannelParams(ebn0, spec.rate)
    hist = build_min_list_histogram(spec, params, frames, seed, l_high)
    lines = [
        f"# min-list histogram: N={spec.n_bits} K={spec.k_bits} "
        f"crc={spec.crc} ebn0_db={ebn0:g} l_high={l_high} "
        f"frames={frames} seed={seed}",
        "list_size,count,percent",
    ]
    for key, cnt, pct in hist.rows():
        lines.append(f"{key},{cnt},{pct:.6g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_profile_llr(args):
    values = _load_config(args)
    spec = _spec_from(args, values)
    ebn0 = _merged(args, values, "ebn0", float)
    frames = _merged(args, values, "frames", int, 10**4)
    seed = _merged(args, values, "seed", int, 0)
    l_high = _merged(args, values, "l_high", int, 32)
    grid = np.array([float(v) for v in args.grid.split(",")])
    params = ChannelParams(ebn0, spec.rate)
    prof = profile_llr_distribution(spec, params, frames, grid, seed, l_high)
    lines = [
        f"# llr profile: N={spec.n_bits} K={spec.k_bits} ebn0_db={ebn0:g} "
        f"l_high={l_high} frames={frames} seed={seed}",
        "bucket,magnitude,mean_count",
    ]
    for key in sorted(prof.curves, key=lambda k: (isinstance(k, str), k)):
        for m, v in zip(prof.magnitude_grid, prof.curves[key]):
            lines.append(f"{key},{m:g},{v:.6g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_tune(args):
    values = _load_config(args)
    spec = _spec_from(args, values)
    ebn0 = _merged(args, values, "ebn0", float)
    frames = _merged(args, values, "frames", int, 10**5)
    seed = _merged(args, values, "seed", int, 0)
    l_high = _merged(args, values, "l_high", int, 32)
    params = ChannelParams(ebn0, spec.rate)

    if args.layers == "single":
        res = tune_single_layer(spec, params, args.l_low, l_high,
                                target_bler=args.target_bler, frames=frames,
                                seed=seed)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(f"# tuning surface: {res.surface.meta} "
                         f"target_bler={res.surface.target_bler:g}\n")
                fh.write("gamma,phi,bler,complexity_pct,delta\n")
                for row in res.surface.rows():
                    fh.write(",".join(f"{v:g}" for v in row) + "\n")
        if not res.feasible:
            print("infeasible: no (gamma, phi) meets the BLER target")
            return 0
        print(f"gamma={res.gamma:g} phi={res.phi} delta={res.delta:.4f} "
              f"bler={res.bler:.3e} complexity={res.complexity_pct:.2f}%")
        return 0

    # multi-layer: tune each layer's single-layer optimum, then de-rate
    n_layers = int(math.log2(l_high))
    optima = []
    matched = args.target_bler
    for i in range(n_layers):
        r = tune_single_layer(spec, params, 2**i, l_high,
                              target_bler=args.target_bler, frames=frames,
                              seed=seed)
        if not r.feasible:
            print(f"infeasible: no single-layer optimum for L_low=2^{i}")
            return 0
        optima.append((r.gamma, r.phi))
        if matched is None:
            matched = r.surface.target_bler
    res = tune_multi_layer(spec, params, l_high, optima, matched,
                           frames=frames, seed=seed)
    print(f"complexity={res.complexity_pct:.2f}% bler={res.bler:.3e} "
          f"degenerate={res.degenerate}")
    for l in res.schedule.layers:
        print(f"layer gamma={l.gamma:g} phi={l.phi} list_size={l.list_size}")
    if args.out:
        from .configio import schedule_to_config
        with open(args.out, "w") as fh:
            fh.write(schedule_to_config(res.schedule))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="idascl",
                                description="Polar SCL decoding with "
                                "input-distribution-aware list sizing")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("construct", help="emit the frozen index set")
    _add_spec_flags(pc)
    _add_common(pc)
    pc.set_defaults(func=cmd_construct)

    ps = sub.add_parser("simulate", help="run a BLER/complexity sweep")
    _add_spec_flags(ps)
    _add_common(ps)
    ps.add_argument("--mode", default=None,
                    choices=["sc", "scl", "ida-single", "ida-multi"])
    ps.add_argument("--list-size", type=int, default=None)
    ps.add_argument("--ebn0-start", type=float, default=None)
    ps.add_argument("--ebn0-stop", type=float, default=None)
    ps.add_argument("--ebn0-step", type=float, default=None)
    ps.add_argument("--min-block-errors", type=int, default=None)
    ps.add_argument("--gamma", type=float, default=None)
    ps.add_argument("--phi", type=int, default=None)
    ps.add_argument("--l-low", type=int, default=None)
    ps.add_argument("--l-high", type=int, default=None)
    ps.add_argument("--noiseless", action="store_true")
    ps.set_defaults(func=cmd_simulate)

    pm = sub.add_parser("min-list", help="minimum-required-list histogram")
    _add_spec_flags(pm)
    _add_common(pm)
    pm.add_argument("--ebn0", type=float, default=None)
    pm.add_argument("--l-high", type=int, default=None)
    pm.set_defaults(func=cmd_min_list)

    pp = sub.add_parser("profile-llr", help="LLR-magnitude distribution")
    _add_spec_flags(pp)
    _add_common(pp)
    pp.add_argument("--ebn0", type=float, default=None)
    pp.add_argument("--l-high", type=int, default=None)
    pp.add_argument("--grid", default="0.5,1,1.5,2,2.5,3,3.5,4,5,6,8")
    pp.set_defaults(func=cmd_profile_llr)

    pt = sub.add_parser("tune", help="threshold optimization")
    _add_spec_flags(pt)
    _add_common(pt)
    pt.add_argument("--ebn0", type=float, default=None)
    pt.add_argument("--layers", choices=["single", "multi"], default="single")
    pt.add_argument("--l-low", type=int, default=1)
    pt.add_argument("--l-high", type=int, default=None)
    pt.add_argument("--target-bler", type=float, default=None)
    pt.set_defaults(func=cmd_tune)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
