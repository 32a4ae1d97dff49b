"""Flat ``key = value`` config files for code specs, schedules, and runs.

Lines are ``key = value``; ``#`` starts a comment; the ``layer`` key may
repeat, one ``gamma phi list_size`` triple per line.
"""

import numpy as np

from .codes import PolarCodeSpec
from .crc import CrcSpec
from .selector import Layer, ThresholdSchedule


def load_keyvalues(path):
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (part.strip() for part in line.split("=", 1))
            if key == "layer":
                values.setdefault("layer", []).append(val)
            else:
                values[key] = val
    return values


def spec_from_config(values):
    n = int(values["n"])
    k = int(values["k"])
    design_sigma = float(values.get("design_sigma", 0.5))
    crc = None
    if "crc_width" in values:
        crc = CrcSpec(int(values["crc_width"]), int(values["crc_poly_hex"], 16))
    return PolarCodeSpec.construct(n, k, design_sigma, crc)


def spec_to_config(spec):
    lines = [f"n = {spec.n_bits}", f"k = {spec.k_bits}"]
    if spec.crc is not None:
        lines.append(f"crc_width = {spec.crc.width}")
        lines.append(f"crc_poly_hex = 0x{spec.crc.polynomial:x}")
    if spec.design_sigma is not None:
        lines.append(f"design_sigma = {spec.design_sigma:g}")
    return "\n".join(lines) + "\n"


def schedule_from_config(values):
    if "layer" not in values:
        return None
    layers = []
    for entry in values["layer"]:
        parts = entry.replace(",", " ").split()
        if len(parts) != 3:
            raise ValueError(f"layer must be 'gamma phi list_size', got {entry!r}")
        layers.append(Layer(float(parts[0]), int(parts[1]), int(parts[2])))
    return ThresholdSchedule(tuple(layers), int(values["l_high"]))


def schedule_to_config(schedule):
    lines = [f"l_high = {schedule.l_high}"]
    for l in schedule.layers:
        lines.append(f"layer = {l.gamma:g} {l.phi} {l.list_size}")
    return "\n".join(lines) + "\n"
