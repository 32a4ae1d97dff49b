"""Pre-decoding list-size selection from the channel LLR distribution.

A schedule is an ordered list of (gamma, phi, list_size) layers plus a
fallback list size.  For each layer, the channel LLRs with magnitude at
most gamma are counted; the first layer whose count is strictly below phi
fires and fixes the list size, otherwise the fallback is used.
"""

import math
from dataclasses import dataclass

import numpy as np

from .decoder import scl_decode


@dataclass(frozen=True)
class Layer:
    gamma: float
    phi: int
    list_size: int


@dataclass(frozen=True)
class ThresholdSchedule:
    layers: tuple
    l_high: int

    def __post_init__(self):
        layers = tuple(
            l if isinstance(l, Layer) else Layer(*l) for l in self.layers
        )
        object.__setattr__(self, "layers", layers)
        if self.l_high < 1 or (self.l_high & (self.l_high - 1)) != 0:
            raise ValueError(f"l_high must be a power of 2, got {self.l_high}")
        prev = 0
        for l in layers:
            if l.gamma < 0 or l.phi < 0:
                raise ValueError("gamma and phi must be non-negative")
            if l.list_size < 1 or (l.list_size & (l.list_size - 1)) != 0:
                raise ValueError(f"layer list size {l.list_size} not a power of 2")
            if l.list_size <= prev:
                raise ValueError("layer list sizes must be strictly increasing")
            if l.list_size >= self.l_high:
                raise ValueError("layer list sizes must be below l_high")
            prev = l.list_size

    @classmethod
    def single(cls, gamma, phi, l_low, l_high):
        return cls((Layer(gamma, phi, l_low),), l_high)


FALLBACK = -1  # layer_index sentinel when no layer fires


@dataclass(frozen=True)
class SelectionOutcome:
    chosen_list_size: int
    layer_index: int
    small_llr_counts: tuple


def count_small_llrs(y, gamma):
    """Number of channel LLRs with magnitude <= gamma (boundary inclusive)."""
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    return int((np.abs(np.asarray(y)) <= gamma).sum())


def select_list_size(y, schedule):
    """First-firing-layer selection; layers after a hit are not consulted."""
    counts = []
    for idx, layer in enumerate(schedule.layers):
        c = count_small_llrs(y, layer.gamma)
        counts.append(c)
        if c < layer.phi:
            return SelectionOutcome(layer.list_size, idx, tuple(counts))
    return SelectionOutcome(schedule.l_high, FALLBACK, tuple(counts))


def ida_scl_decode(spec, y, schedule):
    """Select a list size from the LLR distribution, then list-decode."""
    outcome = select_list_size(y, schedule)
    return scl_decode(spec, y, outcome.chosen_list_size), outcome


def complexity_single_layer(delta, l_low, l_high):
    """Active-path percentage when a fraction delta uses l_low."""
    if not (0.0 <= delta <= 1.0):
        raise ValueError(f"delta must be in [0, 1], got {delta}")
    if l_low > l_high:
        raise ValueError("l_low must not exceed l_high")
    return 100.0 * (delta * l_low + (1.0 - delta) * l_high) / l_high


def complexity_multi_layer(deltas, l_high):
    """Active-path percentage with per-power-of-2 selection fractions.

    deltas[i] is the fraction of frames decoded with list size 2**i, for
    i = 0 .. log2(l_high); the last index is the fallback fraction.
    """
    deltas = np.asarray(deltas, dtype=np.float64)
    n = int(math.log2(l_high))
    if deltas.shape != (n + 1,):
        raise ValueError(f"expected {n + 1} fractions, got {deltas.shape}")
    if (deltas < 0).any() or (deltas > 1).any() or abs(deltas.sum() - 1.0) > 1e-9:
        raise ValueError("fractions must lie in [0, 1] and sum to 1")
    sizes = 2.0 ** np.arange(n + 1)
    return float(100.0 * (deltas * sizes).sum() / l_high)
