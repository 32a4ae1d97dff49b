"""SC and CRC-aided SCL decoding."""

from dataclasses import dataclass

import numpy as np

from ._kernels import scl_core


@dataclass(frozen=True)
class DecodeResult:
    """Output of one decode: chosen input vector, payload, CRC verdict."""

    u_hat: np.ndarray
    payload: np.ndarray
    crc_pass: bool
    selected_path_metric: float


def path_metric_update(current, leaf_llr, bit):
    """Penalty accumulation: add |llr| when the bit disagrees with its sign.

    sign(0) counts as +1 for decisions, but a zero LLR is uninformative and
    never penalizes either bit.
    """
    if leaf_llr == 0.0:
        return current
    if (1 - 2 * bit) * leaf_llr < 0.0:
        return current + abs(leaf_llr)
    return current


def _run_list(spec, y, list_size, want_trace=False):
    y = np.ascontiguousarray(y, dtype=np.float64)
    if y.shape != (spec.n_bits,):
        raise ValueError(f"LLR vector must have length {spec.n_bits}")
    if list_size < 1:
        raise ValueError(f"list size must be >= 1, got {list_size}")
    frozen = np.ascontiguousarray(spec.frozen_mask, dtype=np.uint8)
    trace = np.empty(spec.n_bits, dtype=np.int64)
    uhat, pm, rank, alive = scl_core(y, frozen, list_size, trace)
    slots = np.flatnonzero(alive)
    if want_trace:
        return uhat, pm, rank, slots, trace
    return uhat, pm, rank, slots


def scl_decode(spec, y, list_size):
    """CRC-aided successive cancellation list decoding.

    Every information leaf splits each surviving path; the L lowest-metric
    paths survive.  The output is the lowest-metric path whose CRC
    verifies, or the overall lowest-metric path (crc_pass False) when none
    does.  Codes without a CRC select purely on metric (crc_pass True).
    """
    uhat, pm, rank, slots = _run_list(spec, y, list_size)
    # metric order with the stable path-id tie rule
    slots = slots[np.lexsort((rank[slots], pm[slots]))]
    info = uhat[slots][:, spec.info_positions]
    chosen = slots[0]
    crc_pass = True
    if spec.crc is not None:
        ok = ((info @ spec.crc_check_matrix) % 2 == 0).all(axis=1)
        hit = np.flatnonzero(ok)
        if hit.size:
            chosen = slots[hit[0]]
        else:
            crc_pass = False
    u_hat = uhat[chosen]
    payload = u_hat[spec.info_positions][: spec.payload_len]
    return DecodeResult(u_hat, payload, crc_pass, float(pm[chosen]))


def sc_decode(spec, y):
    """Plain successive cancellation (a single never-split path)."""
    return scl_decode(spec, y, 1)
