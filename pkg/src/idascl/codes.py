"""Polar code definition, encoding, and the GF(2) polar transform."""

from dataclasses import dataclass, field

import numpy as np

from .construction import construct_frozen_set
from .crc import CrcSpec, crc_compute, crc_matrix


def polar_transform(bits):
    """x = u . T_N over GF(2), T_N the n-fold Kronecker power of [[1,0],[1,1]].

    Natural (non-bit-reversed) ordering; self-inverse.
    """
    x = np.array(bits, dtype=np.uint8)
    n = x.shape[-1]
    if n < 1 or (n & (n - 1)) != 0:
        raise ValueError(f"length must be a power of 2, got {n}")
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            x[..., start : start + h] ^= x[..., start + h : start + 2 * h]
        h *= 2
    return x


@dataclass(frozen=True, eq=False)
class PolarCodeSpec:
    """Static definition of one code: length, dimension, frozen set, CRC.

    k_bits counts the CRC bits, so the channel rate is exactly K/N and the
    payload carries k_bits - crc.width bits.
    """

    n_bits: int
    k_bits: int
    frozen_mask: np.ndarray
    crc: CrcSpec | None = None
    design_sigma: float | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n, k = self.n_bits, self.k_bits
        if n < 2 or (n & (n - 1)) != 0:
            raise ValueError(f"N must be a power of 2 >= 2, got {n}")
        if not (0 < k <= n):
            raise ValueError(f"K must satisfy 0 < K <= N, got {k}")
        mask = np.asarray(self.frozen_mask, dtype=bool)
        object.__setattr__(self, "frozen_mask", mask)
        if mask.shape != (n,):
            raise ValueError("frozen_mask length must equal N")
        if int((~mask).sum()) != k:
            raise ValueError("frozen_mask must leave exactly K positions open")
        if self.crc is not None and self.crc.width >= k:
            raise ValueError("CRC width must be smaller than K")

    @classmethod
    def construct(cls, n_bits, k_bits, design_sigma=0.5, crc=None):
        """Build spec with a GA frozen set designed at design_sigma."""
        mask = construct_frozen_set(n_bits, k_bits, design_sigma)
        return cls(n_bits, k_bits, mask, crc, design_sigma)

    @property
    def rate(self):
        return self.k_bits / self.n_bits

    @property
    def payload_len(self):
        return self.k_bits - (self.crc.width if self.crc else 0)

    @property
    def info_positions(self):
        if "info_pos" not in self._cache:
            self._cache["info_pos"] = np.flatnonzero(~self.frozen_mask)
        return self._cache["info_pos"]

    @property
    def crc_check_matrix(self):
        """Matrix M with (info_bits @ M) % 2 == 0 iff the CRC verifies."""
        if self.crc is None:
            return None
        if "crc_full" not in self._cache:
            # remainder of the full K-bit word (payload || crc); zero iff valid
            self._cache["crc_full"] = crc_matrix(self.crc, self.k_bits)
        return self._cache["crc_full"]

    def frozen_indices(self):
        """Sorted frozen positions, for export and cross-checks."""
        return np.flatnonzero(self.frozen_mask)


def build_input_vector(spec, payload):
    """Scatter payload (plus CRC if configured) into the non-frozen slots."""
    payload = np.asarray(payload, dtype=np.uint8)
    if payload.shape != (spec.payload_len,):
        raise ValueError(
            f"payload must have {spec.payload_len} bits, got {payload.shape}"
        )
    if spec.crc is not None:
        word = np.concatenate([payload, crc_compute(spec.crc, payload)])
    else:
        word = payload
    u = np.zeros(spec.n_bits, dtype=np.uint8)
    u[spec.info_positions] = word
    return u


def encode(spec, payload):
    """Length-N codeword for a K-C bit payload."""
    return polar_transform(build_input_vector(spec, payload))
