"""BPSK over AWGN with channel LLR output and reproducible randomness."""

import math
from dataclasses import dataclass

import numpy as np


def ebn0_to_sigma(ebn0_db, rate):
    """Noise standard deviation for a given Eb/N0 (dB) and code rate."""
    if not (0 < rate <= 1):
        raise ValueError(f"rate must be in (0, 1], got {rate}")
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


@dataclass(frozen=True)
class ChannelParams:
    """Operating point: Eb/N0 in dB and the code rate used for conversion."""

    ebn0_db: float
    rate: float

    @property
    def sigma(self):
        return ebn0_to_sigma(self.ebn0_db, self.rate)


def transmit(codeword, params, noise_source):
    """Channel LLRs y = 2/sigma^2 * (1 - 2x + E), E ~ N(0, sigma^2).

    Positive LLR favours bit 0.  noise_source is a numpy Generator (or any
    object with a matching ``normal``); determinism is the caller's
    responsibility via seeding.
    """
    x = np.asarray(codeword, dtype=np.float64)
    sigma = params.sigma
    e = noise_source.normal(0.0, sigma, x.size)
    return (2.0 / sigma**2) * (1.0 - 2.0 * x + e)


def frame_rng(master_seed, *indices):
    """Independent generator for one Monte Carlo frame.

    Derived from (master seed, *indices) so frames can be evaluated in any
    order, on any number of workers, with identical results.
    """
    return np.random.default_rng([int(master_seed), *[int(i) for i in indices]])
