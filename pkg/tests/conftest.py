"""Shared independent oracles for the test suite.

Everything here is deliberately written without reusing library internals:
naive matrix transforms, shift-register CRC division, recursive SC, and
exhaustive maximum-likelihood enumeration.
"""

import numpy as np
import pytest


def kronecker_transform_matrix(n_bits):
    """T_N built explicitly by repeated Kronecker products."""
    t = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    m = np.array([[1]], dtype=np.uint8)
    while m.shape[0] < n_bits:
        m = np.kron(t, m)
    return m


def transform_oracle(bits):
    """x = u . T_N via the naive O(N^2) matrix product."""
    bits = np.asarray(bits, dtype=np.uint8)
    return (bits @ kronecker_transform_matrix(bits.size)) % 2


def crc_shift_register(width, polynomial, message):
    """Bitwise long division of message * x^C by the generator."""
    reg = 0
    top = 1 << (width - 1)
    mask = (1 << width) - 1
    for bit in list(message) + [0] * width:
        carry = (reg & top) != 0
        reg = ((reg << 1) & mask) | int(bit)
        if carry:
            reg ^= polynomial | (1 << width)  # including the leading term
            reg &= mask
    return np.array([(reg >> (width - 1 - j)) & 1 for j in range(width)],
                    dtype=np.uint8)


def sc_reference(y, frozen):
    """Recursive min-sum SC with ties to 0, natural ordering."""
    y = np.asarray(y, dtype=np.float64)
    frozen = np.asarray(frozen, dtype=bool)

    def rec(llr, fr):
        if llr.size == 1:
            if fr[0]:
                return np.array([0], dtype=np.uint8)
            return np.array([1 if llr[0] < 0 else 0], dtype=np.uint8)
        h = llr.size // 2
        a, b = llr[:h], llr[h:]
        sgn = np.where((a < 0) != (b < 0), -1.0, 1.0)
        f = sgn * np.minimum(np.abs(a), np.abs(b))
        ul = rec(f, fr[:h])
        cl = transform_oracle(ul)
        g = b + (1.0 - 2.0 * cl) * a
        ur = rec(g, fr[h:])
        return np.concatenate([ul, ur])

    return rec(y, frozen)


def exact_path_metric_oracle(y, u):
    """Penalty the list decoder accrues when forced along input vector u."""
    y = np.asarray(y, dtype=np.float64)
    u = np.asarray(u, dtype=np.uint8)

    def rec(llr, bits):
        if llr.size == 1:
            lam = float(llr[0])
            bit = int(bits[0])
            if lam == 0.0:
                return 0.0
            return abs(lam) if (1 - 2 * bit) * lam < 0 else 0.0
        h = llr.size // 2
        a, b = llr[:h], llr[h:]
        sgn = np.where((a < 0) != (b < 0), -1.0, 1.0)
        f = sgn * np.minimum(np.abs(a), np.abs(b))
        left = rec(f, bits[:h])
        cl = transform_oracle(bits[:h])
        g = b + (1.0 - 2.0 * cl) * a
        return left + rec(g, bits[h:])

    return rec(y, u)


def ml_with_crc_oracle(spec, y):
    """Exhaustive search: lowest exact-metric input among valid payloads.

    Returns (payload, metric).  Every enumerated candidate carries a valid
    CRC by construction.
    """
    from idascl.codes import build_input_vector

    best = None
    k = spec.payload_len
    for v in range(2**k):
        payload = np.array([(v >> (k - 1 - j)) & 1 for j in range(k)],
                           dtype=np.uint8)
        u = build_input_vector(spec, payload)
        metric = exact_path_metric_oracle(y, u)
        if best is None or metric < best[1]:
            best = (payload, metric)
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
