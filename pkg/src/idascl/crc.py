"""CRC attachment and verification over GF(2).

Convention: the generator is x^C plus the terms encoded by the hex value
(the implicit leading coefficient is not stored).  Zero initial register,
no input/output reflection, no final XOR.  The remainder of message*x^C
divided by the generator is appended MSB-first, so that the concatenation
message || crc is divisible by the generator.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CrcSpec:
    """CRC descriptor: width C and generator coefficients below x^C."""

    width: int
    polynomial: int

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"CRC width must be positive, got {self.width}")
        if not (0 <= self.polynomial < (1 << self.width)):
            raise ValueError(
                f"polynomial 0x{self.polynomial:x} does not fit in {self.width} bits"
            )


# Polynomials used throughout: 0x3 (C=2 and C=3), 0x15 (C=5),
# 0xD5 (C=8), 0x80F (C=12).
STANDARD_CRCS = {
    2: CrcSpec(2, 0x3),
    3: CrcSpec(3, 0x3),
    5: CrcSpec(5, 0x15),
    8: CrcSpec(8, 0xD5),
    12: CrcSpec(12, 0x80F),
}


def _bit_contributions(crc, length):
    """Remainder of x^(length-1-i+C) mod generator for each position i.

    Each remainder is packed into an int; position 0 is the first
    (highest-degree) message bit.
    """
    mask = (1 << crc.width) - 1
    powers = []
    r = 1  # x^0
    for _ in range(crc.width):  # advance to x^C mod g
        r = ((r << 1) & mask) ^ (crc.polynomial if r >> (crc.width - 1) & 1 else 0)
    for _ in range(length):
        powers.append(r)
        r = ((r << 1) & mask) ^ (crc.polynomial if r >> (crc.width - 1) & 1 else 0)
    powers.reverse()
    return powers


def crc_matrix(crc, length):
    """GF(2) matrix M of shape (length, C): remainder = bits @ M mod 2.

    Cached per (crc, length) by callers that sit in hot loops.
    """
    powers = _bit_contributions(crc, length)
    out = np.zeros((length, crc.width), dtype=np.uint8)
    for i, p in enumerate(powers):
        for j in range(crc.width):
            out[i, j] = (p >> (crc.width - 1 - j)) & 1
    return out


def crc_compute(crc, message):
    """C-bit remainder of message * x^C modulo the generator, MSB first."""
    message = np.asarray(message, dtype=np.uint8)
    if message.size == 0:
        raise ValueError("message must be non-empty")
    m = crc_matrix(crc, message.size)
    return (message @ m) % 2


def crc_verify(crc, message_with_crc):
    """True iff the trailing C bits are the CRC of the leading bits."""
    message_with_crc = np.asarray(message_with_crc, dtype=np.uint8)
    if message_with_crc.size <= crc.width:
        raise ValueError(
            f"need more than {crc.width} bits, got {message_with_crc.size}"
        )
    expected = crc_compute(crc, message_with_crc[: -crc.width])
    return bool(np.array_equal(expected, message_with_crc[-crc.width :]))
