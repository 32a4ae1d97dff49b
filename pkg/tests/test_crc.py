"""CRC tests against a shift-register long-division oracle."""

import numpy as np
import pytest

from idascl.crc import STANDARD_CRCS, CrcSpec, crc_compute, crc_verify

from conftest import crc_shift_register


def test_zero_message_zero_remainder():
    for crc in STANDARD_CRCS.values():
        assert not crc_compute(crc, np.zeros(17, dtype=np.uint8)).any()


def test_small_example_matches_oracle():
    crc = CrcSpec(2, 0x3)
    msg = [1, 0, 1]
    assert np.array_equal(crc_compute(crc, msg),
                          crc_shift_register(2, 0x3, msg))


@pytest.mark.parametrize("crc", list(STANDARD_CRCS.values()),
                         ids=lambda c: f"C{c.width}")
def test_random_messages_match_oracle(crc, rng):
    for _ in range(200):
        msg = rng.integers(0, 2, rng.integers(1, 40))
        assert np.array_equal(crc_compute(crc, msg),
                              crc_shift_register(crc.width, crc.polynomial, msg))


@pytest.mark.parametrize("crc", list(STANDARD_CRCS.values()),
                         ids=lambda c: f"C{c.width}")
def test_roundtrip(crc, rng):
    for _ in range(300):
        msg = rng.integers(0, 2, rng.integers(1, 64), dtype=np.uint8)
        word = np.concatenate([msg, crc_compute(crc, msg)])
        assert crc_verify(crc, word)


def test_single_bit_flips_detected_c8():
    crc = STANDARD_CRCS[8]
    rng = np.random.default_rng(3)
    msg = rng.integers(0, 2, 16, dtype=np.uint8)
    word = np.concatenate([msg, crc_compute(crc, msg)])
    for i in range(word.size):
        flipped = word.copy()
        flipped[i] ^= 1
        assert not crc_verify(crc, flipped)


def test_boundary_length_c_plus_one():
    crc = CrcSpec(2, 0x3)
    assert crc_verify(crc, [0, 0, 0])  # empty-ish payload, valid zero CRC
    with pytest.raises(ValueError):
        crc_verify(crc, [0, 0])


def test_polynomial_validation():
    with pytest.raises(ValueError):
        CrcSpec(2, 0x7)
    with pytest.raises(ValueError):
        CrcSpec(0, 0x1)
