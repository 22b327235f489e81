import pytest

from qubitkit import otp
from qubitkit.errors import KeyTooShortError


def test_text_round_trip():
    for text in ("A", "hi", "quantum", "ñandú ✓"):
        assert otp.bits_to_text(otp.text_to_bits(text)) == text


def test_bit_expansion_is_msb_first():
    assert otp.text_to_bits("A") == (0, 1, 0, 0, 0, 0, 0, 1)  # 0x41


def test_bits_to_text_needs_whole_bytes():
    with pytest.raises(ValueError):
        otp.bits_to_text((1, 0, 1))


def test_known_xor_vector():
    assert otp.xor_bits((1, 0, 1, 0), (1, 1, 0, 0)) == (0, 1, 1, 0)


def test_encrypt_decrypt_round_trip_for_all_long_enough_keys():
    message = (1, 0, 1, 1, 0)
    for key_len in (5, 6, 7):
        for value in range(2**key_len):
            key = tuple((value >> i) & 1 for i in range(key_len))
            assert otp.decrypt(otp.encrypt(message, key), key) == message


def test_short_key_rejected():
    with pytest.raises(KeyTooShortError):
        otp.encrypt((1, 0, 1), (1, 0))
