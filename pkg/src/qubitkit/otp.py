"""One-time-pad XOR cipher and text/bit conversions.

Messages are UTF-8; each byte expands to eight bits most-significant
bit first, so "A" (0x41) becomes (0,1,0,0,0,0,0,1).
"""

from __future__ import annotations

from .errors import KeyTooShortError

Bits = tuple[int, ...]


def text_to_bits(text: str) -> Bits:
    data = text.encode("utf-8")
    return tuple((byte >> (7 - i)) & 1 for byte in data for i in range(8))


def bits_to_text(bits: Bits) -> str:
    if len(bits) % 8:
        raise ValueError(f"bit count {len(bits)} is not a whole number of bytes")
    data = bytes(
        sum(bit << (7 - i) for i, bit in enumerate(bits[k : k + 8]))
        for k in range(0, len(bits), 8)
    )
    return data.decode("utf-8")


def xor_bits(message: Bits, key: Bits) -> Bits:
    """One-time pad: XOR with the first len(message) key bits.

    Encryption and decryption are the same operation.
    """
    if len(key) < len(message):
        raise KeyTooShortError(
            f"key has {len(key)} bits, message needs {len(message)}"
        )
    return tuple(m ^ k for m, k in zip(message, key))


encrypt = xor_bits
decrypt = xor_bits
