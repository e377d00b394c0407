"""Deterministic random bit streams backed by the SHAKE-256 XOF.

Every randomized operation in this package draws from a ``RandomStream``:
the output of SHAKE-256 applied to a 32-byte seed, consumed left to right
as a bit stream.  Bit ``j`` of the stream is bit ``j mod 8`` of output
byte ``j // 8`` (little-endian within each byte), matching the bit-packing
convention used everywhere else in the package.

Two streams with the same seed produce identical draws on every platform,
which is what makes key generation, encryption, decoding experiments and
attack demos reproducible from a single hex seed.
"""

from __future__ import annotations

import hashlib

SEED_BYTES = 32


class RandomStream:
    """Sequential bit reader over the SHAKE-256 output of a 32-byte seed."""

    def __init__(self, seed: bytes):
        if not isinstance(seed, (bytes, bytearray)) or len(seed) != SEED_BYTES:
            raise ValueError(f"seed must be exactly {SEED_BYTES} bytes")
        self.seed = bytes(seed)
        self._buf = b""
        self._pos = 0  # bits consumed so far

    def _ensure_bits(self, nbits: int) -> None:
        need = (self._pos + nbits + 7) // 8
        if need > len(self._buf):
            # SHAKE output is prefix-stable, so re-squeezing a longer digest
            # keeps all previously consumed bits identical.  Grow
            # geometrically to keep total work linear in bits consumed.
            self._buf = hashlib.shake_256(self.seed).digest(max(64, 2 * need))

    def take_bits(self, nbits: int) -> int:
        """Return the next ``nbits`` bits as an int (bit i at weight 2**i)."""
        if nbits < 0:
            raise ValueError("bit count must be nonnegative")
        if nbits == 0:
            return 0
        self._ensure_bits(nbits)
        start = self._pos
        self._pos += nbits
        first, last = start // 8, (start + nbits - 1) // 8
        chunk = int.from_bytes(self._buf[first : last + 1], "little")
        return (chunk >> (start % 8)) & ((1 << nbits) - 1)

    def take_bytes(self, nbytes: int) -> bytes:
        return self.take_bits(8 * nbytes).to_bytes(nbytes, "little")

    def randbelow(self, bound: int) -> int:
        """Uniform draw from [0, bound) by rejection on bit_length-sized candidates."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        nbits = (bound - 1).bit_length()
        while True:
            candidate = self.take_bits(nbits)
            if candidate < bound:
                return candidate

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle driven by this stream."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_substream_seed(seed: bytes, index: int) -> bytes:
    """Seed for independent sub-stream ``index`` of a master seed.

    Defined as SHAKE-256(seed || index as 8-byte little-endian), 32 bytes.
    Work units (e.g. Monte-Carlo trials) seeded this way are independent of
    how they are batched across processes.
    """
    if len(seed) != SEED_BYTES:
        raise ValueError(f"seed must be exactly {SEED_BYTES} bytes")
    if index < 0:
        raise ValueError("index must be nonnegative")
    return hashlib.shake_256(seed + index.to_bytes(8, "little")).digest(SEED_BYTES)


def substream(seed: bytes, index: int) -> RandomStream:
    return RandomStream(derive_substream_seed(seed, index))
