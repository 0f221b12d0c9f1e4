"""Public coins: a Fiat-Shamir transcript, or a seeded generator for interactive runs.

Both expose the same three calls, so prover, verifier and simulator share one
query routine.
"""

from __future__ import annotations

import hashlib
import random

CHALLENGE_TAG = b"\x02"
INDEX_TAG = b"\x03"
INDEX_BYTES = 16


class Transcript:
    """Running SHA-256 state.

    ``observe`` absorbs 0x02 || root; ``field_element`` squeezes 2*byte_len
    bytes and reduces them mod p (bias at most p / 2^(16*byte_len));
    ``index`` absorbs 0x03 || counter and reduces 16 squeezed bytes mod bound.
    """

    def __init__(self, params_digest: bytes):
        self.state = hashlib.sha256(b"flowering-transcript" + params_digest).digest()
        self.counter = 0

    def _squeeze(self, nbytes: int) -> bytes:
        out = b""
        block = 0
        while len(out) < nbytes:
            out += hashlib.sha256(self.state + block.to_bytes(4, "little")).digest()
            block += 1
        return out[:nbytes]

    def observe(self, root: bytes) -> None:
        self.state = hashlib.sha256(self.state + CHALLENGE_TAG + root).digest()

    def field_element(self, modulus: int) -> int:
        byte_len = max(1, ((modulus - 1).bit_length() + 7) // 8)
        value = int.from_bytes(self._squeeze(2 * byte_len), "little") % modulus
        self.state = hashlib.sha256(self.state + CHALLENGE_TAG).digest()
        return value

    def index(self, bound: int) -> int:
        if bound < 1:
            raise ValueError("index bound must be positive")
        self.state = hashlib.sha256(self.state + INDEX_TAG + self.counter.to_bytes(8, "little")).digest()
        self.counter += 1
        return int.from_bytes(self.state[:INDEX_BYTES], "little") % bound


class RandomCoins:
    """Interactive-mode verifier randomness from a seeded generator."""

    def __init__(self, source: random.Random):
        self.source = source

    def observe(self, root: bytes) -> None:
        pass

    def field_element(self, modulus: int) -> int:
        return self.source.randrange(modulus)

    def index(self, bound: int) -> int:
        return self.source.randrange(bound)


def partial_shuffle(coins, n: int, t: int) -> list[int]:
    """First t entries of a Fisher-Yates shuffle of range(n): a uniform t-subset."""
    if not 1 <= t <= n:
        raise ValueError(f"need 1 <= t <= n, got t={t}, n={n}")
    perm = list(range(n))
    for i in range(t):
        j = i + coins.index(n - i)
        perm[i], perm[j] = perm[j], perm[i]
    return perm[:t]
