"""Deterministic, portable random number generation.

All in-game randomness (dealing, bag draws, Center initialization) flows
through a single ``GameRng`` so that a seed fully determines play and a
logged game replays bit-exactly on any platform.

The generator is xoshiro256** (Blackman/Vigna), seeded through splitmix64.
It is used instead of the stdlib Mersenne Twister because its state is four
64-bit words that serialize trivially, and because nothing about its output
depends on the Python version.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 step; returns the mixed output for state ``x + GAMMA``."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(base: int, *salts: int) -> int:
    """Derive a child seed from ``base`` and integer salts.

    Used to give each tournament game, and each policy within a game, an
    independent deterministic stream.
    """
    x = base & _MASK64
    out = splitmix64(x)
    for salt in salts:
        out = splitmix64((out ^ (salt & _MASK64)) & _MASK64)
    return out


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class GameRng:
    """xoshiro256** with unbiased bounded sampling."""

    __slots__ = ("_s",)

    def __init__(self, seed: int):
        if not 0 <= seed < (1 << 64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        s = []
        acc = seed
        for _ in range(4):
            acc = (acc + 0x9E3779B97F4A7C15) & _MASK64
            z = acc
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
            s.append(z ^ (z >> 31))
        if not any(s):  # all-zero state is the one forbidden seed
            s[0] = 1
        self._s = s

    def next64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling (no modulo bias)."""
        if n <= 0:
            raise ValueError("randbelow() requires n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next64()
            if r < limit:
                return r % n

    def choice(self, seq):
        if not seq:
            raise ValueError("choice() on empty sequence")
        return seq[self.randbelow(len(seq))]

    def chance(self, p: float) -> bool:
        """True with probability ``p`` (53-bit resolution)."""
        return (self.next64() >> 11) < p * (1 << 53)

    def state(self) -> str:
        """Hex-encoded 4x64-bit state, for snapshots."""
        return "".join(f"{w:016x}" for w in self._s)

    @classmethod
    def from_state(cls, state: str) -> "GameRng":
        if len(state) != 64:
            raise ValueError("state must be 64 hex characters")
        rng = cls.__new__(cls)
        rng._s = [int(state[i * 16:(i + 1) * 16], 16) for i in range(4)]
        return rng

    def clone(self) -> "GameRng":
        rng = GameRng.__new__(GameRng)
        rng._s = list(self._s)
        return rng
