"""Portable seeded randomness.

Every stochastic choice in this package (splits, bootstraps, crossover,
weight init, epoch shuffles) flows through SplitMix64 so that a seed
reproduces the identical byte-for-byte result on any platform and any
Python version. The standard library's ``random`` module makes no such
cross-version guarantee, hence this small generator.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """SplitMix64 output permutation of a 64-bit value."""
    x &= MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK64
    x ^= x >> 31
    return x


def derive_seed(*components: int) -> int:
    """Hash an ordered tuple of integers into one 64-bit seed.

    Absorbs each component into the running state with the SplitMix64
    permutation; order-sensitive, so (a, b) and (b, a) derive distinct
    seeds. Used to give every trial an independently replayable seed.
    """
    acc = 0
    for c in components:
        acc = mix64(((acc ^ (c & MASK64)) + _GOLDEN) & MASK64)
    return acc


class SplitMix64:
    """SplitMix64 sequence generator (Steele/Lea/Flood construction)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & MASK64
        return mix64(self._state)

    def next_float(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def randbelow(self, bound: int) -> int:
        """Unbiased integer in [0, bound) via rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_uint64()
            if u < threshold:
                return u % bound

    def shuffle(self, items) -> None:
        """In-place Fisher-Yates shuffle, walking from the high end."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), returned sorted ascending.

        Runs the high-end Fisher-Yates walk for k steps and takes the
        tail, so it consumes exactly k draws.
        """
        if not 0 < k <= n:
            raise ValueError("need 0 < k <= n")
        items = list(range(n))
        for i in range(n - 1, n - 1 - k, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
        return sorted(items[n - k:])
