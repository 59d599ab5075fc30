"""Portable pseudorandom stream for reproducible corpora.

The generator is xorshift64* (Vigna 2016): state update
``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` on 64 bits, output
``x * 0x2545F4914F6CDD1D mod 2**64``.  The initial state is
``splitmix64(seed)``, replaced by 1 if that happens to be zero.  Bounded
integers use rejection sampling on the full 64-bit output, floats take the
top 53 bits.  Any language with 64-bit unsigned arithmetic reproduces the
same stream from the same seed.
"""

from __future__ import annotations

from typing import MutableSequence, Sequence, TypeVar

MASK64 = (1 << 64) - 1
MULTIPLIER = 0x2545F4914F6CDD1D

T = TypeVar("T")


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * MULTIPLIER) & MASK64

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound < 1:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)

    def bernoulli(self, p: float) -> bool:
        return self.uniform() < p

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.below(len(seq))]

    def shuffle(self, seq: MutableSequence) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def permutation(self, n: int) -> list[int]:
        p = list(range(n))
        self.shuffle(p)
        return p
