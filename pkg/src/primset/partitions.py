"""Set partitions of ``range(n)`` and their enumeration in restricted-growth order."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Partition:
    """A partition of ``{0, ..., n-1}`` into disjoint nonempty parts.

    Parts are stored as sorted tuples, ordered by their least element, so two
    partitions compare equal exactly when they group the same indices.
    """

    n: int
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        normalized = tuple(sorted((tuple(sorted(p)) for p in self.parts), key=lambda p: p[0] if p else -1))
        seen: set[int] = set()
        for part in normalized:
            if not part:
                raise ValueError("partition parts must be nonempty")
            for x in part:
                if x in seen:
                    raise ValueError(f"index {x} appears in two parts")
                seen.add(x)
        if seen != set(range(self.n)):
            raise ValueError(f"parts do not cover range({self.n})")
        object.__setattr__(self, "parts", normalized)

    @classmethod
    def of(cls, parts: Iterable[Iterable[int]]) -> "Partition":
        parts = [tuple(p) for p in parts]
        return cls(sum(len(p) for p in parts), tuple(parts))

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "Partition":
        blocks: dict[int, list[int]] = {}
        for i, b in enumerate(rgs):
            blocks.setdefault(b, []).append(i)
        return cls(len(rgs), tuple(tuple(v) for v in blocks.values()))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(n, tuple((i,) for i in range(n)))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls(n, (tuple(range(n)),))

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def block_index(self) -> list[int]:
        """``result[x]`` is the index of the part containing ``x``."""
        out = [0] * self.n
        for b, part in enumerate(self.parts):
            for x in part:
                out[x] = b
        return out

    def masks(self) -> list[int]:
        return [sum(1 << x for x in part) for part in self.parts]

    def transversal_count(self) -> int:
        return prod(self.sizes)

    def to_list(self) -> list[list[int]]:
        return [list(p) for p in self.parts]


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Yield every restricted growth string of length ``n`` in lexicographic order.

    Each string ``a`` has ``a[0] == 0`` and ``a[i] <= 1 + max(a[:i])``; they are
    in bijection with set partitions of ``range(n)``.
    """
    if n == 0:
        yield ()
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[:i+1])
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] > m[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def set_partitions(n: int) -> Iterator[Partition]:
    for rgs in restricted_growth_strings(n):
        yield Partition.from_rgs(rgs)


def set_partitions_coarsest_first(n: int) -> Iterator[Partition]:
    """All partitions of ``range(n)``, by ascending number of parts, RGS order within."""
    by_k: dict[int, list[tuple[int, ...]]] = {}
    for rgs in restricted_growth_strings(n):
        by_k.setdefault(max(rgs, default=-1) + 1, []).append(rgs)
    for k in sorted(by_k):
        for rgs in by_k[k]:
            yield Partition.from_rgs(rgs)
