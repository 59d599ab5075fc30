"""Seeded instance families."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from itertools import islice
from typing import Iterator

from .automata import PartialAutomaton, cerny, cerny_plus_identity, is_synchronizing
from .boolmat import BoolMatrix, MatrixSet, is_nz
from .io import Instance
from .rng import XorShift64Star

MAX_RESAMPLES = 100_000


class Family(str, Enum):
    RANDOM_NZ_SET = "RANDOM_NZ_SET"
    RANDOM_PARTIAL_AUT = "RANDOM_PARTIAL_AUT"
    RANDOM_SINK_AUT = "RANDOM_SINK_AUT"
    RANDOM_TOTAL_SUPPORT_SET = "RANDOM_TOTAL_SUPPORT_SET"
    CERNY = "CERNY"
    CERNY_PLUS_IDENTITY = "CERNY_PLUS_IDENTITY"


@dataclass(frozen=True)
class CorpusSpec:
    """Parameters of a deterministic instance stream.

    Sizes are drawn per instance from ``[n_min, n]``, alphabet sizes from
    ``[alphabet_min, alphabet]`` and permutation counts from
    ``[perms_min, perms]``; a ``*_min`` left at ``None`` means the upper value.
    """

    family: Family
    n: int
    count: int = 1
    seed: int = 0
    n_min: int | None = None
    alphabet: int = 2
    alphabet_min: int | None = None
    density: float = 0.5
    undefined: float = 0.25
    perms: int = 2
    perms_min: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if self.n < 1 or self.n_range[0] < 1 or self.n_range[0] > self.n:
            raise ValueError(f"invalid size range {self.n_range}")
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        lo, hi = self.alphabet_range
        if not 1 <= lo <= hi:
            raise ValueError(f"invalid alphabet range {(lo, hi)}")
        lo, hi = self.perms_range
        if not 1 <= lo <= hi:
            raise ValueError(f"invalid permutation-count range {(lo, hi)}")
        if not 0.0 <= self.density <= 1.0 or not 0.0 <= self.undefined <= 1.0:
            raise ValueError("probabilities must lie in [0, 1]")
        if self.family in (Family.CERNY, Family.CERNY_PLUS_IDENTITY) and self.n_range[0] < 2:
            raise ValueError("Černý automata need n >= 2")

    @property
    def n_range(self) -> tuple[int, int]:
        return (self.n if self.n_min is None else self.n_min, self.n)

    @property
    def alphabet_range(self) -> tuple[int, int]:
        return (self.alphabet if self.alphabet_min is None else self.alphabet_min, self.alphabet)

    @property
    def perms_range(self) -> tuple[int, int]:
        return (self.perms if self.perms_min is None else self.perms_min, self.perms)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["family"] = self.family.value
        return d


def _random_matrix(rng: XorShift64Star, n: int, density: float) -> BoolMatrix:
    rows = []
    for _ in range(n):
        bits = 0
        for j in range(n):
            if rng.bernoulli(density):
                bits |= 1 << j
        rows.append(bits)
    return BoolMatrix(n, tuple(rows))


def _random_nz_matrix(rng: XorShift64Star, n: int, density: float) -> BoolMatrix:
    for _ in range(MAX_RESAMPLES):
        m = _random_matrix(rng, n, density)
        if is_nz(m):
            return m
    raise ValueError(f"density {density} too low to draw NZ matrices")


def _random_partial(rng: XorShift64Star, n: int, k: int, undefined: float) -> PartialAutomaton:
    letters = []
    for _ in range(k):
        letters.append(tuple(None if rng.bernoulli(undefined) else rng.below(n) for _ in range(n)))
    return PartialAutomaton(n, tuple(letters))


def _random_sink(rng: XorShift64Star, n: int, k: int) -> PartialAutomaton:
    for _ in range(MAX_RESAMPLES):
        sink = rng.below(n)
        letters = []
        for _ in range(k):
            letters.append(tuple(sink if q == sink else rng.below(n) for q in range(n)))
        a = PartialAutomaton(n, tuple(letters))
        if is_synchronizing(a):
            return a
    raise ValueError("could not draw a synchronizing automaton with a sink")


def _random_total_support(rng: XorShift64Star, n: int, r: int) -> BoolMatrix:
    acc = BoolMatrix.zeros(n)
    for _ in range(r):
        acc = acc | BoolMatrix.from_permutation(rng.permutation(n))
    return acc


def stream(spec: CorpusSpec) -> Iterator[Instance]:
    """Unbounded deterministic stream of instances for ``spec``."""
    rng = XorShift64Star(spec.seed)
    lo, hi = spec.n_range
    i = 0
    while True:
        if spec.family is Family.CERNY:
            yield cerny(lo + i % (hi - lo + 1))
        elif spec.family is Family.CERNY_PLUS_IDENTITY:
            yield cerny_plus_identity(lo + i % (hi - lo + 1))
        else:
            n = rng.between(lo, hi)
            k = rng.between(*spec.alphabet_range)
            if spec.family is Family.RANDOM_NZ_SET:
                yield MatrixSet(n, tuple(_random_nz_matrix(rng, n, spec.density) for _ in range(k)))
            elif spec.family is Family.RANDOM_PARTIAL_AUT:
                yield _random_partial(rng, n, k, spec.undefined)
            elif spec.family is Family.RANDOM_SINK_AUT:
                yield _random_sink(rng, n, k)
            elif spec.family is Family.RANDOM_TOTAL_SUPPORT_SET:
                mats = tuple(_random_total_support(rng, n, rng.between(*spec.perms_range)) for _ in range(k))
                yield MatrixSet(n, mats)
        i += 1


def gen(spec: CorpusSpec) -> list[Instance]:
    """The first ``spec.count`` instances of the stream."""
    return list(islice(stream(spec), spec.count))
