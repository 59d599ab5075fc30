"""Transversal counts and the catalog of closed-form bounds.

All counts are exact Python integers.  Comparisons against ``3**(n/3)`` are
done on cubes (``T**3 <= 3**n``) so nothing depends on floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod
from typing import Callable

from .partitions import Partition, set_partitions


def transversal_count(p: Partition) -> int:
    return prod(p.sizes)


def elementary_symmetric(values: list[int], size: int) -> int:
    """``e_size(values)`` by the usual one-pass recurrence."""
    e = [1] + [0] * size
    for v in values:
        for l in range(size, 0, -1):
            e[l] += v * e[l - 1]
    return e[size]


def partial_transversal_count(p: Partition, size: int) -> int:
    """Number of partial transversals with exactly ``size`` elements."""
    if not 0 <= size <= p.k:
        raise ValueError(f"size {size} outside [0, {p.k}]")
    return elementary_symmetric(list(p.sizes), size)


def balanced_sizes(n: int, k: int) -> list[int]:
    q, r = divmod(n, k)
    return [q + 1] * r + [q] * (k - r)


def max_transversals(n: int, k: int) -> int:
    """Largest transversal count over partitions of an ``n``-set into ``k`` parts."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return prod(balanced_sizes(n, k))


@dataclass(frozen=True)
class BoundCatalogEntry:
    name: str
    arity: str
    evaluate: Callable[[int], int | float]
    anchor: str


CATALOG: tuple[BoundCatalogEntry, ...] = (
    BoundCatalogEntry("wielandt", "n", lambda n: (n - 1) ** 2 + 1, "single primitive matrix exponent"),
    BoundCatalogEntry("cerny", "n", lambda n: (n - 1) ** 2, "conjectured reset threshold bound, attained by C_n"),
    BoundCatalogEntry("pin", "n", lambda n: (n ** 3 - n) // 6, "best proven reset threshold bound"),
    BoundCatalogEntry("kari", "n", lambda n: n * n - 3 * n + 3, "reset threshold of Eulerian automata"),
    BoundCatalogEntry("total_support", "n", lambda n: 2 * n * n - 5 * n + 5, "exponent of total-support sets"),
    BoundCatalogEntry("nz_cubic", "n", lambda n: (n ** 3 + 2 * n - 3) // 3, "exponent of primitive NZ sets"),
    BoundCatalogEntry("theorem1_upper", "n", lambda n: 2 ** (n * n), "trivial exponent bound"),
    BoundCatalogEntry("gazdag_order", "n", lambda n: n * n * 4 ** (n / 3), "order of the careful threshold upper bound"),
    BoundCatalogEntry("martyugin_order", "n", lambda n: 3 ** (n / 3), "order of the careful threshold lower bound"),
    BoundCatalogEntry("limit_rate", "n", lambda n: 3 ** (n / 3), "reference line for log-rate log(3)/3"),
)


def bound_catalog(n: int) -> dict[str, int | float]:
    if n < 1:
        raise ValueError("n must be positive")
    return {e.name: e.evaluate(n) for e in CATALOG}


@dataclass
class Lemma3Report:
    n: int
    checks: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"n": self.n, "checks": self.checks, "violations": self.violations, "pass": self.passed}


EXHAUSTIVE_MAX_N = 9


def lemma3_check(n: int, exhaustive: bool | None = None) -> Lemma3Report:
    """Check the four transversal bounds for one ``n``.

    Parts 1-3 use the balanced maximizer.  When ``exhaustive`` (the default up
    to ``n = 9``) every set partition is enumerated: the maximizer is confirmed
    against all of them, and part 4 is checked partition by partition.
    """
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_MAX_N
    rep = Lemma3Report(n)

    def check(name: str, ok: bool, **info) -> None:
        rep.checks += 1
        if not ok:
            rep.violations.append({"bound": name, **info})

    for k in range(1, n + 1):
        t = max_transversals(n, k)
        check("T_k <= 2^(n-k)", t <= 2 ** (n - k), k=k, value=t)
        if n <= 3 * k and 2 * k <= n:
            check("T_k <= 2^(3k-n) 3^(n-2k)", t <= 2 ** (3 * k - n) * 3 ** (n - 2 * k), k=k, value=t)
        if 3 * k <= n:
            check("T_k^3 <= 3^n", t ** 3 <= 3 ** n, k=k, value=t)

    if exhaustive:
        best: dict[int, int] = {}
        for p in set_partitions(n):
            k = p.k
            best[k] = max(best.get(k, 0), transversal_count(p))
            tk = max_transversals(n, k)
            for j in range(k):
                v = partial_transversal_count(p, k - j)
                check("T^(k-j)(P) <= C(n,j) T_k", v <= comb(n, j) * tk,
                      k=k, j=j, value=v, partition=p.to_list())
        for k, v in best.items():
            check("balanced partition is the maximizer", v == max_transversals(n, k), k=k, value=v)
    return rep
