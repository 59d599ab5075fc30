"""Exponent of a matrix set by breadth-first closure of its boolean semigroup."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .boolmat import (
    MatrixSet,
    acts_as_permutation,
    is_irreducible_set,
    is_nz,
    is_positive,
)
from .errors import CapExceeded, NotPrimitive, PreconditionViolated
from .partitions import Partition, set_partitions

DEFAULT_CAP = 1 << 25
PV_MAX_N = 10


@dataclass(frozen=True)
class ExponentResult:
    exponent: int
    witness: tuple[int, ...]
    products_explored: int = 0

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "witness": list(self.witness),
            "products_explored": self.products_explored,
        }


def _multiplier(s: MatrixSet):
    """Right multiplication ``rows -> rows @ M_i`` on raw row tuples."""
    tables = [m.or_table for m in s.matrices]
    mats = s.matrices

    def mul(rows: tuple[int, ...], i: int) -> tuple[int, ...]:
        tab = tables[i]
        if tab is not None:
            return tuple([tab[r] for r in rows])
        m = mats[i]
        return tuple([m.row_image(r) for r in rows])

    return mul


def _unwind(parent: dict, node: tuple[int, ...]) -> tuple[int, ...]:
    word = []
    while node is not None:
        node, idx = parent[node]
        word.append(idx)
    return tuple(reversed(word))


def exponent(s: MatrixSet, cap: int | None = DEFAULT_CAP) -> ExponentResult:
    """Length of a shortest positive product, with the first one found in BFS order.

    Products are explored by length and deduplicated; among equal lengths the
    witness is the one reached first with generators tried in index order.
    Raises :class:`NotPrimitive` once the closure is exhausted, and
    :class:`CapExceeded` if more than ``cap`` distinct products are needed.
    """
    n = s.n
    positive = ((1 << n) - 1,) * n
    mul = _multiplier(s)
    parent: dict[tuple[int, ...], tuple] = {}
    layer = []
    for i, m in enumerate(s.matrices):
        if m.rows not in parent:
            parent[m.rows] = (None, i)
            if m.rows == positive:
                return ExponentResult(1, (i,), len(parent))
            layer.append(m.rows)
    length = 1
    gens = range(len(s.matrices))
    while layer:
        length += 1
        nxt = []
        for rows in layer:
            for i in gens:
                prod = mul(rows, i)
                if prod in parent:
                    continue
                parent[prod] = (rows, i)
                if prod == positive:
                    return ExponentResult(length, _unwind(parent, prod), len(parent))
                nxt.append(prod)
            if cap is not None and len(parent) > cap:
                raise CapExceeded(f"more than {cap} distinct products", products_seen=len(parent))
        layer = nxt
    raise NotPrimitive(f"closure of {len(parent)} products contains no positive matrix")


def is_primitive(s: MatrixSet, cap: int | None = DEFAULT_CAP) -> bool:
    try:
        exponent(s, cap)
    except NotPrimitive:
        return False
    return True


def verify_witness(s: MatrixSet, w: Sequence[int]) -> bool:
    """Replay ``w`` and report whether the product is all-ones."""
    for idx in w:
        if not (isinstance(idx, int) and 0 <= idx < len(s)):
            raise ValueError(f"{idx!r} is not a matrix index")
    return is_positive(s.product(w))


@dataclass
class SemigroupClosure:
    """Distinct products of a matrix set, grouped by shortest length."""

    layers: list[list[tuple[int, ...]]] = field(default_factory=list)
    truncated: bool = False

    @property
    def elements(self) -> set[tuple[int, ...]]:
        return {x for layer in self.layers for x in layer}

    def __len__(self) -> int:
        return sum(len(layer) for layer in self.layers)


def semigroup_closure(s: MatrixSet, cap: int | None = DEFAULT_CAP, max_length: int | None = None) -> SemigroupClosure:
    """All distinct products, ``layers[L-1]`` holding those of shortest length ``L``."""
    mul = _multiplier(s)
    seen: set[tuple[int, ...]] = set()
    first = []
    for m in s.matrices:
        if m.rows not in seen:
            seen.add(m.rows)
            first.append(m.rows)
    out = SemigroupClosure([first])
    layer = first
    while layer:
        if max_length is not None and len(out.layers) >= max_length:
            out.truncated = True
            break
        nxt = []
        for rows in layer:
            for i in range(len(s.matrices)):
                prod = mul(rows, i)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        if cap is not None and len(seen) > cap:
            out.layers.append(nxt)
            out.truncated = True
            break
        if nxt:
            out.layers.append(nxt)
        layer = nxt
    return out


@dataclass(frozen=True)
class PVCertificate:
    partition: Partition
    perms: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"partition": self.partition.to_list(), "perms": [list(p) for p in self.perms]}


def pv_partition_test(s: MatrixSet, max_n: int = PV_MAX_N) -> PVCertificate | None:
    """Search for a nontrivial partition on which every matrix acts as a permutation.

    Only meaningful for irreducible sets of NZ matrices, where such a
    partition exists exactly when the set is imprimitive.  Partitions are
    tried in restricted-growth-string order, skipping the one-part partition.
    """
    if not all(is_nz(m) for m in s.matrices):
        raise PreconditionViolated("every matrix must have no zero rows and no zero columns")
    if not is_irreducible_set(s):
        raise PreconditionViolated("the matrix set is reducible")
    if s.n > max_n:
        raise CapExceeded(f"partition enumeration capped at n <= {max_n}")
    for p in set_partitions(s.n):
        if p.k < 2:
            continue
        perms = []
        for m in s.matrices:
            sigma = acts_as_permutation(m, p)
            if sigma is None:
                break
            perms.append(sigma)
        else:
            return PVCertificate(p, tuple(perms))
    return None
