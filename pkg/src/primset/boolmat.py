"""Square 0/1 matrices over the boolean semiring.

Rows are stored as integer bitsets: bit ``j`` of ``rows[i]`` is entry ``(i, j)``.
A product ``A @ B`` is computed row by row as the OR of the rows of ``B``
selected by the bits of each row of ``A``.  For small ``n`` every matrix
lazily builds a table of those ORs indexed by row mask, which turns a
product into ``n`` table lookups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, NoTotalSupport, ParseError
from .partitions import Partition

# Above this dimension the 2**n lookup table costs more than it saves.
TABLE_MAX_N = 12


def row_or_table(rows: Sequence[int], n: int) -> list[int]:
    """``table[mask]`` = OR of ``rows[k]`` over the bits ``k`` set in ``mask``."""
    table = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        table[mask] = table[mask ^ low] | rows[low.bit_length() - 1]
    return table


def _or_rows(rows: Sequence[int], mask: int) -> int:
    acc = 0
    while mask:
        low = mask & -mask
        acc |= rows[low.bit_length() - 1]
        mask ^= low
    return acc


@dataclass(frozen=True)
class BoolMatrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if len(self.rows) != self.n:
            raise DimensionMismatch(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for r in self.rows:
            if not 0 <= r < limit:
                raise DimensionMismatch(f"row bitset {r} wider than {self.n}")

    # construction

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BoolMatrix":
        n = len(entries)
        rows = []
        for i, row in enumerate(entries):
            if len(row) != n:
                raise ParseError(f"row {i} has {len(row)} entries, expected {n}")
            bits = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ParseError(f"entry ({i},{j}) = {v!r} is not 0 or 1")
                if v:
                    bits |= 1 << j
            rows.append(bits)
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, n: int) -> "BoolMatrix":
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def zeros(cls, n: int) -> "BoolMatrix":
        return cls(n, (0,) * n)

    @classmethod
    def from_function(cls, images: Sequence[int | None]) -> "BoolMatrix":
        """Adjacency matrix of a (partial) map: ``M[i, f(i)] = 1``; undefined rows stay zero."""
        return cls(len(images), tuple(0 if t is None else 1 << t for t in images))

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> "BoolMatrix":
        return cls.from_function(perm)

    # access

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def row_support(self, i: int) -> list[int]:
        r = self.rows[i]
        return [j for j in range(self.n) if (r >> j) & 1]

    def entries(self) -> Iterator[tuple[int, int]]:
        """Positions of the 1-entries in row-major order."""
        for i, r in enumerate(self.rows):
            for j in range(self.n):
                if (r >> j) & 1:
                    yield i, j

    def count(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.to_lists())

    # algebra

    @cached_property
    def or_table(self) -> list[int] | None:
        if self.n > TABLE_MAX_N:
            return None
        return row_or_table(self.rows, self.n)

    def row_image(self, mask: int) -> int:
        """Row vector ``mask`` times this matrix (the OR of the selected rows)."""
        table = self.or_table
        if table is not None:
            return table[mask]
        return _or_rows(self.rows, mask)

    def __matmul__(self, other: "BoolMatrix") -> "BoolMatrix":
        return bool_product(self, other)

    def __or__(self, other: "BoolMatrix") -> "BoolMatrix":
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} != {other.n}")
        return BoolMatrix(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: "BoolMatrix") -> bool:
        """Entrywise comparison."""
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def transpose(self) -> "BoolMatrix":
        cols = [0] * self.n
        for i, j in self.entries():
            cols[j] |= 1 << i
        return BoolMatrix(self.n, tuple(cols))

    @property
    def T(self) -> "BoolMatrix":
        return self.transpose()

    def column_mask(self, j: int) -> int:
        return sum(1 << i for i, r in enumerate(self.rows) if (r >> j) & 1)

    def with_row(self, i: int, bits: int) -> "BoolMatrix":
        rows = list(self.rows)
        rows[i] = bits
        return BoolMatrix(self.n, tuple(rows))


def bool_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    if a.n != b.n:
        raise DimensionMismatch(f"cannot multiply {a.n}x{a.n} by {b.n}x{b.n}")
    return BoolMatrix(a.n, tuple(b.row_image(r) for r in a.rows))


def product_of(matrices: Sequence[BoolMatrix], word: Iterable[int], n: int | None = None) -> BoolMatrix:
    """Left-to-right product ``matrices[w0] @ matrices[w1] @ ...``; the empty word gives the identity."""
    if n is None:
        n = matrices[0].n
    rows = tuple(1 << i for i in range(n))
    for idx in word:
        m = matrices[idx]
        rows = tuple(m.row_image(r) for r in rows)
    return BoolMatrix(n, rows)


def is_positive(m: BoolMatrix) -> bool:
    full = (1 << m.n) - 1
    return all(r == full for r in m.rows)


@dataclass(frozen=True)
class NZStatus:
    is_nz: bool
    zero_rows: tuple[int, ...]
    zero_cols: tuple[int, ...]


def nz_status(m: BoolMatrix) -> NZStatus:
    zero_rows = tuple(i for i, r in enumerate(m.rows) if r == 0)
    used = 0
    for r in m.rows:
        used |= r
    zero_cols = tuple(j for j in range(m.n) if not (used >> j) & 1)
    return NZStatus(not zero_rows and not zero_cols, zero_rows, zero_cols)


def is_nz(m: BoolMatrix) -> bool:
    return nz_status(m).is_nz


@dataclass(frozen=True)
class MatrixSet:
    """Ordered, nonempty list of matrices sharing one dimension."""

    n: int
    matrices: tuple[BoolMatrix, ...]

    def __post_init__(self) -> None:
        if not self.matrices:
            raise ValueError("a matrix set must be nonempty")
        for m in self.matrices:
            if m.n != self.n:
                raise DimensionMismatch(f"matrix of dimension {m.n} in a set of dimension {self.n}")

    @classmethod
    def of(cls, matrices: Iterable[BoolMatrix]) -> "MatrixSet":
        matrices = tuple(matrices)
        if not matrices:
            raise ValueError("a matrix set must be nonempty")
        return cls(matrices[0].n, matrices)

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[Sequence[int]]]) -> "MatrixSet":
        return cls.of(BoolMatrix.from_lists(m) for m in data)

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self) -> Iterator[BoolMatrix]:
        return iter(self.matrices)

    def __getitem__(self, i: int) -> BoolMatrix:
        return self.matrices[i]

    def transpose(self) -> "MatrixSet":
        return MatrixSet(self.n, tuple(m.transpose() for m in self.matrices))

    def union_matrix(self) -> BoolMatrix:
        acc = BoolMatrix.zeros(self.n)
        for m in self.matrices:
            acc = acc | m
        return acc

    def product(self, word: Iterable[int]) -> BoolMatrix:
        return product_of(self.matrices, word, self.n)

    def to_dict(self) -> dict:
        return {"n": self.n, "matrices": [m.to_lists() for m in self.matrices]}

    @classmethod
    def from_dict(cls, data: dict) -> "MatrixSet":
        try:
            n = int(data["n"])
            raw = data["matrices"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed matrix set: {exc}") from exc
        if not isinstance(raw, list) or not raw:
            raise ParseError("'matrices' must be a nonempty list")
        mats = []
        for idx, entries in enumerate(raw):
            if not isinstance(entries, list) or len(entries) != n:
                raise ParseError(f"matrix {idx} is not {n}x{n}")
            for row in entries:
                if not isinstance(row, list) or any(type(v) is not int for v in row):
                    raise ParseError(f"matrix {idx} has a non-integer entry")
            mats.append(BoolMatrix.from_lists(entries))
        return cls(n, tuple(mats))


# structural predicates


def _reach_plus(adj: Sequence[int], n: int, src: int) -> int:
    """Nodes reachable from ``src`` by paths of length at least one."""
    seen = 0
    frontier = adj[src]
    while frontier & ~seen:
        new = frontier & ~seen
        seen |= new
        frontier = _or_rows(adj, new)
    return seen


def is_irreducible_matrix(m: BoolMatrix) -> bool:
    full = (1 << m.n) - 1
    return all(_reach_plus(m.rows, m.n, i) == full for i in range(m.n))


def is_irreducible_set(s: MatrixSet) -> bool:
    return is_irreducible_matrix(s.union_matrix())


def shortest_path_word(s: MatrixSet, i: int, j: int) -> list[int] | None:
    """Shortest index word ``w`` with ``s.product(w)[i, j] == 1`` (empty when ``i == j``)."""
    if i == j:
        return []
    parent: dict[int, tuple[int, int]] = {i: (-1, -1)}
    frontier = [i]
    while frontier:
        nxt = []
        for u in frontier:
            for idx, m in enumerate(s.matrices):
                r = m.rows[u]
                for v in range(s.n):
                    if (r >> v) & 1 and v not in parent:
                        parent[v] = (u, idx)
                        if v == j:
                            word = []
                            while v != i:
                                v, idx2 = parent[v]
                                word.append(idx2)
                            return word[::-1]
                        nxt.append(v)
        frontier = nxt
    return None


def _match(adj: Sequence[int], n: int, skip_row: int = -1, skip_col: int = -1) -> list[int] | None:
    """Perfect matching of rows to columns by augmenting paths.

    Returns ``col_of_row`` (with ``-1`` at ``skip_row``) or ``None`` when the
    remaining bipartite graph has no perfect matching.
    """
    row_of_col = [-1] * n
    col_of_row = [-1] * n
    banned = (1 << skip_col) if skip_col >= 0 else 0

    def augment(u: int, visited: list[bool]) -> bool:
        r = adj[u] & ~banned
        for v in range(n):
            if (r >> v) & 1 and not visited[v]:
                visited[v] = True
                if row_of_col[v] < 0 or augment(row_of_col[v], visited):
                    row_of_col[v] = u
                    col_of_row[u] = v
                    return True
        return False

    for u in range(n):
        if u == skip_row:
            continue
        if not augment(u, [False] * n):
            return None
    return col_of_row


def positive_diagonal_through(m: BoolMatrix, i: int, j: int) -> tuple[int, ...] | None:
    """A permutation ``sigma`` inside the support of ``m`` with ``sigma(i) == j``, if any."""
    if not m[i, j]:
        return None
    rest = _match(m.rows, m.n, skip_row=i, skip_col=j)
    if rest is None:
        return None
    rest[i] = j
    return tuple(rest)


def has_total_support(m: BoolMatrix) -> bool:
    """Every 1-entry lies on a positive diagonal.  The zero matrix does not qualify."""
    if not any(m.rows):
        return False
    return all(positive_diagonal_through(m, i, j) is not None for i, j in m.entries())


@dataclass(frozen=True)
class DoublyStochasticPattern:
    d: tuple[tuple[int, ...], ...]
    h: int
    perms: tuple[tuple[int, ...], ...]


def doubly_stochastic_pattern(m: BoolMatrix) -> DoublyStochasticPattern:
    """Integer matrix with constant line sums ``h`` and the same support as ``m``.

    Built as a sum of permutation matrices inside the support: repeatedly take
    the lexicographically least uncovered 1-entry and add a positive diagonal
    through it.
    """
    if not has_total_support(m):
        raise NoTotalSupport("matrix does not have total support")
    n = m.n
    d = [[0] * n for _ in range(n)]
    perms: list[tuple[int, ...]] = []
    for i, j in m.entries():
        if d[i][j]:
            continue
        sigma = positive_diagonal_through(m, i, j)
        assert sigma is not None
        perms.append(sigma)
        for r, c in enumerate(sigma):
            d[r][c] += 1
    return DoublyStochasticPattern(tuple(tuple(row) for row in d), len(perms), tuple(perms))


def acts_as_permutation(m: BoolMatrix, p: Partition) -> tuple[int, ...] | None:
    """Permutation of parts induced by ``m`` on the partition ``p``, if there is one.

    Part ``b`` goes to part ``sigma[b]`` when the union of the supports of the
    rows indexed by part ``b`` is nonempty and lies inside part ``sigma[b]``.
    """
    if p.n != m.n:
        raise DimensionMismatch(f"partition of {p.n} indices for a {m.n}x{m.n} matrix")
    masks = p.masks()
    sigma = []
    for part in p.parts:
        image = 0
        for i in part:
            image |= m.rows[i]
        if image == 0:
            return None
        target = next((b for b, mask in enumerate(masks) if image & ~mask == 0), None)
        if target is None:
            return None
        sigma.append(target)
    if len(set(sigma)) != len(sigma):
        return None
    return tuple(sigma)
