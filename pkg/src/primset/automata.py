"""Complete and partial deterministic automata, reset and careful thresholds.

State sets are handled as integer bitmasks throughout.  A letter is a tuple
of targets, ``None`` marking an undefined transition.  A word is a sequence
of letter indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    NotCarefullySynchronizing,
    NotComplete,
    NotSynchronizing,
    ParseError,
    ProcedureStuck,
    UndefinedTransition,
)
from .partitions import Partition, set_partitions_coarsest_first

Letter = tuple  # tuple[int | None, ...]
Word = tuple  # tuple[int, ...]

CLASS_C_MAX_ALPHABET = 12
_CHUNK = 8


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(states: Iterable[int]) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def states_of(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class PartialAutomaton:
    n: int
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("an automaton needs at least one state")
        if not self.letters:
            raise ValueError("an automaton needs at least one letter")
        for idx, letter in enumerate(self.letters):
            if len(letter) != self.n:
                raise ValueError(f"letter {idx} has {len(letter)} transitions, expected {self.n}")
            for t in letter:
                if t is not None and not (isinstance(t, int) and 0 <= t < self.n):
                    raise ValueError(f"letter {idx} has an out-of-range target {t!r}")

    @classmethod
    def of(cls, letters: Iterable[Sequence[int | None]]) -> "PartialAutomaton":
        letters = tuple(tuple(l) for l in letters)
        if not letters:
            raise ValueError("an automaton needs at least one letter")
        return cls(len(letters[0]), letters)

    @property
    def k(self) -> int:
        return len(self.letters)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def is_complete(self) -> bool:
        return all(t is not None for letter in self.letters for t in letter)

    def undefined_mask(self, letter: int) -> int:
        return self._undefined[letter]

    @cached_property
    def _undefined(self) -> list[int]:
        return [mask_of(q for q, t in enumerate(l) if t is None) for l in self.letters]

    @cached_property
    def _image_tables(self) -> list[list[list[int]]]:
        # Per letter, per 8-bit chunk of the state mask: image of every chunk value.
        tables = []
        for letter in self.letters:
            chunks = []
            for base in range(0, self.n, _CHUNK):
                width = min(_CHUNK, self.n - base)
                tab = [0] * (1 << width)
                for v in range(1, 1 << width):
                    low = v & -v
                    t = letter[base + low.bit_length() - 1]
                    tab[v] = tab[v ^ low] | (0 if t is None else 1 << t)
                chunks.append(tab)
            tables.append(chunks)
        return tables

    def image(self, mask: int, letter: int) -> int:
        """Image of a state set, ignoring states where ``letter`` is undefined."""
        out = 0
        for tab in self._image_tables[letter]:
            out |= tab[mask & 0xFF]
            mask >>= _CHUNK
        return out

    def defined_on(self, mask: int, letter: int) -> bool:
        return mask & self._undefined[letter] == 0

    def careful_image(self, mask: int, word: Iterable[int]) -> int | None:
        """Image of ``mask`` under ``word``, or ``None`` if some step is undefined."""
        for x in word:
            if mask & self._undefined[x]:
                return None
            mask = self.image(mask, x)
        return mask

    def with_letters(self, extra: Iterable[Sequence[int | None]]) -> "PartialAutomaton":
        return PartialAutomaton(self.n, self.letters + tuple(tuple(l) for l in extra))

    # text format: "n k" then k lines of n tokens, "-" for undefined

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        for letter in self.letters:
            lines.append(" ".join("-" if t is None else str(t) for t in letter))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PartialAutomaton":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 2:
            raise ParseError("first line must be 'n k'")
        try:
            n, k = int(lines[0][0]), int(lines[0][1])
        except ValueError as exc:
            raise ParseError(f"bad header: {exc}") from exc
        if n < 1 or k < 1:
            raise ParseError("need at least one state and one letter")
        if len(lines) - 1 != k:
            raise ParseError(f"expected {k} letter lines, got {len(lines) - 1}")
        letters = []
        for idx, toks in enumerate(lines[1:]):
            if len(toks) != n:
                raise ParseError(f"letter {idx} has {len(toks)} tokens, expected {n}")
            letter = []
            for tok in toks:
                if tok == "-":
                    letter.append(None)
                    continue
                try:
                    t = int(tok)
                except ValueError as exc:
                    raise ParseError(f"bad token {tok!r}") from exc
                if not 0 <= t < n:
                    raise ParseError(f"target {t} out of range for {n} states")
                letter.append(t)
            letters.append(tuple(letter))
        return cls(n, tuple(letters))


def _check_word(a: PartialAutomaton, w: Sequence[int]) -> None:
    for x in w:
        if not (isinstance(x, int) and 0 <= x < a.k):
            raise ValueError(f"{x!r} is not a letter index of a {a.k}-letter automaton")


def apply_word(a: PartialAutomaton, s: Iterable[int], w: Sequence[int]) -> frozenset[int]:
    """Image of the state set ``s`` under ``w``, applied carefully.

    Raises :class:`UndefinedTransition` at the first letter that is undefined
    on some state of the current image.
    """
    _check_word(a, w)
    mask = mask_of(s)
    for pos, x in enumerate(w):
        bad = mask & a.undefined_mask(x)
        if bad:
            raise UndefinedTransition((bad & -bad).bit_length() - 1, pos)
        mask = a.image(mask, x)
    return states_of(mask)


@dataclass(frozen=True)
class ThresholdResult:
    value: int
    witness: Word
    explored: int = 0

    def to_dict(self, name: str) -> dict:
        return {name: self.value, "witness": list(self.witness), "explored": self.explored}


def _subset_bfs(a: PartialAutomaton, careful: bool) -> ThresholdResult | None:
    start = a.full
    if popcount(start) == 1:
        return ThresholdResult(0, (), 1)
    parent: dict[int, tuple[int, int]] = {start: (-1, -1)}
    queue = deque([start])
    letters = range(a.k)
    undefined = a._undefined
    while queue:
        cur = queue.popleft()
        for x in letters:
            if careful and cur & undefined[x]:
                continue
            nxt = a.image(cur, x)
            if nxt in parent or nxt == 0:
                continue
            parent[nxt] = (cur, x)
            if nxt & (nxt - 1) == 0:
                word = []
                while nxt != start:
                    nxt, y = parent[nxt]
                    word.append(y)
                return ThresholdResult(len(word), tuple(reversed(word)), len(parent))
            queue.append(nxt)
    return None


def reset_threshold(a: PartialAutomaton) -> ThresholdResult:
    """Length and lexicographically-first BFS witness of a shortest reset word."""
    if not a.is_complete():
        raise NotComplete("reset threshold is defined for complete automata")
    res = _subset_bfs(a, careful=False)
    if res is None:
        raise NotSynchronizing("no word maps the state set to a singleton")
    return res


def careful_threshold(a: PartialAutomaton) -> ThresholdResult:
    """Shortest carefully synchronizing word: every letter is defined on the current image."""
    res = _subset_bfs(a, careful=True)
    if res is None:
        raise NotCarefullySynchronizing("no careful word maps the state set to a singleton")
    return res


def is_synchronizing(a: PartialAutomaton) -> bool:
    return _subset_bfs(a, careful=not a.is_complete()) is not None


# the iterative word construction


@dataclass(frozen=True)
class GreedyStep:
    k: int
    length: int
    t_lengths: tuple[int, ...] = ()


@dataclass(frozen=True)
class GreedyResult:
    word: Word
    trace: tuple[GreedyStep, ...] = field(default=())

    def length_of(self, k: int) -> int:
        for step in self.trace:
            if step.k == k:
                return step.length
        raise KeyError(k)


def _shortest_t(
    a: PartialAutomaton,
    start: int,
    u: Sequence[int],
    target: int,
    max_length: int | None,
) -> list[int]:
    """Shortest careful word ``t`` from ``start`` such that ``u`` is careful afterwards
    and the final image has at most ``target`` states."""

    def goal(mask: int) -> bool:
        img = a.careful_image(mask, u)
        return img is not None and popcount(img) <= target

    if goal(start):
        return []
    parent: dict[int, tuple[int, int]] = {start: (-1, -1)}
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        if max_length is not None and depth > max_length:
            raise ProcedureStuck(f"no admissible word of length <= {max_length}")
        nxt_frontier = []
        for cur in frontier:
            for x in range(a.k):
                if cur & a.undefined_mask(x):
                    continue
                nxt = a.image(cur, x)
                if nxt in parent:
                    continue
                parent[nxt] = (cur, x)
                if goal(nxt):
                    word = []
                    while nxt != start:
                        nxt, y = parent[nxt]
                        word.append(y)
                    return word[::-1]
                nxt_frontier.append(nxt)
        frontier = nxt_frontier
    raise ProcedureStuck("no admissible word exists; the automaton is not carefully synchronizing")


def greedy_careful_word(
    a: PartialAutomaton,
    schedule: Sequence[int] = (1,),
    max_t_length: int | None = None,
) -> GreedyResult:
    """Build a carefully synchronizing word by repeated compression.

    Starts from a letter defined everywhere that shrinks the state set, the
    word ``u_{n-1}``.  From ``u_k`` (image of size at most ``k``) and a step
    ``l`` taken from ``schedule``, the next word is
    ``u_k t_1 u_k t_2 u_k ... t_l u_k`` where each ``t_s`` is a shortest word
    keeping the whole composite careful and bringing the image down to at
    most ``k - s`` states.  This continues until ``k == 1``.

    ``schedule`` is consumed one entry per round; its last entry repeats once
    it runs out, and every entry is clamped to ``k - 1``.
    """
    if any(int(l) < 1 for l in schedule) or not schedule:
        raise ValueError("schedule entries must be positive integers")
    n = a.n
    if n == 1:
        return GreedyResult((), ())
    full = a.full
    first = next(
        (x for x in range(a.k) if a.defined_on(full, x) and popcount(a.image(full, x)) < n),
        None,
    )
    if first is None:
        raise ProcedureStuck("no letter is defined everywhere and merges two states")
    u: list[int] = [first]
    k = n - 1
    trace = [GreedyStep(k, 1)]
    rounds = chain(schedule, iter(lambda: schedule[-1], None))
    while k > 1:
        ell = min(int(next(rounds)), k - 1)
        word = list(u)
        image = a.careful_image(full, word)
        assert image is not None
        t_lengths = []
        for s in range(1, ell + 1):
            t = _shortest_t(a, image, u, k - s, max_t_length)
            word.extend(t)
            word.extend(u)
            image = a.careful_image(image, list(t) + u)
            assert image is not None and popcount(image) <= k - s
            t_lengths.append(len(t))
        u = word
        k -= ell
        trace.append(GreedyStep(k, len(u), tuple(t_lengths)))
    return GreedyResult(tuple(u), tuple(trace))


# families and structural predicates


def cerny(n: int) -> PartialAutomaton:
    """The n-state Černý automaton.

    Letter ``a`` (index 0) is the identity except ``n-1 -> 0``; letter ``b``
    (index 1) is the cyclic shift ``i -> i+1 mod n``.
    """
    if n < 2:
        raise ValueError("the Černý automaton needs n >= 2")
    a = tuple(list(range(n - 1)) + [0])
    b = tuple((i + 1) % n for i in range(n))
    return PartialAutomaton(n, (a, b))


def cerny_plus_identity(n: int) -> PartialAutomaton:
    """Černý automaton with a third letter ``c`` acting as the identity."""
    return cerny(n).with_letters([tuple(range(n))])


def _require_complete(a: PartialAutomaton) -> None:
    if not a.is_complete():
        raise NotComplete("operation requires a complete automaton")


def is_eulerian(a: PartialAutomaton, weights: Sequence[int] | None = None) -> bool:
    """Weighted in-degree equals weighted out-degree (the total letter weight) at every state."""
    _require_complete(a)
    if weights is None:
        weights = [1] * a.k
    if len(weights) != a.k or any(w < 1 for w in weights):
        raise ValueError("need one positive weight per letter")
    indeg = [0] * a.n
    for w, letter in zip(weights, a.letters):
        for t in letter:
            indeg[t] += w
    out = sum(weights)
    return all(d == out for d in indeg)


def find_sink(a: PartialAutomaton) -> int | None:
    """Least state fixed by every letter, if any."""
    _require_complete(a)
    for q in range(a.n):
        if all(letter[q] == q for letter in a.letters):
            return q
    return None


def class_c_violation(a: PartialAutomaton, part: Sequence[int]) -> str | None:
    """Why the letter group ``part`` breaks a class-C condition, or ``None`` if it is fine."""
    funcs = {a.letters[x] for x in part}
    targets = set()
    for f in funcs:
        targets.update(f)
    if len(targets) != a.n:
        missing = sorted(set(range(a.n)) - targets)
        return f"states {missing} have no preimage under letters {list(part)}"
    combos = 1
    for q in range(a.n):
        combos *= len({f[q] for f in funcs})
    if combos != len(funcs):
        return f"letters {list(part)} realize {len(funcs)} of {combos} transition combinations"
    return None


def is_class_c_partition(a: PartialAutomaton, p: Partition) -> bool:
    _require_complete(a)
    if p.n != a.k:
        return False
    return all(class_c_violation(a, part) is None for part in p.parts)


def class_c_partition(a: PartialAutomaton, max_alphabet: int = CLASS_C_MAX_ALPHABET) -> Partition | None:
    """First alphabet partition, coarsest first, satisfying both class-C conditions."""
    _require_complete(a)
    if a.k > max_alphabet:
        raise CapExceeded(f"alphabet of {a.k} letters exceeds the partition-enumeration cap {max_alphabet}")
    for p in set_partitions_coarsest_first(a.k):
        if is_class_c_partition(a, p):
            return p
    return None
