"""Constructions between matrix sets and automata, each with a checkable certificate.

Every ``certify_*`` function runs a construction, computes the quantities on
both sides exactly, and records the relations between them together with the
witnesses (words, products, partitions) that support them.  A certificate can
be re-checked later by :func:`recheck`, which only replays the stored
witnesses against the stored source and target objects.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Any, Callable, Sequence

from .automata import (
    PartialAutomaton,
    apply_word,
    careful_threshold,
    class_c_violation,
    find_sink,
    is_class_c_partition,
    is_eulerian,
    popcount,
    reset_threshold,
)
from .boolmat import (
    BoolMatrix,
    MatrixSet,
    doubly_stochastic_pattern,
    has_total_support,
    is_nz,
    is_positive,
    shortest_path_word,
)
from .errors import (
    LetterCapExceeded,
    NoSink,
    NoTotalSupport,
    NotCarefullySynchronizing,
    NotClassC,
    NotComplete,
    NotNZ,
    NotPrimitive,
    NotSynchronizing,
    UndefinedTransition,
)
from .partitions import Partition
from .primitivity import DEFAULT_CAP, exponent

DEFAULT_LETTER_CAP = 20_000

KINDS = ("M2PA", "PA2M", "SANDWICH", "SINK2NZ", "CLASSC2NZ", "NZ2CLASSC", "TS2EULER")

# The single-state case of the sink construction uses this fixed set of exponent 2.
ONE_STATE_SINK_SET = MatrixSet.from_lists([[[1, 1], [1, 0]]])


# selection functions


def selection_count(m: BoolMatrix) -> int:
    """Number of selection functions of ``m``; a zero row contributes a factor 1."""
    return prod(max(1, popcount(r)) for r in m.rows)


def selection_functions(m: BoolMatrix):
    """Partial maps choosing one positive entry per nonzero row (``None`` on zero rows)."""
    choices = [m.row_support(i) or [None] for i in range(m.n)]
    return product(*choices)


def adjacency(letter: Sequence[int | None]) -> BoolMatrix:
    return BoolMatrix.from_function(letter)


def is_selection_of(letter: Sequence[int | None], m: BoolMatrix) -> bool:
    """``letter`` is defined exactly on the nonzero rows of ``m`` and stays inside its support."""
    for i, t in enumerate(letter):
        if t is None:
            if m.rows[i]:
                return False
        elif not m[i, t]:
            return False
    return True


@dataclass(frozen=True)
class DerivedAutomaton:
    automaton: PartialAutomaton
    origin: tuple[int, ...]
    multiplicity: tuple[int, ...] | None = None

    def partition_by_origin(self) -> Partition:
        groups: dict[int, list[int]] = {}
        for x, src in enumerate(self.origin):
            groups.setdefault(src, []).append(x)
        return Partition(len(self.origin), tuple(tuple(g) for g in groups.values()))


def derive_automaton(
    s: MatrixSet,
    letter_cap: int = DEFAULT_LETTER_CAP,
    dedupe: bool = True,
    weights: Sequence[Sequence[Sequence[int]]] | None = None,
) -> DerivedAutomaton:
    """Automaton whose letters are the selection functions of the matrices of ``s``.

    With ``dedupe`` a function produced by several matrices is kept once, at
    its first occurrence.  ``weights`` (one integer matrix per source matrix)
    attaches the multiplicity ``prod_i weights[i][f(i)]`` to each letter.
    """
    letters: list[tuple] = []
    origin: list[int] = []
    mult: list[int] = []
    seen: set[tuple] = set()
    for idx, m in enumerate(s.matrices):
        required = selection_count(m)
        if required > letter_cap:
            raise LetterCapExceeded(required, letter_cap)
        for f in selection_functions(m):
            if dedupe:
                if f in seen:
                    continue
                seen.add(f)
            letters.append(f)
            origin.append(idx)
            if weights is not None:
                w = weights[idx]
                mult.append(prod(w[i][t] for i, t in enumerate(f)))
    return DerivedAutomaton(
        PartialAutomaton(s.n, tuple(letters)),
        tuple(origin),
        tuple(mult) if weights is not None else None,
    )


def matrixset_to_partial(s: MatrixSet, letter_cap: int = DEFAULT_LETTER_CAP) -> PartialAutomaton:
    return derive_automaton(s, letter_cap).automaton


def partial_to_matrixset(a: PartialAutomaton) -> MatrixSet:
    """Adjacency matrices of the letters followed by the rank-one matrices ``e_k^T e``."""
    full = (1 << a.n) - 1
    mats = [adjacency(letter) for letter in a.letters]
    mats += [BoolMatrix.zeros(a.n).with_row(k, full) for k in range(a.n)]
    return MatrixSet(a.n, tuple(mats))


@dataclass(frozen=True)
class Sandwich:
    p: tuple[int, ...]
    q: tuple[int, ...]
    r: tuple[int, ...]
    column: int
    row: int
    car_a: int
    car_b: int
    letters_a: tuple[tuple, ...] = ()
    letters_b: tuple[tuple, ...] = ()

    @property
    def word(self) -> tuple[int, ...]:
        return self.p + self.q + self.r


def sandwich_decomposition(
    s: MatrixSet,
    letter_cap: int = DEFAULT_LETTER_CAP,
    cap: int | None = DEFAULT_CAP,
) -> Sandwich:
    """Split a positive product as ``P Q R``.

    ``P`` comes from a shortest careful reset word of the derived automaton and
    has a positive column ``i``; ``R`` is built the same way from the
    transposed set and has a positive row ``j``; ``Q`` is a shortest path from
    ``i`` to ``j`` in the union digraph.
    """
    exponent(s, cap)  # raises NotPrimitive
    full = (1 << s.n) - 1
    da = derive_automaton(s, letter_cap)
    ca = careful_threshold(da.automaton)
    p = tuple(da.origin[x] for x in ca.witness)
    pm = s.product(p)
    i = next(c for c in range(s.n) if pm.column_mask(c) == full)

    st = s.transpose()
    db = derive_automaton(st, letter_cap)
    cb = careful_threshold(db.automaton)
    r = tuple(db.origin[x] for x in reversed(cb.witness))
    rm = s.product(r)
    j = next(c for c in range(s.n) if rm.rows[c] == full)

    q = shortest_path_word(s, i, j)
    if q is None:
        raise NotPrimitive("union digraph is not strongly connected")
    return Sandwich(
        p, tuple(q), r, i, j, ca.value, cb.value,
        tuple(da.automaton.letters[x] for x in ca.witness),
        tuple(db.automaton.letters[x] for x in cb.witness),
    )


def sink_to_nz(a: PartialAutomaton) -> MatrixSet:
    """Adjacency matrices with the sink row filled with ones."""
    if not a.is_complete():
        raise NotComplete("sink construction needs a complete automaton")
    if a.n == 1:
        return ONE_STATE_SINK_SET
    s = find_sink(a)
    if s is None:
        raise NoSink("automaton has no state fixed by every letter")
    reset_threshold(a)  # raises NotSynchronizing
    full = (1 << a.n) - 1
    return MatrixSet(a.n, tuple(adjacency(l).with_row(s, full) for l in a.letters))


def classc_to_nz(a: PartialAutomaton, p: Partition) -> MatrixSet:
    """One matrix per letter group: the OR of the group's adjacency matrices."""
    if not a.is_complete():
        raise NotComplete("class-C construction needs a complete automaton")
    if not is_class_c_partition(a, p):
        reasons = [class_c_violation(a, part) for part in p.parts] if p.n == a.k else ["partition size"]
        raise NotClassC("; ".join(r for r in reasons if r))
    mats = []
    for part in p.parts:
        acc = BoolMatrix.zeros(a.n)
        for x in part:
            acc = acc | adjacency(a.letters[x])
        mats.append(acc)
    return MatrixSet(a.n, tuple(mats))


@dataclass(frozen=True)
class ClassCPair:
    a: PartialAutomaton
    a_partition: Partition
    b: PartialAutomaton
    b_partition: Partition


def nz_to_classc_automata(s: MatrixSet, letter_cap: int = DEFAULT_LETTER_CAP) -> ClassCPair:
    """Complete automata from ``s`` and its transpose, letters grouped by source matrix.

    Letters are not merged across matrices, otherwise a function shared by
    two matrices would sit in only one group and that group's combination
    condition could fail.
    """
    bad = [i for i, m in enumerate(s.matrices) if not is_nz(m)]
    if bad:
        raise NotNZ(f"matrices {bad} have a zero row or column")
    da = derive_automaton(s, letter_cap, dedupe=False)
    db = derive_automaton(s.transpose(), letter_cap, dedupe=False)
    return ClassCPair(da.automaton, da.partition_by_origin(), db.automaton, db.partition_by_origin())


@dataclass(frozen=True)
class EulerianPair:
    a: PartialAutomaton
    a_weights: tuple[int, ...]
    b: PartialAutomaton
    b_weights: tuple[int, ...]
    h: tuple[int, ...]
    d: tuple[tuple[tuple[int, ...], ...], ...]
    h_t: tuple[int, ...]
    d_t: tuple[tuple[tuple[int, ...], ...], ...]


def totalsupport_to_eulerian(s: MatrixSet, letter_cap: int = DEFAULT_LETTER_CAP) -> EulerianPair:
    """Weighted automata from ``s`` and its transpose via integer doubly stochastic patterns.

    Each selection function ``f`` of ``M`` carries multiplicity
    ``prod_i D_M[i, f(i)]``; with those weights both automata are Eulerian.
    """
    bad = [i for i, m in enumerate(s.matrices) if not has_total_support(m)]
    if bad:
        raise NoTotalSupport(f"matrices {bad} do not have total support")
    pats = [doubly_stochastic_pattern(m) for m in s.matrices]
    st = s.transpose()
    pats_t = [doubly_stochastic_pattern(m) for m in st.matrices]
    da = derive_automaton(s, letter_cap, dedupe=False, weights=[p.d for p in pats])
    db = derive_automaton(st, letter_cap, dedupe=False, weights=[p.d for p in pats_t])
    return EulerianPair(
        da.automaton, da.multiplicity, db.automaton, db.multiplicity,
        tuple(p.h for p in pats), tuple(p.d for p in pats),
        tuple(p.h for p in pats_t), tuple(p.d for p in pats_t),
    )


# certificates

_RELATIONS: dict[str, Callable[[Any, Any], bool]] = {
    "<=": operator.le,
    "<": operator.lt,
    "==": operator.eq,
    ">=": operator.ge,
}


@dataclass(frozen=True)
class Inequality:
    name: str
    lhs: int
    relation: str
    rhs: int

    @property
    def passed(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "relation": self.relation, "rhs": self.rhs, "pass": self.passed}

    @classmethod
    def from_dict(cls, d: dict) -> "Inequality":
        return cls(d["name"], d["lhs"], d["relation"], d["rhs"])


def _holds(name: str, ok: bool) -> Inequality:
    return Inequality(name, int(bool(ok)), "==", 1)


@dataclass
class ReductionCertificate:
    kind: str
    source: dict
    target: dict
    source_stats: dict = field(default_factory=dict)
    target_stats: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    inequalities_checked: list[Inequality] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.inequalities_checked)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "source": self.source,
            "target": self.target,
            "source_stats": self.source_stats,
            "target_stats": self.target_stats,
            "witnesses": self.witnesses,
            "inequalities_checked": [i.to_dict() for i in self.inequalities_checked],
            "notes": self.notes,
            "pass": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReductionCertificate":
        return cls(
            d["kind"], d["source"], d["target"],
            dict(d.get("source_stats", {})), dict(d.get("target_stats", {})),
            dict(d.get("witnesses", {})),
            [Inequality.from_dict(x) for x in d.get("inequalities_checked", [])],
            list(d.get("notes", [])),
        )


# serialization of the objects carried by certificates


def automaton_to_dict(a: PartialAutomaton) -> dict:
    return {"n": a.n, "letters": [list(l) for l in a.letters]}


def automaton_from_dict(d: dict) -> PartialAutomaton:
    return PartialAutomaton(int(d["n"]), tuple(tuple(l) for l in d["letters"]))


def _letters(raw) -> tuple[tuple, ...]:
    return tuple(tuple(l) for l in raw)


# replay helpers; these only use boolmat and automata


def _synchronizes(a: PartialAutomaton, word: Sequence[int]) -> bool:
    try:
        return len(apply_word(a, range(a.n), list(word))) == 1
    except (UndefinedTransition, ValueError):
        return False


def _positive(s: MatrixSet, word: Sequence[int]) -> bool:
    if any(not 0 <= x < len(s) for x in word):
        return False
    return len(word) > 0 and is_positive(s.product(word))


def _functions_synchronize(n: int, functions: Sequence[Sequence[int | None]]) -> bool:
    if not functions:
        return n == 1
    a = PartialAutomaton(n, _letters(functions))
    return _synchronizes(a, list(range(len(functions))))


def _shortest_or_none(fn, *args):
    try:
        return fn(*args)
    except (NotSynchronizing, NotCarefullySynchronizing, NotPrimitive):
        return None


def certify_m2pa(s: MatrixSet, letter_cap: int = DEFAULT_LETTER_CAP) -> ReductionCertificate:
    da = derive_automaton(s, letter_cap)
    cert = ReductionCertificate(
        "M2PA",
        source=s.to_dict(),
        target=automaton_to_dict(da.automaton),
        source_stats={"n": s.n, "matrices": len(s)},
        target_stats={"n": da.automaton.n, "letters": da.automaton.k},
        witnesses={"origin": list(da.origin)},
    )
    cert.inequalities_checked = recheck(cert)
    return cert


def _recheck_m2pa(cert: ReductionCertificate) -> list[Inequality]:
    s = MatrixSet.from_dict(cert.source)
    a = automaton_from_dict(cert.target)
    origin = cert.witnesses["origin"]
    out = [Inequality("letters == len(origin)", a.k, "==", len(origin))]
    out.append(_holds("every letter is a selection function of its source", all(
        0 <= o < len(s) and is_selection_of(l, s[o]) for l, o in zip(a.letters, origin))))
    distinct = {f for m in s.matrices for f in selection_functions(m)}
    out.append(Inequality("distinct selection functions", a.k, "==", len(distinct)))
    recon_ok = True
    for m in s.matrices:
        acc = BoolMatrix.zeros(s.n)
        for l in a.letters:
            if is_selection_of(l, m):
                acc = acc | adjacency(l)
        recon_ok = recon_ok and acc == m
    out.append(_holds("OR of each matrix's selection letters reconstructs it", recon_ok))
    return out


def certify_pa2m(a: PartialAutomaton, cap: int | None = DEFAULT_CAP) -> ReductionCertificate:
    s = partial_to_matrixset(a)
    car = _shortest_or_none(careful_threshold, a)
    ex = _shortest_or_none(exponent, s, cap)
    cert = ReductionCertificate(
        "PA2M",
        source=automaton_to_dict(a),
        target=s.to_dict(),
        source_stats={"n": a.n, "letters": a.k, "car": None if car is None else car.value},
        target_stats={"n": s.n, "matrices": len(s), "exponent": None if ex is None else ex.exponent},
        witnesses={
            "car_word": None if car is None else list(car.witness),
            "exponent_word": None if ex is None else list(ex.witness),
        },
    )
    if car is None:
        cert.notes.append("source is not carefully synchronizing; relations are vacuous")
    cert.inequalities_checked = recheck(cert)
    return cert


def _recheck_pa2m(cert: ReductionCertificate) -> list[Inequality]:
    a = automaton_from_dict(cert.source)
    s = MatrixSet.from_dict(cert.target)
    out = [_holds("target is the letter/rank-one construction", s == partial_to_matrixset(a))]
    car, ex = cert.source_stats.get("car"), cert.target_stats.get("exponent")
    cw, ew = cert.witnesses.get("car_word"), cert.witnesses.get("exponent_word")
    if car is None:
        return out
    out.append(_holds("car witness is careful and synchronizing", _synchronizes(a, cw)))
    out.append(Inequality("|car witness|", len(cw), "==", car))
    if ex is None:
        out.append(_holds("target is primitive", False))
        return out
    out.append(_holds("exponent witness is positive", _positive(s, ew)))
    out.append(Inequality("|exponent witness|", len(ew), "==", ex))
    out.append(Inequality("car <= exp", car, "<=", ex))
    out.append(Inequality("exp == car + 1", ex, "==", car + 1))
    return out


def certify_sandwich(
    s: MatrixSet, letter_cap: int = DEFAULT_LETTER_CAP, cap: int | None = DEFAULT_CAP
) -> ReductionCertificate:
    ex = exponent(s, cap)
    sw = sandwich_decomposition(s, letter_cap, cap)
    cert = ReductionCertificate(
        "SANDWICH",
        source=s.to_dict(),
        target={},
        source_stats={"n": s.n, "matrices": len(s), "exponent": ex.exponent},
        target_stats={"car_a": sw.car_a, "car_b": sw.car_b, "length": len(sw.word)},
        witnesses={
            "p": list(sw.p), "q": list(sw.q), "r": list(sw.r),
            "column": sw.column, "row": sw.row,
            "car_a_letters": [list(l) for l in sw.letters_a],
            "car_b_letters": [list(l) for l in sw.letters_b],
            "exponent_word": list(ex.witness),
        },
    )
    cert.inequalities_checked = recheck(cert)
    return cert


def _recheck_sandwich(cert: ReductionCertificate) -> list[Inequality]:
    s = MatrixSet.from_dict(cert.source)
    st = s.transpose()
    w = cert.witnesses
    n, full = s.n, (1 << s.n) - 1
    p, q, r = list(w["p"]), list(w["q"]), list(w["r"])
    i, j = w["column"], w["row"]
    car_a, car_b = cert.target_stats["car_a"], cert.target_stats["car_b"]
    la, lb = _letters(w["car_a_letters"]), _letters(w["car_b_letters"])
    pm, qm, rm = s.product(p), s.product(q), s.product(r)
    out = [
        _holds("P has a positive column", pm.column_mask(i) == full),
        _holds("R has a positive row", rm.rows[j] == full),
        _holds("Q[column, row] > 0", qm[i, j] == 1),
        _holds("PQR is positive", _positive(s, p + q + r)),
        _holds("car(A) witness letters select from P's matrices",
               len(la) == len(p) and all(is_selection_of(f, s[x]) for f, x in zip(la, p))),
        _holds("car(A) witness synchronizes carefully", _functions_synchronize(n, la)),
        _holds("car(B) witness letters select from transposed R's matrices",
               len(lb) == len(r) and all(is_selection_of(f, st[x]) for f, x in zip(lb, reversed(r)))),
        _holds("car(B) witness synchronizes carefully", _functions_synchronize(n, lb)),
        Inequality("|P| <= car(A)", len(p), "<=", car_a),
        Inequality("|R| <= car(B)", len(r), "<=", car_b),
        Inequality("|Q| <= n - 1", len(q), "<=", n - 1),
        Inequality("|PQR| <= car(A) + car(B) + n - 1", len(p) + len(q) + len(r), "<=", car_a + car_b + n - 1),
        Inequality("|PQR| <= 2 max car + n - 1", len(p) + len(q) + len(r), "<=", 2 * max(car_a, car_b) + n - 1),
    ]
    ew = w["exponent_word"]
    ex = cert.source_stats["exponent"]
    out.append(_holds("exponent witness is positive", _positive(s, ew)))
    out.append(Inequality("|exponent witness|", len(ew), "==", ex))
    out.append(Inequality("exp <= |PQR|", ex, "<=", len(p) + len(q) + len(r)))
    return out


def certify_sink2nz(a: PartialAutomaton, cap: int | None = DEFAULT_CAP) -> ReductionCertificate:
    s = sink_to_nz(a)
    rt = reset_threshold(a)
    ex = exponent(s, cap)
    cert = ReductionCertificate(
        "SINK2NZ",
        source=automaton_to_dict(a),
        target=s.to_dict(),
        source_stats={"n": a.n, "letters": a.k, "rt": rt.value, "sink": find_sink(a)},
        target_stats={"n": s.n, "matrices": len(s), "exponent": ex.exponent},
        witnesses={"rt_word": list(rt.witness), "exponent_word": list(ex.witness)},
    )
    cert.inequalities_checked = recheck(cert)
    return cert


def _recheck_sink2nz(cert: ReductionCertificate) -> list[Inequality]:
    a = automaton_from_dict(cert.source)
    s = MatrixSet.from_dict(cert.target)
    rt, ex = cert.source_stats["rt"], cert.target_stats["exponent"]
    rw, ew = cert.witnesses["rt_word"], cert.witnesses["exponent_word"]
    sink = cert.source_stats["sink"]
    return [
        _holds("sink is fixed by every letter", sink is not None and all(l[sink] == sink for l in a.letters)),
        _holds("target is the sink-row construction", s == sink_to_nz(a)),
        _holds("target matrices are NZ", all(is_nz(m) for m in s.matrices)),
        _holds("rt witness synchronizes", _synchronizes(a, rw)),
        Inequality("|rt witness|", len(rw), "==", rt),
        _holds("exponent witness is positive", _positive(s, ew)),
        Inequality("|exponent witness|", len(ew), "==", ex),
        Inequality("exp == rt + 1", ex, "==", rt + 1),
    ]


def certify_classc2nz(
    a: PartialAutomaton, p: Partition, cap: int | None = DEFAULT_CAP
) -> ReductionCertificate:
    s = classc_to_nz(a, p)
    rt = _shortest_or_none(reset_threshold, a)
    ex = _shortest_or_none(exponent, s, cap)
    cert = ReductionCertificate(
        "CLASSC2NZ",
        source=automaton_to_dict(a) | {"partition": p.to_list()},
        target=s.to_dict(),
        source_stats={"n": a.n, "letters": a.k, "rt": None if rt is None else rt.value},
        target_stats={"n": s.n, "matrices": len(s), "exponent": None if ex is None else ex.exponent},
        witnesses={
            "partition": p.to_list(),
            "rt_word": None if rt is None else list(rt.witness),
            "exponent_word": None if ex is None else list(ex.witness),
        },
    )
    if rt is None:
        cert.notes.append("source is not synchronizing; rt <= exp is vacuous")
    cert.inequalities_checked = recheck(cert)
    return cert


def _recheck_classc2nz(cert: ReductionCertificate) -> list[Inequality]:
    a = automaton_from_dict(cert.source)
    s = MatrixSet.from_dict(cert.target)
    p = Partition.of(cert.witnesses["partition"])
    out = [
        _holds("partition passes the class-C conditions", is_class_c_partition(a, p)),
        _holds("target is the grouped OR construction", s == classc_to_nz(a, p)),
        _holds("target matrices are NZ", all(is_nz(m) for m in s.matrices)),
    ]
    rt, ex = cert.source_stats.get("rt"), cert.target_stats.get("exponent")
    if rt is None:
        return out
    rw, ew = cert.witnesses["rt_word"], cert.witnesses["exponent_word"]
    out.append(_holds("rt witness synchronizes", _synchronizes(a, rw)))
    out.append(Inequality("|rt witness|", len(rw), "==", rt))
    if ex is None:
        out.append(_holds("target is primitive", False))
        return out
    out.append(_holds("exponent witness is positive", _positive(s, ew)))
    out.append(Inequality("|exponent witness|", len(ew), "==", ex))
    out.append(Inequality("rt <= exp", rt, "<=", ex))
    return out


def certify_nz2classc(
    s: MatrixSet, letter_cap: int = DEFAULT_LETTER_CAP, cap: int | None = DEFAULT_CAP
) -> ReductionCertificate:
    pair = nz_to_classc_automata(s, letter_cap)
    ex = _shortest_or_none(exponent, s, cap)
    rta = _shortest_or_none(reset_threshold, pair.a)
    rtb = _shortest_or_none(reset_threshold, pair.b)
    cert = ReductionCertificate(
        "NZ2CLASSC",
        source=s.to_dict(),
        target={
            "a": automaton_to_dict(pair.a) | {"partition": pair.a_partition.to_list()},
            "b": automaton_to_dict(pair.b) | {"partition": pair.b_partition.to_list()},
        },
        source_stats={"n": s.n, "matrices": len(s), "exponent": None if ex is None else ex.exponent},
        target_stats={
            "rt_a": None if rta is None else rta.value,
            "rt_b": None if rtb is None else rtb.value,
            "letters_a": pair.a.k,
            "letters_b": pair.b.k,
        },
        witnesses={
            "exponent_word": None if ex is None else list(ex.witness),
            "rt_a_word": None if rta is None else list(rta.witness),
            "rt_b_word": None if rtb is None else list(rtb.witness),
        },
    )
    if ex is None:
        cert.notes.append("source is not primitive; exp <= rt(A) + rt(B) + n - 1 is vacuous")
    cert.inequalities_checked = recheck(cert)
    return cert


def _recheck_nz2classc(cert: ReductionCertificate) -> list[Inequality]:
    s = MatrixSet.from_dict(cert.source)
    st = s.transpose()
    out = []
    for side, src in (("a", s), ("b", st)):
        d = cert.target[side]
        a = automaton_from_dict(d)
        p = Partition.of(d["partition"])
        out.append(_holds(f"{side} is complete", a.is_complete()))
        out.append(_holds(f"{side} partition passes the class-C conditions", is_class_c_partition(a, p)))
        out.append(_holds(f"{side} letters are selection functions of their group's matrix", all(
            all(is_selection_of(a.letters[x], src[g]) for x in part) for g, part in enumerate(p.parts))))
        out.append(Inequality(f"{side} letters", a.k, "==", sum(selection_count(m) for m in src.matrices)))
    ex = cert.source_stats.get("exponent")
    if ex is None:
        return out
    rta, rtb = cert.target_stats["rt_a"], cert.target_stats["rt_b"]
    a = automaton_from_dict(cert.target["a"])
    b = automaton_from_dict(cert.target["b"])
    ew = cert.witnesses["exponent_word"]
    out.append(_holds("exponent witness is positive", _positive(s, ew)))
    out.append(Inequality("|exponent witness|", len(ew), "==", ex))
    out.append(_holds("A and B are synchronizing", rta is not None and rtb is not None))
    if rta is None or rtb is None:
        return out
    out.append(_holds("rt(A) witness synchronizes", _synchronizes(a, cert.witnesses["rt_a_word"])))
    out.append(_holds("rt(B) witness synchronizes", _synchronizes(b, cert.witnesses["rt_b_word"])))
    out.append(Inequality("|rt(A) witness|", len(cert.witnesses["rt_a_word"]), "==", rta))
    out.append(Inequality("|rt(B) witness|", len(cert.witnesses["rt_b_word"]), "==", rtb))
    out.append(Inequality("exp <= rt(A) + rt(B) + n - 1", ex, "<=", rta + rtb + s.n - 1))
    return out


def kari_bound(n: int) -> int:
    return n * n - 3 * n + 3


def total_support_bound(n: int) -> int:
    return 2 * n * n - 5 * n + 5


def certify_ts2euler(
    s: MatrixSet, letter_cap: int = DEFAULT_LETTER_CAP, cap: int | None = DEFAULT_CAP
) -> ReductionCertificate:
    pair = totalsupport_to_eulerian(s, letter_cap)
    ex = _shortest_or_none(exponent, s, cap)
    rta = _shortest_or_none(reset_threshold, pair.a)
    rtb = _shortest_or_none(reset_threshold, pair.b)
    cert = ReductionCertificate(
        "TS2EULER",
        source=s.to_dict(),
        target={
            "a": automaton_to_dict(pair.a) | {"weights": list(pair.a_weights)},
            "b": automaton_to_dict(pair.b) | {"weights": list(pair.b_weights)},
        },
        source_stats={"n": s.n, "matrices": len(s), "exponent": None if ex is None else ex.exponent},
        target_stats={
            "rt_a": None if rta is None else rta.value,
            "rt_b": None if rtb is None else rtb.value,
            "letters_a": pair.a.k,
            "letters_b": pair.b.k,
            "h": list(pair.h),
            "h_transposed": list(pair.h_t),
        },
        witnesses={
            "d": [[list(r) for r in d] for d in pair.d],
            "d_transposed": [[list(r) for r in d] for d in pair.d_t],
            "exponent_word": None if ex is None else list(ex.witness),
            "rt_a_word": None if rta is None else list(rta.witness),
            "rt_b_word": None if rtb is None else list(rtb.witness),
        },
    )
    if ex is None:
        cert.notes.append("source is not primitive; exponent relations are vacuous")
    cert.inequalities_checked = recheck(cert)
    return cert


def _check_pattern(m: BoolMatrix, d: Sequence[Sequence[int]], h: int) -> bool:
    n = m.n
    if len(d) != n or any(len(row) != n for row in d):
        return False
    rows_ok = all(sum(row) == h for row in d)
    cols_ok = all(sum(d[i][j] for i in range(n)) == h for j in range(n))
    support_ok = all((d[i][j] > 0) == bool(m[i, j]) for i in range(n) for j in range(n))
    return h >= 1 and rows_ok and cols_ok and support_ok


def _recheck_ts2euler(cert: ReductionCertificate) -> list[Inequality]:
    s = MatrixSet.from_dict(cert.source)
    n = s.n
    out = []
    for side, src, dkey, hkey in (("a", s, "d", "h"), ("b", s.transpose(), "d_transposed", "h_transposed")):
        d_all, h_all = cert.witnesses[dkey], cert.target_stats[hkey]
        out.append(_holds(f"{side}: D_M are integer doubly stochastic patterns", all(
            _check_pattern(m, d, h) for m, d, h in zip(src.matrices, d_all, h_all))))
        td = cert.target[side]
        a = automaton_from_dict(td)
        weights = td["weights"]
        expected = []
        for g, m in enumerate(src.matrices):
            for f in selection_functions(m):
                expected.append((f, prod(d_all[g][i][t] for i, t in enumerate(f))))
        out.append(_holds(f"{side}: letters and multiplicities match the patterns",
                          list(zip(a.letters, weights)) == expected))
        out.append(_holds(f"{side} is Eulerian with multiplicities", is_eulerian(a, weights)))
        out.append(Inequality(f"{side}: total multiplicity", sum(weights), "==", sum(h ** n for h in h_all)))
    rta, rtb = cert.target_stats.get("rt_a"), cert.target_stats.get("rt_b")
    a = automaton_from_dict(cert.target["a"])
    b = automaton_from_dict(cert.target["b"])
    if rta is not None:
        out.append(_holds("rt(A) witness synchronizes", _synchronizes(a, cert.witnesses["rt_a_word"])))
        out.append(Inequality("|rt(A) witness|", len(cert.witnesses["rt_a_word"]), "==", rta))
        out.append(Inequality("rt(A) <= n^2 - 3n + 3", rta, "<=", kari_bound(n)))
    if rtb is not None:
        out.append(_holds("rt(B) witness synchronizes", _synchronizes(b, cert.witnesses["rt_b_word"])))
        out.append(Inequality("|rt(B) witness|", len(cert.witnesses["rt_b_word"]), "==", rtb))
        out.append(Inequality("rt(B) <= n^2 - 3n + 3", rtb, "<=", kari_bound(n)))
    ex = cert.source_stats.get("exponent")
    if ex is None:
        return out
    ew = cert.witnesses["exponent_word"]
    out.append(_holds("exponent witness is positive", _positive(s, ew)))
    out.append(Inequality("|exponent witness|", len(ew), "==", ex))
    out.append(_holds("A and B are synchronizing", rta is not None and rtb is not None))
    if rta is not None and rtb is not None:
        out.append(Inequality("exp <= rt(A) + rt(B) + n - 1", ex, "<=", rta + rtb + n - 1))
        out.append(Inequality("rt(A) + rt(B) + n - 1 <= 2n^2 - 5n + 5", rta + rtb + n - 1, "<=", total_support_bound(n)))
    out.append(Inequality("exp <= 2n^2 - 5n + 5", ex, "<=", total_support_bound(n)))
    return out


_RECHECKS = {
    "M2PA": _recheck_m2pa,
    "PA2M": _recheck_pa2m,
    "SANDWICH": _recheck_sandwich,
    "SINK2NZ": _recheck_sink2nz,
    "CLASSC2NZ": _recheck_classc2nz,
    "NZ2CLASSC": _recheck_nz2classc,
    "TS2EULER": _recheck_ts2euler,
}


def recheck(cert: ReductionCertificate) -> list[Inequality]:
    """Re-derive every relation of a certificate from its stored objects and witnesses."""
    return _RECHECKS[cert.kind](cert)


def certificate_holds(cert: ReductionCertificate) -> bool:
    """The stored relations all pass and agree with a fresh re-derivation."""
    fresh = recheck(cert)
    return all(i.passed for i in fresh) and fresh == cert.inequalities_checked
