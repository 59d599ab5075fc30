"""Acceptance criteria 1-11.

Each test appends one ``PASS``/``FAIL`` line to ``RESULTS``; the conftest
terminal-summary hook prints them at the end of the run, so they show up in
plain ``pytest -v`` output as well as with ``-s``.
"""

from __future__ import annotations

import time
from itertools import combinations_with_replacement

import pytest

from primset import BoolMatrix, MatrixSet
from primset.automata import (
    apply_word,
    cerny,
    cerny_plus_identity,
    class_c_partition,
    reset_threshold,
)
from primset.boolmat import is_irreducible_set, is_nz
from primset.bounds import lemma3_check
from primset.harness import default_spec, verify
from primset.partitions import Partition
from primset.primitivity import exponent, is_primitive, pv_partition_test, verify_witness
from primset.reductions import certify_classc2nz, classc_to_nz

from conftest import FIG1, wielandt

RESULTS: list[str] = []


@pytest.fixture
def criterion(request):
    """Yields a dict for details; records PASS/FAIL for the test when it finishes."""
    number, title = request.node.function.criterion
    info: dict = {}
    yield info
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    extra = ", ".join(f"{k}={v}" for k, v in info.items())
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({extra})" if extra else "")
    RESULTS.append(line)
    print(line)


def crit(number: int, title: str):
    def mark(fn):
        fn.criterion = (number, title)
        return fn
    return mark


@crit(1, "fig1 set has exponent 4, witness M1 M2 M1 M2, under 1 s")
def test_c01_fig1(criterion):
    s = MatrixSet.from_lists(FIG1)
    t0 = time.perf_counter()
    r = exponent(s)
    elapsed = time.perf_counter() - t0
    criterion.update(exponent=r.exponent, witness=list(r.witness), seconds=f"{elapsed:.4f}")
    assert r.exponent == 4 and r.witness == (0, 1, 0, 1)
    assert verify_witness(s, r.witness)
    assert elapsed < 1.0


@crit(2, "rt(cerny(n)) = (n-1)^2 for n = 3..7, each under 5 s")
def test_c02_cerny(criterion):
    values = {}
    for n in range(3, 8):
        t0 = time.perf_counter()
        r = reset_threshold(cerny(n))
        elapsed = time.perf_counter() - t0
        values[n] = r.value
        assert len(apply_word(cerny(n), range(n), r.witness)) == 1
        assert r.value == (n - 1) ** 2
        assert elapsed < 5.0
    criterion.update(values=values)


@crit(3, "exp(sink_to_nz(A)) = rt(A) + 1 on 100 sink automata, n <= 6, 2-3 letters")
def test_c03_lemma6(criterion):
    spec = default_spec("LEMMA6", n=6, n_min=2, count=100, seed=2024, alphabet_min=2, alphabet=3)
    rep = verify("LEMMA6", spec)
    criterion.update(passed=rep.passed, failed=rep.failed, rejected=rep.rejected)
    assert rep.attempted == 100 and rep.passed == 100


@crit(4, "exp(partial_to_matrixset(A)) = car(A) + 1 on 50 partial automata, n <= 5")
def test_c04_thm2_construction(criterion):
    spec = default_spec("THM2_CONSTRUCTION", n=5, n_min=2, count=50, seed=2024)
    rep = verify("THM2_CONSTRUCTION", spec)
    criterion.update(passed=rep.passed, failed=rep.failed, rejected=rep.rejected, filtered=rep.filtered)
    assert rep.attempted == 50 and rep.passed == 50
    assert all(r.value == r.reference for r in rep.results)


@crit(5, "|PQR| <= 2 car + n - 1 on every primitive instance of a 50-set corpus, n <= 4")
def test_c05_thm2_sandwich(criterion):
    spec = default_spec("THM2_SANDWICH", n=4, n_min=2, count=50, seed=2024, alphabet_min=2, alphabet=3)
    rep = verify("THM2_SANDWICH", spec)
    criterion.update(passed=rep.passed, failed=rep.failed, rejected=rep.rejected, filtered=rep.filtered)
    assert rep.attempted == 50 and rep.passed == 50
    assert all(r.value <= r.reference for r in rep.results)


@crit(6, "total-support sets: Eulerian, rt <= n^2-3n+3, exp <= 2n^2-5n+5 on 100 sets, n <= 5")
def test_c06_total_support(criterion):
    spec = default_spec("TOTAL_SUPPORT", n=5, n_min=2, count=100, seed=2024, perms_min=2, perms=3)
    rep = verify("TOTAL_SUPPORT", spec)
    criterion.update(passed=rep.passed, failed=rep.failed, rejected=rep.rejected, filtered=rep.filtered)
    assert rep.attempted == 100 and rep.passed == 100


@crit(7, "transversal bounds: exhaustive for n <= 9, balanced maximizer for n <= 30")
def test_c07_lemma3(criterion):
    checks = 0
    for n in range(1, 31):
        rep = lemma3_check(n, exhaustive=n <= 9)
        assert rep.passed, rep.violations
        checks += rep.checks
    criterion.update(checks=checks)


@crit(8, "Wielandt exponent n^2-2n+2 for n = 3..6, never above (n-1)^2+1")
def test_c08_wielandt(criterion):
    values = {}
    for n in range(3, 7):
        e = exponent(MatrixSet.of([wielandt(n)])).exponent
        values[n] = e
        assert e == n * n - 2 * n + 2
        assert e <= (n - 1) ** 2 + 1
    criterion.update(values=values)


@crit(9, "partition test agrees with is_primitive on all irreducible 3x3 NZ pairs")
def test_c09_pv_equivalence(criterion):
    nz = [m for m in (BoolMatrix(3, (b & 7, (b >> 3) & 7, b >> 6)) for b in range(512)) if is_nz(m)]
    swept = imprimitive = 0
    for x, y in combinations_with_replacement(nz, 2):
        s = MatrixSet.of([x, y])
        if not is_irreducible_set(s):
            continue
        swept += 1
        prim = is_primitive(s)
        imprimitive += not prim
        assert (pv_partition_test(s) is None) == prim, s.to_dict()
    criterion.update(pairs=swept, imprimitive=imprimitive)
    assert swept > 0 and imprimitive > 0


@crit(10, "greedy l = 1 word is valid and |u_k| <= (n-k) 2^(n-k-1) on 25 automata, n <= 10")
def test_c10_greedy(criterion):
    spec = default_spec("GREEDY_L1", n=10, n_min=5, count=25, seed=2024)
    rep = verify("GREEDY_L1", spec)
    criterion.update(passed=rep.passed, failed=rep.failed, largest_n=max(r.n for r in rep.results))
    assert rep.attempted == 25 and rep.passed == 25


@crit(11, "class-C partition of C_4 + identity is {a,c},{b}; classc_to_nz exponent >= 9")
def test_c11_class_c(criterion):
    a = cerny_plus_identity(4)
    p = class_c_partition(a)
    assert p == Partition.of([[0, 2], [1]])
    s = classc_to_nz(a, p)
    e = exponent(s).exponent
    criterion.update(partition=p.to_list(), exponent=e)
    assert all(is_nz(m) for m in s) and e >= 9
    assert certify_classc2nz(a, p).passed
