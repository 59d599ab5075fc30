"""Corpus-level verification of the reductions and bounds.

Each theorem id pairs a default instance family with an eligibility filter
and a per-instance check.  Draws that fail the filter (an imprimitive set
for an exponent bound, say) are counted as ``filtered`` and replaced by the
next draw; instances that hit a search cap are counted as ``rejected``.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable

from .automata import (
    PartialAutomaton,
    apply_word,
    careful_threshold,
    greedy_careful_word,
    is_synchronizing,
    reset_threshold,
)
from .bounds import lemma3_check
from .boolmat import MatrixSet, is_irreducible_set
from .corpus import CorpusSpec, Family, stream
from .errors import CapExceeded, NotCarefullySynchronizing, UndefinedTransition
from .io import dumps
from .primitivity import DEFAULT_CAP, is_primitive, pv_partition_test
from .reductions import (
    ReductionCertificate,
    certify_classc2nz,
    certify_nz2classc,
    certify_pa2m,
    certify_sandwich,
    certify_sink2nz,
    certify_ts2euler,
    nz_to_classc_automata,
    recheck,
)

CSV_COLUMNS = ("theorem", "index", "n", "size", "status", "value", "relation", "reference", "wall_ms")

MAX_DRAWS_PER_INSTANCE = 1000


@dataclass
class InstanceResult:
    index: int
    n: int
    size: int
    status: str  # "pass", "fail" or "rejected"
    value: int | None = None
    relation: str = ""
    reference: int | None = None
    detail: dict = field(default_factory=dict)
    wall_ms: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "index": self.index,
            "n": self.n,
            "size": self.size,
            "status": self.status,
            "value": self.value,
            "relation": self.relation,
            "reference": self.reference,
            "detail": self.detail,
        }
        if timing:
            d["wall_ms"] = round(self.wall_ms, 3)
        return d


@dataclass
class VerificationReport:
    theorem: str
    spec: dict
    results: list[InstanceResult] = field(default_factory=list)
    filtered: int = 0
    wall_time_s: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def attempted(self) -> int:
        return len(self.results)

    def _count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    @property
    def passed(self) -> int:
        return self._count("pass")

    @property
    def failed(self) -> int:
        return self._count("fail")

    @property
    def rejected(self) -> int:
        return self._count("rejected")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.results if r.status == "fail"]

    def to_dict(self, timestamp: bool = True) -> dict:
        results = sorted(self.results, key=lambda r: r.index)
        d = {
            "theorem": self.theorem,
            "spec": self.spec,
            "attempted": self.attempted,
            "passed": self.passed,
            "failed": self.failed,
            "rejected": self.rejected,
            "filtered": self.filtered,
            "ok": self.ok,
            "notes": self.notes,
            "failures": [r.to_dict(timestamp) for r in results if r.status == "fail"],
            "instances": [r.to_dict(timestamp) for r in results],
        }
        if timestamp:
            d["wall_time_s"] = round(self.wall_time_s, 3)
            d["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return d

    def to_json(self, timestamp: bool = True) -> str:
        return json.dumps(self.to_dict(timestamp), indent=2) + "\n"

    def to_csv(self, timestamp: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in sorted(self.results, key=lambda r: r.index):
            w.writerow([
                self.theorem, r.index, r.n, r.size, r.status,
                "" if r.value is None else r.value, r.relation,
                "" if r.reference is None else r.reference,
                f"{r.wall_ms:.3f}" if timestamp else "",
            ])
        return buf.getvalue()

    def summary(self) -> str:
        return (f"{self.theorem}: attempted={self.attempted} passed={self.passed} "
                f"failed={self.failed} rejected={self.rejected} filtered={self.filtered}")


# per-theorem checks: each returns (passed, value, relation, reference, detail)

Outcome = tuple[bool, "int | None", str, "int | None", dict]


def _replayed(cert: ReductionCertificate) -> bool:
    """Round-trip the certificate through JSON and re-derive every relation from it."""
    again = ReductionCertificate.from_dict(json.loads(json.dumps(cert.to_dict())))
    fresh = recheck(again)
    return bool(fresh) and all(i.passed for i in fresh) and fresh == cert.inequalities_checked


def _cert_outcome(cert: ReductionCertificate, value_key: tuple[str, str], relation: str, reference: int | None) -> Outcome:
    ok = cert.passed and _replayed(cert)
    stats = cert.source_stats if value_key[0] == "source" else cert.target_stats
    failed = [i.to_dict() for i in cert.inequalities_checked if not i.passed]
    detail = {"inequalities_failed": failed} if failed else {}
    if not ok:
        detail["certificate"] = cert.to_dict()
    return ok, stats.get(value_key[1]), relation, reference, detail


def _check_lemma6(a: PartialAutomaton, cap: int) -> Outcome:
    cert = certify_sink2nz(a, cap)
    return _cert_outcome(cert, ("target", "exponent"), "==", cert.source_stats["rt"] + 1)


def _check_thm2_construction(a: PartialAutomaton, cap: int) -> Outcome:
    cert = certify_pa2m(a, cap)
    car = cert.source_stats["car"]
    return _cert_outcome(cert, ("target", "exponent"), "==", car + 1)


def _check_thm2_sandwich(s: MatrixSet, cap: int) -> Outcome:
    cert = certify_sandwich(s, cap=cap)
    ts = cert.target_stats
    return _cert_outcome(cert, ("target", "length"), "<=", 2 * max(ts["car_a"], ts["car_b"]) + s.n - 1)


def _check_thm4(s: MatrixSet, cap: int) -> Outcome:
    cert = certify_nz2classc(s, cap=cap)
    ts = cert.target_stats
    ok, value, rel, _, detail = _cert_outcome(cert, ("source", "exponent"), "<=", None)
    reference = ts["rt_a"] + ts["rt_b"] + s.n - 1 if ts["rt_a"] is not None and ts["rt_b"] is not None else None
    # the converse direction, on the automaton just built
    pair = nz_to_classc_automata(s)
    back = certify_classc2nz(pair.a, pair.a_partition, cap)
    back_ok = back.passed and _replayed(back) and back.target == s.to_dict()
    if not back_ok:
        detail["converse_certificate"] = back.to_dict()
    detail["rt_a"] = ts["rt_a"]
    return ok and back_ok, value, rel, reference, detail


def _check_total_support(s: MatrixSet, cap: int) -> Outcome:
    cert = certify_ts2euler(s, cap=cap)
    return _cert_outcome(cert, ("source", "exponent"), "<=", 2 * s.n * s.n - 5 * s.n + 5)


def _check_greedy(a: PartialAutomaton, cap: int) -> Outcome:
    res = greedy_careful_word(a, (1,))
    car = careful_threshold(a).value
    n = a.n
    try:
        valid = len(apply_word(a, range(n), res.word)) == 1
    except UndefinedTransition:
        valid = False
    over = [
        {"k": st.k, "length": st.length, "bound": (n - st.k) * 2 ** (n - st.k - 1)}
        for st in res.trace
        if st.length > (n - st.k) * 2 ** (n - st.k - 1)
    ]
    ok = valid and not over and len(res.word) >= car
    detail = {"car": car, "trace": [[st.k, st.length, list(st.t_lengths)] for st in res.trace]}
    if over:
        detail["bound_violations"] = over
    if not ok:
        detail["word"] = list(res.word)
    return ok, len(res.word), ">=", car, detail


def _check_cerny(a: PartialAutomaton, cap: int) -> Outcome:
    rt = reset_threshold(a)
    ok = len(apply_word(a, range(a.n), rt.witness)) == 1 and rt.value == (a.n - 1) ** 2
    return ok, rt.value, "==", (a.n - 1) ** 2, {"witness": list(rt.witness)}


def _check_pv(s: MatrixSet, cap: int) -> Outcome:
    cert = pv_partition_test(s)
    prim = is_primitive(s, cap)
    ok = (cert is None) == prim
    detail = {"primitive": prim, "pv_partition": None if cert is None else cert.to_dict()}
    return ok, int(cert is None), "==", int(prim), detail


def _carefully_synchronizing(a: PartialAutomaton, cap: int) -> bool:
    try:
        careful_threshold(a)
    except NotCarefullySynchronizing:
        return False
    return True


def _greedy_applicable(a: PartialAutomaton, cap: int) -> bool:
    """Carefully synchronizing, with a letter defined everywhere that merges two states."""
    full = a.full
    starts = any(a.defined_on(full, x) and a.image(full, x) != full for x in range(a.k))
    return starts and _carefully_synchronizing(a, cap)


def _always(obj, cap: int) -> bool:
    return True


def _primitive(s: MatrixSet, cap: int) -> bool:
    return is_primitive(s, cap)


def _irreducible(s: MatrixSet, cap: int) -> bool:
    return is_irreducible_set(s)


def _synchronizing(a: PartialAutomaton, cap: int) -> bool:
    return is_synchronizing(a)


@dataclass(frozen=True)
class Theorem:
    family: Family | None
    eligible: Callable
    check: Callable
    defaults: dict = field(default_factory=dict)


THEOREMS: dict[str, Theorem] = {
    "LEMMA6": Theorem(Family.RANDOM_SINK_AUT, _always, _check_lemma6, {"alphabet_min": 2, "alphabet": 3}),
    "THM2_CONSTRUCTION": Theorem(Family.RANDOM_PARTIAL_AUT, _carefully_synchronizing, _check_thm2_construction,
                                 {"alphabet_min": 2, "alphabet": 3}),
    "THM2_SANDWICH": Theorem(Family.RANDOM_NZ_SET, _primitive, _check_thm2_sandwich, {"density": 0.3}),
    "THM4": Theorem(Family.RANDOM_NZ_SET, _primitive, _check_thm4, {"density": 0.3}),
    "TOTAL_SUPPORT": Theorem(Family.RANDOM_TOTAL_SUPPORT_SET, _primitive, _check_total_support,
                             {"perms_min": 2, "perms": 3}),
    "GREEDY_L1": Theorem(Family.RANDOM_PARTIAL_AUT, _greedy_applicable, _check_greedy, {"undefined": 0.0}),
    "CERNY": Theorem(Family.CERNY, _always, _check_cerny),
    "PV_EQUIV": Theorem(Family.RANDOM_NZ_SET, _irreducible, _check_pv, {"density": 0.3}),
    "LEMMA3": Theorem(None, _always, None),
}


def default_spec(theorem: str, n: int, count: int, seed: int = 0, n_min: int | None = None, **overrides) -> CorpusSpec:
    th = THEOREMS[theorem]
    family = th.family or Family.CERNY
    params = {**th.defaults, **{k: v for k, v in overrides.items() if v is not None}}
    if family in (Family.CERNY, Family.CERNY_PLUS_IDENTITY) and n_min is None:
        n_min = 2
    return CorpusSpec(family, n=n, count=count, seed=seed, n_min=n_min, **params)


def _size(obj) -> int:
    return len(obj) if isinstance(obj, MatrixSet) else obj.k


def verify(theorem: str, spec: CorpusSpec, cap: int | None = DEFAULT_CAP) -> VerificationReport:
    """Run ``theorem``'s check on ``spec.count`` eligible instances of the spec's stream."""
    if theorem not in THEOREMS:
        raise KeyError(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}")
    th = THEOREMS[theorem]
    report = VerificationReport(theorem, spec.to_dict())
    start = time.perf_counter()
    if theorem == "LEMMA3":
        lo, hi = spec.n_range
        for idx, n in enumerate(range(lo, hi + 1)):
            t0 = time.perf_counter()
            rep = lemma3_check(n)
            report.results.append(InstanceResult(
                idx, n, 0, "pass" if rep.passed else "fail", rep.checks, "violations==", 0,
                {"violations": rep.violations} if rep.violations else {},
                (time.perf_counter() - t0) * 1000))
        report.wall_time_s = time.perf_counter() - start
        return report

    if th.family is not None and spec.family is not th.family:
        report.notes.append(f"family {spec.family.value} differs from the default {th.family.value}")
    draws = 0
    max_draws = max(1, spec.count) * MAX_DRAWS_PER_INSTANCE
    source = stream(spec)
    while report.attempted < spec.count and draws < max_draws:
        obj = next(source)
        draws += 1
        t0 = time.perf_counter()
        try:
            if not th.eligible(obj, cap):
                report.filtered += 1
                continue
            passed, value, rel, ref, detail = th.check(obj, cap)
            status = "pass" if passed else "fail"
        except CapExceeded as exc:
            status, value, rel, ref = "rejected", None, "", None
            detail = {"reason": str(exc)}
        if status == "fail":
            detail["instance"] = dumps(obj)
        report.results.append(InstanceResult(
            report.attempted, obj.n, _size(obj), status, value, rel, ref, detail,
            (time.perf_counter() - t0) * 1000))
    if report.attempted < spec.count:
        report.notes.append(f"only {report.attempted} eligible instances in {draws} draws")
    report.wall_time_s = time.perf_counter() - start
    return report
