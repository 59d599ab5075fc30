"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import io
from .automata import PartialAutomaton, careful_threshold, class_c_partition, reset_threshold
from .boolmat import MatrixSet
from .bounds import CATALOG, bound_catalog
from .corpus import CorpusSpec, Family, gen
from .errors import (
    CapExceeded,
    NotCarefullySynchronizing,
    NotPrimitive,
    NotSynchronizing,
    PreconditionViolated,
    PrimsetError,
)
from .harness import THEOREMS, default_spec, verify
from .partitions import Partition
from .primitivity import DEFAULT_CAP, exponent, is_primitive, pv_partition_test
from .reductions import (
    KINDS,
    certify_classc2nz,
    certify_m2pa,
    certify_nz2classc,
    certify_pa2m,
    certify_sandwich,
    certify_sink2nz,
    certify_ts2euler,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _load(path: str, kind: type):
    try:
        obj = io.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if not isinstance(obj, kind):
        want = ".json matrix set" if kind is MatrixSet else ".paut automaton"
        raise InputError(f"{path}: expected a {want}")
    return obj


def cmd_exp(args) -> int:
    s = _load(args.file, MatrixSet)
    try:
        res = exponent(s, args.cap)
    except NotPrimitive:
        _emit({"exponent": None, "primitive": False})
        return EXIT_FAIL
    _emit({"exponent": res.exponent, "witness": list(res.witness)})
    return EXIT_OK


def cmd_rt(args) -> int:
    a = _load(args.file, PartialAutomaton)
    try:
        res = reset_threshold(a)
    except NotSynchronizing:
        _emit({"rt": None, "synchronizing": False})
        return EXIT_FAIL
    _emit(res.to_dict("rt"))
    return EXIT_OK


def cmd_car(args) -> int:
    a = _load(args.file, PartialAutomaton)
    try:
        res = careful_threshold(a)
    except NotCarefullySynchronizing:
        _emit({"car": None, "carefully_synchronizing": False})
        return EXIT_FAIL
    _emit(res.to_dict("car"))
    return EXIT_OK


def cmd_primitive(args) -> int:
    s = _load(args.file, MatrixSet)
    prim = is_primitive(s, args.cap)
    out: dict = {"primitive": prim}
    if args.pv:
        try:
            cert = pv_partition_test(s)
        except PreconditionViolated as exc:
            out["pv_partition"] = None
            out["pv_skipped"] = str(exc)
        else:
            out["pv_partition"] = None if cert is None else cert.to_dict()
    _emit(out)
    return EXIT_OK


def _parse_partition(text: str, k: int) -> Partition:
    try:
        parts = [[int(x) for x in block.split(",") if x] for block in text.split("/")]
        return Partition(k, tuple(tuple(b) for b in parts))
    except ValueError as exc:
        raise InputError(f"bad --partition {text!r}: {exc}") from exc


def cmd_reduce(args) -> int:
    kind = args.kind
    if kind in ("M2PA", "SANDWICH", "NZ2CLASSC", "TS2EULER"):
        s = _load(args.file, MatrixSet)
        cert = {
            "M2PA": lambda: certify_m2pa(s, args.letter_cap),
            "SANDWICH": lambda: certify_sandwich(s, args.letter_cap, args.cap),
            "NZ2CLASSC": lambda: certify_nz2classc(s, args.letter_cap, args.cap),
            "TS2EULER": lambda: certify_ts2euler(s, args.letter_cap, args.cap),
        }[kind]()
    else:
        a = _load(args.file, PartialAutomaton)
        if kind == "PA2M":
            cert = certify_pa2m(a, args.cap)
        elif kind == "SINK2NZ":
            cert = certify_sink2nz(a, args.cap)
        else:
            if args.partition:
                p = _parse_partition(args.partition, a.k)
            else:
                p = class_c_partition(a)
                if p is None:
                    raise InputError(f"{args.file}: the automaton has no class-C partition")
            cert = certify_classc2nz(a, p, args.cap)
    _emit(cert.to_dict())
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_bounds(args) -> int:
    if args.n < 1:
        raise InputError("--n must be positive")
    values = bound_catalog(args.n)
    width = max(len(e.name) for e in CATALOG)
    for e in CATALOG:
        v = values[e.name]
        shown = f"{v:.6g}" if isinstance(v, float) else str(v)
        sys.stdout.write(f"{e.name:<{width}}  {shown:>14}  {e.anchor}\n")
    _emit({"n": args.n, "bounds": values})
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = _spec(args, Family(args.family))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, obj in enumerate(gen(spec)):
        io.save(obj, out / f"{spec.family.value.lower()}_{i:04d}{io.suffix_for(obj)}")
    _emit({"spec": spec.to_dict(), "written": spec.count, "out": str(out)})
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _spec(args, None)
    report = verify(args.theorem, spec, args.cap)
    stamp = not args.no_timestamp
    if args.csv:
        sys.stdout.write(report.to_csv(stamp))
    elif args.json:
        sys.stdout.write(report.to_json(stamp))
    else:
        sys.stdout.write(report.summary() + "\n")
        for f in report.failures:
            sys.stdout.write(json.dumps(f.to_dict(stamp)) + "\n")
    if report.rejected:
        sys.stderr.write(f"{report.rejected} instance(s) rejected by caps\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def _spec(args, family: Family | None):
    params = dict(
        seed=args.seed, n_min=args.n_min, alphabet=args.alphabet, alphabet_min=args.alphabet_min,
        density=args.density, undefined=args.undefined, perms=args.perms, perms_min=args.perms_min,
    )
    if family is None:
        return default_spec(args.theorem, args.n, args.samples, **params)
    return CorpusSpec(family, n=args.n, count=args.count, **{k: v for k, v in params.items() if v is not None})


def _corpus_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="largest instance size")
    p.add_argument("--n-min", type=int, help="smallest instance size (default: --n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphabet", type=int, help="largest number of letters / matrices")
    p.add_argument("--alphabet-min", type=int)
    p.add_argument("--density", type=float, help="entry probability for random NZ sets")
    p.add_argument("--undefined", type=float, help="probability of an undefined transition")
    p.add_argument("--perms", type=int, help="largest number of permutations summed")
    p.add_argument("--perms-min", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="primset", description=__doc__.splitlines()[0])
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="limit on distinct products in exponent searches")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, what in (
        ("exp", cmd_exp, "exponent and a shortest positive product of a .json matrix set"),
        ("rt", cmd_rt, "reset threshold and a shortest reset word of a .paut automaton"),
        ("car", cmd_car, "careful synchronization threshold of a .paut automaton"),
    ):
        p = sub.add_parser(name, help=what)
        p.add_argument("file")
        p.set_defaults(func=fn)

    p = sub.add_parser("primitive", help="primitivity test")
    p.add_argument("file")
    p.add_argument("--pv", action="store_true", help="also run the partition test and report its certificate")
    p.set_defaults(func=cmd_primitive)

    p = sub.add_parser("reduce", help="run a reduction and print its certificate")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("file")
    p.add_argument("--letter-cap", type=int, default=20_000)
    p.add_argument("--partition", help="class-C alphabet partition for CLASSC2NZ, e.g. '0,2/1'")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bounds", help="evaluate the bound catalog")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gen", help="write a seeded corpus to a directory")
    p.add_argument("family", choices=[f.value for f in Family])
    _corpus_options(p)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a theorem on a seeded corpus")
    p.add_argument("theorem", choices=sorted(THEOREMS))
    _corpus_options(p)
    p.add_argument("--samples", type=int, default=10)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--no-timestamp", action="store_true", help="omit timestamps and wall times")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    except (InputError, PrimsetError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
