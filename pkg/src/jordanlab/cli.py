"""Command line interface.

Exit codes: 0 success, 1 verification records failed, 2 unknown algebra or
suite name, 3 I/O error, 4 invalid frame, 5 kit unusable or kit residual
too large, 6 precondition rejected (not associating / not bijective),
7 decomposition failed past the preconditions.

All JSON output is canonical: sorted keys, floats rendered with 17
significant digits, no whitespace variation, so identical inputs produce
byte-identical documents.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .algebra_zoo import algebra_by_name, registry_names
from .decompose import (
    JNotMultiplicative,
    KitMissing,
    LambdaNotInvertible,
    NotAssociating,
    NotBijective,
    ResidualExceeded,
    bilinear_from_json,
    decompose_linear,
    decompose_preserver,
    decompose_trace,
    linmap_form_to_json,
    preserver_to_json,
    trace_form_to_json,
)
from .elementary_ops import FrameInvalid, build_kit, kit_from_json, kit_to_json, verify_kit
from .genverify import (
    GenConfig,
    SUITES,
    UnknownSuite,
    report_to_json,
    report_to_markdown,
    run_suite,
)
from .jordan_core import algebra_to_json, linop_from_json
from .numerics import Tolerance

EXIT_FAIL = 1
EXIT_UNKNOWN_NAME = 2
EXIT_IO = 3
EXIT_FRAME = 4
EXIT_KIT = 5
EXIT_PRECONDITION = 6
EXIT_DECOMPOSE = 7


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, 17 significant digits for floats."""
    def ser(x):
        if isinstance(x, dict):
            items = sorted(x.items(), key=lambda kv: kv[0])
            return "{" + ",".join(json.dumps(str(k)) + ":" + ser(v)
                                  for k, v in items) + "}"
        if isinstance(x, (list, tuple)):
            return "[" + ",".join(ser(v) for v in x) + "]"
        if isinstance(x, bool) or isinstance(x, np.bool_):
            return "true" if x else "false"
        if isinstance(x, (int, np.integer)):
            return str(int(x))
        if isinstance(x, (float, np.floating)):
            return format(float(x), ".17g")
        if x is None:
            return "null"
        return json.dumps(str(x))
    return ser(obj) + "\n"


def _emit(text: str, out: str):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as ex:
        raise _IoError(str(ex))


class _IoError(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as ex:
        raise _IoError(f"{path}: {ex}")


def _algebra(name: str):
    try:
        return algebra_by_name(name)
    except (KeyError, ValueError) as ex:
        print(f"unknown algebra: {ex}", file=sys.stderr)
        sys.exit(EXIT_UNKNOWN_NAME)


def _tol(args) -> Tolerance:
    return Tolerance(abs_eps=args.tol)


def cmd_zoo(args) -> int:
    if args.zoo_cmd == "list":
        _emit("".join(n + "\n" for n in registry_names()), args.out)
        return 0
    entry = _algebra(args.algebra)
    doc = algebra_to_json(entry.algebra)
    _emit(canonical_json(doc), args.out)
    return 0


def cmd_kit(args) -> int:
    entry = _algebra(args.algebra)
    tol = _tol(args)
    try:
        kit = build_kit(entry, tol, alternate=args.alternate)
    except FrameInvalid as ex:
        print(f"frame invalid: {ex}", file=sys.stderr)
        return EXIT_FRAME
    report = verify_kit(kit, tol, seed=args.seed)
    doc = kit_to_json(kit)
    doc["verification"] = {
        "kronecker_max": report["kronecker_max"],
        "norm_max": report["norm_max"],
        "star_symmetry": report["star_symmetry"],
        "central_linearity": report["central_linearity"],
        "passed": report["passed"],
    }
    _emit(canonical_json(doc), args.out)
    if not report["passed"]:
        print(f"kit residual too large: kronecker {report['kronecker_max']:.3e}, "
              f"norm {report['norm_max']:.3e}", file=sys.stderr)
        return EXIT_KIT
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    cfg = GenConfig(master_seed=args.seed, samples=args.trials,
                    adversarial_rate=args.adversarial_rate)
    tol = _tol(args)
    reports = []
    try:
        for name in names:
            reports.append(run_suite(name, cfg, tol))
    except UnknownSuite as ex:
        print(f"unknown suite: {ex}", file=sys.stderr)
        return EXIT_UNKNOWN_NAME
    if args.format == "md":
        text = "\n".join(report_to_markdown(r) for r in reports)
    else:
        text = canonical_json({"reports": [report_to_json(r) for r in reports]})
    _emit(text, args.out)
    ok = all(r.all_pass() for r in reports)
    if not ok:
        n_bad = sum(1 for r in reports for rec in r.records if not rec["pass"])
        print(f"{n_bad} records failed", file=sys.stderr)
    return 0 if ok else EXIT_FAIL


def _kit_for_args(args, entry, tol):
    if args.kit:
        try:
            return kit_from_json(_load_json(args.kit), entry.algebra)
        except (KeyError, ValueError) as ex:
            raise KitMissing(str(ex))
    return build_kit(entry, tol)


def cmd_decompose(args) -> int:
    entry = _algebra(args.algebra)
    A = entry.algebra
    tol = _tol(args)
    obj = _load_json(args.input)
    try:
        kit = _kit_for_args(args, entry, tol)
        if args.target == "linear":
            T = linop_from_json(obj)
            form = decompose_linear(A, T, kit, tol)
            doc = linmap_form_to_json(A, form)
        elif args.target == "trace":
            B = bilinear_from_json(obj, A)
            form = decompose_trace(A, B, kit, tol)
            doc = trace_form_to_json(A, form)
        else:
            phi = linop_from_json(obj)
            form = decompose_preserver(A, A, phi, kit, tol)
            doc = preserver_to_json(A, A, form)
    except FrameInvalid as ex:
        print(f"frame invalid: {ex}", file=sys.stderr)
        return EXIT_FRAME
    except KitMissing as ex:
        print(f"kit unusable: {ex}", file=sys.stderr)
        return EXIT_KIT
    except (NotAssociating, NotBijective) as ex:
        print(f"precondition rejected: {type(ex).__name__}: {ex}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ResidualExceeded, JNotMultiplicative, LambdaNotInvertible) as ex:
        print(f"decomposition failed: {type(ex).__name__}: {ex}", file=sys.stderr)
        return EXIT_DECOMPOSE
    _emit(canonical_json(doc), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    env_seed = int(os.environ.get("JORDANLAB_SEED", "0"))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9,
                        help="absolute tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=env_seed,
                        help="master seed (default JORDANLAB_SEED or 0)")
    common.add_argument("--out", default=None,
                        help="output file (default stdout)")

    ap = argparse.ArgumentParser(
        prog="jordanlab",
        description="elementary-operator kits, independence tests and "
                    "structure decompositions for finite-dimensional "
                    "Jordan algebras")
    sub = ap.add_subparsers(dest="cmd", required=True)

    zoo = sub.add_parser("zoo", help="built-in algebra registry")
    zoo_sub = zoo.add_subparsers(dest="zoo_cmd", required=True)
    zoo_sub.add_parser("list", help="list registry names", parents=[common])
    zx = zoo_sub.add_parser("export", help="export an algebra as JSON",
                            parents=[common])
    zx.add_argument("--algebra", required=True)

    kit = sub.add_parser("kit", help="elementary operator kits")
    kit_sub = kit.add_subparsers(dest="kit_cmd", required=True)
    kb = kit_sub.add_parser("build", help="build and verify a kit",
                            parents=[common])
    kb.add_argument("--algebra", required=True)
    kb.add_argument("--alternate", action="store_true",
                    help="use the alternate frame (distinct kit)")

    ver = sub.add_parser("verify", help="run a verification suite",
                         parents=[common])
    ver.add_argument("suite", help="suite name or 'all'")
    ver.add_argument("--trials", type=int, default=256,
                     help="samples per algebra (default 256)")
    ver.add_argument("--adversarial-rate", type=float, default=0.0)
    ver.add_argument("--format", choices=["json", "md"], default="json")

    dec = sub.add_parser("decompose", help="standard-form decompositions",
                         parents=[common])
    dec.add_argument("target", choices=["linear", "trace", "preserver"])
    dec.add_argument("--algebra", required=True)
    dec.add_argument("--input", required=True, help="JSON input file")
    dec.add_argument("--kit", default=None,
                     help="kit JSON file (default: build canonical kit)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "zoo":
            return cmd_zoo(args)
        if args.cmd == "kit":
            return cmd_kit(args)
        if args.cmd == "verify":
            return cmd_verify(args)
        if args.cmd == "decompose":
            return cmd_decompose(args)
    except _IoError as ex:
        print(f"i/o error: {ex}", file=sys.stderr)
        return EXIT_IO
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
