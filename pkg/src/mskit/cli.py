"""Command-line front end.

Subcommands: identities, check-zero, probe, tto, tho.  Inputs are JSON files
(symbols as {"min_index": int, "coeffs": [[re, im], ...]}, inner functions as
{"zeros": [[re, im], ...], "constant": [re, im]}); reports are JSON or CSV
with full config provenance, written once at the end of the run.

Exit codes: 0 success, 1 identity violation, 2 malformed input or usage,
3 decision/oracle disagreement, 4 indeterminate oracle norm.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys

import numpy as np

from .blaschke import BlaschkeProduct
from .identities import run_identity_suite
from .model_space import build_tm_basis, decompose_symbol
from .operators import hankel, tho, toeplitz, tto
from .probes import (
    ProbePath,
    finite_section_sv,
    hankel_kernel_probe,
    product_probe,
    tensor_probe_k1,
    tensor_probe_k2,
)
from .series import LaurentSeries
from .theorems import classify_oracle, symbol_scale, zero_product_decide, zero_product_oracle


class InputError(Exception):
    """Malformed or inconsistent input files or flags."""


def _platform_note() -> dict:
    return {"python": platform.python_version(), "numpy": np.__version__}


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_symbol(path: str) -> LaurentSeries:
    try:
        return LaurentSeries.from_json_dict(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad symbol file {path}: {exc}") from exc


def _load_theta(path: str) -> BlaschkeProduct:
    try:
        return BlaschkeProduct.from_json_dict(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad inner-function file {path}: {exc}") from exc


# -- subcommands ---------------------------------------------------------------


def cmd_identities(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    report = run_identity_suite(
        trials=args.trials,
        max_degree=args.max_degree,
        N=args.truncation,
        M=args.coanalytic,
        seed=args.seed,
        inject_sign_error=args.self_test,
    )
    payload = {"command": "identities", "platform": _platform_note(), **report}
    _emit(_dump_json(payload), args.out)
    return 0 if report["pass"] else 1


def cmd_check_zero(args) -> int:
    theta = _load_theta(args.theta)
    f = _load_symbol(args.f)
    g = _load_symbol(args.g)
    basis = build_tm_basis(theta, args.truncation)
    dec = decompose_symbol(g, basis)
    verdict = zero_product_decide(f, dec, basis, zero_tol=args.tolerance)
    payload = verdict.to_json_dict()
    payload["decomposition_residual"] = dec.residual
    payload["command"] = "check-zero"
    payload["config"] = {
        "N": args.truncation,
        "M": args.coanalytic,
        "tolerance": args.tolerance,
    }
    payload["platform"] = _platform_note()
    code = 0
    if args.oracle:
        value = zero_product_oracle(f, g, basis, args.truncation, args.coanalytic)
        scale = symbol_scale(f, g)
        klass = classify_oracle(value, scale)
        payload["oracle_norm"] = value
        payload["oracle_class"] = klass
        if klass == "indeterminate":
            payload["note"] = "indeterminate - increase N"
            code = 4
        elif (klass == "zero") != (verdict.condition != "none"):
            payload["note"] = "decision/oracle disagreement"
            code = 3
    _emit(_dump_json(payload), args.out)
    return code


def _build_path(args) -> ProbePath:
    try:
        radii = [float(r) for r in args.radii.split(",") if r]
    except ValueError as exc:
        raise InputError(f"bad --radii: {exc}") from exc
    if not radii:
        raise InputError("need at least one radius")
    try:
        return ProbePath.radial(radii, args.angle, args.truncation)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_probe(args) -> int:
    spec = _load_json(args.symbols)
    N, M = args.truncation, args.coanalytic
    try:
        if args.kind == "svd":
            sym = LaurentSeries.from_json_dict(spec["symbol"])
            builders = {
                "hankel": lambda n: hankel(sym, n, n),
                "toeplitz": lambda n: toeplitz(sym, n),
            }
            if spec["builder"] not in builders:
                raise InputError(f"unknown builder {spec['builder']!r}")
            table = finite_section_sv(builders[spec["builder"]], spec["sizes"], int(spec.get("k", 4)))
            payload = table.to_json_dict()
            payload.update({"command": "probe", "kind": "svd", "platform": _platform_note()})
            _emit(table.to_csv() if args.format == "csv" else _dump_json(payload), args.out)
            return 0
        path = _build_path(args)
        if args.kind == "kernel":
            report = hankel_kernel_probe(LaurentSeries.from_json_dict(spec["f"]), path, N, M)
        elif args.kind == "tensor1":
            fs = [LaurentSeries.from_json_dict(s) for s in spec["fs"]]
            gs = [LaurentSeries.from_json_dict(s) for s in spec["gs"]]
            report = tensor_probe_k1(fs, gs, path, N, M)
        elif args.kind == "tensor2":
            fs = [LaurentSeries.from_json_dict(s) for s in spec["fs"]]
            gs = [LaurentSeries.from_json_dict(s) for s in spec["gs"]]
            report = tensor_probe_k2(fs, gs, path, N, M)
        else:  # product
            if not args.theta:
                raise InputError("--kind product requires --theta")
            theta = _load_theta(args.theta)
            basis = build_tm_basis(theta, N)
            f = LaurentSeries.from_json_dict(spec["f"])
            g = LaurentSeries.from_json_dict(spec["g"])
            dec = decompose_symbol(g, basis)
            report = product_probe(f, dec, basis, path, N, M)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad probe input: {exc}") from exc
    if args.format == "csv":
        _emit(report.to_csv(), args.out)
    else:
        payload = report.to_json_dict()
        payload.update({"command": "probe", "platform": _platform_note()})
        _emit(_dump_json(payload), args.out)
    return 0


def cmd_tto(args) -> int:
    theta = _load_theta(args.theta)
    g = _load_symbol(args.g)
    basis = build_tm_basis(theta, args.truncation)
    payload = tto(g, basis).to_json_dict()
    payload.update({"command": "tto", "config": {"N": args.truncation}, "platform": _platform_note()})
    _emit(_dump_json(payload), args.out)
    return 0


def cmd_tho(args) -> int:
    theta = _load_theta(args.theta)
    f = _load_symbol(args.f)
    basis = build_tm_basis(theta, args.truncation)
    payload = tho(f, basis, args.truncation, args.coanalytic).to_json_dict()
    payload.update({
        "command": "tho",
        "config": {"N": args.truncation, "M": args.coanalytic},
        "platform": _platform_note(),
    })
    _emit(_dump_json(payload), args.out)
    return 0


# -- parser ----------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, coanalytic: bool = True) -> None:
    p.add_argument("--truncation", "-N", type=int, default=256, help="analytic order N")
    if coanalytic:
        p.add_argument("--coanalytic", "-M", type=int, default=256, help="coanalytic order M")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    p.add_argument("--tolerance", type=float, default=1e-8, help="zero tolerance")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mskit",
        description="Finite-section numerics for truncated Toeplitz/Hankel operator products",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identities", help="run the seeded operator-identity suite")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--self-test", action="store_true", help="inject a sign error (harness sanity)")
    _add_common(p)
    p.set_defaults(fn=cmd_identities)

    p = sub.add_parser("check-zero", help="decide whether a product vanishes")
    p.add_argument("theta", help="inner-function JSON file")
    p.add_argument("f", help="Hankel-side symbol JSON file")
    p.add_argument("g", help="Toeplitz-side symbol JSON file")
    p.add_argument("--oracle", action="store_true", help="cross-check against the matrix oracle")
    _add_common(p)
    p.set_defaults(fn=cmd_check_zero)

    p = sub.add_parser("probe", help="boundary-limit probes along a radial path")
    p.add_argument("--kind", required=True, choices=("kernel", "tensor1", "tensor2", "product", "svd"))
    p.add_argument("--theta", default=None, help="inner-function JSON (product kind)")
    p.add_argument("--symbols", required=True, help="symbols JSON file")
    p.add_argument("--radii", default="0.5,0.9,0.99")
    p.add_argument("--angle", type=float, default=0.0)
    _add_common(p)
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("tto", help="dump a truncated Toeplitz matrix")
    p.add_argument("theta")
    p.add_argument("g")
    _add_common(p, coanalytic=False)
    p.set_defaults(fn=cmd_tto)

    p = sub.add_parser("tho", help="dump a truncated Hankel matrix")
    p.add_argument("theta")
    p.add_argument("f")
    _add_common(p)
    p.set_defaults(fn=cmd_tho)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
