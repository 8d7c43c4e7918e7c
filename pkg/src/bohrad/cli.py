"""Command-line front end: radius, table, verify, operator, suite.

Exit codes: 0 success/pass, 1 verification failure, 2 usage error, 3 no root.
All floating-point output is printed with 17 significant digits so results
round-trip and reruns are comparable byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import itertools
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .bohr import verify_up_to_radius
from .harness import (
    SuiteConfig,
    default_config,
    random_bounded_function,
    run_inequality_suite,
    run_sharpness_suite,
)
from .operators import apply_coefficient_form, operator_bohr_radius, operator_bound
from .radius import DEFAULT_TOL, NoRootError, RadiusQuery, minimal_root
from .series import (
    BlaschkeComposed,
    CoefficientSeries,
    DomainParams,
    Extremal,
    Raw,
    coefficients_of,
    lemma_bound_report,
)
from .weights import (
    FAMILY_CLASSES,
    AlphaCesaro,
    Bernardi,
    BetaCesaro,
    family_name,
    family_params,
    make_family,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NO_ROOT = 3

_PARAM_FIELDS = {
    "power-tail": ("N",),
    "even": (),
    "odd": (),
    "linear-plus-one": ("N",),
    "linear": ("N",),
    "quadratic": ("N",),
    "beta-cesaro": ("beta",),
    "alpha-cesaro": ("alpha",),
    "bernardi": ("m", "delta"),
}


# ---------------------------------------------------------------------------
# JSON rendering with explicit float formatting

def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("refusing to serialize a non-finite float")
    return f"{x:.17g}"


def render_json(obj, level: int = 0, compact: bool = False) -> str:
    pad = "  " * level
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, complex):
        return render_json([obj.real, obj.imag], level, compact)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if compact:
            inner = ", ".join(
                f"{json.dumps(str(k))}: {render_json(v, 0, True)}" for k, v in obj.items()
            )
            return "{" + inner + "}"
        inner = ",\n".join(
            f"{pad}  {json.dumps(str(k))}: {render_json(v, level + 1)}" for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(render_json(v, level, compact) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def emit(record: dict) -> None:
    sys.stdout.write(render_json(record) + "\n")


# ---------------------------------------------------------------------------
# shared argument helpers

def _add_family_options(parser: argparse.ArgumentParser, multi: bool = False) -> None:
    parser.add_argument("--family", required=True, choices=sorted(FAMILY_CLASSES))
    if multi:
        # comma-separated value lists for parameter sweeps
        parser.add_argument("--N", type=str, default=None)
        parser.add_argument("--beta", type=str, default=None)
        parser.add_argument("--alpha", type=str, default=None)
        parser.add_argument("--m", type=str, default=None)
        parser.add_argument("--delta", type=str, default=None)
    else:
        parser.add_argument("--N", type=int, default=None)
        parser.add_argument("--beta", type=float, default=None)
        parser.add_argument("--alpha", type=float, default=None)
        parser.add_argument("--m", type=int, default=None)
        parser.add_argument("--delta", type=float, default=None)


def _collect_params(args, name: str) -> dict:
    allowed = _PARAM_FIELDS[name]
    params = {}
    for f in ("N", "beta", "alpha", "m", "delta"):
        v = getattr(args, f)
        if v is None:
            continue
        if f not in allowed:
            raise ValueError(f"parameter --{f} is not valid for family {name!r}")
        params[f] = v
    return params


def _build_family(args):
    return make_family(args.family, _collect_params(args, args.family))


def parse_value_list(text: str, kind=float) -> list:
    """'lo:hi:step' (inclusive), 'a,b,c', or a single value."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be lo:hi:step, got {text!r}")
        lo, hi, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("range step must be positive")
        n = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [kind(lo + i * step) for i in range(max(n, 0))]
    return [kind(tok) for tok in text.split(",") if tok.strip() != ""]


def read_coefficients(path: str) -> CoefficientSeries:
    """One coefficient per line, two decimal fields 're im'."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2:
                raise ValueError(f"{path}:{lineno}: expected two fields 're im'")
            try:
                values.append(complex(float(fields[0]), float(fields[1])))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: cannot parse {line!r}") from None
    if not values:
        raise ValueError(f"{path}: no coefficients found")
    return CoefficientSeries(values)


def write_coefficients(path: str, series: CoefficientSeries) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for c in series.coefficients:
            fh.write(f"{format_float(c.real)} {format_float(c.imag)}\n")


def parse_function(text: str, domain: DomainParams):
    kind, sep, payload = text.partition(":")
    if not sep:
        raise ValueError(f"function descriptor needs '<kind>:<payload>', got {text!r}")
    if kind == "constant":
        return Raw(CoefficientSeries([complex(payload)]))
    if kind == "extremal":
        return Extremal(domain, float(payload))
    if kind == "blaschke":
        try:
            seed = int(payload)
        except ValueError:
            zeros = [complex(tok) for tok in payload.split(",") if tok.strip()]
            return BlaschkeComposed(domain, tuple(zeros), 1.0)
        return random_bounded_function(domain, np.random.default_rng(seed))
    if kind == "coeffs":
        return Raw(read_coefficients(payload))
    raise ValueError(f"unknown function kind {kind!r}")


# ---------------------------------------------------------------------------
# subcommands

def cmd_radius(args) -> int:
    family = _build_family(args)
    query = RadiusQuery(family, DomainParams(args.gamma), args.p)
    try:
        res = minimal_root(query, tol=args.tol)
    except NoRootError as exc:
        print(f"no root: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    emit(
        {
            "command": "radius",
            "version": __version__,
            "parameters": {
                "family": args.family,
                "params": _collect_params(args, args.family),
                "gamma": args.gamma,
                "p": args.p,
                "tol": args.tol,
            },
            "radius": res.radius,
            "bracket": list(res.bracket),
            "residual": res.residual,
            "sharp_window_ok": res.sharp_window_ok,
            "evaluations": res.evaluations,
        }
    )
    return EXIT_OK


def _table_rows(args):
    name = args.family
    gammas = sorted(parse_value_list(args.gamma))
    ps = sorted(parse_value_list(args.p))
    fields = _PARAM_FIELDS[name]
    value_lists = []
    for f in fields:
        raw = getattr(args, f)
        if raw is None:
            value_lists.append([None])
        elif f in ("N", "m"):
            value_lists.append(parse_value_list(raw, kind=lambda s: int(float(s))))
        else:
            value_lists.append(parse_value_list(raw))
    for gamma in gammas:
        for p in ps:
            for combo in itertools.product(*value_lists):
                params = {f: v for f, v in zip(fields, combo) if v is not None}
                yield gamma, p, params


def cmd_table(args) -> int:
    name = args.family
    for f in ("N", "beta", "alpha", "m", "delta"):
        if getattr(args, f) is not None and f not in _PARAM_FIELDS[name]:
            raise ValueError(f"parameter --{f} is not valid for family {name!r}")
    rows = []
    for gamma, p, params in _table_rows(args):
        row = {
            "family": name,
            "params": params,
            "gamma": gamma,
            "p": p,
            "radius": None,
            "residual": None,
            "sharp_window_ok": None,
            "error": None,
        }
        try:
            family = make_family(name, params)
            res = minimal_root(RadiusQuery(family, DomainParams(gamma), p), tol=args.tol)
            row.update(
                radius=res.radius, residual=res.residual, sharp_window_ok=res.sharp_window_ok
            )
        except NoRootError as exc:
            row["error"] = f"no root: {exc}"
        except (ValueError, RuntimeError) as exc:
            row["error"] = str(exc)
        rows.append(row)
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["family", "params", "gamma", "p", "radius", "residual", "sharp_window_ok", "error"])
        for row in rows:
            params_txt = ";".join(f"{k}={v}" for k, v in row["params"].items())
            writer.writerow(
                [
                    row["family"],
                    params_txt,
                    format_float(row["gamma"]),
                    format_float(row["p"]),
                    "" if row["radius"] is None else format_float(row["radius"]),
                    "" if row["residual"] is None else format_float(row["residual"]),
                    "" if row["sharp_window_ok"] is None else str(row["sharp_window_ok"]).lower(),
                    row["error"] or "",
                ]
            )
    else:
        for row in rows:
            record = {k: v for k, v in row.items() if not (k == "error" and v is None)}
            sys.stdout.write(render_json(record, compact=True) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    family = _build_family(args)
    domain = DomainParams(args.gamma)
    query = RadiusQuery(family, domain, args.p)
    f = parse_function(args.fn, domain)
    try:
        res = minimal_root(query, tol=args.tol)
    except NoRootError as exc:
        print(f"no root: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    target = res.radius + args.r_beyond
    if not (0.0 <= target < 1.0):
        raise ValueError("--r-beyond pushes the grid outside [0, 1)")
    report = verify_up_to_radius(
        f, query, target, grid_points=args.grid_points, order=args.order, tol=args.tolerance
    )
    # membership screen: the coefficient bound is necessary for class members
    series_m = coefficients_of(f, args.order)
    c0 = abs(series_m.coefficients[0])
    if c0 > 1.0 + 1e-12:
        membership_ok = False
        membership_violation = c0 - 1.0
    else:
        membership = lemma_bound_report(series_m, domain)
        membership_ok = membership.max_violation <= 1e-10
        membership_violation = membership.max_violation
    emit(
        {
            "command": "verify",
            "version": __version__,
            "parameters": {
                "fn": args.fn,
                "family": args.family,
                "params": _collect_params(args, args.family),
                "gamma": args.gamma,
                "p": args.p,
                "r_beyond": args.r_beyond,
                "grid_points": args.grid_points,
                "order": args.order,
            },
            "radius": res.radius,
            "verified_up_to": target,
            "membership_ok": membership_ok,
            "membership_max_violation": membership_violation,
            **report.to_dict(),
        }
    )
    return EXIT_OK if (report.passed and membership_ok) else EXIT_FAIL


def _operator_spec(args):
    chosen = [
        name
        for name, v in (
            ("beta-cesaro", args.beta_cesaro),
            ("alpha-cesaro", args.alpha_cesaro),
            ("bernardi", args.bernardi),
        )
        if v is not None
    ]
    if len(chosen) != 1:
        raise ValueError("specify exactly one of --beta-cesaro, --alpha-cesaro, --bernardi")
    if args.beta_cesaro is not None:
        return BetaCesaro(args.beta_cesaro)
    if args.alpha_cesaro is not None:
        return AlphaCesaro(args.alpha_cesaro)
    m, delta = args.bernardi
    if float(m) != int(float(m)):
        raise ValueError("Bernardi m must be an integer")
    return Bernardi(int(float(m)), float(delta))


def cmd_operator(args) -> int:
    spec = _operator_spec(args)
    echo = {
        "operator": type(spec).__name__,
        "params": {k: v for k, v in vars(spec).items()},
    }
    if args.action == "bound":
        if args.r is None:
            raise ValueError("bound requires --r")
        emit(
            {
                "command": "operator",
                "version": __version__,
                "action": "bound",
                **echo,
                "r": args.r,
                "bound": operator_bound(spec, args.r),
            }
        )
        return EXIT_OK
    if args.action == "radius":
        try:
            res = operator_bohr_radius(spec, DomainParams(args.gamma), tol=args.tol, p=args.p)
        except NoRootError as exc:
            print(f"no root: {exc}", file=sys.stderr)
            return EXIT_NO_ROOT
        emit(
            {
                "command": "operator",
                "version": __version__,
                "action": "radius",
                **echo,
                "gamma": args.gamma,
                "p": args.p,
                "tol": args.tol,
                "radius": res.radius,
                "bracket": list(res.bracket),
                "residual": res.residual,
                "sharp_window_ok": res.sharp_window_ok,
                "evaluations": res.evaluations,
            }
        )
        return EXIT_OK
    # apply
    if args.coeffs is None or args.out is None:
        raise ValueError("apply requires --coeffs and --out")
    series = read_coefficients(args.coeffs)
    transformed = apply_coefficient_form(spec, series)
    write_coefficients(args.out, transformed)
    emit(
        {
            "command": "operator",
            "version": __version__,
            "action": "apply",
            **echo,
            "coeffs": args.coeffs,
            "out": args.out,
            "n_coefficients": len(transformed),
        }
    )
    return EXIT_OK


def load_suite_config(path: str) -> SuiteConfig:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config must be a JSON object")
    required = ("seed", "samples_per_cell", "gamma_grid", "p_grid", "families", "tolerance")
    missing = [k for k in required if k not in data]
    if missing:
        raise ValueError(f"config is missing keys: {missing}")
    families = tuple(
        make_family(entry["name"], entry.get("params")) for entry in data["families"]
    )
    kwargs = dict(
        seed=int(data["seed"]),
        samples_per_cell=int(data["samples_per_cell"]),
        gamma_grid=tuple(float(g) for g in data["gamma_grid"]),
        p_grid=tuple(float(p) for p in data["p_grid"]),
        families=families,
        tolerance=float(data["tolerance"]),
    )
    for opt in ("grid_points", "truncation_order"):
        if opt in data:
            kwargs[opt] = int(data[opt])
    if "negative_controls" in data:
        kwargs["negative_controls"] = bool(data["negative_controls"])
    return SuiteConfig(**kwargs)


def cmd_suite(args) -> int:
    try:
        config = load_suite_config(args.config) if args.config else default_config()
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValueError(f"malformed config: {exc}") from exc
    env_seed = os.environ.get("BOHR_SEED")
    if env_seed is not None:
        config = dataclasses.replace(config, seed=int(env_seed))
    runner = run_sharpness_suite if args.kind == "sharpness" else run_inequality_suite
    report = runner(config)
    record = {
        "command": "suite",
        "version": __version__,
        "config": {
            "seed": config.seed,
            "samples_per_cell": config.samples_per_cell,
            "gamma_grid": list(config.gamma_grid),
            "p_grid": list(config.p_grid),
            "families": [
                {"name": family_name(f), "params": family_params(f)} for f in config.families
            ],
            "tolerance": config.tolerance,
            "grid_points": config.grid_points,
            "negative_controls": config.negative_controls,
        },
        **report.to_dict(),
    }
    text = render_json(record) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.overall_pass else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bohrad",
        description="Sharp generalized Bohr radii on shifted disks, with operator radii.",
    )
    parser.add_argument("--version", action="version", version=f"bohrad {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_radius = sub.add_parser("radius", help="compute the sharp radius for a weight family")
    _add_family_options(p_radius)
    p_radius.add_argument("--gamma", type=float, required=True)
    p_radius.add_argument("--p", type=float, default=1.0)
    p_radius.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_radius.set_defaults(func=cmd_radius)

    p_table = sub.add_parser("table", help="radius sweep over gamma/p/param ranges")
    _add_family_options(p_table, multi=True)
    p_table.add_argument("--gamma", type=str, required=True, help="value, list, or lo:hi:step")
    p_table.add_argument("--p", type=str, default="1")
    p_table.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_table.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="verify the weighted inequality for one function")
    _add_family_options(p_verify)
    p_verify.add_argument("--fn", type=str, required=True,
                          help="constant:<c> | extremal:<a> | blaschke:<seed|zeros> | coeffs:<file>")
    p_verify.add_argument("--gamma", type=float, required=True)
    p_verify.add_argument("--p", type=float, default=1.0)
    p_verify.add_argument("--r-beyond", dest="r_beyond", type=float, default=0.0,
                          help="extend the grid past the radius (sharpness probing)")
    p_verify.add_argument("--grid-points", dest="grid_points", type=int, default=16)
    p_verify.add_argument("--order", type=int, default=200)
    p_verify.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_verify.add_argument("--tolerance", type=float, default=1e-9,
                          help="allowed excess over phi_0 before truncation allowance")
    p_verify.set_defaults(func=cmd_verify)

    p_op = sub.add_parser("operator", help="apply an operator, or print its bound/radius")
    p_op.add_argument("--beta-cesaro", dest="beta_cesaro", type=float, metavar="BETA")
    p_op.add_argument("--alpha-cesaro", dest="alpha_cesaro", type=float, metavar="ALPHA")
    p_op.add_argument("--bernardi", nargs=2, metavar=("M", "DELTA"))
    p_op.add_argument("action", choices=("apply", "bound", "radius"))
    p_op.add_argument("--gamma", type=float, default=0.0)
    p_op.add_argument("--p", type=float, default=1.0)
    p_op.add_argument("--r", type=float, default=None)
    p_op.add_argument("--coeffs", type=str, default=None)
    p_op.add_argument("--out", type=str, default=None)
    p_op.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_op.set_defaults(func=cmd_operator)

    p_suite = sub.add_parser("suite", help="run the verification suite from a JSON config")
    p_suite.add_argument("--config", type=str, default=None)
    p_suite.add_argument("--kind", choices=("inequality", "sharpness"), default="inequality")
    p_suite.add_argument("--out", type=str, default=None)
    p_suite.set_defaults(func=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NoRootError as exc:
        print(f"no root: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
