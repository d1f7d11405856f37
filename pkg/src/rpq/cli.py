"""Command-line front end: tabulation, identity verification, moments,
sampling.

Exit codes: 0 success, 2 validation error, 3 capacity-guard error.  Output
is byte-deterministic for exact-mode runs; every run echoes its fully
resolved configuration (CSV: leading `#` comment lines; JSON: a config
object).  Rational parameters are "a/b" or integer strings; decimal input
switches the run to approximate mode and says so in the banner.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import first_kind, second_kind
from .algebra import AlgebraSpec, load_algebra_config, make_preset
from .errors import CapacityError, ModeMixError, RpqError, ValidationError, ZeroProbabilityEventError
from .first_kind import FirstKindParams, GroupingScheme
from .identities import IDENTITY_IDS, reports_to_csv, reports_to_json_obj, verify_identity
from .sampler import sample, sequential_sample
from .second_kind import SecondKindParams
from . import serialize
from .algebra import check_triangular_recurrence

OUTPUT_DIR_ENV = "RPQ_OUTPUT_DIR"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpq",
        description="Deformed occupancy distributions with an exact enumeration oracle.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, kind=True, counts=True):
        if kind:
            p.add_argument("--kind", choices=("first", "second"), default="first")
        p.add_argument("--preset", default=None, help="algebra preset name or alias (js, q, quesne, cj)")
        p.add_argument("--p", dest="p", default=None, help='base parameter, rational string like "9/10"')
        p.add_argument("--q", dest="q", default=None, help='base parameter, rational string like "1/2"')
        p.add_argument("--algebra-config", default=None, help="path of a key=value algebra record")
        p.add_argument("--tol", type=float, default=1e-10, help="relative tolerance in approximate mode")
        if counts:
            p.add_argument("--k", type=int, required=True, help="number of leading urns")
            p.add_argument("--n", type=int, required=True, help="number of balls")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default=None, help=f"output path (relative paths honor ${OUTPUT_DIR_ENV})")

    p = sub.add_parser("tabulate", help="joint occupancy table")
    add_common(p)

    p = sub.add_parser("marginal", help="law of a leading prefix")
    add_common(p)
    p.add_argument("--r", type=int, required=True, help="prefix length, 1 <= r < k")

    p = sub.add_parser("conditional", help="law of a middle block given a prefix")
    add_common(p)
    p.add_argument("--given", required=True, help="comma-separated prefix values, e.g. 0,1")
    p.add_argument("--m", type=int, default=None, help="last conditioned coordinate (default k)")

    p = sub.add_parser("grouped", help="law of consecutive urn blocks")
    add_common(p)
    p.add_argument("--groups", required=True, help="comma-separated block sizes summing to k")

    p = sub.add_parser("moments", help="closed-form moments vs the enumeration oracle")
    add_common(p)
    p.add_argument("--i1", type=int, default=1)
    p.add_argument("--i2", type=int, default=1)

    p = sub.add_parser("sample", help="reproducible inverse-CDF draws")
    add_common(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--sequential", action="store_true", help="draw coordinate-by-coordinate (first kind)")

    p = sub.add_parser("verify", help="identity suites with discrepancy fits")
    add_common(p, kind=False, counts=False)
    p.add_argument("--suite", required=True, choices=IDENTITY_IDS + ("triangular", "all"))
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--literal-window", action="store_true",
                   help="diagnostic: drop the capacity cap on occupancy sums")
    return parser


def _make_algebra(args) -> AlgebraSpec:
    if args.algebra_config:
        with open(args.algebra_config, "r", encoding="utf-8") as handle:
            return load_algebra_config(handle.read())
    if args.preset is None:
        raise ValidationError("preset: required (or pass --algebra-config)")
    return make_preset(args.preset, p=args.p, q=args.q, tol=args.tol)


def _validate_counts(kind: str, k: int, n: int) -> None:
    if k < 1:
        raise ValidationError(f"k: need k >= 1, got {k}")
    if n < 0:
        raise ValidationError(f"n: need n >= 0, got {n}")
    if kind == "first" and n > k + 1:
        raise ValidationError(f"n: first kind needs n <= k+1, got n={n}, k={k}")


def _parse_int_list(text: str, field: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValidationError(f"{field}: expected comma-separated integers, got {text!r}") from None


def _config(args, alg: AlgebraSpec, **extra) -> dict:
    config = {"subcommand": args.subcommand, "format": args.format}
    config.update(alg.describe())
    if not alg.exact:
        config["note"] = "decimal parameters force approximate mode"
    config.update(extra)
    return config


def _params(args, alg: AlgebraSpec):
    _validate_counts(args.kind, args.k, args.n)
    if args.kind == "first":
        return FirstKindParams(alg, args.k, args.n)
    return SecondKindParams(alg, args.k, args.n)


def _emit_table(table, args, config) -> str:
    if args.format == "json":
        obj = serialize.table_to_json_obj(table)
        obj["config"] = {k: serialize._plain(v) for k, v in config.items()}
        return serialize.dumps_json(obj)
    return serialize.config_header(config) + serialize.table_to_csv(table)


def _cmd_tabulate(args) -> str:
    alg = _make_algebra(args)
    params = _params(args, alg)
    module = first_kind if args.kind == "first" else second_kind
    table = module.joint_pmf(params)
    return _emit_table(table, args, _config(args, alg, kind=args.kind, k=args.k, n=args.n))


def _cmd_marginal(args) -> str:
    alg = _make_algebra(args)
    params = _params(args, alg)
    module = first_kind if args.kind == "first" else second_kind
    table = module.marginal_pmf(params, args.r)
    config = _config(args, alg, kind=args.kind, k=args.k, n=args.n, r=args.r)
    return _emit_table(table, args, config)


def _cmd_conditional(args) -> str:
    alg = _make_algebra(args)
    params = _params(args, alg)
    given = _parse_int_list(args.given, "given")
    m = args.m if args.m is not None else args.k
    module = first_kind if args.kind == "first" else second_kind
    table = module.conditional_pmf(params, given, m)
    config = _config(args, alg, kind=args.kind, k=args.k, n=args.n,
                     given=",".join(map(str, given)), m=m)
    return _emit_table(table, args, config)


def _cmd_grouped(args) -> str:
    alg = _make_algebra(args)
    params = _params(args, alg)
    scheme = GroupingScheme(_parse_int_list(args.groups, "groups"))
    module = first_kind if args.kind == "first" else second_kind
    table = module.grouped_pmf(params, scheme)
    config = _config(args, alg, kind=args.kind, k=args.k, n=args.n,
                     groups=",".join(map(str, scheme.sizes)))
    return _emit_table(table, args, config)


def _cmd_moments(args) -> str:
    alg = _make_algebra(args)
    params = _params(args, alg)
    module = first_kind if args.kind == "first" else second_kind
    reports = module.bivariate_moments(params, args.i1, args.i2)
    config = _config(args, alg, kind=args.kind, k=args.k, n=args.n, i1=args.i1, i2=args.i2)
    if args.format == "json":
        obj = serialize.moments_to_json_obj(reports)
        obj["config"] = {k: serialize._plain(v) for k, v in config.items()}
        return serialize.dumps_json(obj)
    return serialize.config_header(config) + serialize.moments_to_csv(reports)


def _cmd_sample(args) -> str:
    alg = _make_algebra(args)
    params = _params(args, alg)
    module = first_kind if args.kind == "first" else second_kind
    table = module.joint_pmf(params)
    if args.sequential:
        if args.kind != "first":
            raise ValidationError("sequential: only the first kind samples sequentially")
        batch = sequential_sample(params, args.seed, args.count)
    else:
        batch = sample(table, args.seed, args.count)
    config = _config(args, alg, kind=args.kind, k=args.k, n=args.n,
                     seed=args.seed, count=args.count, sequential=args.sequential)
    if args.format == "json":
        obj = serialize.batch_to_json_obj(batch, table)
        obj["config"] = {k: serialize._plain(v) for k, v in config.items()}
        return serialize.dumps_json(obj)
    return serialize.config_header(config) + serialize.batch_to_csv(batch, table.coord_labels)


def _cmd_verify(args) -> str:
    alg = _make_algebra(args)
    config = _config(args, alg, suite=args.suite, kmax=args.kmax,
                     nmax=args.kmax if args.nmax is None else args.nmax)
    if args.suite == "triangular":
        report = check_triangular_recurrence(alg, args.kmax)
        if args.format == "json":
            obj = {
                "schema_version": serialize.SCHEMA_VERSION,
                "config": {k: serialize._plain(v) for k, v in config.items()},
                "variant_a_holds": report.variant_a_holds,
                "variant_b_holds": report.variant_b_holds,
                "entries": [
                    {"m": e.m, "n": e.n, "variant_a": e.variant_a, "variant_b": e.variant_b}
                    for e in report.entries
                ],
            }
            return serialize.dumps_json(obj)
        lines = [serialize.config_header(config), "m,n,variant_a,variant_b\n"]
        for e in report.entries:
            lines.append(f"{e.m},{e.n},{str(e.variant_a).lower()},{str(e.variant_b).lower()}\n")
        return "".join(lines)

    suites = IDENTITY_IDS if args.suite == "all" else (args.suite,)
    reports = []
    for suite in suites:
        reports.extend(
            verify_identity(suite, alg, args.kmax, args.nmax, literal_window=args.literal_window)
        )
    exact = sum(1 for r in reports if r.exact_match)
    fitted = sum(1 for r in reports if r.monomial_found)
    config["exact_count"] = f"{exact}/{len(reports)}"
    config["fitted_count"] = f"{fitted}/{len(reports)}"
    if args.format == "json":
        obj = {
            "schema_version": serialize.SCHEMA_VERSION,
            "config": {k: serialize._plain(v) for k, v in config.items()},
            "reports": reports_to_json_obj(reports),
        }
        return serialize.dumps_json(obj)
    return serialize.config_header(config) + reports_to_csv(reports)


_COMMANDS = {
    "tabulate": _cmd_tabulate,
    "marginal": _cmd_marginal,
    "conditional": _cmd_conditional,
    "grouped": _cmd_grouped,
    "moments": _cmd_moments,
    "sample": _cmd_sample,
    "verify": _cmd_verify,
}


def _write_output(text: str, args) -> None:
    if args.output is None:
        sys.stdout.write(text)
        return
    path = args.output
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = _COMMANDS[args.subcommand](args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, ModeMixError, ZeroProbabilityEventError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RpqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_output(text, args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
