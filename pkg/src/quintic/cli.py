"""Command-line front end.

Subcommands:
  expand <name> --trunc N    print a named series in the cache file format
  u5 <name> --trunc N        print U5 of a named series
  verify <suite> ...         run verification suites (exit 1 on failure)
  cusps <name>               Newman report and cusp order table
  report --out DIR ...       run the suites, write checks.csv + figures

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cache, etaq, figures, specialfns, verify
from .series import QSeries, e2_series

#: Builders for the series names accepted by expand/u5.
SERIES_BUILDERS = {
    "z": specialfns.z_series,
    "x": specialfns.x_series,
    "y": specialfns.y_series,
    "F": specialfns.f_series,
    "c": specialfns.c_series,
    "rho": specialfns.rho_series,
    "t": specialfns.t_series,
    "E2": e2_series,
}
for _alpha in range(6):
    SERIES_BUILDERS[f"L{_alpha}"] = (
        lambda precision, _a=_alpha:
        specialfns.l_series_direct(_a, precision))


@dataclass
class Config:
    """Run configuration; trunc >= 50 and alpha_max >= 1 are enforced."""

    trunc: int = 200
    alpha_max: int = 4
    cache_dir: Path = field(default_factory=cache.default_cache_dir)
    report_format: str = "text"
    seed: int = 1

    def __post_init__(self):
        if self.trunc < 50:
            raise ValueError("--trunc must be at least 50")
        if self.alpha_max < 1:
            raise ValueError("--alpha-max must be at least 1")


def _print_series(name: str, series: QSeries):
    print(f"{name} {series.offset} {series.precision}")
    for n in range(series.offset, series.precision):
        print(series[n])


class UsageError(Exception):
    """Bad command-line input; mapped to exit code 2."""


def _named_series(name: str, trunc: int, cache_dir: Path) -> QSeries:
    try:
        build = SERIES_BUILDERS[name]
    except KeyError:
        raise UsageError(
            f"unknown series {name!r}; choose from "
            f"{', '.join(sorted(SERIES_BUILDERS))}"
        ) from None
    return cache.load_series(cache_dir, name, trunc, build)


def cmd_expand(args, config: Config) -> int:
    series = _named_series(args.name, config.trunc, config.cache_dir)
    _print_series(args.name, series)
    return 0


def cmd_u5(args, config: Config) -> int:
    series = _named_series(args.name, config.trunc, config.cache_dir)
    _print_series(f"U5({args.name})", series.u5())
    return 0


def cmd_verify(args, config: Config) -> int:
    result = verify.run_suite(
        args.suite, trunc=config.trunc, alpha_max=config.alpha_max,
        n_max=args.n_max, trials=args.trials, seed=config.seed)
    if config.report_format == "json":
        print(json.dumps(result.to_json(), indent=2))
    else:
        for chk in result.checks:
            mark = "PASS" if chk.ok else "FAIL"
            print(f"[{mark}] {chk.check_id}: {chk.statement} "
                  f"({chk.runtime_ms} ms)")
            if not chk.ok and chk.witness:
                print(f"       {chk.witness}")
        print(f"{result.suite}: "
              f"{'all checks passed' if result.all_pass else 'FAILED'}")
    return 0 if result.all_pass else 1


def cmd_cusps(args, config: Config) -> int:
    try:
        quotient = etaq.lookup(args.name)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    newman = etaq.newman_check(quotient)
    table = etaq.order_table(quotient)
    if config.report_format == "json":
        payload = {
            "function": args.name,
            "level": quotient.level,
            "newman": list(newman.as_tuple()),
            "modular": newman.is_modular,
            "orders": [{"cusp": cusp.label(), "order": str(order)}
                       for cusp, order in table.items()],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"{args.name}: level {quotient.level}, exponents "
              f"{quotient.exps}")
        print(f"newman conditions: {newman.as_tuple()} -> "
              f"{'modular' if newman.is_modular else 'NOT modular'}")
        for cusp, order in table.items():
            print(f"  ord at {str(cusp):>6}: {order}")
    return 0


def cmd_report(args, config: Config) -> int:
    suites = args.suites.split(",") if args.suites else ["all"]
    checks = []
    for name in suites:
        checks.extend(verify.run_suite(
            name.strip(), trunc=config.trunc, alpha_max=config.alpha_max,
            n_max=args.n_max, trials=args.trials, seed=config.seed).checks)
    written = figures.render_report(args.out, checks)
    for path in written:
        print(f"wrote {path}")
    failures = [chk for chk in checks if not chk.ok]
    if failures:
        print(f"{len(failures)} checks FAILED", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quintic",
        description="exact q-series verification of a 5-adic congruence "
                    "family")
    parser.add_argument("--trunc", type=int, default=200,
                        help="default series truncation (>= 50)")
    parser.add_argument("--alpha-max", type=int, default=4,
                        help="largest family index for main/family suites")
    parser.add_argument("--report", choices=("json", "text"),
                        default="text", help="report format")
    parser.add_argument("--seed", type=int, default=1,
                        help="seed for randomized property suites")
    parser.add_argument("--cache-dir", type=Path, default=None,
                        help="series cache directory (default: "
                             "$CONGRUENCE_CACHE_DIR or ~/.cache/quintic)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="print a named series")
    p_expand.add_argument("name")
    p_expand.set_defaults(handler=cmd_expand)

    p_u5 = sub.add_parser("u5", help="print U5 of a named series")
    p_u5.add_argument("name")
    p_u5.set_defaults(handler=cmd_u5)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite",
                          choices=verify.SUITE_NAMES + ("all",))
    p_verify.add_argument("--n-max", type=int, default=25,
                          help="index range for the corollary congruences")
    p_verify.add_argument("--trials", type=int, default=50,
                          help="trials per randomized mapping property")
    p_verify.set_defaults(handler=cmd_verify)

    p_cusps = sub.add_parser("cusps", help="cusp order table of a quotient")
    p_cusps.add_argument("name",
                         help="z|x|y|rho|t|h|wy|w0|w1 or w_<i>_<l>_<m>")
    p_cusps.set_defaults(handler=cmd_cusps)

    p_report = sub.add_parser(
        "report", help="write checks.csv and figures for the suites")
    p_report.add_argument("--out", type=Path, required=True,
                          help="output directory")
    p_report.add_argument("--suites", default=None,
                          help="comma-separated suite list (default: all)")
    p_report.add_argument("--n-max", type=int, default=25)
    p_report.add_argument("--trials", type=int, default=50)
    p_report.set_defaults(handler=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = Config(
            trunc=args.trunc,
            alpha_max=args.alpha_max,
            cache_dir=args.cache_dir or cache.default_cache_dir(),
            report_format=args.report,
            seed=args.seed,
        )
    except ValueError as exc:
        parser.error(str(exc))  # exits 2
    try:
        return args.handler(args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit:
        raise
    except KeyboardInterrupt:
        return 3
    except Exception as exc:  # noqa: BLE001 - map internal errors to exit 3
        print(f"internal error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
