"""Command-line driver.

    latfourier <suite> [flags]
    latfourier verify --suite <suite> [flags]

Suites: transform-selftest, tiling, inequalities, multiplier, report.
Exit status is 0 when every hard criterion passes, 1 when one fails and
2 for configuration errors.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import read_config_file, build_config
from .errors import ConfigError, LatFourierError
from .suites import SUITES

log = logging.getLogger("latfourier")

FLAG_KEYS = ("lattice", "N", "K", "oversample", "p", "q", "b", "beta", "symbol", "weight",
             "trials", "samples", "seed", "out", "jobs")


def _add_flags(parser):
    parser.add_argument("--config", help="key=value experiment file (flags override it)")
    parser.add_argument("--lattice", help="identity:d | diag:a,b | matrix:r1;r2 | random:d[:seed] | "
                                          "a_d:d | file:path")
    parser.add_argument("--N", help="grid points per axis")
    parser.add_argument("--K", help="band: indices in [-K, K]^d")
    parser.add_argument("--oversample", help="grid oversampling for synthesis-side norms")
    parser.add_argument("--p", help="comma separated exponents, fractions allowed (4/3)")
    parser.add_argument("--q", help="target exponents paired with --p (multiplier suite)")
    parser.add_argument("--b", help="Hausdorff-Young-Paley exponents")
    parser.add_argument("--beta", help="Hardy-Littlewood growth exponent")
    parser.add_argument("--symbol", help="gaussian | const:re,im | poly:<alpha=coeff;...> | table:path")
    parser.add_argument("--weight", help="power:beta | table:path")
    parser.add_argument("--trials", help="random test functions per item")
    parser.add_argument("--samples", help="Monte Carlo samples for tiling")
    parser.add_argument("--seed", help="RNG seed")
    parser.add_argument("--out", help="output directory (default $LATFOURIER_OUT)")
    parser.add_argument("--jobs", help="parallel suite items")
    parser.add_argument("-v", "--verbose", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(prog="latfourier", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run one or more suites")
    verify.add_argument("--suite", action="append", choices=sorted(SUITES), required=True)
    _add_flags(verify)
    for name in SUITES:
        _add_flags(sub.add_parser(name, help=f"run the {name} suite"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(message)s", stream=sys.stderr)
    suites = args.suite if args.command == "verify" else [args.command]
    try:
        file_values = read_config_file(args.config) if args.config else {}
        flags = {k: getattr(args, k) for k in FLAG_KEYS}
        cfg = build_config(file_values, flags)
    except ConfigError as exc:
        log.error("ConfigError: %s", exc)
        return 2

    all_passed = True
    for name in suites:
        try:
            result = SUITES[name](cfg)
        except ConfigError as exc:
            log.error("ConfigError in suite %s: %s", name, exc)
            return 2
        except LatFourierError as exc:
            log.error("suite %s failed: %s: %s", name, type(exc).__name__, exc)
            return 1
        status = "PASS" if result.passed else "FAIL"
        print(f"[{status}] {name}")
        for line in result.summary:
            print(f"    {line}")
        for path in result.files:
            print(f"    wrote {path}")
        all_passed &= result.passed
    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
