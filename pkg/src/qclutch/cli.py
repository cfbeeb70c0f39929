"""Command-line batch runner for the verification suites."""

from __future__ import annotations

import argparse
import json
import sys

from .pullback import catalog
from .suites import ALL_SUITES, ConfigError, SuiteConfig, emit_report, run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qclutch", description="Run verification suites and emit a structured report.")
    p.add_argument("--suite", default="full", choices=ALL_SUITES)
    p.add_argument("--trunc-n", type=int, default=64, help="Toeplitz finite-section size N")
    p.add_argument("--fourier-m", type=int, default=32, help="Fourier truncation order M")
    p.add_argument("--t-steps", type=int, default=33, help="homotopy grid points")
    p.add_argument("--margin", type=int, default=8, help="interior-compression width")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--scalar", choices=("exact", "float"), default="float",
                   help="exact skips checks that need floating-point data")
    p.add_argument("--q", default="1/2", help="deformation parameter as P/Q")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker threads for independent checks")
    p.add_argument("--report-format", choices=("json", "md"), default="json")
    p.add_argument("--out", default=None, help="output path (stdout when omitted)")
    p.add_argument("--list", action="store_true", help="print the diagram and morphism catalog and exit")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.list:
        sys.stdout.write(json.dumps(catalog(), indent=2, ensure_ascii=False) + "\n")
        return EXIT_OK
    try:
        cfg = SuiteConfig(
            trunc_n=args.trunc_n,
            fourier_m=args.fourier_m,
            t_steps=args.t_steps,
            margin=args.margin,
            tol=args.tol,
            scalar=args.scalar,
            q=args.q,
            seed=args.seed,
            jobs=args.jobs,
        )
    except ConfigError as exc:
        print(f"qclutch: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = run_suite(args.suite, cfg)
    try:
        text = emit_report(report, args.report_format, args.out)
    except OSError as exc:
        print(f"qclutch: cannot write report: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_FAIL if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
