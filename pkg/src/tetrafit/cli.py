"""Command-line interface.

Exit codes: 0 success, 2 input or configuration error, 3 estimation failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import ESTIMATION_ERRORS, ComplexRoots, InvalidConfig, TetrafitError
from .estimator import EstimationConfig, estimate_vertices
from .formats import FormatError, format_points, read_points, read_vertices
from .harness import sweep
from .sampler import SeededGenerator, sample_batch

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ESTIMATION = 3

log = logging.getLogger("tetrafit")


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return value


def _sizes(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            n = int(part)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad sample size {part!r}") from None
        if n < 4:
            raise argparse.ArgumentTypeError(f"sample sizes must be >= 4, got {n}")
        out.append(n)
    if len(set(out)) != len(out):
        raise argparse.ArgumentTypeError("sample sizes must be distinct")
    return out


def _nonneg_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _add_estimation_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("estimation")
    g.add_argument("--matching", choices=("corrected", "paper"), default="corrected",
                   help="matching objective (default: corrected)")
    g.add_argument("--slack", type=_nonneg_float, default=1e-9,
                   help="relative containment slack (default: 1e-9)")
    g.add_argument("--outlier-fraction", type=_nonneg_float, default=0.005,
                   help="fraction of points allowed outside a valid candidate (default: 0.005)")
    g.add_argument("--no-normalize", dest="normalize", action="store_false",
                   help="work in raw coordinates instead of zero-mean, unit-RMS axes")
    g.add_argument("--imag-tol", type=_nonneg_float, default=1e-6,
                   help="relative tolerance for discarding imaginary root parts")
    g.add_argument("--paper-exact", action="store_true",
                   help="published rule: --matching paper and --outlier-fraction 0")


def _config(args) -> EstimationConfig:
    matching, outliers = args.matching, args.outlier_fraction
    if args.paper_exact:
        matching, outliers = "paper", 0.0
    return EstimationConfig(
        matching_variant=matching,
        slack=args.slack,
        outlier_fraction=outliers,
        normalize=args.normalize,
        imag_tol=args.imag_tol,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tetrafit",
        description="Sample points in a tetrahedron, or recover a tetrahedron from such points.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="write uniform random points inside a tetrahedron")
    p.add_argument("--vertices", required=True, type=Path)
    p.add_argument("--n", required=True, type=_positive_int)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", type=Path, help="CSV output (default: stdout)")

    p = sub.add_parser("estimate", help="estimate the vertices from a points CSV")
    p.add_argument("--points", required=True, type=Path)
    p.add_argument("--out", type=Path, help="JSON output (default: stdout)")
    _add_estimation_flags(p)

    p = sub.add_parser("validate", help="Monte Carlo sweep over sample sizes")
    p.add_argument("--vertices", required=True, type=Path)
    p.add_argument("--sizes", required=True, type=_sizes, help="comma-separated, e.g. 1000,10000")
    p.add_argument("--trials", type=_positive_int, default=10)
    p.add_argument("--seed", type=_seed, default=0, help="base seed; trial k uses seed + k")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out", type=Path, default=Path("sweep_trials.csv"))
    p.add_argument("--summary", type=Path, default=Path("sweep_summary.csv"))
    _add_estimation_flags(p)
    return parser


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_sample(args) -> int:
    tet = read_vertices(args.vertices)
    points = sample_batch(tet, args.n, SeededGenerator(args.seed))
    _emit(format_points(points), args.out)
    return EXIT_OK


def cmd_estimate(args) -> int:
    config = _config(args)
    points = read_points(args.points)
    try:
        result = estimate_vertices(points, config)
    except ESTIMATION_ERRORS as exc:
        failure = {"error": type(exc).__name__, "message": str(exc), "n": len(points)}
        if isinstance(exc, ComplexRoots):
            failure["axis"] = exc.axis
            failure["max_imag"] = exc.max_imag
            failure["advice"] = "increase the sample size"
        _emit(json.dumps(failure, indent=2) + "\n", args.out)
        print(f"tetrafit: estimation failed: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    _emit(json.dumps(result.to_dict(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    tet = read_vertices(args.vertices)
    if tet.is_degenerate():
        raise UsageError("degenerate tetrahedron")
    report = sweep(tet, args.sizes, args.trials, args.seed, _config(args), workers=args.workers)
    args.out.write_text(report.trials_csv())
    args.summary.write_text(report.summary_csv())
    return EXIT_OK


COMMANDS = {"sample": cmd_sample, "estimate": cmd_estimate, "validate": cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.ERROR,
        format="%(name)s: %(levelname)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (OSError, FormatError, UsageError, InvalidConfig) as exc:
        print(f"tetrafit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TetrafitError as exc:
        # degenerate vertices files and similar input problems
        print(f"tetrafit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
