"""
Command-line front end

Subcommands:
  generate        build a named state and write it as JSON
  criteria        run every inseparability test on a JSON state
  bell            maximize the Bell combinations over a grid of squeezing values
  fig-example     criterion scan of the partial three-mode state
  qubit-selftest  reference checks on GHZ and W states
"""
import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from app.core import gaussian as gc
from app.core.config import get_settings
from app.core.exceptions import CvError, InvalidArgumentError
from app.models.circuits import FamilySpec, MqcSpec, StateKind, parse_spec
from app.models.gaussian import GaussianState, uncertainty_min_eigenvalue
from app.services import circuits, criteria, nonlocality, qubit_oracle, state_io

logger = logging.getLogger(__name__)

BELL_COLUMNS = ["N", "r", "J_star", "B_star", "phase"]
EXAMPLE_COLUMNS = [
    "r", "crit1_value", "crit1_reference_formula", "crit2_value",
    "crit1_threshold", "crit2_threshold",
]
MAX_BELL_PARTIES = 8


def _comma_list(cast: Callable) -> Callable[[str], List]:
    def parse(text: str) -> List:
        try:
            values = [cast(item) for item in text.split(",") if item.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a comma-separated list, got {text!r}")
        if not values:
            raise argparse.ArgumentTypeError("list must not be empty")
        return values
    return parse


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.{get_settings().float_digits}g}"
    return str(value)


def _write_csv(header: Sequence[str], rows: Sequence[Sequence], out: Optional[Path]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    _emit(buffer.getvalue(), out)


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8", newline="\n")
        logger.info("Wrote %s", out)


def _summary(label: str, state: GaussianState) -> str:
    min_eig = uncertainty_min_eigenvalue(state.cov)
    return (
        f"{label}: modes={state.n_modes} physical=yes min_eig={min_eig:.3e} "
        f"pure={'yes' if gc.is_pure(state) else 'no'} purity={gc.purity(state):.12f}"
    )


# =============================================================================
# Commands
# =============================================================================

def cmd_generate(args: argparse.Namespace) -> int:
    kind = StateKind(args.kind)
    if kind == StateKind.FAMILY:
        r1 = args.r1 if args.r1 is not None else args.r
        r2 = args.r2 if args.r2 is not None else r1
        if r1 is None:
            raise InvalidArgumentError("family needs --r1 (or --r)")
        spec = parse_spec(FamilySpec, n_modes=args.n, r1=r1, r2=r2)
        state = circuits.make_family_state(spec)
        label = f"family N={spec.n_modes} r1={spec.r1:g} r2={spec.r2:g}"
    elif kind == StateKind.PARTIAL3:
        r = args.r if args.r is not None else 0.0
        state = circuits.make_partial_three_mode(r)
        label = f"partial3 r={r:g}"
    else:
        if args.theta0 is None:
            raise InvalidArgumentError("mqc needs --theta0")
        spec = parse_spec(MqcSpec, receivers=args.receivers, theta0=args.theta0)
        state = circuits.make_mqc_state(spec)
        r1, r2 = spec.squeezing()
        label = f"mqc M={spec.receivers} theta0={spec.theta0:g} (r1={r1:.6g}, r2={r2:.6g})"

    if args.out is None:
        sys.stdout.write(state_io.dumps_state(state) + "\n")
    else:
        state_io.write_state(state, args.out)
        print(_summary(label, state))
    return 0


def cmd_criteria(args: argparse.Namespace) -> int:
    state = state_io.read_state(args.state)
    if (args.seed is None) != (args.shots is None):
        raise InvalidArgumentError("--seed and --shots must be given together")
    bundle = criteria.evaluate_all(state, seed=args.seed, shots=args.shots)
    _emit(json.dumps(bundle.model_dump(mode="json"), allow_nan=False, indent=2) + "\n", args.out)
    return 0


def cmd_bell(args: argparse.Namespace) -> int:
    for n in args.n:
        if not 2 <= n <= MAX_BELL_PARTIES:
            raise InvalidArgumentError(f"N must be in 2..{MAX_BELL_PARTIES}, got {n}")
    results = nonlocality.bell_sweep(args.n, args.grid, args.phase)
    rows = [(m.n_parties, m.r, m.j_star, m.b_star, m.phase) for m in results]
    _write_csv(BELL_COLUMNS, rows, args.out)
    return 0


def cmd_fig_example(args: argparse.Namespace) -> int:
    grid = args.grid if args.grid is not None else criteria.default_scan_grid(args.points)
    rows = [
        (row.r, row.crit1_value, row.crit1_reference_formula, row.crit2_value,
         row.crit1_threshold, row.crit2_threshold)
        for row in criteria.partial_three_mode_scan(sorted(grid))
    ]
    _write_csv(EXAMPLE_COLUMNS, rows, args.out)
    return 0


def cmd_qubit_selftest(args: argparse.Namespace) -> int:
    checks = qubit_oracle.run_self_test()
    for check in checks:
        print(f"{'PASS' if check.passed else 'FAIL'} {check.name}: {check.detail}")
    return 0 if all(c.passed for c in checks) else 1


# =============================================================================
# Entry point
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="cvent",
        description="Continuous-variable multipartite entanglement toolkit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  cvent generate family --n 3 --r1 1 --r2 1 --out family.json
  cvent generate mqc --receivers 2 --theta0 0.8 --out mqc.json
  cvent criteria family.json --seed 7 --shots 20000
  cvent bell --n 2,3,5 --grid 0,0.5,3 --out bell.csv
  cvent fig-example --out example.csv
        """,
    )
    parser.add_argument("--log-level", default=settings.log_level, help="Logging level (default: %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="Build a named state and write it as JSON")
    gen.add_argument("kind", choices=[k.value for k in StateKind])
    gen.add_argument("--n", type=int, default=3, help="Modes of a family state (default: %(default)s)")
    gen.add_argument("--r1", type=float, help="Momentum squeezing of mode 1 (family)")
    gen.add_argument("--r2", type=float, help="Position squeezing of modes 2..N (family, default: r1)")
    gen.add_argument("--r", type=float, help="Squeezing for partial3, or r1 = r2 = r for family")
    gen.add_argument("--receivers", type=int, default=2, help="MQC receivers M (default: %(default)s)")
    gen.add_argument("--theta0", type=float, help="MQC beam-splitter angle in radians")
    gen.add_argument("--out", type=Path, help="Output JSON path (default: stdout)")
    gen.set_defaults(handler=cmd_generate)

    crit = sub.add_parser("criteria", help="Run every inseparability test on a JSON state")
    crit.add_argument("state", type=Path, help="JSON state file")
    crit.add_argument("--seed", type=int, help="Seed for the sampled crit1 estimate")
    crit.add_argument("--shots", type=int, help="Analyzer records for the sampled crit1 estimate")
    crit.add_argument("--out", type=Path, help="Output JSON path (default: stdout)")
    crit.set_defaults(handler=cmd_criteria)

    bell = sub.add_parser("bell", help="Maximize the Bell combination over J for each (N, r)")
    bell.add_argument("--n", type=_comma_list(int), default=[2, 3, 4, 5], help="Parties, comma list (default: 2,3,4,5)")
    bell.add_argument("--grid", type=_comma_list(float), default=[0.0, 0.5, 1.0, 2.0, 3.0],
                      help="Squeezing values r, comma list (default: 0,0.5,1,2,3)")
    bell.add_argument("--phase", type=float, default=settings.bell_default_phase,
                      help="Phase of the primed displacements in radians (default: pi/2)")
    bell.add_argument("--out", type=Path, help="Output CSV path (default: stdout)")
    bell.set_defaults(handler=cmd_bell)

    fig = sub.add_parser("fig-example", help="Criterion scan of the partial three-mode state")
    fig.add_argument("--points", type=int, default=settings.fig_points,
                     help="Evenly spaced r values on [0, 1] (default: %(default)s)")
    fig.add_argument("--grid", type=_comma_list(float), help="Explicit r values, comma list")
    fig.add_argument("--out", type=Path, help="Output CSV path (default: stdout)")
    fig.set_defaults(handler=cmd_fig_example)

    qubit = sub.add_parser("qubit-selftest", help="Reference checks on GHZ and W states")
    qubit.set_defaults(handler=cmd_qubit_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=str(args.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except (CvError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
