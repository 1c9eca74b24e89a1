"""
Command-line entry point.

    heliodec report   [--config FILE] [--format human|json]
    heliodec sweep    [--config FILE] --axis name=start:stop:count:log|lin ... [-o FILE]
    heliodec optimize [--config FILE] --variable mass|separation [--bracket LO HI]
    heliodec infer-x3 [--config FILE] --tau SECONDS [--no-background]
    heliodec trace    [--config FILE] --t-max SECONDS [--points N] [--mc TRIALS SEED] [-o FILE]

Exit codes: 0 success, 1 physics domain or infeasibility, 2 usage or config.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Sequence, TextIO

from . import __version__
from .analysis import SweepGrid, infer_x3, max_mass, max_separation, sweep
from .config import load_config, parse_axis
from .dynamics import monte_carlo_survival, visibility_trace
from .errors import (
    ConfigError,
    DomainError,
    GridCapError,
    InfeasibleError,
    NoSolutionError,
)
from .experiment import total_budget
from .quantities import amu, nm, s
from .serialize import (
    budget_to_dict,
    dumps,
    feasibility_to_dict,
    format_report,
    inference_to_dict,
    write_sweep_csv,
    write_trace_csv,
)

EXIT_OK, EXIT_PHYSICS, EXIT_USAGE = 0, 1, 2


@contextlib.contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        # newline="" keeps LF endings on every platform
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _cmd_report(args) -> int:
    cfg = load_config(args.config)
    b = total_budget(cfg)
    if args.format == "json":
        sys.stdout.write(dumps(budget_to_dict(cfg, b)))
    else:
        sys.stdout.write(format_report(cfg, b))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    axes = [parse_axis(a) for a in args.axis]
    try:
        grid = SweepGrid(tuple((n, tuple(v)) for n, v in axes), cfg)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    rows = sweep(grid, cap=args.cap, threads=args.threads)
    with _output(args.output) as fh:
        write_sweep_csv(rows, fh)
    return EXIT_OK


def _cmd_optimize(args) -> int:
    cfg = load_config(args.config)
    if args.variable == "mass":
        search, unit = max_mass, amu
    else:
        search, unit = max_separation, nm
    if args.bracket is None:
        result = search(cfg)
    else:
        lo, hi = args.bracket
        if not 0 < lo < hi:
            raise ConfigError("--bracket needs 0 < LO < HI")
        result = search(cfg, (lo * unit, hi * unit))
    sys.stdout.write(dumps(feasibility_to_dict(result)))
    return EXIT_OK


def _cmd_infer(args) -> int:
    cfg = load_config(args.config)
    result = infer_x3(cfg, args.tau * s, subtract_background=not args.no_background)
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    sys.stdout.write(dumps(inference_to_dict(result)))
    return EXIT_OK


def _cmd_trace(args) -> int:
    cfg = load_config(args.config)
    t_max = args.t_max * s
    trace = visibility_trace(cfg, t_max, args.points)
    mc = None
    if args.mc is not None:
        trials, seed = args.mc
        rate = total_budget(cfg).rate_total
        mc = monte_carlo_survival(rate, t_max, trials, seed, args.points)
    with _output(args.output) as fh:
        write_trace_csv(trace, fh, mc)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heliodec",
        description="Decoherence budget of a nanoparticle superposition in superfluid helium.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("-c", "--config", help="JSON config file (defaults if omitted)")
        return p

    p = add("report", "full decoherence budget at one parameter point")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=_cmd_report)

    p = add("sweep", "evaluate the budget on a Cartesian parameter grid (CSV)")
    p.add_argument("--axis", action="append", required=True, metavar="SPEC",
                   help="name=start:stop:count:log|lin; repeatable")
    p.add_argument("-o", "--output", help="CSV path (stdout if omitted)")
    p.add_argument("--cap", type=int, default=10**7, help="maximum grid points")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: $HELIODEC_THREADS or 1)")
    p.set_defaults(func=_cmd_sweep)

    p = add("optimize", "largest mass or separation meeting margin_k")
    p.add_argument("--variable", choices=("mass", "separation"), required=True)
    p.add_argument("--bracket", nargs=2, type=float, metavar=("LO", "HI"),
                   help="search range in amu (mass) or nm (separation)")
    p.set_defaults(func=_cmd_optimize)

    p = add("infer-x3", "infer the 3He fraction from a measured decoherence time")
    p.add_argument("--tau", type=float, required=True, help="measured decoherence time [s]")
    p.add_argument("--no-background", action="store_true",
                   help="do not subtract model phonon/rotational rates")
    p.set_defaults(func=_cmd_infer)

    p = add("trace", "visibility versus time (CSV)")
    p.add_argument("--t-max", type=float, required=True, help="final time [s]")
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--mc", nargs=2, type=int, metavar=("TRIALS", "SEED"),
                   help="add a Monte Carlo survival column")
    p.add_argument("-o", "--output", help="CSV path (stdout if omitted)")
    p.set_defaults(func=_cmd_trace)
    return parser


def main(argv: Sequence[str] | None = None, stderr: TextIO | None = None) -> int:
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, GridCapError) as exc:
        print(f"heliodec: error: {exc}", file=err)
        return EXIT_USAGE
    except (DomainError, InfeasibleError, NoSolutionError) as exc:
        print(f"heliodec: {type(exc).__name__}: {exc}", file=err)
        return EXIT_PHYSICS


if __name__ == "__main__":
    sys.exit(main())
