"""Command-line entry point: ``hyperext <verb> --input FILE [options]``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 counting
budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import structlog

from hyperext.commands import get_command
from hyperext.configuration import Configuration
from hyperext.finitefield import BudgetExceeded
from hyperext.render import parse_window
from hyperext.state import Check, Command, RunConfig
from hyperext.utils import configure_logging

log = structlog.get_logger()

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

HELP = {
    Command.INVARIANTS: "chi, Whitney polynomial, Whitney numbers, faces and regions",
    Command.LATTICE: "the intersection semi-lattice",
    Command.NBC: "affine circuits, broken circuits and NBC sets",
    Command.ADJOINT: "the induced adjoint arrangement with provenance",
    Command.CLASSIFY: "classify one-element extensions by the strata of the adjoint",
    Command.CLASSIFY_RESTRICTIONS: "classify restrictions to a hyperplane by the same strata",
    Command.RESTRICT: "restrict to one hyperplane",
    Command.FF_COUNT: "count the complement over F_p",
    Command.VERIFY: "machine-check a property; exits 1 on any failure",
    Command.RENDER: "SVG drawing of a planar arrangement",
}


def _order(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated label list: {text!r}") from None


def _vector(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(","))


def _window(text: str):
    try:
        return parse_window(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser(defaults: Optional[Configuration] = None) -> argparse.ArgumentParser:
    defaults = defaults or Configuration()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", type=Path, help="arrangement file (JSON)")
    common.add_argument("--output", "-o", type=Path, help="write the result here instead of stdout")
    common.add_argument("--trials", type=int, default=defaults.trials)
    common.add_argument("--seed", type=int, default=defaults.seed)
    common.add_argument("--prime", "--p", dest="prime", type=int)
    common.add_argument("--order", type=_order, help='label order such as "3,1,2"')
    common.add_argument("--log-level", default=defaults.log_level)

    parser = argparse.ArgumentParser(prog="hyperext", description="Exact hyperplane arrangement toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        p = sub.add_parser(command.value, parents=[common], help=HELP[command])
        if command is Command.LATTICE:
            p.add_argument("--format", dest="fmt", choices=["json", "dot"], default="json")
        elif command is Command.RESTRICT:
            p.add_argument("--normal", type=_vector, required=True)
            p.add_argument("--offset", default="0")
        elif command is Command.VERIFY:
            p.add_argument("check", choices=[c.value for c in Check])
            p.add_argument("--spot-prime", dest="prime", type=int)
        elif command is Command.RENDER:
            p.add_argument("--window", type=_window, help='"x0,y0,x1,y1"')
    return parser


def parse_args(argv: Optional[Sequence[str]] = None, defaults: Optional[Configuration] = None) -> RunConfig:
    """Parse ``argv`` into a :class:`RunConfig`; flags override ``defaults``."""
    defaults = defaults or Configuration()
    parser = build_parser(defaults)
    args = parser.parse_args(argv)
    try:
        return RunConfig(
            command=Command(args.command),
            input=args.input,
            output=args.output,
            trials=args.trials,
            seed=args.seed,
            prime=args.prime,
            order=args.order,
            check=Check(args.check) if getattr(args, "check", None) else None,
            window=getattr(args, "window", None),
            normal=getattr(args, "normal", None),
            offset=getattr(args, "offset", 0),
            fmt=getattr(args, "fmt", "json"),
            count_budget=defaults.count_budget,
            prime_floor=defaults.prime_floor,
            nbc_orders=defaults.nbc_orders,
            log_level=args.log_level,
        )
    except ValueError as e:
        parser.error(str(e))
        raise


def run(config: RunConfig) -> int:
    """Execute one command and write its artifact; return the exit code."""
    try:
        result = get_command(config).run()
    except BudgetExceeded as e:
        log.error("counting budget exceeded", requested=e.requested, allowed=e.allowed)
        sys.stderr.write(f"hyperext: {e}\n")
        return EXIT_BUDGET
    except (ValueError, KeyError) as e:
        log.error("input error", command=config.command.value, error=str(e))
        sys.stderr.write(f"hyperext: {e}\n")
        return EXIT_INPUT
    if config.output is None:
        sys.stdout.write(result.text)
    return result.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = parse_args(argv, Configuration.load_from_project_json())
    configure_logging(config.log_level)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
