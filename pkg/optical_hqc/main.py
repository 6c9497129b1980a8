"""Command-line entry point"""

import argparse
import logging
import sys
from typing import Dict, List, Optional

from pydantic import ValidationError

from optical_hqc.commands import COMMANDS
from optical_hqc.config import settings
from optical_hqc.engine.optics_ops import ModelKind
from optical_hqc.models import JobConfig
from optical_hqc.storage import StorageType, create_storage
from optical_hqc.utils.exceptions import HQCException, InvalidArgumentError
from optical_hqc.utils.validators import parse_assignments

logger = logging.getLogger(__name__)


def configure_logging(level: str) -> None:
    """Log to stderr; stdout carries report documents"""
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )
    logging.getLogger().setLevel(getattr(logging, level.upper(), logging.INFO))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optical-hqc",
        description="Holonomic gates of Kerr-qubit optical models",
    )
    parser.add_argument("--log-level", default=settings.log_level)
    sub = parser.add_subparsers(dest="verb", required=True)

    helps = {
        "connection": "Connection coefficients A_mu at a point",
        "holonomy": "Path-ordered holonomy of a loop file",
        "curvature": "Curvature F_{mu nu} at a point",
        "rank-probe": "Estimate the holonomy Lie-algebra dimension",
        "sweep": "Gate convergence over a cutoff sweep",
    }
    for verb, text in helps.items():
        cmd = sub.add_parser(verb, help=text)
        cmd.add_argument("--model", choices=[k.value for k in ModelKind], default=None)
        cmd.add_argument("--qubits", type=int, default=None, help="n for --model n_qubit")
        cmd.add_argument("--cutoff", type=int, default=None)
        cmd.add_argument("--out", type=str, default=None, help="Report file (stdout if omitted)")
        cmd.add_argument(
            "--tol",
            action="append",
            default=[],
            metavar="NAME=VALUE",
            help="Tolerance override, e.g. --tol unitarity=1e-8",
        )
        cmd.add_argument("--workers", type=int, default=None)

        if verb in ("connection", "curvature", "rank-probe"):
            cmd.add_argument(
                "--point",
                action="append",
                default=[],
                metavar="NAME=VALUE",
                help="Real coordinate of the point, e.g. --point alpha1_re=0.1",
            )
        if verb in ("holonomy", "sweep"):
            cmd.add_argument("--loop", type=str, required=True)
            cmd.add_argument("--segments", type=int, default=None)
            cmd.add_argument("--refinements", type=int, default=None)
            cmd.add_argument("--cutoffs", type=int, nargs="+", default=None)
        if verb == "curvature":
            cmd.add_argument("--mu", type=str, required=True)
            cmd.add_argument("--nu", type=str, required=True)
            cmd.add_argument("--step", type=float, default=None)
        if verb == "rank-probe":
            cmd.add_argument("--samples", type=int, default=None)
            cmd.add_argument("--eps", type=float, default=None)
            cmd.add_argument("--seed", type=int, default=None)
    return parser


def _floats(items: List[str], option: str) -> Dict[str, float]:
    values = {}
    for name, text in parse_assignments(items, option).items():
        try:
            values[name] = float(text)
        except ValueError:
            raise InvalidArgumentError(f"{option} {name}: '{text}' is not a number")
    return values


def build_config(args: argparse.Namespace) -> JobConfig:
    """
    Resolve CLI arguments into a JobConfig

    Raises:
        InvalidArgumentError: If a value is malformed or violates a model constraint
    """
    options = {
        "model": "model",
        "qubits": "qubits",
        "cutoff": "cutoff",
        "seed": "seed",
        "out": "output",
        "loop": "loop",
        "segments": "n_segments",
        "refinements": "refinements",
        "cutoffs": "cutoffs",
        "mu": "mu",
        "nu": "nu",
        "step": "step",
        "samples": "samples",
        "eps": "eps",
    }
    values = {
        field: getattr(args, option)
        for option, field in options.items()
        if getattr(args, option, None) is not None
    }
    values["point"] = _floats(getattr(args, "point", []), "--point")
    values["tolerances"] = _floats(args.tol, "--tol")

    try:
        return JobConfig.model_validate(values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}"
            for err in e.errors()
        )
        raise InvalidArgumentError(f"Invalid job configuration: {problems}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one CLI verb

    Returns:
        Exit code: 0 success, 2 validation error, 3 tolerance failure,
        4 resource budget, 1 unexpected error
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        config = build_config(args)
    except HQCException as e:
        logger.error(str(e))
        return e.exit_code

    if config.output:
        storage = create_storage(StorageType.FILE, config.output)
    else:
        storage = create_storage(StorageType.STDOUT)
    logger.info(f"{settings.app_name} {settings.app_version}: {args.verb}")
    return COMMANDS[args.verb](config, storage, args.workers)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
