"""``dss-capacity`` command line.

Every subcommand reads one JSON config, computes, and prints a report to
stdout. Exit codes: 0 success, 1 invalid input, 2 internal check failure.
"""

import argparse
import logging
import os
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from .capacity import bounds_report, exact_capacity
from .configfile import config_digest, load_config
from .errors import (
    BandwidthExceedsStorage,
    InternalCheckFailure,
    InvalidInput,
    OracleMismatch,
)
from .flowgraph import build_flow_graph, chain_schedule, oracle_capacity
from .lift import lift_bound_check, permutation_lift
from .model import DssConfig, integer_scaled, validate
from .report import (
    Payload,
    Report,
    adversarial_payload,
    bounds_payload,
    config_summary,
    lift_payload,
    trial_payload,
    witness_payload,
)
from .rlncsim import DEFAULT_PRIME, FieldSpec, adversarial_witness_trial, run_random_trials
from .secrecy import secrecy_bound_profile, secrecy_upper_bound

logger = logging.getLogger(__name__)

MAX_N_ENV = "DSS_CAPACITY_MAX_N"

Handler = Callable[[argparse.Namespace, DssConfig], Payload]
Configure = Callable[[argparse.ArgumentParser], None]


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    handler: Handler
    configure: Optional[Configure] = None


# Subcommands in registration order
_commands: Dict[str, Command] = {}


def command(
    name: str, help: str, configure: Optional[Configure] = None
) -> Callable[[Handler], Handler]:
    """Register a subcommand handler.

    Example:
        @command("validate", "check a config")
        def validate_cmd(args, config):
            return {...}
    """

    def decorator(func: Handler) -> Handler:
        _commands[name] = Command(name, help, func, configure)
        return func

    return decorator


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise InvalidInput(f"{self.prog}: {message}")


def _max_n(args: argparse.Namespace) -> Optional[int]:
    if args.max_n is not None:
        return args.max_n
    raw = os.environ.get(MAX_N_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"{MAX_N_ENV} must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


@command("validate", "check a config and print its averages")
def validate_cmd(args: argparse.Namespace, config: DssConfig) -> Payload:
    return config_summary(config)


def _bounds_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--exact", action="store_true", help="also enumerate the exact capacity")


@command("bounds", "average, general and helper-only capacity bounds", _bounds_options)
def bounds_cmd(args: argparse.Namespace, config: DssConfig) -> Payload:
    return bounds_payload(bounds_report(config, args.exact, _max_n(args)))


@command("capacity", "exact capacity with a minimizing failure sequence")
def capacity_cmd(args: argparse.Namespace, config: DssConfig) -> Payload:
    value, witness = exact_capacity(config, _max_n(args))
    return {"capacity": value, "witness": witness_payload(witness)}


def _secrecy_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ell", type=int, default=None, help="number of eavesdropped nodes")


@command("secrecy", "secrecy-capacity upper bound", _secrecy_options)
def secrecy_cmd(args: argparse.Namespace, config: DssConfig) -> Payload:
    payload: Payload = {"profile": secrecy_bound_profile(config)}
    if args.ell is not None:
        payload["ell"] = args.ell
        payload["bound"] = secrecy_upper_bound(config, args.ell)
    return payload


def _lift_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--explicit", action="store_true", help="sum all n! permuted copies (n ≤ 6)"
    )
    parser.add_argument(
        "--certify", action="store_true", help="check n!·C ≤ C_b against the exact capacity"
    )


@command("lift", "permutation lift to a homogeneous system", _lift_options)
def lift_cmd(args: argparse.Namespace, config: DssConfig) -> Payload:
    mode = "explicit" if args.explicit else "formula"
    report = permutation_lift(config, mode)
    certificate = lift_bound_check(config, _max_n(args)) if args.certify else None
    return lift_payload(report, mode, certificate)


def _flowcheck_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--exhaustive", action="store_true", help="search every schedule (n ≤ 5)"
    )
    parser.add_argument(
        "--dump-graph", metavar="PATH", default=None, help="write the witness flow graph"
    )
    parser.add_argument(
        "--graph-format",
        choices=["edgelist", "mermaid", "png", "svg", "pdf"],
        default="edgelist",
    )


@command("flowcheck", "min-cut oracle against the exact capacity", _flowcheck_options)
def flowcheck_cmd(args: argparse.Namespace, config: DssConfig) -> Payload:
    mode = "exhaustive" if args.exhaustive else "chains"
    exact, witness = exact_capacity(config, _max_n(args))
    oracle = oracle_capacity(config, mode)
    if oracle != exact:
        raise OracleMismatch(f"{mode} min-cut oracle", exact, oracle)

    payload: Payload = {"mode": mode, "exact": exact, "oracle": oracle, "agrees": True}
    if args.dump_graph:
        schedule = chain_schedule(config, witness.failures, witness.helper_sets)
        graph = build_flow_graph(config, schedule)
        if args.graph_format in ("edgelist", "mermaid"):
            Path(args.dump_graph).write_text(
                graph.visualize(args.graph_format) + "\n", encoding="utf-8"
            )
            payload["graph"] = args.dump_graph
        else:
            payload["graph"] = graph.visualize(args.graph_format, args.dump_graph)
    return payload


def _simulate_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--file-size", type=int, default=None, help="file size M in scaled units")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--rounds", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--field", type=int, default=DEFAULT_PRIME, help="prime field size")
    parser.add_argument(
        "--adversarial",
        action="store_true",
        help="decode capacity+1 symbols through the minimizing repair chain",
    )


@command("simulate", "random linear coding over GF(p)", _simulate_options)
def simulate_cmd(args: argparse.Namespace, config: DssConfig) -> Payload:
    scaled, factor = integer_scaled(config)
    field = FieldSpec(args.field)
    if args.adversarial:
        record = adversarial_witness_trial(scaled, args.file_size, field, args.seed)
        if not record.holds:
            raise OracleMismatch("adversarial rank bound", record.capacity, record.rank)
        payload = adversarial_payload(record, args.seed, field.p)
    else:
        if args.file_size is None:
            raise InvalidInput("simulate needs --file-size unless --adversarial is given")
        report = run_random_trials(
            scaled, args.file_size, args.rounds, args.trials, args.seed, field
        )
        payload = trial_payload(report)
    payload["unit_scale"] = factor
    return payload


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("config", help="JSON config file")
    common.add_argument("--format", choices=["json", "table"], default="table")
    common.add_argument(
        "--max-n",
        type=int,
        default=None,
        help=f"enumeration guard for exact capacity (default 10, env {MAX_N_ENV})",
    )
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")

    parser = _Parser(
        prog="dss-capacity",
        description="Capacity and secrecy bounds of heterogeneous distributed storage",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for cmd in _commands.values():
        sub = subparsers.add_parser(cmd.name, help=cmd.help, parents=[common])
        if cmd.configure is not None:
            cmd.configure(sub)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def run(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Parse ``argv``, execute one subcommand, and return the exit code."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except InvalidInput as e:
        print(f"error: {e}", file=err)
        return 1
    except SystemExit as e:  # --help
        return int(e.code or 0)

    _configure_logging(args)
    cmd = _commands[args.command]
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", BandwidthExceedsStorage)
            config = validate(load_config(args.config))
            results = cmd.handler(args, config)
        messages: List[str] = [
            str(w.message) for w in caught if issubclass(w.category, BandwidthExceedsStorage)
        ]
        report = Report(cmd.name, config_digest(config), results, messages)
    except InvalidInput as e:
        print(f"error: {type(e).__name__}: {e}", file=err)
        return 1
    except InternalCheckFailure as e:
        logger.error("internal check failed in %s: %s", cmd.name, e)
        print(f"internal error: {type(e).__name__}: {e}", file=err)
        return 2

    print(report.render(args.format), file=out)
    return 0


def main() -> None:
    sys.exit(run())
