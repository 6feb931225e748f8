"""The `crn` command.

    crn analyze NETWORK [RATES] [--rates PATH | --unit-rates] [--enlarge-bound D]
    crn phospho N [--rates PATH | --unit-rates]
    crn multistat NETWORK [--Z PATH] [--rates PATH | --unit-rates] [--tol TOL] [--enlarge-bound D]
    crn rays NETWORK

NETWORK is a `.crn` file or `fixture:NAME` for a bundled example. Reports go
to stdout (plain "path: value" lines, or JSON with --json); logs go to stderr.

Exit codes: 0 toric / witness found, 1 input error, 2 toric conditions failed,
3 no capacity for multistationarity, 4 degenerate flux cone.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from ..analysis.cones import extreme_rays
from ..analysis.multistat import analyze_multistationarity
from ..analysis.phospho import generate, phospho_report
from ..analysis.pipeline import run_toric_analysis
from ..core import logger as logger_module
from ..core.constants import ExitCode
from ..core.errors import CRNError, InvariantViolation, ParseError
from ..core.settings import Settings
from ..linalg.exact import IntegerMatrix
from ..network.fixtures import load_fixture, multisite_network
from ..network.model import RateAssignment, ReactionNetwork, unit_rates
from ..system.storage import StorageManager
from ..text.parser import parse_network, parse_rates, render_network
from ..text.report import AnalysisReport, render_plain, render_report
from .dispatch import Command, CommandDispatcher, CommandResult

logger = logger_module.get_logger(__name__)

FIXTURE_PREFIX = "fixture:"

class UsageError(CRNError):
    """Bad command line."""

class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is the "toric failed" code here
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crn", description="Toric steady states and multistationarity of reaction networks")
    parser.add_argument("--log-level", help="Override the configured log level (DEBUG, INFO, ...)")
    parser.add_argument("--config", type=Path, help="Settings file to use instead of the user configuration")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="Print the report as JSON")
        p.add_argument("--save", action="store_true", help="Also write the JSON report to the reports directory")

    def rate_flags(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--rates", type=Path, help="Rate constant file")
        group.add_argument("--unit-rates", action="store_true", help="Set every rate constant to 1")

    analyze = sub.add_parser("analyze", help="Check Conditions 1-3 and parametrize the positive steady states")
    analyze.add_argument("network")
    analyze.add_argument("rates_file", nargs="?", type=Path, metavar="RATES")
    rate_flags(analyze)
    analyze.add_argument("--enlarge-bound", type=int, help="Search multiples x^a f_i with |a| up to this degree")
    output_flags(analyze)

    phospho = sub.add_parser("phospho", help="Closed-form analysis of the n-site phosphorylation network")
    phospho.add_argument("sites", type=int, metavar="N")
    rate_flags(phospho)
    output_flags(phospho)

    multistat = sub.add_parser("multistat", help="Decide the capacity for multistationarity")
    multistat.add_argument("network")
    multistat.add_argument("--Z", dest="z_file", type=Path, help="One integer vector of length s per line")
    rate_flags(multistat)
    multistat.add_argument("--tol", type=float, help="Relative residual accepted at the second steady state")
    multistat.add_argument("--enlarge-bound", type=int, help="Multiplier search bound for the toric analysis")
    output_flags(multistat)

    rays = sub.add_parser("rays", help="Extreme rays of the flux cone")
    rays.add_argument("network")
    output_flags(rays)
    return parser

def configure_logger(settings: Settings, level_override: str | None = None) -> None:
    """
    Configure the logger based on application settings.

    Args:
        settings (Settings): Application settings.
        level_override (str | None): Level given on the command line.
    """
    log_level = level_override or settings.get("log_level", "WARNING")
    log_file = StorageManager().LOG_FILE if settings.get("log_to_file", False) is True else None
    logger_module.configure(log_level, to_console=settings.get("log_to_console", True) is not False, log_file=log_file)
    logger.info(f"Log level set to {log_level}")
    if log_file is not None:
        logger.info(f"Logging to {log_file}")

def load_network(source: str) -> ReactionNetwork:
    """Parse a network file, or load a bundled example given as `fixture:NAME`."""
    if source.startswith(FIXTURE_PREFIX):
        return load_fixture(source[len(FIXTURE_PREFIX):])
    path = Path(source)
    return parse_network(path.read_text(), name=path.name)

def load_rates(path: Path | None, unit: bool, net: ReactionNetwork) -> RateAssignment:
    if unit:
        return unit_rates(net)
    if path is None:
        raise UsageError("no rate constants given; pass a rates file or --unit-rates")
    return parse_rates(path.read_text(), name=path.name)

def load_z(path: Path, s: int) -> IntegerMatrix:
    """
    Read Z from a file with one column vector per line, entries separated by blanks or commas.

    Raises:
        ParseError: On a non-integer entry or a vector whose length is not s.
    """
    columns = []
    for line_no, line in enumerate(path.read_text().splitlines(), start=1):
        content = line.split("#", 1)[0].replace(",", " ").split()
        if not content:
            continue
        try:
            vector = [int(v) for v in content]
        except ValueError:
            raise ParseError("entries of Z must be integers", line=line_no, source=path.name) from None
        if len(vector) != s:
            raise ParseError(f"vector of length {len(vector)}, expected {s}", line=line_no, source=path.name)
        columns.append(vector)
    return IntegerMatrix.from_columns(columns, nrows=s) if columns else IntegerMatrix.zeros(s, 0)

def cmd_analyze(args: argparse.Namespace, settings: Settings) -> CommandResult:
    net = load_network(args.network)
    if args.rates_file is not None and (args.rates is not None or args.unit_rates):
        raise UsageError("rates given both as RATES and as an option")
    rates = load_rates(args.rates_file or args.rates, args.unit_rates, net)
    bound = args.enlarge_bound if args.enlarge_bound is not None else settings.get("tor_enlarge_bound", 0)
    if bound < 0:
        raise UsageError("--enlarge-bound must be non-negative")
    analysis = run_toric_analysis(
        net,
        rates,
        enlarge_bound=bound,
        max_multiplier_rows=settings.get("tor_max_multiplier_rows", 6),
        residual_tolerance=settings.get("tor_float_residual", 1e-10),
    )
    report = analysis.to_report()
    report.add("timings", analysis.timings)
    code = ExitCode.OK if analysis.toric else ExitCode.TORIC_FAILED
    return CommandResult(code, report, None if analysis.toric else f"not toric: {analysis.reason}")

def cmd_phospho(args: argparse.Namespace, settings: Settings) -> CommandResult:
    if args.sites < 1:
        raise UsageError(f"number of sites must be at least 1, got {args.sites}")
    network = multisite_network(args.sites)
    rates = load_rates(args.rates, args.unit_rates, network)
    system = generate(args.sites, rates)
    report = AnalysisReport()
    report.add("network_file", render_network(network))
    for key, value in phospho_report(system, settings.get("pho_sample_t", (2, 3, 5))).items():
        report.add(key, value)
    if report["sample"]["steady_state"] is not True:
        raise InvariantViolation("sample point of the closed-form parametrization is not a steady state")
    return CommandResult(ExitCode.OK, report)

_VERDICT_CODES = {
    "witness": ExitCode.OK,
    "no_capacity": ExitCode.NO_CAPACITY,
    "toric_failed": ExitCode.TORIC_FAILED,
    "degenerate": ExitCode.DEGENERATE_CONE,
}

def cmd_multistat(args: argparse.Namespace, settings: Settings) -> CommandResult:
    net = load_network(args.network)
    Z = load_z(args.z_file, net.s) if args.z_file is not None else None
    rates = load_rates(args.rates, unit=args.rates is None, net=net)
    result = analyze_multistationarity(
        net,
        Z=Z,
        rates=rates,
        tolerance=args.tol if args.tol is not None else settings.get("ms_tolerance", 1e-9),
        max_image_rank=settings.get("ms_max_image_rank", 8),
        probe_draws=settings.get("ms_probe_draws", 2),
        probe_seed=settings.get("ms_probe_seed", 2010),
        enlarge_bound=args.enlarge_bound if args.enlarge_bound is not None else settings.get("tor_enlarge_bound", 0),
    )
    if result.verification is not None and not result.verification["passed"]:
        raise InvariantViolation("constructed multistationarity witness failed verification")
    code = _VERDICT_CODES[result.verdict]
    return CommandResult(code, result.to_report(), None if code == ExitCode.OK else result.reason)

def cmd_rays(args: argparse.Namespace, settings: Settings) -> CommandResult:
    net = load_network(args.network)
    cone = extreme_rays(net.stoichiometric_matrix())
    report = AnalysisReport()
    report.add("reactions", [r.rate for r in net.reactions])
    report.add("cone", cone)
    if cone.degenerate:
        return CommandResult(ExitCode.DEGENERATE_CONE, report, "flux cone is degenerate")
    return CommandResult(ExitCode.OK, report)

def build_dispatcher() -> CommandDispatcher:
    dispatcher = CommandDispatcher()
    dispatcher.register(Command.ANALYZE, cmd_analyze)
    dispatcher.register(Command.PHOSPHO, cmd_phospho)
    dispatcher.register(Command.MULTISTAT, cmd_multistat)
    dispatcher.register(Command.RAYS, cmd_rays)
    return dispatcher

def emit(result: CommandResult, command: Command, as_json: bool, save: bool) -> None:
    """Print the report to stdout, the diagnostic to stderr, and save the JSON if asked."""
    if result.report is not None:
        text = render_report(result.report, indent=2) if as_json else render_plain(result.report)
        print(text)
        if save:
            path = StorageManager().save_report(command.value, render_report(result.report, indent=2))
            logger.info(f"Report saved to {path}")
    if result.message:
        print(f"crn {command.value}: {result.message}", file=sys.stderr)

def main(argv: Sequence[str] | None = None, settings: Settings | None = None) -> int:
    """
    Entry point of the `crn` command.

    Args:
        argv (Sequence[str] | None): Arguments without the program name; sys.argv by default.
        settings (Settings | None): Settings to use instead of loading them.

    Returns:
        int: The process exit code.
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return int(ExitCode.INPUT_ERROR)

    if settings is None:
        settings = Settings(config_path=args.config) if args.config else Settings()
    configure_logger(settings, args.log_level)

    command = Command(args.command)
    result = build_dispatcher().handle(command=command, args=args, settings=settings)
    emit(result, command, args.json, args.save or settings.get("out_save_reports", False) is True)
    return int(result.exit_code)

if __name__ == "__main__":
    sys.exit(main())
