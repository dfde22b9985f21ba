"""Command-line front end for filtered solves, sweeps and reproductions."""
from __future__ import annotations
import logging
import sys
from argparse import ArgumentParser, Namespace
from enum import Enum
from logging import getLogger
from typing import Any, Callable, Dict, List, NoReturn, Optional, Sequence

from pydantic import BaseModel, ValidationError, conint, root_validator

from .errors import GalerkinFilterError
from .filtering import (
    AutoGapPolicy,
    EscalateReference,
    FilterPolicy,
    FixedReference,
    ReferencePolicy,
    SolveStatus,
    SweepRunner,
    SweepStatus,
    parse_policy,
)
from .galerkin import Interval
from .models import FAMILIES, ModelFamily, get_family
from .reports import (
    DEFAULT_PRECISION,
    ENCODERS,
    STDOUT,
    ReportEncodeError,
    ReportFormat,
    ReportTable,
    ReportWriteError,
    ReportWriterLike,
    SyncReportWriter,
    solve_table,
    sweep_table,
)
from .reproduce import EXAMPLES, FIGURES, TABLES, build_figure_data, build_table


log = getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDETERMINED = 2
EXIT_USAGE = 64


class Command(str, Enum):
    """CLI subcommands."""

    SOLVE = "solve"
    SWEEP = "sweep"
    TABLE = "table"
    FIGURE_DATA = "figure-data"


class ConfigError(ValueError):
    """An error raised when command-line arguments don't form a valid run."""


class RunConfig(BaseModel):
    """A validated command-line run."""

    command: Command
    model: Optional[str] = None
    refinement: Optional[int] = None
    schedule: List[int] = []
    interval: Optional[Interval] = None
    reference: Optional[int] = None
    reference_max: Optional[int] = None
    policy: FilterPolicy = AutoGapPolicy()
    target: Optional[str] = None
    output_format: ReportFormat = ReportFormat.CSV
    out: str = STDOUT
    precision: conint(ge=0, le=17) = DEFAULT_PRECISION  # type: ignore[valid-type]
    diagnostics: bool = False

    @root_validator(skip_on_failure=True)
    def check_command(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        """Require the fields each subcommand needs."""
        command = values["command"]

        if command in (Command.SOLVE, Command.SWEEP):
            if values.get("model") is None:
                raise ValueError(f"{command.value} requires --model")
            if values.get("interval") is None:
                raise ValueError(f"{command.value} requires --interval A B")

        if command == Command.SOLVE and values.get("refinement") is None:
            raise ValueError("solve requires --k (model1) or --h (model2, model3)")

        if command == Command.TABLE and values.get("target") not in TABLES:
            raise ValueError(f"table must be one of {', '.join(TABLES)}")

        if command == Command.FIGURE_DATA and values.get("target") not in FIGURES:
            raise ValueError(f"figure must be one of {', '.join(FIGURES)}")

        return values

    @property
    def reference_policy(self) -> ReferencePolicy:
        """Get the fixed or escalating reference policy."""
        start = self.reference
        if start is None:
            start = get_family(self.model or "").coarsest

        if self.reference_max is None:
            return FixedReference(param=start)

        return EscalateReference(start=start, max=self.reference_max)


class UsageArgumentParser(ArgumentParser):
    """An ArgumentParser that exits with the usage error code."""

    def error(self, message: str) -> NoReturn:
        """Print usage and a message, then exit with EXIT_USAGE."""
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def create_parser() -> ArgumentParser:
    """Create the argument parser with every subcommand."""
    parser = UsageArgumentParser(
        prog="galerkin-filter",
        description="Pollution-free eigenvalue approximation by spectral filtering.",
    )
    parser.add_argument(
        "--log-level",
        default="warning",
        choices=["debug", "info", "warning", "error"],
    )
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=UsageArgumentParser
    )

    solve = commands.add_parser("solve", help="run one filtered solve")
    sweep = commands.add_parser("sweep", help="run a refinement sweep")
    table = commands.add_parser("table", help="reproduce a published table")
    figure = commands.add_parser("figure-data", help="emit data behind a figure")

    table.add_argument("target", choices=sorted(TABLES))
    figure.add_argument("target", choices=sorted(FIGURES))

    for sub in (solve, sweep):
        sub.add_argument("--model", required=True, choices=sorted(FAMILIES))
        sub.add_argument("--interval", nargs=2, type=float, metavar=("A", "B"))
        sub.add_argument("--ref-k", help="reference mode cutoff (model1)")
        sub.add_argument("--ref-h", help="reference mesh size, like 1/2")
        sub.add_argument("--ref-max", help="escalate the reference up to this")
        sub.add_argument("--policy", default="auto", help="auto, dim=D or threshold=T")
        sub.add_argument("--diagnostics", action="store_true")

    solve.add_argument("--k", help="mode cutoff (model1)")
    solve.add_argument("--h", help="mesh size, like 1/64 (model2, model3)")
    sweep.add_argument("--schedule", help="comma-separated refinements")

    for sub in (solve, sweep, table, figure):
        sub.add_argument(
            "--format", default="csv", choices=[item.value for item in ReportFormat]
        )
        sub.add_argument("--out", default=STDOUT, help="output path, - for stdout")
        sub.add_argument("--precision", type=int, default=DEFAULT_PRECISION)

    for sub in (table, figure):
        sub.add_argument("--schedule", help="comma-separated refinements")

    return parser


def build_config(args: Namespace) -> RunConfig:
    """Validate parsed arguments into a RunConfig."""
    command = Command(args.command)
    model = getattr(args, "model", None)
    fields: Dict[str, Any] = {
        "command": command,
        "model": model,
        "target": getattr(args, "target", None),
        "output_format": args.format,
        "out": args.out,
        "precision": args.precision,
        "diagnostics": getattr(args, "diagnostics", False),
    }

    try:
        if command in (Command.SOLVE, Command.SWEEP):
            family = get_family(model)
            fields["policy"] = parse_policy(args.policy)

            if args.interval is not None:
                fields["interval"] = Interval(a=args.interval[0], b=args.interval[1])

            reference = _pick(family, "ref-", args.ref_k, args.ref_h)
            if reference is not None:
                fields["reference"] = family.parse_refinement(reference)
            if args.ref_max is not None:
                fields["reference_max"] = family.parse_refinement(args.ref_max)

            if command == Command.SOLVE:
                refinement = _pick(family, "", args.k, args.h)
                if refinement is not None:
                    fields["refinement"] = family.parse_refinement(refinement)

        if getattr(args, "schedule", None):
            fields["schedule"] = _parse_schedule(fields, args.schedule)

        return RunConfig(**fields)
    except (GalerkinFilterError, ValidationError) as error:
        raise ConfigError(str(error)) from error


def cmd_solve(config: RunConfig, writer: ReportWriterLike) -> int:
    """Run one filtered solve and write its record."""
    assert config.refinement is not None and config.interval is not None
    runner = SweepRunner.create(
        config.model or "",
        config.interval,
        [config.refinement],
        config.reference_policy,
        config.policy,
        diagnostics=config.diagnostics,
    )
    record = runner.run_sync().records[-1]

    if record.status == SolveStatus.EMPTY_WINDOW:
        log.warning(f"no Galerkin eigenvalues in {config.interval}")

    _write(writer, solve_table(record), config)
    return EXIT_OK if record.status == SolveStatus.OK else EXIT_UNDETERMINED


def cmd_sweep(config: RunConfig, writer: ReportWriterLike) -> int:
    """Run a refinement sweep and write one row per refinement."""
    assert config.interval is not None
    runner = SweepRunner.create(
        config.model or "",
        config.interval,
        config.schedule or None,
        config.reference_policy,
        config.policy,
        diagnostics=config.diagnostics,
    )
    report = runner.run_sync()

    for escalation in report.escalations:
        log.info(
            f"escalated {escalation.from_reference} -> {escalation.to_reference}: "
            f"{escalation.reason}"
        )

    _write(writer, sweep_table(report), config)

    if report.status != SweepStatus.STABILIZED:
        log.warning(f"sweep over {report.interval} is {report.status.value}")
        return EXIT_UNDETERMINED

    return EXIT_OK


def cmd_table(config: RunConfig, writer: ReportWriterLike) -> int:
    """Reproduce a published table."""
    table = build_table(config.target or "", config.schedule or None)
    _write(writer, table, config)
    return EXIT_OK


def cmd_figure_data(config: RunConfig, writer: ReportWriterLike) -> int:
    """Emit the data behind a figure."""
    table = build_figure_data(config.target or "", config.schedule or None)
    _write(writer, table, config)
    return EXIT_OK


COMMANDS: Dict[Command, Callable[[RunConfig, ReportWriterLike], int]] = {
    Command.SOLVE: cmd_solve,
    Command.SWEEP: cmd_sweep,
    Command.TABLE: cmd_table,
    Command.FIGURE_DATA: cmd_figure_data,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    parser = create_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        config = build_config(args)
    except ConfigError as error:
        parser.error(str(error))

    writer = SyncReportWriter(precision=config.precision)

    try:
        return COMMANDS[config.command](config, writer)
    except (GalerkinFilterError, ReportEncodeError, ReportWriteError) as error:
        log.debug("command failed", exc_info=error)
        print(f"galerkin-filter: error: {error}", file=sys.stderr)
        return EXIT_ERROR


def _pick(
    family: ModelFamily, prefix: str, k: Optional[str], h: Optional[str]
) -> Optional[str]:
    given = {"k": k, "h": h}

    for flag, value in given.items():
        if value is not None and flag != family.refinement_flag:
            raise ConfigError(f"--{prefix}{flag} does not apply to {family.id}")

    return given[family.refinement_flag]


def _parse_schedule(config: Dict[str, Any], text: str) -> List[int]:
    model = config["model"]
    target = config["target"]

    if model is None and target in TABLES:
        model = EXAMPLES[TABLES[target].example].model
    elif model is None and target in FIGURES:
        model = EXAMPLES[FIGURES[target].example].model

    family = get_family(model or "")
    return [family.parse_refinement(item) for item in text.split(",") if item.strip()]


def _write(writer: ReportWriterLike, table: ReportTable, config: RunConfig) -> None:
    writer.write(table, config.out, ENCODERS[config.output_format])
