"""``dealab`` command line: analyze, validate and frontier subcommands.

Exit status is 0 on success, 1 when the data fails validation or cannot be
parsed, and 2 for usage problems (bad flags, unreadable files,
unsupported shapes). Only the requested artifact goes to stdout.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from . import dataset, dea, report
from .errors import AnalysisError, DataError, DeaError, DomainError, InputError, UnsupportedShapeError
from .lp import Tolerances

WORKERS_ENV = "DEALAB_WORKERS"


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    csv_path: str
    schema_path: str | None = None
    model: str = "both"
    tolerance: float | None = None
    format: str = "table"
    transforms: dict[str, dataset.Transform] = field(default_factory=dict)

    def __post_init__(self):
        if not self.csv_path:
            raise UsageError("CSV path must not be empty")
        if self.schema_path == "":
            raise UsageError("schema path must not be empty")
        if self.tolerance is not None and not self.tolerance > 0:
            raise UsageError(f"--tolerance must be positive, got {self.tolerance}")

    @property
    def tolerances(self) -> Tolerances:
        return Tolerances() if self.tolerance is None else Tolerances.scaled(self.tolerance)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _transform_arg(text: str) -> tuple[str, dataset.Transform]:
    col, sep, spec = text.partition("=")
    if not sep or not col:
        raise argparse.ArgumentTypeError(f"expected COLUMN=TRANSFORM, got {text!r}")
    try:
        return col, dataset.Transform.parse(spec)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dealab", description="Data envelopment analysis (CCR/BCC) for tables of DMU metrics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (
        ("analyze", "score every DMU and print the ranked report"),
        ("validate", "check the table for DEA preconditions"),
        ("frontier", "split a 1x2 or 2x1 panel into efficient / weakly efficient / enveloped"),
    ):
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("csv", help="CSV file with a 'dmu' column")
        p.add_argument("--schema", help="JSON file mapping columns to direction and transform")
        p.add_argument(
            "--transform",
            action="append",
            default=[],
            type=_transform_arg,
            metavar="COL=T",
            help="override a column transform: log, identity or scale:<c> (repeatable)",
        )
        p.add_argument("--tolerance", type=float, help="score/slack tolerance (default 1e-6)")
        p.add_argument("--format", choices=[f.value for f in report.Format], default="table")
        if name == "analyze":
            p.add_argument("--model", choices=[m.value for m in dea.Model], default="both")
    return parser


def _read(path: str, what: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        raise UsageError(f"{what} file not found: {path}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {what} file {path}: {exc}") from None


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, value)


def _load(config: CliConfig):
    text = _read(config.csv_path, "CSV")
    schema = None
    if config.schema_path is not None:
        try:
            schema = dataset.load_schema(_read(config.schema_path, "schema"))
        except InputError as exc:
            raise UsageError(f"{config.schema_path}: {exc}") from None
    panel = dataset.parse_panel(text, schema)
    if schema is None:
        schema = dataset.schema_from_header(dataset.read_header(text))
    try:
        schema = dataset.override_transforms(schema, config.transforms)
    except InputError as exc:
        raise UsageError(str(exc)) from None
    return dataset.apply_transforms(panel, schema)


def run(config: CliConfig, out: TextIO, err: TextIO) -> int:
    try:
        panel = _load(config)
    except (DataError, DomainError) as exc:
        print(f"error: {config.csv_path}: {exc}", file=err)
        return 1

    checks = dataset.validate(panel)
    if config.command == "validate":
        out.write(checks.format())
        return 0 if checks.ok else 1
    if not checks.ok:
        err.write(checks.format())
        return 1
    for w in checks.warnings:
        print(f"warning: {w}", file=err)
    panel = panel.checked()
    tol = config.tolerances

    if config.command == "frontier":
        try:
            frontier = dea.frontier2d(panel, tol)
        except UnsupportedShapeError as exc:
            raise UsageError(str(exc)) from None
        out.write(report.render_frontier(frontier, config.format).body)
        return 0

    reports = dea.analyze(panel, tol, model=config.model, workers=_workers())
    out.write(report.render(report.rank(reports), config.format).body)
    return 0


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = CliConfig(
            command=args.command,
            csv_path=args.csv,
            schema_path=args.schema,
            model=getattr(args, "model", "both"),
            tolerance=args.tolerance,
            format=args.format,
            transforms=dict(args.transform),
        )
        return run(config, out, err)
    except UsageError as exc:
        print(f"dealab: {exc}", file=err)
        return 2
    except AnalysisError as exc:
        print(f"dealab: analysis failed: {exc}", file=err)
        for f in exc.failures:
            print(f"  {f}", file=err)
        return 1
    except DeaError as exc:
        print(f"dealab: {exc}", file=err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
