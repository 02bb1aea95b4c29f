"""Reading DMU metric tables from CSV and preparing them for DEA."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError, DomainError, InputError
from .panel import Panel

NAME_COLUMN = "dmu"
_PREFIXES = {"input:": "input", "output:": "output"}


class Direction(str, enum.Enum):
    INPUT = "input"
    OUTPUT = "output"


@dataclass(frozen=True)
class Transform:
    kind: str = "identity"  # identity | log | scale
    factor: float | None = None

    def __post_init__(self):
        if self.kind not in ("identity", "log", "scale"):
            raise InputError(f"unknown transform {self.kind!r}")
        if self.kind == "scale":
            if self.factor is None or not (math.isfinite(self.factor) and self.factor > 0):
                raise InputError(f"scale factor must be positive and finite, got {self.factor!r}")
        elif self.factor is not None:
            raise InputError(f"transform {self.kind!r} takes no factor")

    @classmethod
    def parse(cls, text: str) -> "Transform":
        """Accepts ``identity``, ``log`` and ``scale:<c>``."""
        text = text.strip()
        if text.startswith("scale:"):
            try:
                factor = float(text[len("scale:"):])
            except ValueError:
                raise InputError(f"bad scale factor in {text!r}") from None
            return cls("scale", factor)
        return cls(text)

    def __str__(self) -> str:
        return f"scale:{self.factor!r}" if self.kind == "scale" else self.kind

    def apply(self, values: np.ndarray, column: str) -> np.ndarray:
        if self.kind == "identity":
            return values
        if self.kind == "scale":
            return values * self.factor
        bad = np.flatnonzero(values <= 1)
        if bad.size:
            raise DomainError(
                f"log transform of column {column!r} needs values > 1, got {values[bad[0]]!r} at DMU #{bad[0] + 1}"
            )
        return np.log(values)


IDENTITY = Transform()


@dataclass(frozen=True)
class ColumnSpec:
    """A CSV column used as a DEA input or output.

    ``name`` is the header as written in the file; ``label`` drops an
    ``input:``/``output:`` prefix if present.
    """

    name: str
    direction: Direction
    transform: Transform = IDENTITY

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction(self.direction))
        if isinstance(self.transform, str):
            object.__setattr__(self, "transform", Transform.parse(self.transform))

    @property
    def label(self) -> str:
        for prefix in _PREFIXES:
            if self.name.startswith(prefix):
                return self.name[len(prefix):]
        return self.name


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def format(self) -> str:
        lines = [f"error: {e}" for e in self.errors] + [f"warning: {w}" for w in self.warnings]
        if not lines:
            lines.append("ok: no problems found")
        return "\n".join(lines) + "\n"


def _check_schema(schema: Sequence[ColumnSpec]) -> None:
    names = [c.name for c in schema]
    if len(set(names)) != len(names):
        raise InputError("column names in a schema must be unique")
    labels = [c.label for c in schema]
    if len(set(labels)) != len(labels):
        raise InputError("column labels in a schema must be unique")
    if not any(c.direction is Direction.INPUT for c in schema):
        raise InputError("schema declares no input columns")
    if not any(c.direction is Direction.OUTPUT for c in schema):
        raise InputError("schema declares no output columns")


def read_header(csv_text: str) -> list[str]:
    for row in csv.reader(io.StringIO(csv_text)):
        if any(cell.strip() for cell in row):
            return [h.strip() for h in row]
    return []


def schema_from_header(header: Sequence[str]) -> list[ColumnSpec]:
    """Columns named ``input:<x>`` or ``output:<y>``, in header order."""
    specs = []
    for name in header:
        for prefix, direction in _PREFIXES.items():
            if name.startswith(prefix):
                specs.append(ColumnSpec(name, Direction(direction)))
    return specs


def load_schema(text: str) -> list[ColumnSpec]:
    """Parse a JSON schema ``{column: {"direction": ..., "transform": ...}}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"schema is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("schema must be a JSON object mapping column names to settings")
    specs = []
    for name, entry in doc.items():
        if not isinstance(entry, dict) or "direction" not in entry:
            raise InputError(f"schema entry for {name!r} needs a 'direction'")
        try:
            direction = Direction(entry["direction"])
        except ValueError:
            raise InputError(f"column {name!r}: direction must be 'input' or 'output'") from None
        specs.append(ColumnSpec(name, direction, Transform.parse(str(entry.get("transform", "identity")))))
    _check_schema(specs)
    return specs


def dump_schema(schema: Iterable[ColumnSpec]) -> str:
    return json.dumps({c.name: {"direction": c.direction.value, "transform": str(c.transform)} for c in schema}, indent=2)


def _number(cell: str, line: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DataError(f"not a number: {cell!r}", line, column) from None
    if not math.isfinite(value):
        raise DataError(f"not a finite number: {cell!r}", line, column)
    return value


def parse_panel(csv_text: str, schema: Sequence[ColumnSpec] | None = None) -> Panel:
    """Read a CSV table into a (non-strict) panel, transforms not yet applied.

    Without a schema, data columns are picked up from ``input:``/``output:``
    header prefixes. Line numbers in errors are 1-based and count the header.
    """
    rows = list(csv.reader(io.StringIO(csv_text)))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise DataError("empty file")
    header = [h.strip() for h in rows[0]]
    if NAME_COLUMN not in header:
        raise DataError(f"missing required column {NAME_COLUMN!r}", 1)
    if schema is None:
        schema = schema_from_header(header)
        if not schema:
            raise DataError("no columns with an 'input:' or 'output:' prefix and no schema given", 1)
    _check_schema(schema)
    for spec in schema:
        if spec.name not in header:
            raise DataError("column missing from header", 1, spec.name)
    if len(rows) < 2:
        raise DataError("no data rows")
    name_idx = header.index(NAME_COLUMN)
    col_idx = [header.index(spec.name) for spec in schema]

    names: list[str] = []
    values = np.empty((len(rows) - 1, len(schema)))
    seen: dict[str, int] = {}
    # csv.reader drops line info once blank rows are filtered; recover it
    line_numbers = _line_numbers(csv_text)
    for k, row in enumerate(rows[1:]):
        line = line_numbers[k + 1] if k + 1 < len(line_numbers) else k + 2
        if len(row) != len(header):
            raise DataError(f"expected {len(header)} fields, found {len(row)}", line)
        name = row[name_idx].strip()
        if not name:
            raise DataError("empty DMU name", line, NAME_COLUMN)
        if name in seen:
            raise DataError(f"duplicate DMU name {name!r} (first on line {seen[name]})", line, NAME_COLUMN)
        seen[name] = line
        names.append(name)
        for c, (spec, idx) in enumerate(zip(schema, col_idx)):
            values[k, c] = _number(row[idx].strip(), line, spec.name)

    is_in = np.array([s.direction is Direction.INPUT for s in schema])
    return Panel(
        tuple(names),
        values[:, is_in].T,
        values[:, ~is_in].T,
        tuple(s.label for s in schema if s.direction is Direction.INPUT),
        tuple(s.label for s in schema if s.direction is Direction.OUTPUT),
        strict=False,
    )


def _line_numbers(text: str) -> list[int]:
    """1-based starting line of every non-blank CSV record."""
    out = []
    reader = csv.reader(io.StringIO(text))
    start = 1
    for record in reader:
        if any(cell.strip() for cell in record):
            out.append(start)
        start = reader.line_num + 1
    return out


def serialize_panel(panel: Panel) -> str:
    """CSV with ``input:``/``output:`` prefixed headers; floats written round-trip exact."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([NAME_COLUMN] + [f"input:{l}" for l in panel.input_labels] + [f"output:{l}" for l in panel.output_labels])
    for j, name in enumerate(panel.names):
        w.writerow([name] + [repr(float(v)) for v in panel.X[:, j]] + [repr(float(v)) for v in panel.Y[:, j]])
    return buf.getvalue()


def apply_transforms(panel: Panel, schema: Sequence[ColumnSpec]) -> Panel:
    """Apply each column's transform; columns are matched by label."""
    X = panel.X.copy()
    Y = panel.Y.copy()
    for spec in schema:
        if spec.direction is Direction.INPUT:
            labels, M = panel.input_labels, X
        else:
            labels, M = panel.output_labels, Y
        if spec.label not in labels:
            raise InputError(f"{spec.direction.value} column {spec.label!r} not in panel")
        i = labels.index(spec.label)
        M[i] = spec.transform.apply(M[i], spec.label)
    return panel.with_values(X, Y)


def override_transforms(schema: Sequence[ColumnSpec], overrides: dict[str, Transform]) -> list[ColumnSpec]:
    """Replace transforms for columns named (by header name or label) in ``overrides``."""
    known = {c.name for c in schema} | {c.label for c in schema}
    unknown = sorted(set(overrides) - known)
    if unknown:
        raise InputError(f"transform given for unknown column(s): {', '.join(unknown)}")
    out = []
    for c in schema:
        t = overrides.get(c.name, overrides.get(c.label, c.transform))
        out.append(ColumnSpec(c.name, c.direction, t))
    return out


def validate(panel: Panel) -> ValidationReport:
    """Report data problems; never raises."""
    report = ValidationReport()
    for kind, labels, M in (("input", panel.input_labels, panel.X), ("output", panel.output_labels, panel.Y)):
        for i, j in zip(*np.nonzero(M < 0)):
            report.errors.append(f"DMU {panel.names[j]!r}: negative {kind} {labels[i]!r} = {M[i, j]!r}")
    report.errors.extend(panel.semipositivity_violations())

    need = 2 * (panel.m + panel.s)
    if panel.n < need:
        report.warnings.append(
            f"only {panel.n} DMUs for {panel.m} inputs and {panel.s} outputs; "
            f"rule of thumb asks for at least {need} (twice the number of inputs and outputs)"
        )
    if panel.n > 1:
        for kind, labels, M in (("input", panel.input_labels, panel.X), ("output", panel.output_labels, panel.Y)):
            for i, label in enumerate(labels):
                if np.all(M[i] == M[i, 0]):
                    report.warnings.append(f"{kind} {label!r} is constant across all DMUs")
    return report
