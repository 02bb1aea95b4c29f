"""Ranking and rendering of efficiency reports."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .dea import DmuReport, Frontier
from .errors import InputError

FIELDS = (
    "name",
    "theta_ccr",
    "theta_bcc",
    "scale_efficiency",
    "ccr_efficient",
    "bcc_efficient",
    "weakly_efficient_ccr",
    "weakly_efficient_bcc",
    "rts",
    "reference_set_ccr",
    "reference_set_bcc",
)


class Format(str, enum.Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class RenderedReport:
    format: Format
    body: str


def _rank_key(r: DmuReport):
    primary = r.theta_bcc if r.theta_bcc is not None else r.theta_ccr
    # a strongly efficient DMU outranks a weakly efficient one with the same score
    efficient = r.bcc_efficient if r.theta_bcc is not None else r.ccr_efficient
    secondary = r.theta_ccr if r.theta_ccr is not None else 0.0
    return (-(primary or 0.0), not efficient, -secondary)


def rank(reports: Sequence[DmuReport]) -> list[DmuReport]:
    """Stable sort: BCC score descending, BCC-efficient before not, then CCR score descending."""
    return sorted(reports, key=_rank_key)


def _num(v: float | None) -> str:
    return "" if v is None else f"{v:.3f}"


def _flag(v: bool | None) -> str:
    return "+" if v else " "


def _table(reports: Sequence[DmuReport]) -> str:
    width = max([len("DMU")] + [len(r.name) for r in reports])
    head = f"{'DMU':<{width}}  {'CCR':>5}  {'BCC':>5}  {'SE':>5}  C  B  RTS"
    lines = [head, "-" * len(head)]
    for r in reports:
        cells = [
            f"{r.name:<{width}}",
            f"{_num(r.theta_ccr):>5}",
            f"{_num(r.theta_bcc):>5}",
            f"{_num(r.scale_efficiency):>5}",
            _flag(r.ccr_efficient),
            _flag(r.bcc_efficient),
            r.rts.arrow if r.rts is not None and r.bcc_efficient else "",
        ]
        lines.append("  ".join(cells).rstrip())
    lines.append("")
    lines.append("C/B: + marks CCR/BCC efficiency.  RTS (BCC-efficient only): → constant, ↑ increasing, ↓ decreasing.")
    return "\n".join(lines) + "\n"


def _record(r: DmuReport) -> dict:
    return {
        "name": r.name,
        "theta_ccr": r.theta_ccr,
        "theta_bcc": r.theta_bcc,
        "scale_efficiency": r.scale_efficiency,
        "ccr_efficient": r.ccr_efficient,
        "bcc_efficient": r.bcc_efficient,
        "weakly_efficient_ccr": r.weakly_efficient_ccr,
        "weakly_efficient_bcc": r.weakly_efficient_bcc,
        "rts": None if r.rts is None else r.rts.value,
        "reference_set_ccr": None if r.reference_set_ccr is None else list(r.reference_set_ccr),
        "reference_set_bcc": None if r.reference_set_bcc is None else list(r.reference_set_bcc),
    }


def _csv(reports: Sequence[DmuReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in reports:
        rec = _record(r)
        row = []
        for f in FIELDS:
            v = rec[f]
            if v is None:
                row.append("")
            elif isinstance(v, bool):
                row.append("true" if v else "false")
            elif isinstance(v, float):
                row.append(f"{v:.3f}")
            elif isinstance(v, list):
                row.append(";".join(v))
            else:
                row.append(v)
        w.writerow(row)
    return buf.getvalue()


def render(reports: Sequence[DmuReport], format: Format | str = Format.TABLE) -> RenderedReport:
    """Render reports in the given order; the table format does not re-sort."""
    try:
        fmt = Format(format)
    except ValueError:
        raise InputError(f"unknown format {format!r}; choose table, csv or json") from None
    if fmt is Format.TABLE:
        body = _table(reports)
    elif fmt is Format.CSV:
        body = _csv(reports)
    else:
        body = json.dumps([_record(r) for r in reports], indent=2, ensure_ascii=False) + "\n"
    return RenderedReport(fmt, body)


def parse_csv_report(text: str) -> list[dict]:
    """Read a CSV report back into typed records (scores at 3 decimals)."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        rec: dict = {"name": row["name"]}
        for f in ("theta_ccr", "theta_bcc", "scale_efficiency"):
            rec[f] = float(row[f]) if row[f] else None
        for f in ("ccr_efficient", "bcc_efficient", "weakly_efficient_ccr", "weakly_efficient_bcc"):
            rec[f] = None if row[f] == "" else row[f] == "true"
        rec["rts"] = row["rts"] or None
        for f in ("reference_set_ccr", "reference_set_bcc"):
            rec[f] = row[f].split(";") if row[f] else []
        out.append(rec)
    return out


def render_frontier(frontier: Frontier, format: Format | str = Format.TABLE) -> RenderedReport:
    try:
        fmt = Format(format)
    except ValueError:
        raise InputError(f"unknown format {format!r}; choose table, csv or json") from None
    groups = {
        "efficient": frontier.efficient,
        "weakly_efficient": frontier.weakly_efficient,
        "enveloped": frontier.enveloped,
    }
    if fmt is Format.JSON:
        body = json.dumps({k: list(v) for k, v in groups.items()}, indent=2, ensure_ascii=False) + "\n"
    elif fmt is Format.CSV:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["dmu", "class"])
        for k, names in groups.items():
            for name in names:
                w.writerow([name, k])
        body = buf.getvalue()
    else:
        body = "".join(f"{k}: {', '.join(v) if v else '-'}\n" for k, v in groups.items())
    return RenderedReport(fmt, body)
