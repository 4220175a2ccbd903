"""Machine-readable reports.

A report is a command name, a fixed column list, rows in canonical order and
a summary mapping.  Both output formats print every float with 17
significant digits so a parse recovers the exact doubles; nothing
time-dependent is written.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class Report:
    command: str
    columns: tuple
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.summary.get("failed", 0) == 0)

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def add(self, *row) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} entries, expected {len(self.columns)}")
        self.rows.append(tuple(row))

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "columns": list(self.columns),
            "rows": [list(r) for r in self.rows],
            "summary": dict(self.summary),
            "exit_status": self.exit_status,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(d["command"], tuple(d["columns"]), [tuple(r) for r in d["rows"]], dict(d["summary"]))

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def _json(v) -> str:
    """JSON text with floats at 17 significant digits (non-finite as strings)."""
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return json.dumps(v)
    if isinstance(v, float):
        return fmt_float(v) if math.isfinite(v) else json.dumps(fmt_float(v))
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json(x)}" for k, x in v.items()) + "}"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _revive(v):
    if isinstance(v, str) and v in ("nan", "inf", "-inf"):
        return float(v)
    if isinstance(v, list):
        return [_revive(x) for x in v]
    if isinstance(v, dict):
        return {k: _revive(x) for k, x in v.items()}
    return v


def report_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(report.columns)
    for row in report.rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def report_json(report: Report) -> str:
    d = report.to_dict()
    lines = [
        "{",
        f'  "command": {_json(d["command"])},',
        f'  "columns": {_json(d["columns"])},',
        '  "rows": [',
    ]
    lines += [f"    {_json(r)}" + ("," if i < len(d["rows"]) - 1 else "") for i, r in enumerate(d["rows"])]
    lines += ["  ],", f'  "summary": {_json(d["summary"])},', f'  "exit_status": {d["exit_status"]}', "}"]
    return "\n".join(lines) + "\n"


def parse_report_json(text: str) -> Report:
    return Report.from_dict(_revive(json.loads(text)))


def parse_report_csv(text: str, command: str, summary: dict | None = None) -> Report:
    """Read back a CSV report; cells become int, float, bool or str."""
    reader = csv.reader(io.StringIO(text))
    columns = tuple(next(reader))
    rows = [tuple(_parse_cell(c) for c in r) for r in reader]
    return Report(command, columns, rows, dict(summary or {}))


def _parse_cell(c: str):
    if c in ("true", "false"):
        return c == "true"
    for conv in (int, float):
        try:
            return conv(c)
        except ValueError:
            pass
    return c


def emit_report(report: Report, fmt: str, out_dir) -> list[Path]:
    """Write ``<command>.csv`` plus ``<command>.summary.json``, or ``<command>.json``."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown report format {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = report.command.replace("-", "_")
    if fmt == "json":
        path = out / f"{stem}.json"
        path.write_text(report_json(report))
        return [path]
    table = out / f"{stem}.csv"
    table.write_text(report_csv(report))
    summary = out / f"{stem}.summary.json"
    summary.write_text(
        "{\n"
        f'  "command": {_json(report.command)},\n'
        f'  "summary": {_json(report.summary)},\n'
        f'  "exit_status": {report.exit_status}\n'
        "}\n"
    )
    return [table, summary]
