"""Report writers.

JSON goes through pydantic; CSV through the stdlib writer with a header row
and floats at 17 significant digits so values survive a reload unchanged.
"""

import csv
import sys
from pathlib import Path
from typing import Any, ClassVar, Optional, Protocol, TextIO

from pydantic import BaseModel

from ..core.exceptions import ValidationError

FORMATS = {".json": "json", ".csv": "csv"}


class Tabular(Protocol):
    CSV_HEADER: ClassVar[tuple[str, ...]]

    def csv_rows(self) -> list[list]: ...


def output_format(path: Path) -> str:
    """Format selected by the output suffix."""
    try:
        return FORMATS[path.suffix.lower()]
    except KeyError:
        raise ValidationError(
            f"Unsupported output suffix '{path.suffix}', expected .json or .csv",
            field="out",
            value=str(path),
        ) from None


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(report: Tabular, stream: TextIO) -> None:
    writer = csv.writer(stream, delimiter=",", lineterminator="\n")
    writer.writerow(report.CSV_HEADER)
    for row in report.csv_rows():
        writer.writerow([format_cell(cell) for cell in row])


def write_json(report: BaseModel, stream: TextIO) -> None:
    stream.write(report.model_dump_json(indent=2))
    stream.write("\n")


def write_report(report: BaseModel, out: Optional[Path] = None, stream: Optional[TextIO] = None) -> None:
    """Write a report to ``out`` in the format named by its suffix, else JSON to stdout."""
    if out is None:
        write_json(report, stream or sys.stdout)
        return
    fmt = output_format(out)
    if fmt == "csv" and not hasattr(report, "csv_rows"):
        raise ValidationError(
            f"{type(report).__name__} has no tabular form; use a .json output",
            field="out",
        )
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="") as handle:
        if fmt == "csv":
            write_csv(report, handle)
        else:
            write_json(report, handle)
