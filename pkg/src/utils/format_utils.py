"""
Serialization helpers shared by the theory-file repository and the report emitters.

Functions:
    rational_str: Canonical "p/q" (or "p") string of a Fraction.
    parse_rational: Strict inverse of rational_str.
    float_str: Decimal rendering with a fixed number of significant digits.
    render_json: Stable-ordered JSON of a pydantic model.
    render_csv: CSV text from a header and rows.
    render_table: Left-aligned plain-text table.
    render_report: A report schema as text, csv or json.
"""

import csv
import io
import json
import re
from fractions import Fraction
from typing import Any, List, Sequence

from pydantic import BaseModel

from src.constants import RATIONAL_REGEX, SIGNIFICANT_DIGITS
from src.exceptions import UsageError

_RATIONAL = re.compile(RATIONAL_REGEX)


def rational_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """
    Parse a canonical rational string.

    Raises:
        ValueError: If the text is not of the form `-?\\d+(/\\d+)?` or has a zero denominator.
    """
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError as err:
        raise ValueError(f"zero denominator: {text!r}") from err


def float_str(value: float) -> str:
    text = f"{value:.{SIGNIFICANT_DIGITS}g}"
    return "0" if text == "-0" else text


def render_json(report: BaseModel) -> str:
    return json.dumps(json.loads(report.json()), sort_keys=True, indent=2)


def render_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def render_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells: List[List[str]] = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


def render_report(report: BaseModel, fmt: str) -> str:
    """
    Render a report schema in the requested format.

    Tabular reports (those with `csv_rows`) render as a table followed by their summary
    lines in text, and as bare CSV in csv format.

    Raises:
        UsageError: If csv output is requested for a report that is not a table.
    """
    tabular = hasattr(report, "csv_rows")
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        if not tabular:
            raise UsageError("csv output is only available for table reports")
        return render_csv(report.header(), report.csv_rows())
    if tabular:
        return "\n".join([render_table(report.header(), report.csv_rows())] + report.summary_lines())
    return "\n".join(report.text_lines())
