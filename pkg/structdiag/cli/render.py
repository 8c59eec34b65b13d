"""Output rendering for the command line.

Every command produces a Report: a table of string cells for the table and
csv formats, and a JSON-serializable payload for the json format. Rendering
is deterministic, so the same report always yields the same bytes.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Any, Iterable, List, Mapping, Optional, Sequence

from ..utils.exceptions import ConfigurationError


@dataclass
class Report:
    """Format-independent output of one command.

    Attributes:
        headers: Column headers
        rows: Table cells, already in display order
        payload: Object emitted by the json format
        footer: Extra text printed after the table (table format only)

    """

    headers: Sequence[str]
    rows: List[Sequence[str]] = field(default_factory=list)
    payload: Any = None
    footer: Optional[str] = None


def format_ids(ids: Iterable[str]) -> str:
    """Braced, comma-separated ids in the given order."""
    return "{" + ", ".join(ids) + "}"


def format_number(value: Real) -> str:
    """Exact text for rationals, shortest round-trip text for floats."""
    if isinstance(value, Fraction):
        return str(value)
    value = float(value)
    if value.is_integer():
        return str(int(value))
    return repr(value)


def format_gains(gains: Mapping[str, Real]) -> str:
    """Nonzero gains as "id:value" pairs in model order."""
    terms = [f"{k}:{format_number(v)}" for k, v in gains.items() if v != 0]
    return " ".join(terms) if terms else "0"


def render_table(report: Report) -> str:
    """Left-aligned columns separated by " | ", with a dashed rule under the headers.

    A footer, when present, follows after one blank line.
    """
    widths = [len(h) for h in report.headers]
    for row in report.rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))

    def line(cells: Sequence[str]) -> str:
        return " | ".join(f"{c:<{w}}" for c, w in zip(cells, widths)).rstrip()

    lines = [line(report.headers), "-+-".join("-" * w for w in widths)]
    lines.extend(line(row) for row in report.rows)
    text = "\n".join(lines) + "\n"
    if report.footer:
        text += "\n" + report.footer.rstrip("\n") + "\n"
    return text


def render_csv(report: Report) -> str:
    """Header row and data rows as CSV; the footer is not part of the output."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(report.headers)
    writer.writerows(report.rows)
    return buffer.getvalue()


def render_json(report: Report) -> str:
    """The report payload as indented JSON."""
    return json.dumps(report.payload, indent=2, ensure_ascii=False) + "\n"


RENDERERS = {
    "table": render_table,
    "csv": render_csv,
    "json": render_json,
}


def render(report: Report, output_format: str) -> str:
    """Render a report in one of the supported formats.

    Raises:
        ConfigurationError: If the format is unknown

    """
    try:
        renderer = RENDERERS[output_format]
    except KeyError as e:
        raise ConfigurationError(f"Unknown output format {output_format!r}") from e
    return renderer(report)
