"""Rendering of reports as JSON, CSV and aligned text tables."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Sequence


def _clean(value: Any) -> Any:
    # JSON has no infinities; a missing value is the honest encoding
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def render_json(payload: dict) -> str:
    """Key order as built; floats in shortest round-trip form."""
    return json.dumps(_clean(payload), indent=2, allow_nan=False) + "\n"


def render_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _cell(value: Any, precision: int) -> str:
    if isinstance(value, float):
        return f"{value:.{precision}g}"
    if value is None:
        return "-"
    return str(value)


def render_table(header: Sequence[str], rows: Sequence[Sequence[Any]], precision: int = 6) -> str:
    cells = [list(header)] + [[_cell(v, precision) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for n, row in enumerate(cells):
        lines.append("  ".join(c.rjust(w) if n else c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
