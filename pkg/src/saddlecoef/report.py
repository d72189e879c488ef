"""Deterministic text and CSV rendering of result tables.

Rationals print exactly as ``p/q``.  In text tables floats carry a leading
``~`` and 12 significant digits; CSV cells hold plain ``%.15g`` floats.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class Table:
    title: str
    columns: list
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} cells, table has {len(self.columns)} columns")
        self.rows.append(list(values))


def _cell(value, csv_mode: bool) -> str:
    if value is None:
        return "" if csv_mode else "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.15g}" if csv_mode else f"~{value:.12g}"
    return str(value)


def render_text(tables) -> str:
    out = []
    for t in tables:
        cells = [[_cell(v, False) for v in row] for row in t.rows]
        widths = [len(c) for c in t.columns]
        for row in cells:
            widths = [max(w, len(c)) for w, c in zip(widths, row)]
        out.append(f"== {t.title} ==")
        out.append("  ".join(c.rjust(w) for c, w in zip(t.columns, widths)))
        for row in cells:
            out.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
        for note in t.notes:
            out.append(f"# {note}")
        out.append("")
    return "\n".join(out)


def render_csv(tables) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for i, t in enumerate(tables):
        if i:
            buf.write("\n")
        buf.write(f"# {t.title}\n")
        w.writerow(t.columns)
        for row in t.rows:
            w.writerow([_cell(v, True) for v in row])
    return buf.getvalue()
