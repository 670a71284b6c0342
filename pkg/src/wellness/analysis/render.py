"""CSV and aligned-text renderings of report tables.

Both formats print numbers through the same formatter, so they carry
identical numeric values; only layout differs. Dashed cells print their
note instead of numbers.
"""
from __future__ import annotations

import csv
import io

from ..stats import Method
from .reports import Cell, Histogram, ReportTable

TABLE_FIELDS = ("row", "col", "method", "r", "p_value", "n",
                "strength", "significant", "highlight")


def fmt_r(value: float) -> str:
    return f"{value:.4f}"


def fmt_p(value: float) -> str:
    return f"{value:.6g}"


def _cell_fields(cell: Cell) -> dict[str, str]:
    if cell.result is None:
        r = p = strength = "-"
        significant = highlight = "no"
        note = cell.note or "-"
    else:
        r = fmt_r(cell.result.r)
        p = fmt_p(cell.result.p_value)
        strength = cell.result.strength.value
        significant = "yes" if cell.result.significant else "no"
        highlight = "yes" if cell.highlighted else "no"
    return {
        "row": cell.row,
        "col": cell.col,
        "method": cell.method.value,
        "r": r,
        "p_value": p,
        "n": str(cell.n),
        "strength": strength,
        "significant": significant,
        "highlight": highlight,
    }


def _method_cells(table: ReportTable, method: Method) -> list[Cell]:
    return [cell for cell in table.cells if cell.method is method]


def render_table_csv(table: ReportTable, method: Method) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=TABLE_FIELDS, lineterminator="\n")
    writer.writeheader()
    for cell in _method_cells(table, method):
        writer.writerow(_cell_fields(cell))
    return out.getvalue()


def render_table_text(table: ReportTable, method: Method) -> str:
    rows = [dict(zip(TABLE_FIELDS, TABLE_FIELDS))]  # header row
    rows += [_cell_fields(cell) for cell in _method_cells(table, method)]
    widths = {
        name: max(len(row[name]) for row in rows) for name in TABLE_FIELDS
    }
    lines = [
        "  ".join(row[name].ljust(widths[name]) for name in TABLE_FIELDS).rstrip()
        for row in rows
    ]
    if table.footnotes:
        lines.append("")
        lines.extend(f"note: {note}" for note in table.footnotes)
    return "\n".join(lines) + "\n"


def render_histogram_csv(histogram: Histogram) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["variable", "bin_lower", "bin_upper", "count"])
    for hbin in histogram.bins:
        writer.writerow(
            [histogram.variable, fmt_r(hbin.lower), fmt_r(hbin.upper),
             str(hbin.count)]
        )
    return out.getvalue()


def render_histogram_text(histogram: Histogram) -> str:
    lines = [f"{histogram.variable} (n = {histogram.n})"]
    peak = max((b.count for b in histogram.bins), default=1) or 1
    for hbin in histogram.bins:
        bar = "#" * round(40 * hbin.count / peak)
        lines.append(
            f"[{fmt_r(hbin.lower)}, {fmt_r(hbin.upper)})  "
            f"{str(hbin.count).rjust(6)}  {bar}"
        )
    return "\n".join(lines) + "\n"
