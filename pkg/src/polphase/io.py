"""CSV / JSON emission for phase tables, comparisons and operator dumps.

Floats are written positionally with up to 17 significant digits (trailing
zeros trimmed), which round-trips every double exactly.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

import numpy as np

from .distribution import COLUMNS, PhaseDistribution
from .space import LinearOperator

DUMP_COLUMNS = ("row_label", "col_label", "re", "im")


def fmt_float(x: float) -> str:
    x = float(x) + 0.0  # drop negative zero
    if not np.isfinite(x):
        return repr(x)
    return np.format_float_positional(x, precision=17, unique=False, fractional=False, trim="-")


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, (int, np.integer, str)) else fmt_float(v) for v in row])
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def render_json(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    records = [{k: _json_value(v) for k, v in zip(header, row)} for row in rows]
    return json.dumps(records, indent=1) + "\n"


def render(header, rows, fmt: str = "csv") -> str:
    if fmt == "csv":
        return render_csv(header, rows)
    if fmt == "json":
        return render_json(header, rows)
    raise ValueError(f"unknown format {fmt!r}; use csv or json")


def distribution_rows(dist: PhaseDistribution):
    return dist.as_array().tolist()


def render_distribution(dist: PhaseDistribution, fmt: str = "csv") -> str:
    return render(COLUMNS, distribution_rows(dist), fmt)


def operator_rows(op: LinearOperator):
    return [(r, c, v.real, v.imag) for r, c, v in op.nonzero_entries()]


def render_operator(op: LinearOperator, fmt: str = "csv") -> str:
    return render(DUMP_COLUMNS, operator_rows(op), fmt)


def parse_distribution_csv(text: str) -> PhaseDistribution:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != COLUMNS:
        raise ValueError(f"unexpected header {header}")
    data = np.array([[float(v) for v in row] for row in reader], dtype=float)
    return PhaseDistribution(*data.T.copy())


def write_text(text: str, path: str | None, stream=None):
    """Write to ``path``, or to ``stream`` when no path is given."""
    if path is None or path == "-":
        stream.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
