"""CSV ingestion and emission for monthly panels.

Schema: one row per month, a `date` column in YYYY-MM form, then named value
columns.  Missing cells are empty.  Rows must be contiguous ascending months;
every downstream module consumes the :class:`MonthlySeries` built here.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Mapping

import numpy as np

from .series import MonthDate, MonthlySeries, require_aligned


class SchemaError(ValueError):
    """Input file violates the panel CSV schema."""


def read_panel(path: str | Path) -> dict[str, MonthlySeries]:
    """Read a panel CSV into one MonthlySeries per value column."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if not header or header[0].strip() != "date":
            raise SchemaError(f"{path}: first column must be 'date', got {header[:1]}")
        names = [h.strip() for h in header[1:]]
        if len(names) == 0:
            raise SchemaError(f"{path}: no value columns")
        if len(set(names)) != len(names):
            raise SchemaError(f"{path}: duplicate column names")

        months: list[MonthDate] = []
        columns: list[list[float]] = [[] for _ in names]
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(names) + 1:
                raise SchemaError(f"{path}:{lineno}: expected {len(names) + 1} cells, "
                                  f"got {len(row)}")
            try:
                month = MonthDate.parse(row[0])
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: {exc}") from None
            if months and months[-1].shift(1) != month:
                raise SchemaError(f"{path}:{lineno}: non-contiguous month {month} "
                                  f"after {months[-1]}")
            months.append(month)
            for j, cell in enumerate(row[1:]):
                cell = cell.strip()
                if cell == "":
                    columns[j].append(np.nan)
                    continue
                try:
                    columns[j].append(float(cell))
                except ValueError:
                    raise SchemaError(f"{path}:{lineno}: non-numeric cell {cell!r} "
                                      f"in column {names[j]!r}") from None

    if not months:
        raise SchemaError(f"{path}: no data rows")
    start = months[0]
    return {name: MonthlySeries(start, col) for name, col in zip(names, columns)}


def require_columns(panel: Mapping[str, MonthlySeries], *names: str) -> None:
    """Raise SchemaError naming every requested column that is absent."""
    missing = [n for n in names if n not in panel]
    if missing:
        raise SchemaError(f"missing required columns: {', '.join(missing)}")


def format_value(x: float) -> str:
    """Deterministic shortest round-trip float formatting; NaN becomes empty."""
    if isinstance(x, float) and np.isnan(x):
        return ""
    return repr(float(x))


def write_panel(path: str | Path, columns: Mapping[str, MonthlySeries]) -> int:
    """Write aligned series as a panel CSV; returns the number of data rows."""
    series = list(columns.values())
    if not series:
        raise ValueError("nothing to write")
    require_aligned(*series)
    months = series[0].months()
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["date", *columns.keys()])
        for t, month in enumerate(months):
            writer.writerow([str(month)] + [format_value(s.values[t]) for s in series])
    return len(months)
