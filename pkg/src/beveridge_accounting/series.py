"""Calendar-indexed monthly series and the basic transformations applied to them.

Everything downstream (flow construction, matching estimation, curve
decompositions) consumes :class:`MonthlySeries` built here.  Missing
observations are carried as NaN and propagate through every transformation:
a window or bracketing pair that touches a missing value yields a missing
result, never a fabricated one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")


@dataclass(frozen=True, order=True)
class MonthDate:
    """A Gregorian calendar month, totally ordered by (year, month)."""

    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"month must be in 1..12, got {self.month}")

    def shift(self, months: int) -> "MonthDate":
        """The month `months` steps later (negative steps go back)."""
        q, r = divmod(self.month - 1 + months, 12)
        return MonthDate(self.year + q, r + 1)

    def months_until(self, other: "MonthDate") -> int:
        """Signed number of months from self to other."""
        return (other.year - self.year) * 12 + (other.month - self.month)

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    @classmethod
    def parse(cls, text: str) -> "MonthDate":
        m = _MONTH_RE.match(text.strip())
        if m is None:
            raise ValueError(f"expected YYYY-MM, got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class MonthlySeries:
    """Contiguous monthly real-valued series starting at `start`.

    Index t corresponds to the calendar month ``start + t``.  Values are a
    read-only float array; NaN marks a missing entry.  Infinities are
    rejected so that "finite unless explicitly missing" holds by
    construction.
    """

    start: MonthDate
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if np.isinf(arr).any():
            raise ValueError("non-finite (infinite) value in series")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end(self) -> MonthDate:
        if len(self.values) == 0:
            raise ValueError("empty series has no end month")
        return self.start.shift(len(self.values) - 1)

    def months(self) -> list[MonthDate]:
        return [self.start.shift(t) for t in range(len(self.values))]

    def covers(self, month: MonthDate) -> bool:
        t = self.start.months_until(month)
        return 0 <= t < len(self.values)

    def index_of(self, month: MonthDate) -> int:
        t = self.start.months_until(month)
        if not 0 <= t < len(self.values):
            raise KeyError(f"{month} outside series coverage "
                           f"[{self.start}, {self.end}]")
        return t

    def at(self, month: MonthDate) -> float:
        """Value for a covered month (possibly NaN); KeyError outside coverage."""
        return float(self.values[self.index_of(month)])

    def window(self, first: MonthDate, last: MonthDate) -> "MonthlySeries":
        """Inclusive calendar slice; both endpoints must be covered."""
        i, j = self.index_of(first), self.index_of(last)
        if j < i:
            raise ValueError(f"window end {last} precedes start {first}")
        return MonthlySeries(first, self.values[i:j + 1])

    def with_values(self, values: Iterable[float]) -> "MonthlySeries":
        """A new series on the same calendar grid."""
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                         dtype=float)
        if arr.shape != self.values.shape:
            raise ValueError("replacement values must match series length")
        return MonthlySeries(self.start, arr)


def require_aligned(*series: MonthlySeries) -> None:
    """Raise unless all series share the same start month and length."""
    first = series[0]
    for s in series[1:]:
        if s.start != first.start or len(s) != len(first):
            raise ValueError(
                f"calendar misalignment: [{first.start}, len {len(first)}] "
                f"vs [{s.start}, len {len(s)}]")


def moving_average(series: MonthlySeries, window: int,
                   alignment: str = "centered") -> MonthlySeries:
    """Arithmetic moving average; months lacking a full window are missing.

    `centered` places the window around each month (for even windows the
    extra month falls after); `trailing` ends the window at each month.
    Any window containing a missing value yields a missing output.
    """
    if len(series) == 0:
        raise ValueError("empty input")
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if window > len(series):
        raise ValueError(f"window {window} exceeds series length {len(series)}")
    if alignment not in ("centered", "trailing"):
        raise ValueError(f"alignment must be 'centered' or 'trailing', got {alignment!r}")

    sums = np.convolve(series.values, np.ones(window), mode="valid")
    out = np.full(len(series), np.nan)
    if alignment == "centered":
        first = (window - 1) // 2
    else:
        first = window - 1
    out[first:first + len(sums)] = sums / window
    return series.with_values(out)


def first_bracket(x: Sequence[float], x0: float) -> tuple[int, float] | None:
    """First consecutive pair of x (in list order) that brackets x0.

    Returns (i, lam) with the interpolation weight lam in [0, 1] such that
    the interpolated value is ``y[i] + lam * (y[i+1] - y[i])``.  A pair with
    equal x-values brackets only when x0 equals them (lam = 0).  Pairs
    containing NaN cannot bracket.  Returns None when nothing brackets.
    """
    xs = np.asarray(x, dtype=float)
    if len(xs) == 1:
        return (0, 0.0) if xs[0] == x0 else None
    for i in range(len(xs) - 1):
        a, b = xs[i], xs[i + 1]
        if np.isnan(a) or np.isnan(b):
            continue
        if min(a, b) <= x0 <= max(a, b):
            if a == b:
                return i, 0.0
            return i, (x0 - a) / (b - a)
    return None


def interpolate_at(x: Sequence[float], y: Sequence[float], x0: float) -> float:
    """Piecewise-linear interpolation using the first bracketing pair in list order.

    x need not be globally monotone; the first pair (in temporal order) whose
    range contains x0 wins.  x0 outside [min(x), max(x)] is refused; a gap of
    missing values containing x0 yields NaN.
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if len(xs) == 0:
        raise ValueError("empty input")
    if len(xs) != len(ys):
        raise ValueError("x and y must have equal length")
    hit = first_bracket(xs, x0)
    if hit is not None:
        i, lam = hit
        if lam == 0.0:
            return float(ys[i])
        return float(ys[i] + lam * (ys[i + 1] - ys[i]))
    if np.isnan(xs).all() or not np.nanmin(xs) <= x0 <= np.nanmax(xs):
        raise ValueError(f"extrapolation refused: {x0} outside sample range")
    return float("nan")


def splice(base: MonthlySeries, extension: MonthlySeries,
           splice_month: MonthDate) -> MonthlySeries:
    """Continue `base` with `extension` rescaled to match it at `splice_month`.

    Output equals base strictly before the splice month and the rescaled
    extension from the splice month onward, so the result is continuous at
    the splice point.  Coverage runs from base.start to the later of the two
    series' ends; months the source does not cover are missing.
    """
    if not (base.covers(splice_month) and extension.covers(splice_month)):
        raise ValueError(f"both series must be defined at splice month {splice_month}")
    b0, e0 = base.at(splice_month), extension.at(splice_month)
    if np.isnan(b0) or np.isnan(e0):
        raise ValueError(f"missing value at splice month {splice_month}")
    if e0 == 0.0:
        raise ValueError("degenerate splice ratio")
    ratio = b0 / e0

    last = max(base.end, extension.end)
    n = base.start.months_until(last) + 1
    out = np.full(n, np.nan)
    split = base.start.months_until(splice_month)
    nb = min(split, len(base))
    out[:nb] = base.values[:nb]
    ei = extension.start.months_until(splice_month)
    tail = len(extension) - ei
    out[split:split + tail] = ratio * extension.values[ei:]
    return MonthlySeries(base.start, out)


def normalize_shares(stocks: Sequence[MonthlySeries]) -> list[MonthlySeries]:
    """Divide each stock by the per-month total so shares sum to one.

    A month with any missing stock is missing in every output; a month whose
    total is zero (or negative) is an error.
    """
    if len(stocks) == 0:
        raise ValueError("empty input")
    require_aligned(*stocks)
    mat = np.vstack([s.values for s in stocks])
    observed = mat[~np.isnan(mat)]
    if observed.size and observed.min() < 0:
        raise ValueError("negative stock value")
    total = mat.sum(axis=0)
    bad = ~np.isnan(total) & (total <= 0.0)
    if bad.any():
        month = stocks[0].start.shift(int(np.flatnonzero(bad)[0]))
        raise ValueError(f"empty population month {month}")
    return [s.with_values(s.values / total) for s in stocks]


def delta(series: MonthlySeries) -> MonthlySeries:
    """Forward difference placed at t: value[t+1] - value[t]; last month missing."""
    out = np.full(len(series), np.nan)
    out[:-1] = series.values[1:] - series.values[:-1]
    return series.with_values(out)


def delta_log(series: MonthlySeries) -> MonthlySeries:
    """Forward log difference placed at t; last month missing."""
    with np.errstate(invalid="ignore", divide="ignore"):
        logs = np.log(series.values)
    out = np.full(len(series), np.nan)
    out[:-1] = logs[1:] - logs[:-1]
    return series.with_values(out)
