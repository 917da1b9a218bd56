"""Two-state flow probabilities from observed stocks.

The monthly job-finding probability comes from short-term unemployment
(workers unemployed less than one month next month are the new inflows), and
the separation probability is then the unique value making the unemployment
law of motion hold exactly.  Both constructions are identities: feeding the
resulting (f, s, U_0) through the law of motion regenerates the observed
unemployment path to machine precision.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .series import MonthlySeries, require_aligned


class ProbabilityRangeWarning(UserWarning):
    """A constructed flow probability landed outside [0, 1].

    Values are reported as-is (never clamped): the construction is an
    identity and clamping would break the law-of-motion round trip.
    """


def _check_rate_bounds(name: str, s: MonthlySeries, open_interval: bool = True) -> None:
    v = s.values[~np.isnan(s.values)]
    if v.size == 0:
        return
    if open_interval and ((v <= 0.0) | (v >= 1.0)).any():
        raise ValueError(f"{name} must lie strictly inside (0, 1)")
    if not open_interval and ((v < 0.0) | (v > 1.0)).any():
        raise ValueError(f"{name} must lie in [0, 1]")


@dataclass(frozen=True)
class TwoStatePanel:
    """Aligned unemployment, vacancy and short-term-unemployment shares plus
    the derived monthly job-finding (f) and separation (s) probabilities."""

    U: MonthlySeries
    V: MonthlySeries
    U_short: MonthlySeries
    f: MonthlySeries
    s: MonthlySeries

    def __post_init__(self) -> None:
        require_aligned(self.U, self.V, self.U_short, self.f, self.s)
        _check_rate_bounds("U", self.U)
        _check_rate_bounds("V", self.V)
        _check_rate_bounds("U_short", self.U_short)
        both = ~np.isnan(self.U.values) & ~np.isnan(self.U_short.values)
        if (self.U_short.values[both] > self.U.values[both]).any():
            warnings.warn("short-term unemployment exceeds total unemployment "
                          "in some months", ProbabilityRangeWarning, stacklevel=2)


def job_finding_probability(U: MonthlySeries, U_short: MonthlySeries) -> MonthlySeries:
    """Monthly probability an unemployed worker finds a job by next month.

    f_t = 1 - (U_{t+1} - U_short_{t+1}) / U_t.  The last month is missing
    (no successor).  Out-of-range results are flagged, not clamped.
    """
    require_aligned(U, U_short)
    u, us = U.values, U_short.values
    out = np.full(len(u), np.nan)
    if len(u) >= 2:
        u_t = u[:-1]
        defined = ~np.isnan(u_t) & ~np.isnan(u[1:]) & ~np.isnan(us[1:])
        if (defined & (u_t == 0.0)).any():
            t = int(np.flatnonzero(defined & (u_t == 0.0))[0])
            raise ValueError(f"division by zero unemployment at {U.start.shift(t)}")
        with np.errstate(invalid="ignore"):
            out[:-1] = 1.0 - (u[1:] - us[1:]) / u_t
    _warn_out_of_range(out, U, "job-finding probability")
    return U.with_values(out)


def implied_separation_probability(U: MonthlySeries, f: MonthlySeries) -> MonthlySeries:
    """Separation probability making the law of motion hold exactly.

    s_t = (U_{t+1} - U_t + f_t U_t) / (1 - U_t).  Negative results indicate
    inconsistent inputs and are flagged, not clamped.
    """
    require_aligned(U, f)
    u = U.values
    out = np.full(len(u), np.nan)
    if len(u) >= 2:
        u_t = u[:-1]
        defined = ~np.isnan(u_t) & ~np.isnan(u[1:]) & ~np.isnan(f.values[:-1])
        if (defined & (u_t >= 1.0)).any():
            t = int(np.flatnonzero(defined & (u_t >= 1.0))[0])
            raise ValueError(f"unemployment share at or above one at {U.start.shift(t)}")
        with np.errstate(invalid="ignore"):
            out[:-1] = (u[1:] - u_t + f.values[:-1] * u_t) / (1.0 - u_t)
    _warn_out_of_range(out, U, "separation probability")
    return U.with_values(out)


def _warn_out_of_range(values: np.ndarray, grid: MonthlySeries, what: str) -> None:
    bad = ~np.isnan(values) & ((values < 0.0) | (values > 1.0))
    if bad.any():
        months = ", ".join(str(grid.start.shift(int(t))) for t in np.flatnonzero(bad))
        warnings.warn(f"{what} outside [0, 1] at {months}",
                      ProbabilityRangeWarning, stacklevel=3)


def unemployment_path(u0: float, f: MonthlySeries, s: MonthlySeries) -> MonthlySeries:
    """Forward-simulate the law of motion U_{t+1} = U_t + s_t(1-U_t) - f_t U_t.

    Uses f_t, s_t for t = 0..T-2 and returns a path of the same length
    starting at u0.  Inverse of the probability constructions above.
    """
    require_aligned(f, s)
    n = len(f)
    u = np.empty(n)
    u[0] = u0
    for t in range(n - 1):
        u[t + 1] = u[t] + s.values[t] * (1.0 - u[t]) - f.values[t] * u[t]
    return f.with_values(u)


def build_two_state_panel(U: MonthlySeries, V: MonthlySeries,
                          U_short: MonthlySeries) -> TwoStatePanel:
    """Construct the full panel: derives f and s from the observed stocks."""
    f = job_finding_probability(U, U_short)
    s = implied_separation_probability(U, f)
    return TwoStatePanel(U=U, V=V, U_short=U_short, f=f, s=s)
