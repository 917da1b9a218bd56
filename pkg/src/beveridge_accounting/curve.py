"""The Beveridge-curve core: exact vacancy identity, steady-state curve,
log-linearization with shifter terms, slope, and the three-state analogues.

The exact identity inverts the matching function and the unemployment law of
motion to give the vacancy rate consistent with observed unemployment, the
separation probability, and matching efficiency:

    V_t = [ (s_t (1 - U_t) - dU_{t+1}) / (sigma_t U_t^(1-alpha)) ]^(1/alpha)

With s_t taken from the data and sigma_t chosen to fit the matching
function, this reproduces observed vacancies exactly.  Freezing s, sigma and
setting dU = 0 gives the steady-state curve; first-order expansion around a
reference point splits log vacancies into a slope term plus three additive
shifters (dynamics, separations, matching efficiency).

The three-state analogue replaces unemployment with effective searchers S,
adds the non-searcher pool N_tilde, and uses the total separation
probability x = eu + en.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .flows_three_state import ThreeStatePanel
from .series import MonthDate, MonthlySeries, delta, delta_log, require_aligned


class InfeasibleMonthWarning(UserWarning):
    """The vacancy identity had a nonpositive numerator in some months.

    Those months are reported as missing; counterfactual exercises
    legitimately visit infeasible regions, so the run continues.
    """


# ---------------------------------------------------------------------------
# Approximation points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ApproximationPoint:
    """Expansion point (U_bar, s_bar, sigma_bar, alpha) with dU = 0.

    V_bar is implied: the exact identity evaluated at the point.
    """

    U_bar: float
    s_bar: float
    sigma_bar: float
    alpha: float
    V_bar: float = field(init=False)

    def __post_init__(self) -> None:
        if not 0.0 < self.U_bar < 1.0:
            raise ValueError(f"U_bar must be in (0, 1), got {self.U_bar}")
        if not 0.0 < self.s_bar < 1.0:
            raise ValueError(f"s_bar must be in (0, 1), got {self.s_bar}")
        if self.sigma_bar <= 0.0:
            raise ValueError(f"sigma_bar must be positive, got {self.sigma_bar}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        v = _vacancy_identity(self.U_bar, self.s_bar, 0.0, self.sigma_bar, self.alpha)
        object.__setattr__(self, "V_bar", float(v))

    @classmethod
    def from_series(cls, U: MonthlySeries, s: MonthlySeries, sigma: MonthlySeries,
                    alpha: float, window: tuple[MonthDate, MonthDate]) -> "ApproximationPoint":
        """Point at the sample means over `window` (months where all three
        series are observed)."""
        require_aligned(U, s, sigma)
        lo, hi = U.index_of(window[0]), U.index_of(window[1])
        u, sv, sg = (x.values[lo:hi + 1] for x in (U, s, sigma))
        ok = ~np.isnan(u) & ~np.isnan(sv) & ~np.isnan(sg)
        if not ok.any():
            raise ValueError(f"no jointly observed months in window "
                             f"[{window[0]}, {window[1]}]")
        return cls(U_bar=float(u[ok].mean()), s_bar=float(sv[ok].mean()),
                   sigma_bar=float(sg[ok].mean()), alpha=alpha)


@dataclass(frozen=True)
class ThreeStateApproximationPoint:
    """Three-state expansion point (S_0, N_tilde_0, x_0, sigma_0, alpha)."""

    S_0: float
    N_tilde_0: float
    x_0: float
    sigma_0: float
    alpha: float
    V_0: float = field(init=False)

    def __post_init__(self) -> None:
        if not 0.0 < self.S_0 < 1.0:
            raise ValueError(f"S_0 must be in (0, 1), got {self.S_0}")
        if not 0.0 <= self.N_tilde_0 < 1.0:
            raise ValueError(f"N_tilde_0 must be in [0, 1), got {self.N_tilde_0}")
        if self.S_0 + self.N_tilde_0 >= 1.0:
            raise ValueError("searchers plus non-searchers must leave room "
                             "for employment")
        if self.x_0 <= 0.0 or self.sigma_0 <= 0.0:
            raise ValueError("x_0 and sigma_0 must be positive")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        num = (1.0 - self.S_0 - self.N_tilde_0) * self.x_0
        v = (num / (self.sigma_0 * self.S_0 ** (1.0 - self.alpha))) ** (1.0 / self.alpha)
        object.__setattr__(self, "V_0", float(v))

    @classmethod
    def from_panel(cls, panel: ThreeStatePanel, sigma: MonthlySeries, alpha: float,
                   window: tuple[MonthDate, MonthDate]) -> "ThreeStateApproximationPoint":
        if not panel.has_aggregates():
            raise ValueError("panel lacks searcher aggregates; run derive_aggregates")
        require_aligned(panel.S, sigma)
        lo, hi = panel.S.index_of(window[0]), panel.S.index_of(window[1])
        cols = [x.values[lo:hi + 1]
                for x in (panel.S, panel.N_tilde, panel.x, sigma)]
        ok = ~np.isnan(np.vstack(cols)).any(axis=0)
        if not ok.any():
            raise ValueError(f"no jointly observed months in window "
                             f"[{window[0]}, {window[1]}]")
        s0, n0, x0, sg0 = (float(c[ok].mean()) for c in cols)
        return cls(S_0=s0, N_tilde_0=n0, x_0=x0, sigma_0=sg0, alpha=alpha)


# ---------------------------------------------------------------------------
# Exact identities
# ---------------------------------------------------------------------------

def _vacancy_identity(u, s, du_next, sigma, alpha):
    """Vacancy rate from the inverted matching function and law of motion;
    NaN where the numerator is nonpositive."""
    # array semantics keep negative**fractional at NaN even for scalar input
    numerator = np.asarray(s * (1.0 - u) - du_next, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(numerator > 0.0,
                       (numerator / (sigma * u ** (1.0 - alpha))) ** (1.0 / alpha),
                       np.nan)
    return out


def exact_vacancies(U: MonthlySeries, s: MonthlySeries, sigma: MonthlySeries,
                    alpha: float, warn: bool = True) -> MonthlySeries:
    """Exact vacancy identity month by month; the last month is missing.

    Months with a nonpositive numerator are marked missing (and flagged with
    InfeasibleMonthWarning when `warn`); all other months are computed.
    """
    require_aligned(U, s, sigma)
    du_next = delta(U).values
    inputs_ok = ~np.isnan(U.values) & ~np.isnan(s.values) \
        & ~np.isnan(sigma.values) & ~np.isnan(du_next)
    out = _vacancy_identity(U.values, s.values, du_next, sigma.values, alpha)
    if warn:
        infeasible = inputs_ok & np.isnan(out)
        if infeasible.any():
            months = ", ".join(str(U.start.shift(int(t)))
                               for t in np.flatnonzero(infeasible))
            warnings.warn(f"infeasible counterfactual (nonpositive numerator) "
                          f"at {months}", InfeasibleMonthWarning, stacklevel=2)
    return U.with_values(out)


def steady_state_curve(u_grid, point: ApproximationPoint) -> list[tuple[float, float]]:
    """The steady-state locus V(U) at the point's (s_bar, sigma_bar, alpha)."""
    out = []
    for u in np.asarray(u_grid, dtype=float):
        if not 0.0 < u < 1.0:
            raise ValueError(f"grid value {u} outside (0, 1)")
        v = _vacancy_identity(u, point.s_bar, 0.0, point.sigma_bar, point.alpha)
        out.append((float(u), float(v)))
    return out


# ---------------------------------------------------------------------------
# Log-linearization (two-state)
# ---------------------------------------------------------------------------
#
# First-order expansion of the exact identity in
# (ln U, ln s, ln sigma, dln U_{t+1}) around (U_bar, s_bar, sigma_bar, 0):
#
#   ln V  =  ln V_bar
#          + slope * (ln U - ln U_bar)            movement along the curve
#          - U_bar/(alpha s_bar (1-U_bar)) dlnU'  shift from dynamics
#          + (1/alpha) (ln s - ln s_bar)          shift from separations
#          - (1/alpha) (ln sigma - ln sg_bar)     shift from matching efficiency
#
# The separations coefficient is the tangent of the identity (the expansion's
# numerator is proportional to s when dU = 0), matching the coefficient
# structure of the three-state expansion below.

def loglinear_slope(point: ApproximationPoint) -> float:
    """Slope of the log-linear curve in (ln U, ln V) space."""
    a, u = point.alpha, point.U_bar
    return -(u / (a * (1.0 - u)) + (1.0 - a) / a)


def dynamics_coefficient(point: ApproximationPoint) -> float:
    """Coefficient on the month-ahead change in log unemployment."""
    a, u, s = point.alpha, point.U_bar, point.s_bar
    return -u / (a * s * (1.0 - u))


def separations_coefficient(point: ApproximationPoint) -> float:
    """Coefficient on the log separation-probability deviation."""
    return 1.0 / point.alpha


def matching_coefficient(point: ApproximationPoint) -> float:
    """Coefficient on the log matching-efficiency deviation."""
    return -1.0 / point.alpha


def _shifter_terms(U: MonthlySeries, s: MonthlySeries, sigma: MonthlySeries,
                   point: ApproximationPoint) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    require_aligned(U, s, sigma)
    with np.errstate(invalid="ignore", divide="ignore"):
        dyn = dynamics_coefficient(point) * delta_log(U).values
        sep = separations_coefficient(point) * (np.log(s.values) - np.log(point.s_bar))
        mat = matching_coefficient(point) * (np.log(sigma.values) - np.log(point.sigma_bar))
    return dyn, sep, mat


def loglinear_vacancies(U: MonthlySeries, s: MonthlySeries, sigma: MonthlySeries,
                        point: ApproximationPoint) -> MonthlySeries:
    """Log vacancy rate from the first-order expansion; missing where any
    input (or the successor month) is missing."""
    dyn, sep, mat = _shifter_terms(U, s, sigma, point)
    with np.errstate(invalid="ignore", divide="ignore"):
        level = np.log(point.V_bar) + loglinear_slope(point) * (
            np.log(U.values) - np.log(point.U_bar))
    return U.with_values(level + dyn + sep + mat)


@dataclass(frozen=True)
class ShifterPath:
    """The three shifter terms, normalized to zero at the reference month."""

    dynamics: MonthlySeries
    separations: MonthlySeries
    matching: MonthlySeries
    net: MonthlySeries
    reference_month: MonthDate

    def __post_init__(self) -> None:
        require_aligned(self.dynamics, self.separations, self.matching, self.net)


def shifter_paths(U: MonthlySeries, s: MonthlySeries, sigma: MonthlySeries,
                  point: ApproximationPoint,
                  reference_month: MonthDate) -> ShifterPath:
    """Time paths of the three shifters, each zero at the reference month."""
    dyn, sep, mat = _shifter_terms(U, s, sigma, point)
    ref = U.index_of(reference_month)
    refs = (dyn[ref], sep[ref], mat[ref])
    if any(np.isnan(r) for r in refs):
        raise ValueError(f"shifters undefined at reference month {reference_month}")
    dyn, sep, mat = dyn - refs[0], sep - refs[1], mat - refs[2]
    return ShifterPath(
        dynamics=U.with_values(dyn),
        separations=U.with_values(sep),
        matching=U.with_values(mat),
        net=U.with_values(dyn + sep + mat),
        reference_month=reference_month,
    )


# ---------------------------------------------------------------------------
# Three-state analogues
# ---------------------------------------------------------------------------

def three_state_exact_vacancies(panel: ThreeStatePanel, alpha: float,
                                sigma: MonthlySeries,
                                warn: bool = True) -> MonthlySeries:
    """Searcher-based exact vacancy identity:

        V_t = [ ((1-S-N_tilde) x - dS' - dN_tilde') / (sigma S^(1-alpha)) ]^(1/alpha)
    """
    if not panel.has_aggregates():
        raise ValueError("panel lacks searcher aggregates; run derive_aggregates")
    S, Nt, x = panel.S, panel.N_tilde, panel.x
    require_aligned(S, Nt, x, sigma)
    ds, dnt = delta(S).values, delta(Nt).values
    numerator = (1.0 - S.values - Nt.values) * x.values - ds - dnt
    inputs_ok = ~np.isnan(numerator) & ~np.isnan(sigma.values)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(numerator > 0.0,
                       (numerator / (sigma.values * S.values ** (1.0 - alpha)))
                       ** (1.0 / alpha),
                       np.nan)
    if warn:
        infeasible = inputs_ok & np.isnan(out)
        if infeasible.any():
            months = ", ".join(str(S.start.shift(int(t)))
                               for t in np.flatnonzero(infeasible))
            warnings.warn(f"infeasible counterfactual (nonpositive numerator) "
                          f"at {months}", InfeasibleMonthWarning, stacklevel=2)
    return S.with_values(out)


@dataclass(frozen=True)
class ThreeStateLoglinear:
    """Log vacancies from the three-state expansion, term by term.

    total = intercept ln V_0 plus the six terms, exactly (additivity by
    construction).  Terms are suitable for shifter plots after
    normalization to a reference month.
    """

    total: MonthlySeries
    searcher_level: MonthlySeries
    searcher_dynamics: MonthlySeries
    nonsearcher_level: MonthlySeries
    nonsearcher_dynamics: MonthlySeries
    separations: MonthlySeries
    matching: MonthlySeries

    def terms(self) -> dict[str, MonthlySeries]:
        return {
            "searcher_level": self.searcher_level,
            "searcher_dynamics": self.searcher_dynamics,
            "nonsearcher_level": self.nonsearcher_level,
            "nonsearcher_dynamics": self.nonsearcher_dynamics,
            "separations": self.separations,
            "matching": self.matching,
        }


def three_state_loglinear(panel: ThreeStatePanel, sigma: MonthlySeries,
                          point: ThreeStateApproximationPoint) -> ThreeStateLoglinear:
    """First-order expansion of the searcher-based identity.

    Coefficients are the tangent of the identity at the point; the intercept
    ln V_0 (the expansion-point level) is included so the expression equals
    ln V_t at the point.  When N_tilde_0 = 0 the non-searcher terms vanish
    identically; a zero non-searcher pool with N_tilde_0 > 0 is an error.
    """
    if not panel.has_aggregates():
        raise ValueError("panel lacks searcher aggregates; run derive_aggregates")
    a = point.alpha
    e0 = 1.0 - point.S_0 - point.N_tilde_0
    S, Nt, x = panel.S, panel.N_tilde, panel.x
    require_aligned(S, Nt, x, sigma)

    with np.errstate(invalid="ignore", divide="ignore"):
        matching = -(1.0 / a) * (np.log(sigma.values) - np.log(point.sigma_0))
        slope_coef = -((1.0 - a) / a + (1.0 / a) * point.S_0 / e0)
        searcher_level = slope_coef * (np.log(S.values) - np.log(point.S_0))
        searcher_dynamics = -(1.0 / a) * point.S_0 / (e0 * point.x_0) \
            * delta_log(S).values
        separations = (1.0 / a) * (np.log(x.values) - np.log(point.x_0))

    n = len(S)
    if point.N_tilde_0 > 0.0:
        observed = ~np.isnan(Nt.values)
        if (Nt.values[observed] == 0.0).any():
            t = int(np.flatnonzero(observed & (Nt.values == 0.0))[0])
            raise ValueError(f"log of zero non-searcher pool at {S.start.shift(t)}")
        with np.errstate(invalid="ignore", divide="ignore"):
            nonsearcher_level = -(1.0 / a) * point.N_tilde_0 / e0 \
                * (np.log(Nt.values) - np.log(point.N_tilde_0))
            nonsearcher_dynamics = -(1.0 / a) * point.N_tilde_0 / (e0 * point.x_0) \
                * delta_log(Nt).values
    else:
        nonsearcher_level = np.zeros(n)
        nonsearcher_dynamics = np.zeros(n)
        # dynamics must still be missing at the last month, like every term
        nonsearcher_dynamics[-1] = np.nan

    total = (np.log(point.V_0) + searcher_level + searcher_dynamics
             + nonsearcher_level + nonsearcher_dynamics + separations + matching)
    mk = S.with_values
    return ThreeStateLoglinear(
        total=mk(total),
        searcher_level=mk(searcher_level),
        searcher_dynamics=mk(searcher_dynamics),
        nonsearcher_level=mk(nonsearcher_level),
        nonsearcher_dynamics=mk(nonsearcher_dynamics),
        separations=mk(separations),
        matching=mk(matching),
    )


def normalize_to_reference(series: MonthlySeries, month: MonthDate) -> MonthlySeries:
    """Shift a series so its value at `month` is zero."""
    ref = series.at(month)
    if np.isnan(ref):
        raise ValueError(f"series undefined at reference month {month}")
    return series.with_values(series.values - ref)
