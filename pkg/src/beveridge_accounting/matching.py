"""Matching-function estimation and the matching-efficiency path.

The hiring technology is Cobb-Douglas in searchers and vacancies, so the log
job-finding probability is linear in log labor-market tightness:

    ln f_t = ln sigma_bar + alpha * ln(theta_t) + e_t

Ordinary least squares on that equation identifies the elasticity alpha and
average efficiency sigma_bar; the residuals identify the month-by-month
efficiency path sigma_t = f_t * theta_t^(-alpha).  In the three-state model
tightness is vacancies per effective searcher (V / S) and the finding rate is
hires per effective searcher (H / S).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .flows_three_state import ThreeStatePanel, total_hires
from .series import MonthDate, MonthlySeries, require_aligned

DEFAULT_ALPHA = 0.3


@dataclass(frozen=True)
class MatchingEstimate:
    """OLS estimate of the matching function over one sample window."""

    alpha: float
    ln_sigma_bar: float
    se_alpha: float
    se_ln_sigma: float
    sample: tuple[MonthDate, MonthDate]
    residuals: MonthlySeries
    r_squared: float
    n_obs: int
    robust: bool = False

    @property
    def sigma_bar(self) -> float:
        return float(np.exp(self.ln_sigma_bar))

    def p_values(self) -> tuple[float, float]:
        """Two-sided p-values for (ln_sigma_bar, alpha) against zero."""
        dof = self.n_obs - 2
        ps = []
        for coef, se in ((self.ln_sigma_bar, self.se_ln_sigma),
                         (self.alpha, self.se_alpha)):
            ps.append(2.0 * stats.t.sf(abs(coef / se), dof) if se > 0 else 0.0)
        return ps[0], ps[1]

    def stars(self) -> tuple[str, str]:
        """Significance stars at the 10/5/1 percent two-sided levels."""
        return tuple(_stars(p) for p in self.p_values())  # type: ignore[return-value]

    def to_dict(self) -> dict:
        p_sigma, p_alpha = self.p_values()
        return {
            "ln_sigma_bar": self.ln_sigma_bar,
            "se_ln_sigma": self.se_ln_sigma,
            "p_ln_sigma": p_sigma,
            "alpha": self.alpha,
            "se_alpha": self.se_alpha,
            "p_alpha": p_alpha,
            "sigma_bar": self.sigma_bar,
            "r_squared": self.r_squared,
            "n_obs": self.n_obs,
            "sample_start": str(self.sample[0]),
            "sample_end": str(self.sample[1]),
            "robust": self.robust,
        }


def _stars(p: float) -> str:
    if p < 0.01:
        return "***"
    if p < 0.05:
        return "**"
    if p < 0.1:
        return "*"
    return ""


def estimate_matching(
    f: MonthlySeries,
    tightness: MonthlySeries,
    sample: tuple[MonthDate, MonthDate] | None = None,
    robust: bool = False,
) -> MatchingEstimate:
    """Regress ln f on a constant and ln tightness over the sample window.

    Months with missing or nonpositive values are unusable and dropped;
    fewer than three usable months is an error, as is a regressor with no
    variance.  Standard errors are conventional homoskedastic OLS by
    default; `robust` switches to HC1 heteroskedasticity-robust errors.
    """
    require_aligned(f, tightness)
    if sample is None:
        sample = (f.start, f.end)
    lo, hi = f.index_of(sample[0]), f.index_of(sample[1])
    mask = np.zeros(len(f), dtype=bool)
    mask[lo:hi + 1] = True
    fv, tv = f.values, tightness.values
    usable = mask & ~np.isnan(fv) & ~np.isnan(tv) & (fv > 0.0) & (tv > 0.0)
    n = int(usable.sum())
    if n < 3:
        raise ValueError(f"only {n} usable months in sample "
                         f"[{sample[0]}, {sample[1]}]; need at least 3")

    y = np.log(fv[usable])
    x = np.log(tv[usable])
    if np.ptp(x) == 0.0:
        raise ValueError("degenerate design: log tightness has zero variance")

    X = np.column_stack([np.ones(n), x])
    xtx = X.T @ X
    beta = np.linalg.solve(xtx, X.T @ y)
    resid = y - X @ beta
    rss = float(resid @ resid)
    tss = float(((y - y.mean()) ** 2).sum())
    xtx_inv = np.linalg.inv(xtx)
    if robust:
        meat = X.T @ (X * (resid ** 2)[:, None])
        cov = xtx_inv @ meat @ xtx_inv * (n / (n - 2))
    else:
        cov = xtx_inv * (rss / (n - 2))
    se = np.sqrt(np.diag(cov))

    resid_series = np.full(len(f), np.nan)
    resid_series[usable] = resid
    return MatchingEstimate(
        alpha=float(beta[1]),
        ln_sigma_bar=float(beta[0]),
        se_alpha=float(se[1]),
        se_ln_sigma=float(se[0]),
        sample=sample,
        residuals=f.with_values(resid_series),
        r_squared=1.0 - rss / tss if tss > 0 else float("nan"),
        n_obs=n,
        robust=robust,
    )


def matching_efficiency_path(f: MonthlySeries, tightness: MonthlySeries,
                             alpha: float) -> MonthlySeries:
    """Month-by-month matching efficiency sigma_t = f_t * tightness_t^(-alpha).

    Composing with the matching function returns f exactly:
    sigma_t * tightness_t^alpha = f_t.
    """
    require_aligned(f, tightness)
    fv, tv = f.values, tightness.values
    defined = ~np.isnan(fv) & ~np.isnan(tv)
    if ((fv[defined] <= 0.0) | (tv[defined] <= 0.0)).any():
        raise ValueError("nonpositive finding rate or tightness; "
                         "efficiency path undefined")
    with np.errstate(invalid="ignore"):
        return f.with_values(fv * tv ** (-alpha))


def two_state_tightness(U: MonthlySeries, V: MonthlySeries) -> MonthlySeries:
    """Vacancies per unemployed, theta = V / U."""
    require_aligned(U, V)
    defined = ~np.isnan(U.values) & ~np.isnan(V.values)
    if (U.values[defined] == 0.0).any():
        raise ValueError("zero unemployment; tightness undefined")
    with np.errstate(invalid="ignore"):
        return U.with_values(V.values / U.values)


def three_state_tightness(panel: ThreeStatePanel, V: MonthlySeries) -> MonthlySeries:
    """Vacancies per effective searcher, theta = V / S."""
    if panel.S is None:
        raise ValueError("panel lacks searcher aggregates; run derive_aggregates")
    require_aligned(panel.S, V)
    defined = ~np.isnan(panel.S.values) & ~np.isnan(V.values)
    if (panel.S.values[defined] == 0.0).any():
        raise ValueError("zero searcher pool; tightness undefined")
    with np.errstate(invalid="ignore"):
        return V.with_values(V.values / panel.S.values)


def searcher_finding_rate(panel: ThreeStatePanel) -> MonthlySeries:
    """Hires per effective searcher, H / S: the three-state finding rate."""
    if panel.S is None:
        raise ValueError("panel lacks searcher aggregates; run derive_aggregates")
    hires = total_hires(panel)
    with np.errstate(invalid="ignore", divide="ignore"):
        return hires.with_values(hires.values / panel.S.values)
