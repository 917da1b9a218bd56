"""Three-state panel: stocks, raked transition rates, and searcher aggregates.

States are employment (E), unemployment (U) and nonemployment (N), with six
monthly transition probabilities between them.  Published gross-flow rates
are not exactly consistent with the published stocks, so each month-pair's
3x3 flow matrix is raked by iterative proportional fitting until its row
sums reproduce this month's stocks and its column sums reproduce next
month's.  The searcher aggregates follow:

    S = U + xi_N * N        effective searchers
    N_tilde = (1 - xi_N) N  non-searchers
    x = eu + en             total separation probability

where xi_N = ne / ue is the relative search intensity of the nonemployed
under balanced matching.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .series import MonthlySeries, require_aligned

RATE_NAMES = ("eu", "en", "ue", "un", "ne", "nu")

# Origin/destination layout of the monthly flow matrix: rows and columns are
# ordered (E, U, N); the diagonal holds stayers as the residual mass.
_EXITS = {  # state index -> [(rate name, destination index), ...]
    0: [("eu", 1), ("en", 2)],
    1: [("ue", 0), ("un", 2)],
    2: [("ne", 0), ("nu", 1)],
}


class RakingError(RuntimeError):
    """Iterative proportional fitting failed for at least one month-pair."""

    def __init__(self, message: str, worst_residual: float):
        super().__init__(message)
        self.worst_residual = worst_residual


@dataclass(frozen=True)
class RakingReport:
    """Per-month-pair convergence diagnostics."""

    iterations: np.ndarray       # IPF sweeps used, -1 where inputs were missing
    residuals: np.ndarray        # worst marginal residual after fitting
    max_adjustment: np.ndarray   # largest absolute change applied to any rate

    @property
    def worst_residual(self) -> float:
        finite = self.residuals[~np.isnan(self.residuals)]
        return float(finite.max()) if finite.size else float("nan")


@dataclass(frozen=True)
class ThreeStatePanel:
    """Stocks, transition rates and (once derived) searcher aggregates."""

    E: MonthlySeries
    U: MonthlySeries
    N: MonthlySeries
    eu: MonthlySeries
    en: MonthlySeries
    ue: MonthlySeries
    un: MonthlySeries
    ne: MonthlySeries
    nu: MonthlySeries
    xi_N: MonthlySeries | None = None
    S: MonthlySeries | None = None
    N_tilde: MonthlySeries | None = None
    x: MonthlySeries | None = None

    def __post_init__(self) -> None:
        series = [self.E, self.U, self.N] + [getattr(self, r) for r in RATE_NAMES]
        series += [s for s in (self.xi_N, self.S, self.N_tilde, self.x) if s is not None]
        require_aligned(*series)
        total = self.E.values + self.U.values + self.N.values
        ok = np.isnan(total) | (np.abs(total - 1.0) < 1e-12)
        if not ok.all():
            t = int(np.flatnonzero(~ok)[0])
            raise ValueError(f"stocks do not sum to one at {self.E.start.shift(t)} "
                             f"(total {total[t]!r}); normalize first")
        for name in RATE_NAMES:
            v = getattr(self, name).values
            v = v[~np.isnan(v)]
            if v.size and ((v < 0.0) | (v > 1.0)).any():
                raise ValueError(f"transition rate {name} outside [0, 1]")

    def rates(self) -> dict[str, MonthlySeries]:
        return {name: getattr(self, name) for name in RATE_NAMES}

    def has_aggregates(self) -> bool:
        return None not in (self.xi_N, self.S, self.N_tilde, self.x)


def _flow_matrix(stocks_t: np.ndarray, rates_t: Mapping[str, float]) -> np.ndarray:
    m = np.zeros((3, 3))
    for i, exits in _EXITS.items():
        out = 0.0
        for name, j in exits:
            m[i, j] = stocks_t[i] * rates_t[name]
            out += rates_t[name]
        if out > 1.0 + 1e-12:
            raise ValueError(f"negative stayer probability in state {i}: "
                             f"exit rates sum to {out!r}")
        m[i, i] = stocks_t[i] * (1.0 - out)
    return m


def _ipf(matrix: np.ndarray, rows: np.ndarray, cols: np.ndarray,
         tol: float, max_iter: int) -> tuple[np.ndarray, int, float]:
    m = matrix.copy()
    residual = np.inf
    for it in range(1, max_iter + 1):
        rs = m.sum(axis=1)
        scale = np.where(rs > 0.0, rows / np.where(rs > 0.0, rs, 1.0), 1.0)
        if ((rs == 0.0) & (rows > 0.0)).any():
            raise RakingError("empty flow row with positive target mass", np.inf)
        m *= scale[:, None]
        cs = m.sum(axis=0)
        if ((cs == 0.0) & (cols > 0.0)).any():
            raise RakingError("empty flow column with positive target mass", np.inf)
        scale = np.where(cs > 0.0, cols / np.where(cs > 0.0, cs, 1.0), 1.0)
        m *= scale[None, :]
        residual = max(np.abs(m.sum(axis=1) - rows).max(),
                       np.abs(m.sum(axis=0) - cols).max())
        if residual <= tol:
            return m, it, residual
    raise RakingError(f"raking did not converge within {max_iter} iterations "
                      f"(worst residual {residual:.3e})", residual)


def rake_transition_rates(
    stocks: tuple[MonthlySeries, MonthlySeries, MonthlySeries],
    rates: Mapping[str, MonthlySeries],
    tol: float = 1e-12,
    max_iter: int = 1000,
) -> tuple[dict[str, MonthlySeries], RakingReport]:
    """Adjust transition rates so each month-pair's flows match both stock vectors.

    For every month t the 3x3 flow matrix (origin stocks times rates, stayers
    as the diagonal residual) is raked so row sums equal the month-t stocks
    and column sums the month-(t+1) stocks, both within `tol`.  Raked rates
    are the adjusted off-diagonal flows divided by origin stocks.  Rates that
    are already stock-consistent pass through unchanged.
    """
    E, U, N = stocks
    require_aligned(E, U, N, *[rates[name] for name in RATE_NAMES])
    n = len(E)
    stock_mat = np.vstack([E.values, U.values, N.values])
    out = {name: np.full(n, np.nan) for name in RATE_NAMES}
    iterations = np.full(n - 1, -1, dtype=int)
    residuals = np.full(n - 1, np.nan)
    max_adjustment = np.full(n - 1, np.nan)

    for t in range(n - 1):
        rates_t = {name: rates[name].values[t] for name in RATE_NAMES}
        cells = np.concatenate([stock_mat[:, t], stock_mat[:, t + 1],
                                list(rates_t.values())])
        if np.isnan(cells).any():
            continue
        rows, cols = stock_mat[:, t], stock_mat[:, t + 1]
        if abs(rows.sum() - cols.sum()) > max(100.0 * tol, 1e-10):
            raise RakingError(
                f"month {E.start.shift(t)}: total population differs between "
                f"adjacent months ({rows.sum()!r} vs {cols.sum()!r}); "
                "normalize stocks to shares first",
                abs(rows.sum() - cols.sum()))
        m = _flow_matrix(rows, rates_t)
        try:
            fitted, its, res = _ipf(m, rows, cols, tol, max_iter)
        except RakingError as exc:
            raise RakingError(f"month {E.start.shift(t)}: {exc}",
                              exc.worst_residual) from None
        if (np.diag(fitted) < -tol).any():
            raise RakingError(f"infeasible flow matrix at {E.start.shift(t)}: "
                              "negative stayer mass after adjustment", res)
        iterations[t] = its
        residuals[t] = res
        worst = 0.0
        for i, exits in _EXITS.items():
            for name, j in exits:
                raked = fitted[i, j] / rows[i] if rows[i] > 0.0 else 0.0
                out[name][t] = raked
                worst = max(worst, abs(raked - rates_t[name]))
        max_adjustment[t] = worst

    raked_series = {name: E.with_values(vals) for name, vals in out.items()}
    report = RakingReport(iterations=iterations, residuals=residuals,
                          max_adjustment=max_adjustment)
    return raked_series, report


def relative_search_intensity(ne: MonthlySeries, ue: MonthlySeries) -> MonthlySeries:
    """Search intensity of the nonemployed relative to the unemployed: ne / ue."""
    require_aligned(ne, ue)
    defined = ~np.isnan(ne.values) & ~np.isnan(ue.values)
    if (defined & (ue.values == 0.0)).any():
        t = int(np.flatnonzero(defined & (ue.values == 0.0))[0])
        raise ValueError(f"undefined intensity at {ne.start.shift(t)}: "
                         "zero unemployment-to-employment rate")
    with np.errstate(invalid="ignore"):
        return ne.with_values(ne.values / ue.values)


def derive_aggregates(panel: ThreeStatePanel) -> ThreeStatePanel:
    """Fill the searcher aggregates xi_N, S, N_tilde and x from stocks and rates."""
    xi = relative_search_intensity(panel.ne, panel.ue)
    s_vals = panel.U.values + xi.values * panel.N.values
    ntilde = (1.0 - xi.values) * panel.N.values
    x_vals = panel.eu.values + panel.en.values
    return dataclasses.replace(
        panel,
        xi_N=xi,
        S=panel.U.with_values(s_vals),
        N_tilde=panel.N.with_values(ntilde),
        x=panel.eu.with_values(x_vals),
    )


def total_hires(panel: ThreeStatePanel) -> MonthlySeries:
    """Total hires H = U*ue + N*ne.

    On a stock-flow-consistent (raked) panel this equals the hires implied by
    the summed laws of motion, E*x - dU - dN, up to the raking tolerance.
    """
    return panel.U.with_values(panel.U.values * panel.ue.values
                               + panel.N.values * panel.ne.values)


def build_three_state_panel(
    E: MonthlySeries, U: MonthlySeries, N: MonthlySeries,
    rates: Mapping[str, MonthlySeries],
    tol: float = 1e-12,
    max_iter: int = 1000,
    normalize: bool = True,
) -> tuple[ThreeStatePanel, RakingReport]:
    """Normalize stocks, rake the rates against them, and derive aggregates."""
    if normalize:
        from .series import normalize_shares
        E, U, N = normalize_shares([E, U, N])
    raked, report = rake_transition_rates((E, U, N), rates, tol=tol, max_iter=max_iter)
    panel = ThreeStatePanel(E=E, U=U, N=N, **raked)
    return derive_aggregates(panel), report
