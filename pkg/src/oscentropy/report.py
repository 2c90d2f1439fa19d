"""Slope fitting and convergence reporting for asymptotic verification runs."""

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["SlopeFit", "fit_loglog_slope", "ConvergenceRow", "ConvergenceReport"]

# two-sided 95% t critical values by degrees of freedom
_T95 = {1: 12.706, 2: 4.303, 3: 3.182, 4: 2.776, 5: 2.571, 6: 2.447, 7: 2.365,
        8: 2.306, 9: 2.262, 10: 2.228, 15: 2.131, 20: 2.086, 30: 2.042}


def _t95(df):
    if df <= 0:
        return math.inf
    if df in _T95:
        return _T95[df]
    keys = sorted(_T95)
    for k in keys:
        if df < k:
            return _T95[k]
    return 1.96


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    ci_halfwidth: float


def fit_loglog_slope(xs, ys):
    """OLS slope of log|y| against log x, with a 95% half-width.

    The half-width is infinite for two points (no residual degrees of
    freedom), which callers should treat as "no uncertainty estimate".
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(xs) < 2:
        raise ValueError("need at least two points for a slope")
    lx = np.log(xs)
    ly = np.log(np.maximum(np.abs(ys), 1e-300))
    n = len(lx)
    mx, my = lx.mean(), ly.mean()
    sxx = float(np.sum((lx - mx) ** 2))
    sxy = float(np.sum((lx - mx) * (ly - my)))
    slope = sxy / sxx
    intercept = my - slope * mx
    df = n - 2
    if df <= 0:
        return SlopeFit(slope=slope, intercept=intercept, ci_halfwidth=math.inf)
    resid = ly - (intercept + slope * lx)
    sigma2 = float(np.sum(resid**2)) / df
    se = math.sqrt(sigma2 / sxx)
    return SlopeFit(slope=slope, intercept=intercept, ci_halfwidth=_t95(df) * se)


@dataclass(frozen=True)
class ConvergenceRow:
    grid_value: float
    exact: float
    asym: float
    rel_err: float


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple
    fitted_slope: float
    slope_ci: float

    @classmethod
    def from_pairs(cls, grid, exact, asym):
        rows = []
        for g, e, a in zip(grid, exact, asym):
            denom = abs(e) if e != 0.0 else 1.0
            rows.append(ConvergenceRow(g, e, a, abs(a - e) / denom))
        fit = fit_loglog_slope([r.grid_value for r in rows],
                               [max(r.rel_err, 1e-300) for r in rows])
        return cls(rows=tuple(rows), fitted_slope=fit.slope,
                   slope_ci=fit.ci_halfwidth)
