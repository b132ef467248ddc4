"""Trend validation: one-tailed regression t-tests and percent error."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

DIRECTIONS = ("increasing", "decreasing")


@dataclass(frozen=True)
class TrendTest:
    slope: float
    t_statistic: float
    p_value: float
    direction: str
    n: int


def t_tail(t: float, df: int) -> float:
    """Upper-tail probability P(T > t) of Student's t with df degrees of
    freedom, via the regularized incomplete beta function."""
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    x = df / (df + t * t)
    half = 0.5 * special.betainc(df / 2.0, 0.5, x)
    return half if t >= 0 else 1.0 - half


def trend_test(xs, ys, direction: str) -> TrendTest:
    """One-tailed t-test on the OLS slope of ys against xs.

    direction states the alternative hypothesis; the p-value is the
    tail probability of the observed slope in that direction under
    t(n-2).
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    n = xs.size
    if n < 3 or ys.size != n:
        raise ValueError("need at least 3 paired samples")
    sxx = float(np.sum((xs - xs.mean()) ** 2))
    if sxx == 0:
        raise ValueError("xs are all equal; slope is undefined")
    slope = float(np.sum((xs - xs.mean()) * (ys - ys.mean())) / sxx)
    resid = ys - (ys.mean() + slope * (xs - xs.mean()))
    sse = float(np.sum(resid**2))
    se = math.sqrt(sse / (n - 2) / sxx)
    if se == 0:
        t = 0.0 if slope == 0 else math.copysign(math.inf, slope)
    else:
        t = slope / se
    p = t_tail(t, n - 2) if direction == "increasing" else t_tail(-t, n - 2)
    return TrendTest(slope=slope, t_statistic=t, p_value=p, direction=direction, n=n)


def percent_error(model: float, data: float) -> float:
    """|model - data| / data * 100. Undefined for data = 0."""
    if data == 0:
        raise ValueError("percent error is undefined for data = 0")
    return abs(model - data) / data * 100.0
