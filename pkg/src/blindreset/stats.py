"""Bootstrap intervals, paired tests, and multiple-testing correction.

The t CDF is evaluated through a continued-fraction regularized incomplete
beta accurate to ~1e-12, so no statistics dependency is required at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import seeding


@dataclass(frozen=True)
class TestReport:
    p_value: float
    effect_size: float
    ci_lo: float
    ci_hi: float
    n: int
    degenerate: bool = False


def _betacf(a: float, b: float, x: float) -> float:
    # Lentz continued fraction for the incomplete beta (Numerical Recipes form).
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 400):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-14:
            break
    return h


def betainc_reg(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_bt = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    bt = math.exp(ln_bt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


def t_sf(t: float, dof: float) -> float:
    """Upper tail P(T > t) of Student's t with `dof` degrees of freedom."""
    if t < 0:
        return 1.0 - t_sf(-t, dof)
    x = dof / (dof + t * t)
    return 0.5 * betainc_reg(dof / 2.0, 0.5, x)


def t_ppf(q: float, dof: float) -> float:
    """Quantile of Student's t by bisection on the CDF (q in (0, 1))."""
    if not 0.0 < q < 1.0:
        raise ValueError("quantile must be in (0, 1)")
    if q == 0.5:
        return 0.0
    lo, hi = -1e3, 1e3
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if 1.0 - t_sf(mid, dof) < q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bootstrap_ci(samples, level: float = 0.95, resamples: int = 10000, stream=None) -> tuple[float, float]:
    """Percentile bootstrap interval for the mean; deterministic per stream."""
    values = np.asarray(list(samples), dtype=float)
    n = values.size
    if n < 2:
        raise ValueError("need at least two samples")
    if not 0.0 < level < 1.0:
        raise ValueError("level must be in (0, 1)")
    if resamples < 1000:
        raise ValueError("resamples must be >= 1000")
    if stream is None:
        stream = seeding.stream("bootstrap", n, resamples)
    idx = stream.integers(0, n, size=(resamples, n))
    means = values[idx].mean(axis=1)
    alpha = (1.0 - level) / 2.0
    lo, hi = np.quantile(means, [alpha, 1.0 - alpha])
    return float(lo), float(hi)


def paired_test(a, b, level: float = 0.95) -> TestReport:
    """Two-sided paired t-test with paired Cohen's d = mean(diff)/sd(diff).

    Zero-variance differences are flagged degenerate: the effect size keeps its
    sign convention (0 or +-inf) and the p-value degrades to 1 or 0.
    """
    xa = np.asarray(list(a), dtype=float)
    xb = np.asarray(list(b), dtype=float)
    if xa.size != xb.size:
        raise ValueError("paired samples must have equal length")
    n = xa.size
    if n < 2:
        raise ValueError("need at least two pairs")
    diff = xa - xb
    mean = float(diff.mean())
    sd = float(diff.std(ddof=1))
    if sd == 0.0:
        if mean == 0.0:
            return TestReport(1.0, 0.0, 0.0, 0.0, n, degenerate=True)
        sign = math.copysign(math.inf, mean)
        return TestReport(0.0, sign, mean, mean, n, degenerate=True)
    se = sd / math.sqrt(n)
    t = mean / se
    p = 2.0 * t_sf(abs(t), n - 1)
    crit = t_ppf(1.0 - (1.0 - level) / 2.0, n - 1)
    return TestReport(
        p_value=min(p, 1.0),
        effect_size=mean / sd,
        ci_lo=mean - crit * se,
        ci_hi=mean + crit * se,
        n=n,
    )


def holm_bonferroni(p_values, alpha: float = 0.05) -> tuple[list[float], list[bool]]:
    """Step-down Holm adjustment; returns (adjusted p, reject) in input order."""
    ps = list(map(float, p_values))
    for p in ps:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p-value out of range: {p}")
    m = len(ps)
    order = sorted(range(m), key=lambda i: ps[i])
    adjusted = [0.0] * m
    running = 0.0
    for rank, i in enumerate(order):
        running = max(running, min(1.0, (m - rank) * ps[i]))
        adjusted[i] = running
    return adjusted, [adj <= alpha for adj in adjusted]
