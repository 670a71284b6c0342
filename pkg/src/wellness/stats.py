"""Correlation coefficients with two-sided significance.

Three coefficients are supported:

* Pearson's product-moment r over the raw values.
* Spearman's rank coefficient: Pearson applied to average-tie ranks.
* Kendall's tau-b: concordant/discordant pair counting with tie correction
  in both variables, (C - D) / sqrt((n0 - n1)(n0 - n2)).

Two-sided p-values follow the usual large-sample approximations. Pearson and
Spearman use the Student-t transform t = r sqrt(n-2) / sqrt(1 - r^2) with
n - 2 degrees of freedom; Kendall uses the continuity-corrected normal
approximation on C - D with tie-adjusted variance. A coefficient of exactly
+-1 maps to the distribution's limiting tail, clamped to the smallest
positive float so p always stays inside (0, 1].

Survey scores tie constantly, so tie handling is not an edge case here:
average ranks and tau-b are the default and only behavior.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from math import erfc, exp, fsum, lgamma, log, log1p, sqrt
from typing import Sequence

MIN_P = sys.float_info.min  # smallest positive normal float; p is never 0
SIGNIFICANCE_LEVEL = 0.05


class Method(str, Enum):
    PEARSON = "pearson"
    SPEARMAN = "spearman"
    KENDALL = "kendall"


class Strength(str, Enum):
    WEAK = "weak"
    MODERATE = "moderate"
    STRONG = "strong"
    VERY_STRONG = "very_strong"


# Band floors on the 2-decimal rounded magnitude, strongest first.
_STRENGTH_FLOORS = (
    (Decimal("0.90"), Strength.VERY_STRONG),
    (Decimal("0.68"), Strength.STRONG),
    (Decimal("0.36"), Strength.MODERATE),
)

STRENGTH_RANK = {
    Strength.WEAK: 0,
    Strength.MODERATE: 1,
    Strength.STRONG: 2,
    Strength.VERY_STRONG: 3,
}


class DegenerateVarianceError(ValueError):
    """A constant series has no defined correlation."""


class CoefficientOutOfRangeError(ValueError):
    """|r| > 1 passed where a correlation coefficient is expected."""


class PairedSeries:
    """Two equal-length series with no missing values.

    Missingness is handled upstream by pairwise deletion; by the time a
    series reaches this module every index has both observations.
    """

    __slots__ = ("x", "y")

    def __init__(self, x: Sequence[float], y: Sequence[float]):
        if len(x) != len(y):
            raise ValueError("series lengths differ")
        if len(x) < 3:
            raise ValueError("correlation requires at least 3 paired observations")
        self.x: tuple[float, ...] = tuple(float(v) for v in x)
        self.y: tuple[float, ...] = tuple(float(v) for v in y)

    @property
    def n(self) -> int:
        return len(self.x)

    def swapped(self) -> "PairedSeries":
        return PairedSeries(self.y, self.x)


@dataclass(frozen=True)
class CorrelationResult:
    method: Method
    r: float
    p_value: float
    n: int
    strength: Strength
    significant: bool


def _clamp_unit(r: float) -> float:
    return max(-1.0, min(1.0, r))


def pearson(series: PairedSeries) -> float:
    """Product-moment coefficient of the raw paired values."""
    n = series.n
    mx = fsum(series.x) / n
    my = fsum(series.y) / n
    sxy = fsum((xi - mx) * (yi - my) for xi, yi in zip(series.x, series.y))
    sxx = fsum((xi - mx) ** 2 for xi in series.x)
    syy = fsum((yi - my) ** 2 for yi in series.y)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateVarianceError("constant series has undefined correlation")
    return _clamp_unit(sxy / sqrt(sxx * syy))


def rank_average_ties(values: Sequence[float]) -> list[float]:
    """Ranks 1..n with tied values sharing the mean of the ranks they span."""
    if not values:
        raise ValueError("cannot rank an empty list")
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        # positions i..j (0-based) share ranks i+1..j+1
        shared = (i + j + 2) / 2.0
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


def spearman(series: PairedSeries) -> float:
    """Pearson applied to the average-tie ranks of both series."""
    return pearson(
        PairedSeries(rank_average_ties(series.x), rank_average_ties(series.y))
    )


def _tie_group_sizes(values: Sequence[float]) -> list[int]:
    counts: dict[float, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return [c for c in counts.values() if c > 1]


def _concordance_counts(series: PairedSeries) -> tuple[int, int]:
    """Concordant and discordant pair counts; pairs tied in either axis skip."""
    concordant = discordant = 0
    x, y = series.x, series.y
    for i in range(series.n):
        for j in range(i + 1, series.n):
            dx = x[i] - x[j]
            dy = y[i] - y[j]
            if dx == 0.0 or dy == 0.0:
                continue
            if (dx > 0.0) == (dy > 0.0):
                concordant += 1
            else:
                discordant += 1
    return concordant, discordant


def kendall(series: PairedSeries) -> float:
    """Kendall's tau-b over the paired values.

    Equals tau-a, (C - D) / (n(n-1)/2), whenever neither series has ties.
    """
    n = series.n
    concordant, discordant = _concordance_counts(series)
    n0 = n * (n - 1) // 2
    n1 = sum(t * (t - 1) // 2 for t in _tie_group_sizes(series.x))
    n2 = sum(t * (t - 1) // 2 for t in _tie_group_sizes(series.y))
    denom = sqrt(float(n0 - n1) * float(n0 - n2))
    if denom == 0.0:
        raise DegenerateVarianceError("all pairs tied; tau undefined")
    return _clamp_unit((concordant - discordant) / denom)


# --- two-sided tail probabilities -----------------------------------------

def _betacf(a: float, b: float, x: float) -> float:
    # Continued fraction for the incomplete beta function (modified Lentz).
    max_iterations = 300
    eps = 3e-16
    fpmin = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < fpmin:
        d = fpmin
    d = 1.0 / d
    h = d
    for m in range(1, max_iterations + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) via the standard continued-fraction evaluation."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = lgamma(a + b) - lgamma(a) - lgamma(b) + a * log(x) + b * log1p(-x)
    front = exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_two_sided_p(t: float, df: int) -> float:
    """P(|T_df| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2)."""
    if df < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


def _clamp_p(p: float) -> float:
    return min(1.0, max(MIN_P, p))


def t_transform_p(r: float, n: int) -> float:
    """Two-sided p for Pearson or Spearman r via the t transform, n-2 df."""
    if n < 3:
        raise ValueError("p-value requires n >= 3")
    r = _clamp_unit(r)
    if abs(r) == 1.0:
        return MIN_P  # limiting tail of the t distribution
    t = r * sqrt(n - 2) / sqrt(1.0 - r * r)
    return _clamp_p(student_t_two_sided_p(t, n - 2))


def _kendall_normal_p(series: PairedSeries) -> float:
    """Continuity-corrected normal approximation on C - D.

    The variance is tie-adjusted when ties exist. C - D moves in discrete
    steps, so |C - D| shrinks by one before standardizing; without that
    correction the approximation lands well outside an exhaustive
    permutation enumeration at small n.
    """
    n = series.n
    concordant, discordant = _concordance_counts(series)
    s = concordant - discordant
    tx = _tie_group_sizes(series.x)
    ty = _tie_group_sizes(series.y)
    v0 = n * (n - 1) * (2 * n + 5)
    vt = sum(t * (t - 1) * (2 * t + 5) for t in tx)
    vu = sum(u * (u - 1) * (2 * u + 5) for u in ty)
    variance = (v0 - vt - vu) / 18.0
    if tx and ty:
        variance += (
            sum(t * (t - 1) * (t - 2) for t in tx)
            * sum(u * (u - 1) * (u - 2) for u in ty)
        ) / (9.0 * n * (n - 1) * (n - 2))
        variance += (
            sum(t * (t - 1) for t in tx) * sum(u * (u - 1) for u in ty)
        ) / (2.0 * n * (n - 1))
    if variance <= 0.0:
        raise DegenerateVarianceError("tie structure leaves no variance")
    z = max(0.0, abs(s) - 1.0) / sqrt(variance)
    return _clamp_p(erfc(z / sqrt(2.0)))


def p_value(method: Method, r: float, series: PairedSeries) -> float:
    """Two-sided p for a coefficient produced by `method` on `series`."""
    if method is Method.KENDALL:
        return _kendall_normal_p(series)
    return t_transform_p(r, series.n)


def classify_strength(r: float) -> Strength:
    """Band a coefficient's magnitude, rounded to two decimals first.

    Rounding removes the printed bands' 0.35/0.36 gap; the very-strong band
    wins over the strong band where they overlap at 0.90 and above.
    """
    if abs(r) > 1.0:
        raise CoefficientOutOfRangeError(f"|r| exceeds 1: {r}")
    magnitude = Decimal(repr(abs(r))).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    for floor, strength in _STRENGTH_FLOORS:
        if magnitude >= floor:
            return strength
    return Strength.WEAK


_COEFFICIENTS = {
    Method.PEARSON: pearson,
    Method.SPEARMAN: spearman,
    Method.KENDALL: kendall,
}


def correlate(method: Method, series: PairedSeries) -> CorrelationResult:
    """Coefficient, significance, and strength class in one bundle."""
    r = _COEFFICIENTS[method](series)
    p = p_value(method, r, series)
    return CorrelationResult(
        method=method,
        r=r,
        p_value=p,
        n=series.n,
        strength=classify_strength(r),
        significant=p < SIGNIFICANCE_LEVEL,
    )
