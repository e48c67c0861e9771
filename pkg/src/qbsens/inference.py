"""Pooled-variance two-sample t-tests between rating systems."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import InsufficientDataError
from .perturb import Scenario
from .ratings import RatingSystem
from .sensitivity import SensitivitySummary, aggregate, mean_std
from .stats_model import Dataset

ALPHA = 0.05

_CF_MAX_ITER = 500
_CF_EPS = 1e-16
_TINY = 1e-300


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_STIRLING_MIN = 15.0


def _stirling_tail(z: float) -> float:
    """lgamma(z) minus its Stirling approximation, for z >= 15."""
    z2 = z * z
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * z2)) / z2) / z2) / z2) / z


def log_beta(a: float, b: float) -> float:
    """log B(a, b), avoiding the lgamma cancellation that loses digits for large arguments."""
    small, big = min(a, b), max(a, b)
    if big < _STIRLING_MIN:
        return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    corr = _stirling_tail(big) - _stirling_tail(small + big)
    if small < _STIRLING_MIN:
        # lgamma(big) - lgamma(big + small), expanded so the large terms cancel analytically
        diff = -(big - 0.5) * math.log1p(small / big) - small * math.log(small + big) + small
        return math.lgamma(small) + diff + corr
    return (
        _HALF_LOG_2PI
        + (small - 0.5) * math.log(small / (small + big))
        - big * math.log1p(small / big)
        - 0.5 * math.log(big)
        + _stirling_tail(small)
        + corr
    )


def _ibeta(a: float, b: float, x: float, y: float) -> float:
    # y == 1 - x, passed separately so callers can supply it without cancellation
    log_front = a * math.log(x) + b * math.log(y) - log_beta(a, b)
    front = math.exp(log_front)
    # The fraction converges fast only on this side of the mean.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, y) / b


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    return _ibeta(a, b, x, 1.0 - x)


def student_t_cdf(t: float, df: float) -> float:
    if df <= 0:
        raise ValueError("degrees of freedom must be positive")
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    if t == 0:
        return 0.5
    t2 = t * t
    # P(|T| > |t|) = I_x(df/2, 1/2) with x = df / (df + t^2); 1 - x is formed
    # directly so that small |t| with large df keeps its digits
    two_tail = _ibeta(df / 2.0, 0.5, df / (df + t2), t2 / (df + t2))
    tail = 0.5 * two_tail
    return 1.0 - tail if t > 0 else tail


def student_t_sf(t: float, df: float) -> float:
    """Upper tail P(T > t), accurate for large t where 1 - cdf would cancel."""
    return student_t_cdf(-t, df)


@dataclass(frozen=True)
class TTestResult:
    t_stat: float
    df: int
    p_one_sided: float
    direction: str | None  # "a", "b", or None when the means are equal
    significant: bool


def pooled_t_test(a: Sequence[float], b: Sequence[float], alpha: float = ALPHA) -> TTestResult:
    """One-sided pooled-variance t-test in the direction of the larger mean.

    Zero pooled variance with unequal means is reported as t = +/-inf, p = 0.
    """
    if len(a) < 2 or len(b) < 2:
        raise InsufficientDataError(
            f"each sample needs at least 2 values, got {len(a)} and {len(b)}"
        )
    n1, n2 = len(a), len(b)
    mean_a, sd_a = mean_std(a)
    mean_b, sd_b = mean_std(b)
    df = n1 + n2 - 2
    diff = mean_a - mean_b
    direction = None if diff == 0 else ("a" if diff > 0 else "b")
    pooled_var = ((n1 - 1) * sd_a**2 + (n2 - 1) * sd_b**2) / df

    if pooled_var == 0:
        if diff == 0:
            return TTestResult(0.0, df, 0.5, None, False)
        return TTestResult(math.copysign(math.inf, diff), df, 0.0, direction, True)

    t = diff / (math.sqrt(pooled_var) * math.sqrt(1.0 / n1 + 1.0 / n2))
    p = student_t_sf(abs(t), df)
    return TTestResult(t, df, p, direction, p < alpha)


@dataclass(frozen=True)
class Comparison:
    scenario: Scenario
    system_a: RatingSystem
    system_b: RatingSystem
    test: TTestResult

    @property
    def verdict(self) -> str:
        """Name of the significantly more sensitive system, or ``"none"``."""
        if not self.test.significant:
            return "none"
        return (self.system_a if self.test.direction == "a" else self.system_b).name

    @property
    def pair(self) -> str:
        return f"{self.system_a.name} vs {self.system_b.name}"


def compare_summaries(
    summary_a: SensitivitySummary, summary_b: SensitivitySummary, alpha: float = ALPHA
) -> Comparison:
    test = pooled_t_test(
        list(summary_a.yearly_sums.values()), list(summary_b.yearly_sums.values()), alpha
    )
    return Comparison(summary_a.scenario, summary_a.system, summary_b.system, test)


def compare_systems(
    dataset: Dataset,
    scenario: Scenario,
    system_a: RatingSystem,
    system_b: RatingSystem,
    sack_fallback: float | None = None,
    *,
    alpha: float = ALPHA,
    clamp_interceptions: bool = False,
) -> Comparison:
    summaries = [
        aggregate(dataset, scenario, s, sack_fallback, clamp_interceptions=clamp_interceptions)
        for s in (system_a, system_b)
    ]
    return compare_summaries(*summaries, alpha=alpha)
