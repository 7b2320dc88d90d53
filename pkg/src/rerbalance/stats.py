"""Regularized incomplete beta function and the t and F distribution CDFs.

Everything here is scalar and dependency-free apart from :mod:`math`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "TestStatistic",
    "regularized_incomplete_beta",
    "student_t_cdf",
    "t_pvalue",
    "f_cdf",
    "f_pvalue",
    "format_pvalue",
]

MAX_ITER = 300
EPS = 1e-14
_TINY = 1e-300


@dataclass(frozen=True)
class TestStatistic:
    """A test statistic and its degrees of freedom (``df1`` unused for t)."""

    __test__ = False  # not a pytest class

    value: float
    df1: float
    df2: float

    def __post_init__(self):
        if not (self.df2 > 0 and self.df1 > 0):
            raise DomainError("degrees of freedom must be positive")

    def f_pvalue(self) -> float:
        return f_pvalue(self.value, self.df1, self.df2)

    def t_pvalue(self) -> float:
        return t_pvalue(self.value, self.df2)


def _betacf(x, a, b):
    # Modified Lentz evaluation of the continued fraction for I_x(a, b).
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITER + 1):
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
        if abs(delta - 1.0) < EPS:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge in {MAX_ITER} "
        f"iterations (x={x}, a={a}, b={b})"
    )


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta function ``I_x(a, b)``.

    Uses the continued fraction directly when ``x < (a + 1) / (a + b + 2)``
    and the reflection ``I_x(a, b) = 1 - I_{1-x}(b, a)`` otherwise, which keeps
    the fraction in its rapidly converging region.
    """
    x = float(x)
    if not (a > 0 and b > 0):
        raise DomainError(f"shape parameters must be positive (a={a}, b={b})")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x={x} outside [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(x, a, b) / a
    return 1.0 - front * _betacf(1.0 - x, b, a) / b


def student_t_cdf(t: float, df: float) -> float:
    if not df > 0:
        raise DomainError(f"df must be positive, got {df}")
    if math.isnan(t):
        return math.nan
    if t == 0:
        return 0.5
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    tail = 0.5 * regularized_incomplete_beta(df / (df + t * t), 0.5 * df, 0.5)
    return 1.0 - tail if t > 0 else tail


def t_pvalue(t: float, df: float) -> float:
    """Two-sided p-value ``2 * (1 - cdf(|t|))``."""
    if math.isnan(t):
        return math.nan
    return 2.0 * (1.0 - student_t_cdf(abs(t), df))


def f_cdf(x: float, d1: float, d2: float) -> float:
    if not (d1 > 0 and d2 > 0):
        raise DomainError(f"degrees of freedom must be positive (d1={d1}, d2={d2})")
    if math.isnan(x):
        return math.nan
    if x < 0:
        raise DomainError(f"F statistic must be non-negative, got {x}")
    if math.isinf(x):
        return 1.0
    return regularized_incomplete_beta(d1 * x / (d1 * x + d2), 0.5 * d1, 0.5 * d2)


def f_pvalue(x: float, d1: float, d2: float) -> float:
    """Upper-tail probability ``1 - f_cdf(x, d1, d2)``."""
    return 1.0 - f_cdf(x, d1, d2)


def format_pvalue(p: float, decimals: int = 3) -> str:
    """Fixed-decimal p-value; anything below half a unit prints as zeros."""
    if math.isnan(p):
        return "nan"
    s = f"{p:.{decimals}f}"
    return s.replace("-", "") if float(s) == 0 else s
