"""Taylor data of the autocorrelation at the origin, for unit wavenumber.

Two routes to the s^m coefficient: the even-order derivative values
divided by m!, and the closed form after the Gamma duplication step.
Their agreement is the duplication identity checked by computation;
compare_with_bessel_series ties both to the ascending Bessel series.
General wavenumbers follow by substituting s -> k s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import check_dimension

__all__ = [
    "TaylorCoefficient",
    "h_deriv_at_zero",
    "taylor_coefficient",
    "compare_with_bessel_series",
]

_MAX_ORDER = 40  # Gamma overflow guard in double precision
_LOG_2PI = math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class TaylorCoefficient:
    """Coefficient of s^m in the autocorrelation around s = 0."""

    m: int
    value: float

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"derivative order must be >= 0, got {self.m}")
        if self.m % 2 and self.value != 0.0:
            raise ValueError("odd-order coefficients must vanish")


def _check_order(m: int) -> None:
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"derivative order must be a nonnegative int, got {m!r}")
    if m > _MAX_ORDER:
        raise ValueError(f"derivative order {m} exceeds the double-precision cap {_MAX_ORDER}")


def h_deriv_at_zero(d: int, m: int) -> float:
    """m-th derivative of the radial autocorrelation at s = 0 (k = 1).

    Zero for odd m; for m = 2n the value is real with sign (-1)^n:
    (-4 pi^2)^n G(d/2) G(n + 1/2) / (sqrt(pi) G(d/2 + n)).
    Computed in log-Gamma space to keep m near 40 inside double range.
    """
    check_dimension(d)
    _check_order(m)
    if m % 2:
        return 0.0
    n = m // 2
    log_mag = (
        m * _LOG_2PI
        + math.lgamma(0.5 * d)
        + math.lgamma(0.5 * (m + 1))
        - 0.5 * _LOG_PI
        - math.lgamma(0.5 * (d + m))
    )
    sign = -1.0 if n % 2 else 1.0
    return sign * math.exp(log_mag)


def taylor_coefficient(d: int, m: int) -> TaylorCoefficient:
    """Coefficient of s^m via the duplication-simplified closed form:
    (-1)^n G(d/2) pi^(2n) / (G(n+1) G(d/2+n)) for m = 2n, zero for odd m.
    Must agree with h_deriv_at_zero(d, m) / m! to rounding.
    """
    check_dimension(d)
    _check_order(m)
    if m % 2:
        return TaylorCoefficient(m, 0.0)
    n = m // 2
    log_mag = (
        math.lgamma(0.5 * d)
        + m * _LOG_PI
        - math.lgamma(n + 1.0)
        - math.lgamma(0.5 * d + n)
    )
    sign = -1.0 if n % 2 else 1.0
    return TaylorCoefficient(m, sign * math.exp(log_mag))


def compare_with_bessel_series(d: int, m_max: int) -> float:
    """Max relative gap between taylor_coefficient(d, 2n) and the s^{2n}
    coefficient of the normalized Bessel profile's ascending series, for
    2n <= m_max. The series side uses the term-ratio recurrence
    c_{n+1} = -c_n pi^2 / ((n+1)(d/2+n)), independent of the log-Gamma
    route.
    """
    check_dimension(d)
    _check_order(m_max)
    if m_max % 2:
        raise ValueError(f"m_max must be even, got {m_max}")
    pi2 = math.pi * math.pi
    c = 1.0
    worst = 0.0
    for n in range(m_max // 2 + 1):
        closed = taylor_coefficient(d, 2 * n).value
        worst = max(worst, abs(closed - c) / abs(c))
        c *= -pi2 / ((n + 1.0) * (0.5 * d + n))
    return worst
