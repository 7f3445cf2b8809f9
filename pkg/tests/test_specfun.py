import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spherewave.specfun import (
    HalfIntOrder,
    bessel_j,
    bessel_normalized,
    duplication_residual,
    gamma,
)

SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def series_oracle_j(twice_nu: int, z: float, terms: int = 50) -> float:
    """50-term compensated ascending series for J_nu, independent of the
    package's evaluation path (plain doubles, Kahan accumulation)."""
    nu = twice_nu / 2.0
    q = (0.5 * z) ** 2
    term = 1.0
    total = 1.0
    comp = 0.0
    for m in range(1, terms):
        term *= -q / (m * (nu + m))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total * (0.5 * z) ** nu / float(mp.gamma(nu + 1))


def mp_j(twice_nu: int, z: float) -> float:
    with mp.workdps(40):
        return float(mp.besselj(mp.mpf(twice_nu) / 2, z))


def test_series_oracle_against_half_integer_closed_form():
    # the oracle itself is cross-checked against sqrt(2/(pi z)) sin z
    for z in (0.25, 1.0, 3.0, 7.5):
        closed = math.sqrt(2.0 / (math.pi * z)) * math.sin(z)
        assert series_oracle_j(1, z) == pytest.approx(closed, abs=1e-13)


# ---------------------------------------------------------------------------
# gamma
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "x, expected",
    [
        (0.5, SQRT_PI),
        (1.0, 1.0),
        (2.0, 1.0),
        (2.5, 0.75 * SQRT_PI),
    ],
)
def test_gamma_exact_points(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-15)


def test_gamma_accuracy_general_argument():
    with mp.workdps(40):
        for x in np.linspace(0.013, 50.0, 997):
            ref = float(mp.gamma(float(x)))
            assert gamma(float(x)) == pytest.approx(ref, rel=1e-12)


def test_gamma_domain_error():
    for bad in (0.0, -1.0, -0.5):
        with pytest.raises(ValueError):
            gamma(bad)


def test_gamma_recurrence_on_half_integer_grid():
    for x in np.arange(0.5, 20.5, 0.5):
        x = float(x)
        lhs = gamma(x + 1.0)
        assert abs(lhs - x * gamma(x)) / lhs < 1e-13


@given(st.floats(min_value=0.05, max_value=49.0))
@settings(max_examples=200, deadline=None)
def test_gamma_recurrence_property(x):
    lhs = gamma(x + 1.0)
    assert abs(lhs - x * gamma(x)) / lhs < 1e-13


# ---------------------------------------------------------------------------
# bessel_j
# ---------------------------------------------------------------------------


def test_bessel_j_at_zero():
    assert bessel_j(HalfIntOrder(0), 0.0) == 1.0
    assert bessel_j(HalfIntOrder(2), 0.0) == 0.0
    assert bessel_j(HalfIntOrder(1), 0.0) == 0.0


def test_bessel_j_half_order_at_one():
    # frozen from the series oracle, cross-checked against the closed form
    expected = 0.6713967071418031  # sqrt(2/pi) sin(1)
    assert series_oracle_j(1, 1.0) == pytest.approx(expected, abs=1e-15)
    assert bessel_j(HalfIntOrder(1), 1.0) == pytest.approx(expected, abs=1e-13)


def test_bessel_j_first_zero_found_by_oracle_bisection():
    lo, hi = 2.0, 3.0
    assert series_oracle_j(0, lo) > 0 > series_oracle_j(0, hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if series_oracle_j(0, mid) > 0:
            lo = mid
        else:
            hi = mid
    z0 = 0.5 * (lo + hi)
    assert z0 == pytest.approx(2.404825557695773, abs=1e-12)
    assert abs(bessel_j(HalfIntOrder(0), z0)) < 1e-10


def test_bessel_j_against_high_precision_reference():
    for tn in range(-1, 15):
        for z in np.linspace(0.05, 100.0, 241):
            z = float(z)
            assert bessel_j(HalfIntOrder(tn), z) == pytest.approx(mp_j(tn, z), abs=1e-10)


def test_bessel_j_domain_errors():
    with pytest.raises(ValueError):
        bessel_j(HalfIntOrder(0), -1.0)
    with pytest.raises(ValueError):
        bessel_j(HalfIntOrder(-1), 0.0)  # diverges as z -> 0


def test_recurrence_relation():
    # J_{nu-1} + J_{nu+1} = (2 nu / z) J_nu; nu = 0 uses J_{-1} = -J_1
    for tn in (0, 1, 2, 4, 6, 8, 10):
        for z in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0):
            jm = -bessel_j(HalfIntOrder(2), z) if tn == 0 else bessel_j(HalfIntOrder(tn - 2), z)
            jp = bessel_j(HalfIntOrder(tn + 2), z)
            jc = bessel_j(HalfIntOrder(tn), z)
            assert abs(jm + jp - (tn / z) * jc) < 1e-10


def test_half_integer_identities():
    for z in np.linspace(0.1, 50.0, 500):
        z = float(z)
        c = math.sqrt(2.0 / (math.pi * z))
        assert abs(bessel_j(HalfIntOrder(1), z) - c * math.sin(z)) < 1e-12
        assert abs(bessel_j(HalfIntOrder(-1), z) - c * math.cos(z)) < 1e-12


def test_branch_overlap_band():
    # both evaluation routes must agree where they meet
    from spherewave import specfun

    for tn in range(-1, 15):
        nu = tn / 2.0
        for z in np.linspace(14.0, 16.0, 41):
            z = float(z)
            series = specfun._normalized_series(tn, z) * math.pow(0.5 * z, nu) / gamma(nu + 1.0)
            large = specfun._j_half_closed(tn, z) if tn % 2 else specfun._j_asymptotic(tn // 2, z)
            assert abs(series - large) < 1e-9


# ---------------------------------------------------------------------------
# bessel_normalized
# ---------------------------------------------------------------------------


def test_normalized_is_one_at_zero():
    for tn in range(-1, 15):
        assert bessel_normalized(HalfIntOrder(tn), 0.0) == 1.0


def test_normalized_half_order_at_pi():
    # G(3/2) J_{1/2}(pi) / (pi/2)^{1/2} = sin(pi)/pi, i.e. zero
    assert abs(bessel_normalized(HalfIntOrder(1), math.pi)) < 1e-15


def test_normalized_order_zero_is_plain_j0():
    z = 2.0 * math.pi
    expected = 0.22027690853993445  # J_0(2 pi), frozen from the series oracle
    assert series_oracle_j(0, z) == pytest.approx(expected, abs=1e-14)
    assert bessel_normalized(HalfIntOrder(0), z) == pytest.approx(expected, abs=1e-13)


def test_normalized_consistent_with_raw_quotient():
    for tn in range(-1, 15):
        nu = tn / 2.0
        for z in (0.3, 1.0, 5.0, 14.5, 20.0, 77.0):
            quotient = gamma(nu + 1.0) * bessel_j(HalfIntOrder(tn), z) / (0.5 * z) ** nu
            assert bessel_normalized(HalfIntOrder(tn), z) == pytest.approx(quotient, abs=1e-10)


def test_normalized_bounded_on_dense_grid():
    for tn in range(-1, 15):
        vals = [abs(bessel_normalized(HalfIntOrder(tn), float(z))) for z in np.linspace(0, 100, 1001)]
        assert max(vals) <= 1.0 + 1e-12


@given(
    st.integers(min_value=-1, max_value=14),
    st.floats(min_value=0.0, max_value=100.0),
)
@settings(max_examples=300, deadline=None)
def test_normalized_bounded_property(tn, z):
    assert abs(bessel_normalized(HalfIntOrder(tn), z)) <= 1.0 + 1e-12


# ---------------------------------------------------------------------------
# duplication_residual
# ---------------------------------------------------------------------------


def test_duplication_trivial_points():
    assert duplication_residual(0.5) < 1e-13
    assert duplication_residual(1.0) < 1e-13


def test_duplication_half_integers():
    for m in range(1, 11):
        assert duplication_residual(m + 0.5) < 1e-12


def test_duplication_on_grid():
    for z in np.linspace(0.2, 20.0, 100):
        assert duplication_residual(float(z)) < 1e-12


def test_duplication_domain():
    with pytest.raises(ValueError):
        duplication_residual(0.0)
    with pytest.raises(ValueError):
        duplication_residual(25.5)


# ---------------------------------------------------------------------------
# HalfIntOrder
# ---------------------------------------------------------------------------


def test_half_int_order_validation():
    assert HalfIntOrder.from_nu(0.5).twice_nu == 1
    assert HalfIntOrder.from_nu(HalfIntOrder(3)).twice_nu == 3
    with pytest.raises(ValueError):
        HalfIntOrder(-2)
    with pytest.raises(ValueError):
        HalfIntOrder.from_nu(0.3)
    with pytest.raises(TypeError):
        HalfIntOrder(1.5)
