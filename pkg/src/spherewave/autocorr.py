"""Autocorrelation of the radial wave e^{2 pi i k |x|}.

Closed form: a normalized Bessel profile in s = |x|. Finite-volume
averages over balls of radius R are computed with panel Gauss-Legendre
quadrature sized to the oscillation, and compared against the closed
form in convergence studies. The finite-R average is genuinely complex;
its imaginary part is the built-in truncation indicator and only the
R -> infinity limit is real.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .geometry import ball_volume, check_dimension, theta_d
from .specfun import HalfIntOrder, bessel_normalized

__all__ = [
    "WaveSpec",
    "QuadratureSpec",
    "RadialProfile",
    "ConvergenceReport",
    "QuadraturePanelError",
    "DegenerateWindowWarning",
    "eta_closed",
    "eta_finite_R",
    "convergence_study",
    "radial_profile",
]

PANEL_BUDGET = 10**7
_TWO_PI = 2.0 * math.pi


class QuadraturePanelError(RuntimeError):
    """Requested finite-R integral exceeds the quadrature panel budget."""


class DegenerateWindowWarning(UserWarning):
    """R < 4s: the shifted ball exits the averaging window substantially."""


@dataclass(frozen=True)
class WaveSpec:
    """Radial wave parameters: dimension d and wavenumber k >= 0.

    k = 0 is the constant wave, whose autocorrelation is identically 1.
    """

    d: int
    k: float

    def __post_init__(self) -> None:
        check_dimension(self.d)
        if not (math.isfinite(self.k) and self.k >= 0):
            raise ValueError(f"wavenumber must be finite and >= 0, got {self.k}")


@dataclass(frozen=True)
class QuadratureSpec:
    """Panelization of the finite-R integral.

    Radial panels cover 1/radial_panels_per_period of an oscillation
    period 1/k each; the angular axis [0, pi] gets
    max(angular_min_panels, ceil(angular_panels_per_ks * k * s)) panels,
    since the phase variation in the angle grows like k*s.
    """

    radial_panels_per_period: int = 4
    radial_nodes_per_panel: int = 12
    angular_nodes_per_panel: int = 16
    angular_min_panels: int = 8
    angular_panels_per_ks: float = 4.0

    def __post_init__(self) -> None:
        for name in (
            "radial_panels_per_period",
            "radial_nodes_per_panel",
            "angular_nodes_per_panel",
            "angular_min_panels",
            "angular_panels_per_ks",
        ):
            if not getattr(self, name) >= 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")


_DEFAULT_QUAD = QuadratureSpec()


@dataclass
class RadialProfile:
    """Autocorrelation values on a radial grid.

    eta_numeric and R are present when a finite-R average was requested
    alongside the closed form.
    """

    s_values: np.ndarray
    eta_closed: np.ndarray
    eta_numeric: np.ndarray | None = None
    R: float | None = None

    def __post_init__(self) -> None:
        self.s_values = np.asarray(self.s_values, dtype=float)
        self.eta_closed = np.asarray(self.eta_closed, dtype=float)
        if self.eta_numeric is not None:
            self.eta_numeric = np.asarray(self.eta_numeric, dtype=complex)
            if self.eta_numeric.shape != self.s_values.shape:
                raise ValueError("eta_numeric length differs from s_values")
        if self.eta_closed.shape != self.s_values.shape:
            raise ValueError("eta_closed length differs from s_values")
        if self.s_values.size and np.any(np.diff(self.s_values) <= 0):
            raise ValueError("s_values must be strictly increasing")
        if self.s_values.size and self.s_values[0] < 0:
            raise ValueError("s_values must be nonnegative")


@dataclass
class ConvergenceReport:
    """Per-R errors of the finite average against the closed form.

    decay_ratios[i] = max_abs_error[i] / max_abs_error[i+1]; a ratio of
    inf (or 1.0 when both errors vanish) marks exact agreement.
    degenerate_pairs lists (R, s) combinations with R < 4s, where the
    boundary error is large by construction.
    """

    R_values: list[float]
    max_abs_error: list[float]
    max_imag_residual: list[float]
    decay_ratios: list[float]
    degenerate_pairs: list[tuple[float, float]] = field(default_factory=list)

    def __post_init__(self) -> None:
        n = len(self.R_values)
        if len(self.max_abs_error) != n or len(self.max_imag_residual) != n:
            raise ValueError("error lists must match R_values in length")
        if len(self.decay_ratios) != max(n - 1, 0):
            raise ValueError("decay_ratios must have one entry per adjacent R pair")
        if any(b <= a for a, b in zip(self.R_values, self.R_values[1:])):
            raise ValueError("R_values must be strictly increasing")


def eta_closed(wave: WaveSpec, s: float) -> float:
    """Limit autocorrelation at radial distance s >= 0.

    Evaluates G(d/2) J_{d/2-1}(2 pi k s) / (pi k s)^{d/2-1} through the
    normalized Bessel form, so s = 0 and k = 0 return exactly 1. The
    result lies in [-1, 1].
    """
    if not s >= 0:
        raise ValueError(f"eta_closed requires s >= 0, got {s}")
    # 2 pi (k s), not (2 pi k) s: keeps eta((d,k), s) == eta((d,1), k s) bitwise
    return bessel_normalized(HalfIntOrder(wave.d - 2), _TWO_PI * (wave.k * s))


@lru_cache(maxsize=32)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _panel_nodes(a: float, b: float, panels: int, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = _leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    return (mid[:, None] + half[:, None] * x).ravel(), (half[:, None] * w).ravel()


def _eta_R_interval(k: float, s: float, R: float) -> complex:
    # d = 1: the phase k(|y| - |s - y|) is piecewise linear in y, so the
    # window average has an exact antiderivative. For y < 0 and y > s the
    # integrand is the constant e^{-+ 2 pi i k s}.
    alpha = _TWO_PI * k * s
    if R <= s:
        head = R * cmath.exp(-1j * alpha)
        mid = (cmath.exp(1j * _TWO_PI * k * (2.0 * R - s)) - cmath.exp(-1j * alpha)) / (
            4j * math.pi * k
        )
        return (head + mid) / (2.0 * R)
    total = (
        R * cmath.exp(-1j * alpha)
        + math.sin(alpha) / (_TWO_PI * k)
        + (R - s) * cmath.exp(1j * alpha)
    )
    return total / (2.0 * R)


def angular_panel_count(quad: QuadratureSpec, k: float, s: float) -> int:
    return max(quad.angular_min_panels, math.ceil(quad.angular_panels_per_ks * k * s))


def radial_panel_count(quad: QuadratureSpec, k: float, R: float) -> int:
    return max(1, math.ceil(R * k * quad.radial_panels_per_period))


def eta_finite_R(
    wave: WaveSpec, s: float, R: float, quad: QuadratureSpec | None = None
) -> complex:
    """Average of the wave times its reversed conjugate over the R-ball.

    Returns the complex value; the real part converges to
    eta_closed(wave, s) as R grows, the imaginary part to 0. R >= 4s is
    recommended; smaller R triggers DegenerateWindowWarning.
    """
    if not R > 0:
        raise ValueError(f"eta_finite_R requires R > 0, got {R}")
    if not s >= 0:
        raise ValueError(f"eta_finite_R requires s >= 0, got {s}")
    quad = quad or _DEFAULT_QUAD
    d, k = wave.d, wave.k
    if k == 0.0:
        return 1.0 + 0.0j
    if R < 4.0 * s:
        warnings.warn(
            f"R = {R} < 4 s = {4.0 * s}: boundary error is large", DegenerateWindowWarning
        )
    if d == 1:
        return _eta_R_interval(k, s, R)

    n_rad = radial_panel_count(quad, k, R)
    n_ang = angular_panel_count(quad, k, s)
    if n_rad * n_ang > PANEL_BUDGET:
        raise QuadraturePanelError(
            f"{n_rad} x {n_ang} panels exceed budget {PANEL_BUDGET} "
            f"for k = {k}, R = {R}, s = {s}"
        )

    rho, w_rho = _panel_nodes(0.0, R, n_rad, quad.radial_nodes_per_panel)
    theta, w_th = _panel_nodes(0.0, math.pi, n_ang, quad.angular_nodes_per_panel)
    wr = w_rho * rho ** (d - 1)
    wt = w_th * np.sin(theta) ** (d - 2)
    ct = np.cos(theta)

    total = 0.0 + 0.0j
    chunk = max(1, (1 << 21) // ct.size)  # bound the (rho, theta) block size
    for lo in range(0, rho.size, chunk):
        r = rho[lo : lo + chunk, None]
        dist = np.sqrt(r * r + s * s - 2.0 * s * r * ct)
        block = np.exp((2j * math.pi * k) * (r - dist))
        block *= wr[lo : lo + chunk, None]
        block *= wt
        total += block.sum()
    return complex(theta_d(d) / ball_volume(d, R) * total)


def convergence_study(
    wave: WaveSpec,
    s_grid: list[float],
    R_list: list[float],
    quad: QuadratureSpec | None = None,
) -> ConvergenceReport:
    """Tabulate max |Re eta_R - eta| and max |Im eta_R| over s_grid per R."""
    R_list = [float(R) for R in R_list]
    if len(R_list) < 2:
        raise ValueError("R_list must contain at least two radii")
    if any(b <= a for a, b in zip(R_list, R_list[1:])):
        raise ValueError("R_list must be strictly increasing")
    s_grid = [float(s) for s in s_grid]
    if not s_grid:
        raise ValueError("s_grid must be nonempty")
    if any(s < 0 for s in s_grid):
        raise ValueError("s_grid entries must be nonnegative")

    closed = [eta_closed(wave, s) for s in s_grid]
    max_abs, max_imag = [], []
    degenerate = [(R, s) for R in R_list for s in s_grid if R < 4.0 * s]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateWindowWarning)
        for R in R_list:
            vals = [eta_finite_R(wave, s, R, quad) for s in s_grid]
            max_abs.append(max(abs(v.real - c) for v, c in zip(vals, closed)))
            max_imag.append(max(abs(v.imag) for v in vals))

    ratios = []
    for a, b in zip(max_abs, max_abs[1:]):
        if b > 0.0:
            ratios.append(a / b)
        else:
            ratios.append(math.inf if a > 0.0 else 1.0)
    return ConvergenceReport(R_list, max_abs, max_imag, ratios, degenerate)


def radial_profile(
    wave: WaveSpec,
    s_values: np.ndarray,
    R: float | None = None,
    quad: QuadratureSpec | None = None,
) -> RadialProfile:
    """Closed-form profile on a grid, optionally with a finite-R average."""
    s_values = np.asarray(s_values, dtype=float)
    closed = np.array([eta_closed(wave, float(s)) for s in s_values])
    numeric = None
    if R is not None:
        numeric = np.array([eta_finite_R(wave, float(s), R, quad) for s in s_values])
    return RadialProfile(s_values, closed, numeric, R)
