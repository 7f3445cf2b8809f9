"""Fourier transform of the uniform probability measure on a sphere.

The closed form is the same normalized Bessel profile as the wave
autocorrelation; a seeded Monte Carlo estimator provides an independent
numerical route, and roundtrip_check certifies that both module surfaces
agree on shared grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .autocorr import WaveSpec, eta_closed
from .geometry import check_dimension, sample_sphere
from .specfun import HalfIntOrder, bessel_normalized

__all__ = ["SphereMeasure", "MCEstimate", "sphere_ft_closed", "sphere_ft_mc", "roundtrip_check"]

_MIN_MC_SAMPLES = 100


@dataclass(frozen=True)
class SphereMeasure:
    """Uniform probability measure on the sphere of given radius in R^d."""

    d: int
    radius: float

    def __post_init__(self) -> None:
        check_dimension(self.d)
        if not (math.isfinite(self.radius) and self.radius >= 0):
            raise ValueError(f"radius must be finite and >= 0, got {self.radius}")


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo value with its standard error (sample std / sqrt(n))."""

    value: complex
    stderr: float
    n: int
    seed: int


def sphere_ft_closed(mu: SphereMeasure, x_norm: float) -> float:
    """Transform of the sphere measure at frequency |x| = x_norm.

    Real and within [-1, 1]; equals 1 at x_norm = 0 or radius = 0.
    """
    if not x_norm >= 0:
        raise ValueError(f"sphere_ft_closed requires x_norm >= 0, got {x_norm}")
    # same association as eta_closed so the roundtrip check is bitwise exact
    return bessel_normalized(HalfIntOrder(mu.d - 2), (2.0 * math.pi) * (mu.radius * x_norm))


def sphere_ft_mc(mu: SphereMeasure, x: np.ndarray, n: int, seed: int) -> MCEstimate:
    """Estimate the transform at x as the mean of e^{-2 pi i x.y} over n
    sampled sphere points. Deterministic for a fixed seed.
    """
    if n < _MIN_MC_SAMPLES:
        raise ValueError(f"sphere_ft_mc requires n >= {_MIN_MC_SAMPLES}, got {n}")
    x = np.asarray(x, dtype=float)
    if x.shape != (mu.d,):
        raise ValueError(f"x must be a point in R^{mu.d}, got shape {x.shape}")
    if mu.radius == 0.0:
        # the measure is a unit point mass at the origin: every summand is 1
        return MCEstimate(1.0 + 0.0j, 0.0, n, seed)
    points = sample_sphere(mu.d, mu.radius, n, seed)
    summands = np.exp((-2j * math.pi) * (points @ x))
    value = summands.mean()
    spread = np.abs(summands - value)
    stderr = math.sqrt(float(spread @ spread) / (n - 1)) / math.sqrt(n)
    return MCEstimate(complex(value), stderr, n, seed)


def roundtrip_check(wave: WaveSpec, s_grid: list[float]) -> float:
    """Max discrepancy between the wave autocorrelation and the transform
    of the matching sphere measure over s_grid. The two reach one formula
    through separate module surfaces, so this certifies their wiring.
    """
    mu = SphereMeasure(wave.d, wave.k)
    return max(
        abs(eta_closed(wave, float(s)) - sphere_ft_closed(mu, float(s))) for s in s_grid
    )
