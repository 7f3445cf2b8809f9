"""Dimensional constants and uniform sampling on spheres.

The sampler draws each point from its own pseudo-random stream, derived
from (seed, point index), so output is reproducible bitwise regardless of
evaluation order, chunking, or parallel schedule.
"""

from __future__ import annotations

import math

import numpy as np

from .specfun import gamma

__all__ = ["check_dimension", "ball_volume", "theta_d", "sample_sphere"]

MAX_DIMENSION = 12


def check_dimension(d: int) -> int:
    """Validate the ambient dimension (1 <= d <= 12)."""
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
        raise TypeError(f"dimension must be an int, got {d!r}")
    if not 1 <= d <= MAX_DIMENSION:
        raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {d}")
    return int(d)


def ball_volume(d: int, R: float) -> float:
    """Volume of the closed d-ball of radius R: pi^(d/2) R^d / G(d/2 + 1)."""
    check_dimension(d)
    if not R > 0:
        raise ValueError(f"ball_volume requires R > 0, got {R}")
    return math.pow(math.pi, 0.5 * d) * math.pow(R, d) / gamma(0.5 * d + 1.0)


def theta_d(d: int) -> float:
    """Angular mass left after reducing a d-ball integral to the radius and
    one polar angle: 2 pi^((d-1)/2) / G((d-1)/2). Defined for d >= 2 only.
    """
    check_dimension(d)
    if d < 2:
        raise ValueError("theta_d requires d >= 2; the d = 1 integral has no angular part")
    return 2.0 * math.pow(math.pi, 0.5 * (d - 1)) / gamma(0.5 * (d - 1))


# ---------------------------------------------------------------------------
# Counter-based pseudo-random generator
# ---------------------------------------------------------------------------
# Word w(i, j) for point i, draw j is produced from the 128-bit state
# (key_i, j) via the SplitMix64 finalizer mix64:
#
#   key_i   = mix64(seed ^ mix64((i + 1) * GAMMA_POINT))
#   w(i, j) = mix64(key_i + (j + 1) * GAMMA_DRAW)
#
# mix64 is the Stafford "Mix13" variant of the MurmurHash3 finalizer.
# Uniform doubles take the top 53 bits; Gaussians come from Marsaglia's
# polar method, whose rejections only consume draws from the same
# per-point stream, keeping point i a pure function of (seed, i).

_GAMMA_POINT = np.uint64(0x9E3779B97F4A7C15)
_GAMMA_DRAW = np.uint64(0xD1B54A32D192ED03)
_U53 = 1.0 / 9007199254740992.0  # 2**-53


def _mix64(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(0xBF58476D1CE4E5B9)
    x ^= x >> np.uint64(27)
    x *= np.uint64(0x94D049BB133111EB)
    x ^= x >> np.uint64(31)
    return x


def _point_keys(seed: int, n: int) -> np.ndarray:
    s = np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)
    idx = np.arange(1, n + 1, dtype=np.uint64)
    return _mix64(s ^ _mix64(idx * _GAMMA_POINT))


def _uniforms(keys: np.ndarray, cursor: np.ndarray) -> np.ndarray:
    # draw index is 1-based so (key, cursor=0) never collapses to mix64(key)
    w = _mix64(keys + (cursor + np.uint64(1)) * _GAMMA_DRAW)
    return (w >> np.uint64(11)).astype(np.float64) * _U53


def _gaussians(seed: int, n: int, count: int) -> np.ndarray:
    """(n, count) standard normals; row i depends only on (seed, i)."""
    keys = _point_keys(seed, n)
    out = np.empty((n, count))
    filled = np.zeros(n, dtype=np.intp)
    cursor = np.zeros(n, dtype=np.uint64)
    pending = np.arange(n, dtype=np.intp)
    while pending.size:
        k = keys[pending]
        c = cursor[pending]
        v1 = 2.0 * _uniforms(k, c) - 1.0
        v2 = 2.0 * _uniforms(k, c + np.uint64(1)) - 1.0
        cursor[pending] += np.uint64(2)
        r2 = v1 * v1 + v2 * v2
        ok = (r2 > 0.0) & (r2 < 1.0)
        acc = pending[ok]
        m = np.sqrt(-2.0 * np.log(r2[ok]) / r2[ok])
        out[acc, filled[acc]] = v1[ok] * m
        filled[acc] += 1
        used = filled[acc] < count  # rows with room for the pair's second value
        rows = acc[used]
        out[rows, filled[rows]] = (v2[ok] * m)[used]
        filled[rows] += 1
        pending = pending[filled[pending] < count]
    return out


def sample_sphere(d: int, radius: float, n: int, seed: int) -> np.ndarray:
    """n points uniform on the radius-`radius` sphere in R^d, shape (n, d).

    Deterministic: identical (d, radius, n, seed) give bitwise-identical
    arrays, and a longer run with the same seed extends a shorter one.
    """
    check_dimension(d)
    if not radius > 0:
        raise ValueError(f"sample_sphere requires radius > 0, got {radius}")
    if not n >= 1:
        raise ValueError(f"sample_sphere requires n >= 1, got {n}")
    g = _gaussians(seed, n, d)
    norms = np.sqrt(np.einsum("ij,ij->i", g, g))
    if np.any(norms == 0.0):
        raise RuntimeError("degenerate all-zero gaussian row; astronomically unlikely")
    return g * (radius / norms)[:, None]
