"""Autocorrelation of radial waves and the uniform sphere measure.

The closed-form autocorrelation of e^{2 pi i k |x|} on R^d is a
normalized Bessel profile, which is also the Fourier transform of the
uniform probability measure on the radius-k sphere. This package
evaluates the profile, its finite-volume averages, the sphere-measure
transform (closed form and Monte Carlo), and the Taylor data at the
origin, with a CLI that emits machine-readable tables and runs the full
acceptance battery.
"""

from .autocorr import (
    ConvergenceReport,
    DegenerateWindowWarning,
    QuadraturePanelError,
    QuadratureSpec,
    RadialProfile,
    WaveSpec,
    convergence_study,
    eta_closed,
    eta_finite_R,
    radial_profile,
)
from .diffraction import (
    MCEstimate,
    SphereMeasure,
    roundtrip_check,
    sphere_ft_closed,
    sphere_ft_mc,
)
from .geometry import ball_volume, sample_sphere, theta_d
from .specfun import (
    HalfIntOrder,
    bessel_j,
    bessel_normalized,
    duplication_residual,
    gamma,
)
from .taylor import (
    TaylorCoefficient,
    compare_with_bessel_series,
    h_deriv_at_zero,
    taylor_coefficient,
)
from .verify import verify_all

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "HalfIntOrder",
    "gamma",
    "bessel_j",
    "bessel_normalized",
    "duplication_residual",
    "ball_volume",
    "theta_d",
    "sample_sphere",
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
    "SphereMeasure",
    "MCEstimate",
    "sphere_ft_closed",
    "sphere_ft_mc",
    "roundtrip_check",
    "TaylorCoefficient",
    "h_deriv_at_zero",
    "taylor_coefficient",
    "compare_with_bessel_series",
    "verify_all",
]
