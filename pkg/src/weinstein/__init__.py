"""Weinstein transform toolkit.

A numerical library for the weighted integral transform on the
half-space R^d x (0, inf): forward/inverse transforms, generalized
translation and convolution, scale-dilated frequency multipliers with
Calderon reproducing formulas, and the Tikhonov-regularized (extremal)
inverse of a multiplier operator in a weighted reproducing-kernel
Hilbert space.  A CLI (``weinstein``) exposes the batch operations and
a self-certifying acceptance suite (``weinstein selftest``).
"""

from ._accel import numba_available, numba_enabled, set_numba
from .grids import Field, Grid, gaussian_field, random_smooth_field, reflect_cartesian
from .interp import interpolate
from .multipliers import (
    MultiplierSymbol,
    SigmaQuadrature,
    admissibility_defect,
    apply_multiplier,
    calderon_first,
    calderon_plancherel,
    calderon_second,
    inverse_symbol_field,
    phi_window,
    phi_window_on_grid,
    symbol,
)
from .rkhs import (
    RegParams,
    ZetaWeight,
    extremal,
    extremal_kernel,
    extremal_spectrum,
    inner_zeta_eta,
    kernel_psi,
    kernel_theta,
    norm_zeta,
    objective,
    psi_field,
    theta_field,
    third_calderon,
    third_calderon_report,
)
from .special import BesselIndex, bessel_j_normalized, bessel_series_reference, ln_gamma
from .transform import (
    SpectralPlan,
    build_plan,
    forward_transform,
    inner_product,
    inverse_transform,
    kernel_on_grid,
    norm,
    normalization_constant,
    synthesize_at_points,
    weinstein_kernel,
)
from .translation import convolve, translate_spectral, translate_theta

__version__ = "0.1.0"

__all__ = [
    "BesselIndex",
    "Field",
    "Grid",
    "MultiplierSymbol",
    "RegParams",
    "SigmaQuadrature",
    "SpectralPlan",
    "ZetaWeight",
    "admissibility_defect",
    "apply_multiplier",
    "bessel_j_normalized",
    "bessel_series_reference",
    "build_plan",
    "calderon_first",
    "calderon_plancherel",
    "calderon_second",
    "convolve",
    "extremal",
    "extremal_kernel",
    "extremal_spectrum",
    "forward_transform",
    "gaussian_field",
    "inner_product",
    "inner_zeta_eta",
    "interpolate",
    "inverse_symbol_field",
    "inverse_transform",
    "kernel_on_grid",
    "kernel_psi",
    "kernel_theta",
    "ln_gamma",
    "norm",
    "norm_zeta",
    "normalization_constant",
    "numba_available",
    "numba_enabled",
    "objective",
    "phi_window",
    "phi_window_on_grid",
    "psi_field",
    "random_smooth_field",
    "reflect_cartesian",
    "set_numba",
    "symbol",
    "synthesize_at_points",
    "theta_field",
    "third_calderon",
    "third_calderon_report",
    "translate_spectral",
    "translate_theta",
    "weinstein_kernel",
]
