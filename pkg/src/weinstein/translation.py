"""Generalized translation and the associated convolution.

Two independent translation realizations cross-validate each other: an
angular average with weight (sin t)^{2a} evaluated by Gauss-Legendre
quadrature plus off-grid interpolation, and a spectral realization by
kernel multiplication on the frequency side.  Convolution likewise has
a direct (quadrature) and a spectral (product-of-transforms) path.
"""

from __future__ import annotations

import math

import numpy as np

from .grids import Field, reflect_cartesian
from .interp import interpolate
from .transform import (
    SpectralPlan,
    forward_transform,
    inverse_transform,
    kernel_on_grid,
)

__all__ = ["translate_theta", "translate_spectral", "shift_multiplier", "convolve"]

_THETA_NODES = 64


def _check_shift(plan: SpectralPlan, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (plan.space_grid.d + 1,):
        raise ValueError(f"shift must have {plan.space_grid.d + 1} coordinates")
    if x[-1] < 0:
        raise ValueError("shift must lie in the half-space (last coordinate >= 0)")
    return x


def _theta_rule(alpha: float, n: int = _THETA_NODES):
    """Nodes t_k on (0, pi) and weights summing exactly to one for the
    normalized angular average with density (sin t)^{2a}."""
    z, w = np.polynomial.legendre.leggauss(n)
    t = 0.5 * math.pi * (z + 1.0)
    wt = w * np.sin(t) ** (2.0 * alpha)
    return t, wt / np.sum(wt)


def translate_theta(plan: SpectralPlan, f: Field, x) -> Field:
    """Angular-average translation, off-grid values by interpolation."""
    x = _check_shift(plan, x)
    if f.grid != plan.space_grid:
        raise ValueError("translate_theta expects a space-side field")
    grid = f.grid
    t, wt = _theta_rule(grid.alpha)
    pts = grid.nodes()
    cart = pts[:, :-1] + x[:-1]
    yr = pts[:, -1]
    out = np.zeros(grid.size, dtype=np.complex128)
    for tk, wk in zip(t, wt):
        r = np.sqrt(x[-1] ** 2 + yr**2 + 2.0 * x[-1] * yr * math.cos(tk))
        target = np.concatenate([cart, r[:, None]], axis=1)
        out += wk * interpolate(f, target)
    return Field(grid, out)


def shift_multiplier(plan: SpectralPlan, x) -> np.ndarray:
    """Frequency-side multiplier of the translation by ``x``.

    This is the kernel section at the Cartesian-reflected shift: the
    sign that makes the spectral path match the angular average and
    turns the convolution theorem into an identity.
    """
    x = np.asarray(x, dtype=float)
    return kernel_on_grid(plan.freq_grid, np.concatenate([-x[:-1], x[-1:]]))


def translate_spectral(plan: SpectralPlan, f: Field, x) -> Field:
    """Spectral translation: multiply the transform by the kernel section."""
    x = _check_shift(plan, x)
    F = forward_transform(plan, f)
    return inverse_transform(plan, Field(plan.freq_grid, F.values * shift_multiplier(plan, x)))


def convolve(plan: SpectralPlan, f: Field, g: Field, method: str = "spectral") -> Field:
    """Generalized convolution of two space-side fields.

    ``spectral`` is the production path (inverse transform of the
    product of transforms).  ``direct`` performs the defining
    quadrature with spectral translations and is O(N^2); it exists for
    cross-validation at coarse grids.
    """
    if f.grid != plan.space_grid or g.grid != plan.space_grid:
        raise ValueError("convolve expects space-side fields on the plan grid")
    if method == "spectral":
        F = forward_transform(plan, f)
        G = forward_transform(plan, g)
        return inverse_transform(plan, Field(plan.freq_grid, F.values * G.values))
    if method != "direct":
        raise ValueError(f"unknown convolution method {method!r}")
    F = forward_transform(plan, f)
    gw = g.values * plan.space_weights
    out = np.empty(plan.space_grid.size, dtype=np.complex128)
    for i, x in enumerate(plan.space_grid.nodes()):
        tau = inverse_transform(plan, Field(plan.freq_grid, F.values * shift_multiplier(plan, x)))
        out[i] = np.sum(reflect_cartesian(tau).values * gw)
    return Field(plan.space_grid, out)
