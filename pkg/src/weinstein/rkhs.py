"""Weighted Hilbert space, reproducing kernels and the regularized inverse.

The space H_zeta collects fields whose transform is square-integrable
against zeta(xi) = (1 + |xi|^2)^s.  Together with a multiplier symbol
and a penalty eta it carries the inner product with weight
eta*zeta + |m_sigma|^2, whose point-evaluation kernel is explicit on
the frequency side.  The extremal field is the unique minimizer of
eta ||phi||_zeta^2 + ||h - T phi||_2^2, a Tikhonov-type spectral
filter; driving eta to zero gives the third reconstruction formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grids import Field, Grid
from .multipliers import MultiplierSymbol
from .transform import (
    SpectralPlan,
    forward_transform,
    inverse_transform,
    kernel_on_grid,
)

__all__ = [
    "ZetaWeight",
    "RegParams",
    "norm_zeta",
    "inner_zeta_eta",
    "kernel_psi",
    "kernel_theta",
    "psi_field",
    "theta_field",
    "extremal",
    "extremal_kernel",
    "objective",
    "third_calderon",
    "third_calderon_report",
]


@dataclass(frozen=True)
class ZetaWeight:
    """Power weight zeta_s(xi) = (1 + |xi|^2)^s, s the decay exponent.

    ``unchecked=True`` skips the integrability gate s > a + 1 + d/2
    (needed for 1/zeta to be integrable); meant for grid-truncated
    tests such as zeta == 1.
    """

    s: float
    family: str = "power"
    unchecked: bool = False

    def __post_init__(self):
        if self.family != "power":
            raise ValueError(f"unknown zeta family {self.family!r}")

    def validate_for(self, grid: Grid) -> None:
        if self.unchecked:
            return
        gate = grid.alpha + 1.0 + grid.d / 2.0
        if not self.s > gate:
            raise ValueError(
                f"zeta exponent s={self.s} violates the integrability gate s > {gate}"
            )

    def on_grid(self, grid: Grid) -> np.ndarray:
        pts = grid.nodes()
        return (1.0 + np.sum(pts * pts, axis=1)) ** self.s


@dataclass(frozen=True)
class RegParams:
    eta: float
    sigma: float

    def __post_init__(self):
        if self.eta <= 0 or self.sigma <= 0:
            raise ValueError("eta and sigma must be positive")


def _weight_denominator(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
                        m: MultiplierSymbol) -> np.ndarray:
    """eta*zeta + |m_sigma|^2 on the frequency grid (always >= eta > 0)."""
    zeta.validate_for(plan.freq_grid)
    ms = m.on_grid(plan.freq_grid, reg.sigma)
    return reg.eta * zeta.on_grid(plan.freq_grid) + np.abs(ms) ** 2


def norm_zeta(plan: SpectralPlan, zeta: ZetaWeight, phi: Field) -> float:
    """sqrt(int zeta |F(phi)|^2 dmu) by frequency-grid quadrature.

    A space-side field is transformed first.  A frequency-side field is
    taken to *be* the transform: spectrally constructed objects (kernel
    sections, extremal fields) carry their spectrum by construction, and
    re-transforming their truncated space samples would contaminate the
    heavily zeta-weighted high frequencies with box-truncation error.
    """
    zeta.validate_for(plan.freq_grid)
    F = phi if phi.grid == plan.freq_grid else forward_transform(plan, phi)
    return float(math.sqrt(np.sum(zeta.on_grid(plan.freq_grid) * np.abs(F.values) ** 2
                                  * plan.freq_weights)))


def inner_zeta_eta(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
                   m: MultiplierSymbol, phi: Field, psi: Field) -> complex:
    """int (eta*zeta + |m_sigma|^2) F(phi) conj(F(psi)) dmu."""
    den = _weight_denominator(plan, zeta, reg, m)
    Fp = forward_transform(plan, phi)
    Fq = forward_transform(plan, psi)
    return complex(np.sum(den * Fp.values * np.conj(Fq.values) * plan.freq_weights))


def kernel_psi(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
               m: MultiplierSymbol, x, y) -> complex:
    """Point-evaluation kernel of the (zeta, eta) inner product at (x, y).

    With m == 0 and eta == 1 this is the kernel of the plain zeta inner
    product."""
    den = _weight_denominator(plan, zeta, reg, m)
    kx = kernel_on_grid(plan.freq_grid, np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float)
    ky = kernel_on_grid(plan.freq_grid, np.concatenate([-y[:-1], y[-1:]]))
    return complex(np.sum(kx * ky / den * plan.freq_weights))


def kernel_theta(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
                 m: MultiplierSymbol, x, y) -> complex:
    """Multiplier image of the point-evaluation kernel at (x, y)."""
    den = _weight_denominator(plan, zeta, reg, m)
    ms = m.on_grid(plan.freq_grid, reg.sigma)
    kx = kernel_on_grid(plan.freq_grid, np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float)
    ky = kernel_on_grid(plan.freq_grid, np.concatenate([-y[:-1], y[-1:]]))
    return complex(np.sum(ms * kx * ky / den * plan.freq_weights))


def psi_field(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
              m: MultiplierSymbol, y) -> Field:
    """The kernel section Psi(., y) as a space-side field."""
    den = _weight_denominator(plan, zeta, reg, m)
    ky = kernel_on_grid(plan.freq_grid, np.asarray(y, dtype=float))
    return inverse_transform(plan, Field(plan.freq_grid, ky / den))


def theta_field(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
                m: MultiplierSymbol, y) -> Field:
    """The section Theta(., y) = T(Psi(., y)) as a space-side field."""
    den = _weight_denominator(plan, zeta, reg, m)
    ms = m.on_grid(plan.freq_grid, reg.sigma)
    ky = kernel_on_grid(plan.freq_grid, np.asarray(y, dtype=float))
    return inverse_transform(plan, Field(plan.freq_grid, ms * ky / den))


def extremal_spectrum(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
                      m: MultiplierSymbol, h: Field) -> Field:
    """Constructed transform of the extremal field,
    conj(m_sigma) F(h) / (eta*zeta + |m_sigma|^2), as a frequency-side
    field.  This is F(phi*) by definition; norms of the extremal should
    be taken from it (see :func:`norm_zeta`)."""
    den = _weight_denominator(plan, zeta, reg, m)
    ms = m.on_grid(plan.freq_grid, reg.sigma)
    Fh = forward_transform(plan, h)
    return Field(plan.freq_grid, np.conj(ms) * Fh.values / den)


def extremal(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
             m: MultiplierSymbol, h: Field) -> Field:
    """Minimizer of eta ||phi||_zeta^2 + ||h - T phi||_2^2: the spectral
    filter Finv(conj(m_sigma) F(h) / (eta*zeta + |m_sigma|^2))."""
    return inverse_transform(plan, extremal_spectrum(plan, zeta, reg, m, h))


def extremal_kernel(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
                    m: MultiplierSymbol, h: Field) -> Field:
    """Kernel-form realization of the extremal field:
    phi*(y) = int h(x) conj(Theta(x, y)) dmu(x).  O(N^2); kept as an
    independent cross-check of the spectral filter."""
    hw = h.values * plan.space_weights
    out = np.empty(plan.space_grid.size, dtype=np.complex128)
    for i, y in enumerate(plan.space_grid.nodes()):
        out[i] = np.sum(hw * np.conj(theta_field(plan, zeta, reg, m, y).values))
    return Field(plan.space_grid, out)


def objective(plan: SpectralPlan, zeta: ZetaWeight, reg: RegParams,
              m: MultiplierSymbol, h: Field, phi: Field) -> float:
    """Regularized least-squares functional eta ||phi||_zeta^2 + ||h - T phi||_2^2.

    The functional is evaluated on the frequency side, where the
    discrete problem is exactly quadratic and diagonal; its unique
    minimizer is the spectral filter of :func:`extremal_spectrum`
    nodewise.  As in :func:`norm_zeta`, a frequency-side ``phi`` is
    taken to be the constructed transform of the candidate field, so
    stationarity at the extremal holds to machine precision.
    """
    zeta.validate_for(plan.freq_grid)
    ms = m.on_grid(plan.freq_grid, reg.sigma)
    Fp = phi if phi.grid == plan.freq_grid else forward_transform(plan, phi)
    Fh = forward_transform(plan, h)
    pen = reg.eta * float(np.sum(zeta.on_grid(plan.freq_grid) * np.abs(Fp.values) ** 2
                                 * plan.freq_weights))
    fit = float(np.sum(np.abs(Fh.values - ms * Fp.values) ** 2 * plan.freq_weights))
    return pen + fit


def third_calderon(plan: SpectralPlan, zeta: ZetaWeight, m: MultiplierSymbol,
                   sigma: float, phi: Field, etas) -> np.ndarray:
    """Regularized-inverse reconstruction errors ||phi*_eta - phi||_zeta
    for h = T phi along a decreasing eta sequence."""
    return third_calderon_report(plan, zeta, m, sigma, phi, etas)["zeta_error"]


def third_calderon_report(plan: SpectralPlan, zeta: ZetaWeight, m: MultiplierSymbol,
                          sigma: float, phi: Field, etas) -> dict:
    """As :func:`third_calderon`, also returning sup-norm errors and the
    closed-quadrature error prediction from the spectral error factor
    -eta*zeta / (eta*zeta + |m_sigma|^2)."""
    etas = [float(e) for e in etas]
    if not etas:
        raise ValueError("eta sequence must be nonempty")
    zeta.validate_for(plan.freq_grid)
    zg = zeta.on_grid(plan.freq_grid)
    ms = m.on_grid(plan.freq_grid, sigma)
    ms2 = np.abs(ms) ** 2
    Fphi = forward_transform(plan, phi)
    # constructed spectrum of the data h = T phi
    Fh = ms * Fphi.values
    zerr, serr, pred = [], [], []
    for eta in etas:
        den = eta * zg + ms2
        # constructed spectrum of the extremal: conj(m) F(h) / den
        Fstar = np.conj(ms) * Fh / den
        star = inverse_transform(plan, Field(plan.freq_grid, Fstar))
        zerr.append(norm_zeta(plan, zeta, Field(plan.freq_grid, Fstar - Fphi.values)))
        serr.append(float(np.max(np.abs(star.values - phi.values))))
        pred.append(float(math.sqrt(np.sum(
            eta**2 * zg**3 * np.abs(Fphi.values) ** 2 / den**2 * plan.freq_weights))))
    return {
        "etas": np.asarray(etas),
        "zeta_error": np.asarray(zerr),
        "sup_error": np.asarray(serr),
        "predicted_zeta_error": np.asarray(pred),
    }
