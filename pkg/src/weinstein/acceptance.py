"""Self-certifying acceptance suite.

Fifteen numbered criteria, each checking one headline property of the
library at desk scale (d=1, alpha in {0.5, 1.5}, grids around
n=(96,96), L=R=10) with pinned tolerances.  ``run_all`` executes them
in order and returns one result per criterion; the CLI ``selftest``
subcommand and the test suite both consume it.  ``quick=True`` only
reduces randomized trial counts, never tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grids import Field, Grid, gaussian_field, random_smooth_field, reflect_cartesian
from .multipliers import (
    SigmaQuadrature,
    admissibility_defect,
    apply_multiplier,
    calderon_first,
    calderon_plancherel,
    calderon_second,
    phi_window,
    symbol,
)
from .rkhs import (
    RegParams,
    ZetaWeight,
    extremal,
    extremal_kernel,
    extremal_spectrum,
    inner_zeta_eta,
    norm_zeta,
    objective,
    psi_field,
    third_calderon_report,
)
from .special import BesselIndex
from .transform import (
    build_plan,
    forward_transform,
    inverse_transform,
    norm,
    synthesize_at_points,
    weinstein_kernel,
)
from .translation import convolve, translate_spectral, translate_theta

__all__ = ["CriterionResult", "run_all", "CRITERIA"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str


class _Workspace:
    """Lazily built shared plans; criteria state which one they use."""

    def __init__(self, seed: int = 0):
        self.rng = np.random.default_rng(seed)
        self._plans = {}

    def plan(self, alpha=0.5, n=96, extent=10.0):
        key = (alpha, n, extent)
        if key not in self._plans:
            grid = Grid(1, BesselIndex(alpha), (n,), (extent,), n, extent)
            self._plans[key] = build_plan(grid)
        return self._plans[key]


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _c01_plancherel(ws: _Workspace, quick: bool) -> CriterionResult:
    plan = ws.plan()
    trials = 5 if quick else 20
    worst = 0.0
    for _ in range(trials):
        f = random_smooth_field(plan.space_grid, ws.rng)
        worst = max(worst, abs(norm(plan, forward_transform(plan, f), 2)
                               / norm(plan, f, 2) - 1.0))
    g = gaussian_field(plan.space_grid)
    gdef = abs(norm(plan, forward_transform(plan, g), 2) / norm(plan, g, 2) - 1.0)
    ok = worst <= 1e-4 and gdef <= 1e-6
    return CriterionResult(1, "Plancherel isometry", ok,
                           f"random-field defect {worst:.2e} (tol 1e-4), "
                           f"Gaussian defect {gdef:.2e} (tol 1e-6)")


def _c02_gaussian_fixed_point(ws: _Workspace, quick: bool) -> CriterionResult:
    worst = 0.0
    for alpha in (0.5, 1.5):
        plan = ws.plan(alpha=alpha, n=128)
        F = forward_transform(plan, gaussian_field(plan.space_grid))
        target = gaussian_field(plan.freq_grid.with_side("space")).values
        worst = max(worst, float(np.max(np.abs(F.values - target))))
    ok = worst <= 1e-6
    return CriterionResult(2, "Gaussian fixed point", ok,
                           f"max-node error {worst:.2e} (tol 1e-6, n=128, alpha 0.5/1.5)")


def _c03_round_trip(ws: _Workspace, quick: bool) -> CriterionResult:
    plan = ws.plan()
    trials = 5 if quick else 20
    worst = 0.0
    fields = [gaussian_field(plan.space_grid)]
    fields += [random_smooth_field(plan.space_grid, ws.rng) for _ in range(trials - 1)]
    for f in fields:
        back = inverse_transform(plan, forward_transform(plan, f))
        worst = max(worst, norm(plan, Field(plan.space_grid, back.values - f.values), 2)
                    / norm(plan, f, 2))
    ok = worst <= 1e-6
    return CriterionResult(3, "Transform round trip", ok,
                           f"relative L2 error {worst:.2e} (tol 1e-6)")


def _c04_kernel_properties(ws: _Workspace, quick: bool) -> CriterionResult:
    idx = BesselIndex(0.5)
    npairs = 2000 if quick else 10_000
    lam = np.column_stack([ws.rng.uniform(-8, 8, npairs), ws.rng.uniform(0, 8, npairs)])
    x = np.column_stack([ws.rng.uniform(-8, 8, npairs), ws.rng.uniform(0, 8, npairs)])
    sym = refl = at0 = mod = 0.0
    for k in range(npairs):
        v = weinstein_kernel(idx, lam[k], x[k])
        mod = max(mod, abs(v))
        if k < 200:
            sym = max(sym, abs(v - weinstein_kernel(idx, x[k], lam[k])))
            lref = lam[k].copy()
            lref[0] = -lref[0]
            refl = max(refl, abs(weinstein_kernel(idx, lref, x[k]) - np.conj(v)))
            at0 = max(at0, abs(weinstein_kernel(idx, lam[k], np.zeros(2)) - 1.0))
    ok = sym <= 1e-12 and refl <= 1e-12 and at0 == 0.0 and mod <= 1.0 + 1e-12
    return CriterionResult(4, "Kernel symmetry/reflection/bound", ok,
                           f"symmetry {sym:.1e}, reflection {refl:.1e}, at-zero {at0:.1e}"
                           f" (tol 1e-12); max modulus {mod:.12f} (tol 1+1e-12)")


def _c05_translation_oracles(ws: _Workspace, quick: bool) -> CriterionResult:
    shifts = 2 if quick else 5
    xs = np.column_stack([ws.rng.uniform(-2, 2, shifts), ws.rng.uniform(0.1, 2, shifts)])
    worsts = []
    for n in (96, 144):
        plan = ws.plan(n=n)
        f = gaussian_field(plan.space_grid)
        worst = 0.0
        for x in xs:
            a = translate_theta(plan, f, x)
            b = translate_spectral(plan, f, x)
            worst = max(worst, float(np.linalg.norm(a.values - b.values)
                                     / np.linalg.norm(b.values)))
        worsts.append(worst)
    ok = worsts[0] <= 1e-4 and worsts[1] < worsts[0]
    return CriterionResult(5, "Translation cross-oracle", ok,
                           f"theta-vs-spectral rel l2 {worsts[0]:.2e} (tol 1e-4) at n=96, "
                           f"{worsts[1]:.2e} at n=144 (must decrease)")


def _c06_convolution(ws: _Workspace, quick: bool) -> CriterionResult:
    plan = ws.plan()
    trials = 5 if quick else 20
    thm = nrm = 0.0
    young_ok = trans_ok = True
    for _ in range(trials):
        f = random_smooth_field(plan.space_grid, ws.rng)
        g = random_smooth_field(plan.space_grid, ws.rng)
        h = convolve(plan, f, g)
        Fh = forward_transform(plan, h)
        prod = forward_transform(plan, f).values * forward_transform(plan, g).values
        thm = max(thm, float(np.linalg.norm(Fh.values - prod) / np.linalg.norm(prod)))
        lhs = norm(plan, h, 2)
        rhs = float(math.sqrt(np.sum(np.abs(prod) ** 2 * plan.freq_weights)))
        nrm = max(nrm, _rel(lhs, rhs))
        young_ok &= lhs <= norm(plan, f, 1) * norm(plan, g, 2) * (1 + 1e-6)
        x = np.array([ws.rng.uniform(-2, 2), ws.rng.uniform(0, 2)])
        trans_ok &= norm(plan, translate_spectral(plan, f, x), 2) \
            <= norm(plan, f, 2) * (1 + 1e-6)
    ok = thm <= 1e-6 and nrm <= 1e-6 and young_ok and trans_ok
    return CriterionResult(6, "Convolution theorem and bounds", ok,
                           f"theorem rel {thm:.2e}, norm identity rel {nrm:.2e} (tol 1e-6); "
                           f"Young {'ok' if young_ok else 'VIOLATED'}, "
                           f"translation bound {'ok' if trans_ok else 'VIOLATED'}")


def _c07_multiplier_bounds(ws: _Workspace, quick: bool) -> CriterionResult:
    plan = ws.plan()
    p = 2 * 0.5 + 1 + 2  # 2 alpha + d + 2
    trials = 1 if quick else 3
    slack = 1 + 1e-6
    bounds_ok = True
    for m in (symbol("heat", t=1.0), symbol("gaussian_admissible")):
        m2 = float(math.sqrt(np.sum(np.abs(m.on_grid(plan.freq_grid)) ** 2
                                    * plan.freq_weights)))
        for sigma in (0.5, 1.0, 2.0):
            for _ in range(trials):
                phi = random_smooth_field(plan.space_grid, ws.rng)
                t = apply_multiplier(plan, m, sigma, phi)
                l2, l1 = norm(plan, phi, 2), norm(plan, phi, 1)
                tl2, tsup = norm(plan, t, 2), float(np.max(np.abs(t.values)))
                bounds_ok &= tl2 <= sigma ** (-p / 2) * m2 * l1 * slack
                bounds_ok &= tl2 <= m.sup * l2 * slack
                bounds_ok &= tsup <= sigma ** (-p / 2) * m2 * l2 * slack
    # scaling law on a larger box so the dilated inverse symbol fits
    plan_l = ws.plan(n=192, extent=20.0)
    m = symbol("heat", t=1.0)
    pts = np.column_stack([ws.rng.uniform(-8, 8, 150), ws.rng.uniform(0.05, 8, 150)])
    scal = 0.0
    for sigma in (0.5, 2.0):
        Fm_s = Field(plan_l.freq_grid, m.on_grid(plan_l.freq_grid, sigma))
        Fm_1 = Field(plan_l.freq_grid, m.on_grid(plan_l.freq_grid, 1.0))
        lhs = synthesize_at_points(plan_l, Fm_s, pts)
        rhs = sigma ** (-p) * synthesize_at_points(plan_l, Fm_1, pts / sigma)
        scal = max(scal, float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs))))
    ok = bounds_ok and scal <= 1e-5
    return CriterionResult(7, "Multiplier bounds and scaling law", ok,
                           f"three operator bounds {'ok' if bounds_ok else 'VIOLATED'} "
                           f"(slack 1+1e-6); scaling-law rel error {scal:.2e} (tol 1e-5)")


def _c08_window_closed_form(ws: _Workspace, quick: bool) -> CriterionResult:
    m = symbol("gaussian_admissible")
    rule = SigmaQuadrature(1e-3, 1e2, 512)
    radii = ws.rng.uniform(0.2, 2.8, 50)
    angles = ws.rng.uniform(0, math.pi, 50)
    worst = 0.0
    for u, a in zip(radii, angles):
        xi = np.array([u * math.cos(a), u * math.sin(a)])
        exact = math.exp(-(rule.gamma * u) ** 2) - math.exp(-(rule.delta * u) ** 2)
        worst = max(worst, abs(phi_window(m, rule, xi) - exact))
    ok = worst <= 1e-8
    return CriterionResult(8, "Window closed form", ok,
                           f"max |Phi - closed form| {worst:.2e} (tol 1e-8, K=512)")


def _c09_calderon_plancherel(ws: _Workspace, quick: bool) -> CriterionResult:
    plan = ws.plan()
    phi = gaussian_field(plan.space_grid)
    m = symbol("gaussian_admissible")
    lhs, rhs = calderon_plancherel(plan, m, phi, SigmaQuadrature(1e-3, 1e3, 256))
    defect = abs(rhs / lhs - 1.0)
    lhs2, rhs2 = calderon_plancherel(plan, m, phi, SigmaQuadrature(1e-4, 1e4, 256))
    defect2 = abs(rhs2 / lhs2 - 1.0)
    ok = defect <= 1e-3 and defect2 < defect
    return CriterionResult(9, "Calderon Plancherel identity", ok,
                           f"defect {defect:.2e} (tol 1e-3) at (1e-3,1e3,256); "
                           f"{defect2:.2e} after widening (must improve)")


def _c10_calderon_reconstruction(ws: _Workspace, quick: bool) -> CriterionResult:
    plan = ws.plan()
    phi = gaussian_field(plan.space_grid)
    m = symbol("gaussian_admissible")
    gamma, delta, K = 1e-2, 1e2, 256
    rule = SigmaQuadrature(gamma, delta, K)
    rec1 = calderon_first(plan, m, phi, rule)
    rec2 = calderon_second(plan, m, phi, gamma, delta, points=K)
    recon = norm(plan, Field(plan.space_grid, rec2.values - phi.values), 2) \
        / norm(plan, phi, 2)
    agree = float(np.max(np.abs(rec1.values - rec2.values)))
    F = forward_transform(plan, phi)
    from .multipliers import phi_window_on_grid

    window = phi_window_on_grid(m, rule, plan.freq_grid)
    ident_rhs = float(np.sum(np.abs(F.values) ** 2 * (1.0 - window) ** 2
                             * plan.freq_weights))
    ident_lhs = norm(plan, Field(plan.space_grid, rec2.values - phi.values), 2) ** 2
    ident = abs(ident_lhs - ident_rhs)
    ok = recon <= 2e-3 and agree <= 1e-6 and ident <= 1e-8
    return CriterionResult(10, "First/second Calderon formulas", ok,
                           f"reconstruction rel {recon:.2e} (tol 2e-3), first-vs-second "
                           f"{agree:.2e} (tol 1e-6), error identity {ident:.2e} (tol 1e-8)")


def _c11_reproducing_property(ws: _Workspace, quick: bool) -> CriterionResult:
    plan = ws.plan()
    zeta = ZetaWeight(3.0)
    reg = RegParams(eta=0.1, sigma=1.0)
    m = symbol("heat", t=1.0)
    phi = gaussian_field(plan.space_grid)
    nodes = plan.space_grid.nodes()
    interior = nodes[np.sum(nodes * nodes, axis=1) < 4.0]
    ys = interior[ws.rng.choice(len(interior), size=10, replace=False)]
    worst = 0.0
    for y in ys:
        sec = psi_field(plan, zeta, reg, m, y)
        val = inner_zeta_eta(plan, zeta, reg, m, phi, sec)
        exact = math.exp(-float(np.sum(y * y)) / 2.0)
        worst = max(worst, abs(val - exact))
    ok = worst <= 1e-4
    return CriterionResult(11, "RKHS reproducing property", ok,
                           f"max |<phi, Psi(.,y)> - phi(y)| {worst:.2e} (tol 1e-4)")


def _c12_extremal(ws: _Workspace, quick: bool) -> CriterionResult:
    plan = ws.plan()
    zeta = ZetaWeight(3.0)
    syms = [symbol("heat", t=1.0), symbol("heat", t=0.3),
            symbol("gaussian_admissible"), symbol("low_pass", omega=3.0)]
    # energy bound over randomized (h, eta, m)
    trials = 8 if quick else 30
    ratio = 0.0
    for _ in range(trials):
        h = random_smooth_field(plan.space_grid, ws.rng)
        reg = RegParams(eta=float(10 ** ws.rng.uniform(-4, 1)),
                        sigma=float(10 ** ws.rng.uniform(-0.3, 0.3)))
        m = syms[ws.rng.integers(len(syms))]
        lhs = norm_zeta(plan, zeta, extremal_spectrum(plan, zeta, reg, m, h)) ** 2
        rhs = norm(plan, h, 2) ** 2 / (4.0 * reg.eta)
        ratio = max(ratio, lhs / rhs)
    energy_ok = ratio <= 1.0 + 1e-8
    # stationarity of the discrete objective at the extremal spectrum
    m = symbol("heat", t=1.0)
    reg = RegParams(eta=0.05, sigma=1.0)
    h = random_smooth_field(plan.space_grid, ws.rng)
    spec = extremal_spectrum(plan, zeta, reg, m, h)
    ndirs = 20 if quick else 100
    deriv = 0.0
    eps = 1e-3
    for _ in range(ndirs):
        v = Field(plan.space_grid, ws.rng.standard_normal(plan.space_grid.size)
                  + 1j * ws.rng.standard_normal(plan.space_grid.size))
        Fv = forward_transform(plan, v)
        jp = objective(plan, zeta, reg, m, h,
                       Field(plan.freq_grid, spec.values + eps * Fv.values))
        jm = objective(plan, zeta, reg, m, h,
                       Field(plan.freq_grid, spec.values - eps * Fv.values))
        deriv = max(deriv, abs(jp - jm) / (2 * eps) / norm(plan, v, 2))
    stat_ok = deriv <= 1e-6
    # spectral vs kernel realization on a coarse grid (kernel form is O(N^2))
    plan_c = ws.plan(n=28, extent=6.0)
    h_c = random_smooth_field(plan_c.space_grid, ws.rng)
    reg_c = RegParams(eta=0.1, sigma=1.0)
    a = extremal(plan_c, zeta, reg_c, m, h_c)
    b = extremal_kernel(plan_c, zeta, reg_c, m, h_c)
    cross = float(np.linalg.norm(a.values - b.values) / np.linalg.norm(a.values))
    cross_ok = cross <= 1e-4
    ok = energy_ok and stat_ok and cross_ok
    return CriterionResult(12, "Extremal function", ok,
                           f"energy-bound worst ratio {ratio:.6f} (<=1+1e-8); "
                           f"stationarity {deriv:.2e} (tol 1e-6 per unit direction); "
                           f"spectral-vs-kernel rel {cross:.2e} (tol 1e-4)")


def _c13_third_calderon(ws: _Workspace, quick: bool) -> CriterionResult:
    # Wide Gaussian on a matching wide box: the data multiplier heat(1)
    # is tiny where a narrow Gaussian keeps its zeta-weighted spectral
    # mass, so convergence at eta=1e-4 needs spectral mass at |xi| <~ 1.
    plan = ws.plan(n=240, extent=25.0)
    zeta = ZetaWeight(3.0)
    m = symbol("heat", t=1.0)
    phi = gaussian_field(plan.space_grid, scale=3.0)
    rep = third_calderon_report(plan, zeta, m, 1.0, phi,
                                [1e-1, 1e-2, 1e-3, 1e-4])
    nphi = norm_zeta(plan, zeta, phi)
    zdec = bool(np.all(np.diff(rep["zeta_error"]) < 0))
    sdec = bool(np.all(np.diff(rep["sup_error"]) < 0))
    final_ok = rep["zeta_error"][-1] <= 1e-2 * nphi
    pred = float(np.max(np.abs(rep["zeta_error"] - rep["predicted_zeta_error"])))
    ok = zdec and sdec and final_ok and pred <= 1e-8
    return CriterionResult(13, "Third Calderon convergence", ok,
                           f"zeta errors {np.array2string(rep['zeta_error'], precision=3)} "
                           f"(strictly decreasing: {zdec}, sup decreasing: {sdec}), "
                           f"final/norm {rep['zeta_error'][-1] / nphi:.2e} (tol 1e-2), "
                           f"prediction match {pred:.2e} (tol 1e-8)")


def _c14_norm_equivalence(ws: _Workspace, quick: bool) -> CriterionResult:
    plan = ws.plan()
    zeta = ZetaWeight(3.0)
    m = symbol("heat", t=1.0)
    trials = 5 if quick else 20
    chain_ok = True
    split = 0.0
    for _ in range(trials):
        phi = random_smooth_field(plan.space_grid, ws.rng)
        eta = float(10 ** ws.rng.uniform(-3, 1))
        reg = RegParams(eta=eta, sigma=1.0)
        nz = norm_zeta(plan, zeta, phi)
        nze = math.sqrt(abs(inner_zeta_eta(plan, zeta, reg, m, phi, phi)))
        chain_ok &= math.sqrt(eta) * nz <= nze * (1 + 1e-10)
        chain_ok &= nze <= math.sqrt(eta + m.sup ** 2) * nz * (1 + 1e-10)
        t2 = norm(plan, apply_multiplier(plan, m, 1.0, phi), 2)
        split = max(split, _rel(nze ** 2, eta * nz ** 2 + t2 ** 2))
    ok = chain_ok and split <= 1e-10
    return CriterionResult(14, "Norm equivalence and energy split", ok,
                           f"chain {'ok' if chain_ok else 'VIOLATED'} (slack 1e-10); "
                           f"energy-split rel defect {split:.2e} (tol 1e-10)")


def _c15_admissibility(ws: _Workspace, quick: bool) -> CriterionResult:
    pts = np.column_stack([ws.rng.uniform(-2, 2, 10), ws.rng.uniform(0.3, 3, 10)])
    d1 = admissibility_defect(symbol("gaussian_admissible"), pts)
    d2 = admissibility_defect(symbol("annulus", c=1.0), pts)
    d3 = admissibility_defect(symbol("constant", c=1.0), pts)
    ok = d1 <= 1e-6 and d2 <= 1e-6 and d3 > 1e-2
    return CriterionResult(15, "Admissibility certification", ok,
                           f"gaussian defect {d1:.2e}, annulus defect {d2:.2e} (tol 1e-6); "
                           f"constant defect {d3:.2e} (flagged non-admissible)")


CRITERIA = [
    _c01_plancherel,
    _c02_gaussian_fixed_point,
    _c03_round_trip,
    _c04_kernel_properties,
    _c05_translation_oracles,
    _c06_convolution,
    _c07_multiplier_bounds,
    _c08_window_closed_form,
    _c09_calderon_plancherel,
    _c10_calderon_reconstruction,
    _c11_reproducing_property,
    _c12_extremal,
    _c13_third_calderon,
    _c14_norm_equivalence,
    _c15_admissibility,
]


def run_all(quick: bool = False, seed: int = 0) -> list[CriterionResult]:
    """Run all acceptance criteria in order; deterministic for a fixed seed."""
    ws = _Workspace(seed=seed)
    return [fn(ws, quick) for fn in CRITERIA]
