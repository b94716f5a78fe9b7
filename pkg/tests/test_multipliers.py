import math

import numpy as np
import pytest

from weinstein.grids import Field, gaussian_field, random_smooth_field
from weinstein.multipliers import (
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
from weinstein.transform import forward_transform, norm


def test_symbol_presets():
    m = symbol("gaussian_admissible")
    u = np.array([1.0])
    assert abs(m.eval_radial(u)[0] - math.sqrt(2.0) * math.exp(-0.5)) <= 1e-15
    assert abs(m.sup - math.sqrt(2.0) * math.exp(-0.5)) <= 1e-15
    ann = symbol("annulus", c=4.0)
    assert ann.eval_radial(np.array([0.5, 1.5, 3.0])).tolist() == [0.0, 2.0, 0.0]
    assert ann.breaks == (1.0, math.e)
    lp = symbol("low_pass", omega=2.0)
    assert lp.eval_radial(np.array([1.9, 2.1])).tolist() == [1.0, 0.0]
    heat = symbol("heat", t=2.0)
    assert abs(heat.eval_radial(np.array([1.0]))[0] - math.exp(-2.0)) <= 1e-15
    const = symbol("constant", c=-3.0)
    assert const.sup == 3.0
    with pytest.raises(ValueError):
        symbol("bogus")
    with pytest.raises(ValueError):
        symbol("heat", t=0.0)
    with pytest.raises(ValueError):
        symbol("low_pass", omega=-1.0)


def test_sigma_quadrature_contract():
    rule = SigmaQuadrature(1e-2, 1e2, 64)
    s, w = rule.nodes_weights()
    assert s.size == 64 and np.all(np.diff(np.log(s)) > 0)
    assert abs(np.sum(w) - math.log(1e4)) <= 1e-12
    empty = SigmaQuadrature(1.0, 1.0, 8)
    s, w = empty.nodes_weights()
    assert s.size == 0
    with pytest.raises(ValueError):
        SigmaQuadrature(2.0, 1.0, 8)
    with pytest.raises(ValueError):
        SigmaQuadrature(1.0, 2.0, 0)


def test_constant_symbol_is_identity(plan96, rng):
    f = random_smooth_field(plan96.space_grid, rng)
    out = apply_multiplier(plan96, symbol("constant", c=1.0), 1.0, f)
    assert np.max(np.abs(out.values - f.values)) <= 1e-6
    with pytest.raises(ValueError):
        apply_multiplier(plan96, symbol("constant", c=1.0), 0.0, f)


def test_heat_semigroup(plan96):
    f = gaussian_field(plan96.space_grid)
    one = apply_multiplier(plan96, symbol("heat", t=0.7), 1.0, f)
    two = apply_multiplier(plan96, symbol("heat", t=0.3), 1.0,
                           apply_multiplier(plan96, symbol("heat", t=0.4), 1.0, f))
    assert np.max(np.abs(one.values - two.values)) <= 1e-8


def test_operator_norm_bound(plan96, rng):
    m = symbol("heat", t=1.0)
    for sigma in (0.5, 1.0, 2.0):
        f = random_smooth_field(plan96.space_grid, rng)
        assert norm(plan96, apply_multiplier(plan96, m, sigma, f), 2) \
            <= m.sup * norm(plan96, f, 2) * (1 + 1e-10)


def test_window_closed_form():
    m = symbol("gaussian_admissible")
    rule = SigmaQuadrature(1e-3, 1e2, 512)
    for u in (0.3, 1.0, 2.5):
        xi = np.array([u / math.sqrt(2.0), u / math.sqrt(2.0)])
        exact = math.exp(-(rule.gamma * u) ** 2) - math.exp(-(rule.delta * u) ** 2)
        assert abs(phi_window(m, rule, xi) - exact) <= 1e-8
    with pytest.raises(ValueError):
        phi_window(m, rule, np.zeros(2))


def test_window_on_grid_matches_scalar(plan_small):
    m = symbol("gaussian_admissible")
    rule = SigmaQuadrature(1e-2, 1e2, 64)
    grid_vals = phi_window_on_grid(m, rule, plan_small.freq_grid)
    nodes = plan_small.freq_grid.nodes()
    for k in (0, 57, 311):
        assert abs(grid_vals[k] - phi_window(m, rule, nodes[k])) <= 1e-13


def test_admissibility_defects(rng):
    pts = np.column_stack([rng.uniform(-2, 2, 6), rng.uniform(0.3, 3, 6)])
    assert admissibility_defect(symbol("gaussian_admissible"), pts) <= 1e-6
    assert admissibility_defect(symbol("annulus", c=1.0), pts) <= 1e-6
    assert admissibility_defect(symbol("constant", c=1.0), pts) > 1e-2
    with pytest.raises(ValueError):
        admissibility_defect(symbol("annulus", c=1.0), np.zeros((1, 2)))


def test_calderon_plancherel_widening(plan96):
    phi = gaussian_field(plan96.space_grid)
    m = symbol("gaussian_admissible")
    lhs, rhs = calderon_plancherel(plan96, m, phi, SigmaQuadrature(1e-3, 1e3, 128))
    narrow = abs(rhs / lhs - 1.0)
    lhs, rhs = calderon_plancherel(plan96, m, phi, SigmaQuadrature(1e-4, 1e4, 128))
    wide = abs(rhs / lhs - 1.0)
    assert narrow <= 1e-3 and wide < narrow


def test_first_second_agreement(plan96):
    phi = gaussian_field(plan96.space_grid)
    m = symbol("gaussian_admissible")
    rule = SigmaQuadrature(1e-2, 1e2, 128)
    a = calderon_first(plan96, m, phi, rule)
    b = calderon_second(plan96, m, phi, 1e-2, 1e2, points=128)
    assert np.max(np.abs(a.values - b.values)) <= 1e-6
    rel = norm(plan96, Field(plan96.space_grid, b.values - phi.values), 2) \
        / norm(plan96, phi, 2)
    assert rel <= 2e-3
    with pytest.raises(ValueError):
        calderon_second(plan96, m, phi, 1.0, 1.0)
    with pytest.raises(ValueError):
        calderon_first(plan96, m, phi, rule, method="bogus")


def test_first_direct_vs_spectral():
    # the O(N^2) direct path re-transforms truncated space fields, so it
    # carries box-truncation error; check agreement at a coarse-grid
    # tolerance and that it shrinks as the box grows
    from weinstein.grids import Grid
    from weinstein.special import BesselIndex
    from weinstein.transform import build_plan

    m = symbol("gaussian_admissible")
    rule = SigmaQuadrature(0.8, 1.25, 4)
    errs = []
    for n, L in ((24, 5.0), (32, 7.0)):
        plan = build_plan(Grid(1, BesselIndex(0.5), (n,), (L,), n, L))
        phi = gaussian_field(plan.space_grid)
        a = calderon_first(plan, m, phi, rule, method="spectral")
        b = calderon_first(plan, m, phi, rule, method="direct")
        errs.append(np.max(np.abs(a.values - b.values)))
    assert errs[1] <= 1e-4
    assert errs[1] < errs[0]


def test_reconstruction_error_identity(plan96):
    phi = gaussian_field(plan96.space_grid)
    m = symbol("gaussian_admissible")
    gamma, delta, K = 1e-2, 1e2, 128
    rec = calderon_second(plan96, m, phi, gamma, delta, points=K)
    lhs = norm(plan96, Field(plan96.space_grid, rec.values - phi.values), 2) ** 2
    window = phi_window_on_grid(m, SigmaQuadrature(gamma, delta, K), plan96.freq_grid)
    F = forward_transform(plan96, phi)
    rhs = float(np.sum(np.abs(F.values) ** 2 * (1.0 - window) ** 2 * plan96.freq_weights))
    assert abs(lhs - rhs) <= 1e-8


def test_inverse_symbol_field_definition(plan96):
    m = symbol("heat", t=1.0)
    out = inverse_symbol_field(plan96, m, 1.0)
    F = forward_transform(plan96, out)
    target = m.on_grid(plan96.freq_grid, 1.0)
    assert np.max(np.abs(F.values - target)) <= 1e-6
    with pytest.raises(ValueError):
        inverse_symbol_field(plan96, m, -1.0)
