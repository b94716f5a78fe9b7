import math

import numpy as np
import pytest

from weinstein.grids import Field, Grid, gaussian_field, random_smooth_field, reflect_cartesian
from weinstein.special import BesselIndex, bessel_j_normalized
from weinstein.transform import (
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


def test_normalization_constant_value():
    # d=1, alpha=1/2: (2 pi)^{1/2} 2^{1/2} Gamma(3/2) = pi
    assert abs(normalization_constant(0.5, 1) - math.pi) <= 1e-14


def test_gaussian_fixed_point(plan96):
    F = forward_transform(plan96, gaussian_field(plan96.space_grid))
    target = gaussian_field(plan96.freq_grid.with_side("space")).values
    assert np.max(np.abs(F.values - target)) <= 1e-12


def test_gaussian_fixed_point_other_alpha():
    plan = build_plan(Grid(1, BesselIndex(1.5), (64,), (9.0,), 64, 9.0))
    F = forward_transform(plan, gaussian_field(plan.space_grid))
    target = gaussian_field(plan.freq_grid.with_side("space")).values
    assert np.max(np.abs(F.values - target)) <= 1e-12


def test_plancherel_random_fields(plan96, rng):
    for _ in range(5):
        f = random_smooth_field(plan96.space_grid, rng)
        F = forward_transform(plan96, f)
        assert abs(norm(plan96, F, 2) / norm(plan96, f, 2) - 1.0) <= 1e-12


def test_round_trip(plan96, rng):
    f = random_smooth_field(plan96.space_grid, rng)
    back = inverse_transform(plan96, forward_transform(plan96, f))
    err = np.linalg.norm(back.values - f.values) / np.linalg.norm(f.values)
    assert err <= 1e-12


def test_parseval(plan96, rng):
    f = random_smooth_field(plan96.space_grid, rng)
    g = random_smooth_field(plan96.space_grid, rng)
    lhs = inner_product(plan96, f, g)
    rhs = inner_product(plan96, forward_transform(plan96, f), forward_transform(plan96, g))
    assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


def test_dense_quadrature_oracle():
    # independent evaluation of the defining integral on a fine grid
    grid = Grid(1, BesselIndex(0.5), (48,), (8.0,), 48, 8.0)
    plan = build_plan(grid)
    f = gaussian_field(grid)
    F = forward_transform(plan, f)
    idx = grid.index
    fine = Grid(1, idx, (400,), (8.0,), 400, 8.0)
    pts = fine.nodes()
    vals = np.exp(-np.sum(pts * pts, axis=1) / 2.0)
    cell = np.prod(fine.steps())
    w = pts[:, 1] ** 2 * cell / normalization_constant(0.5, 1)
    for k in [0, 777, 1500, 2303]:
        lam = plan.freq_grid.nodes()[k]
        kern = np.exp(-1j * lam[0] * pts[:, 0]) * np.array(
            [bessel_j_normalized(idx, float(abs(lam[1] * r))) for r in pts[:, 1]])
        oracle = np.sum(vals * kern * w)
        assert abs(F.values[k] - oracle) <= 1e-6


def test_box_measure_refinement():
    # mu measure of [-1,1] x (0,1] is 2/(3 pi) for alpha=1/2, d=1
    exact = 2.0 / (3.0 * math.pi)
    errs = []
    for n in (64, 128):
        grid = Grid(1, BesselIndex(0.5), (n,), (2.0,), n, 2.0)
        plan = build_plan(grid)
        pts = grid.nodes()
        ind = ((np.abs(pts[:, 0]) <= 1.0) & (pts[:, 1] <= 1.0)).astype(float)
        errs.append(abs(norm(plan, Field(grid, ind), 1) - exact))
    assert errs[1] < errs[0]
    assert errs[1] <= 5e-5


def test_reflection_commutes(plan96, rng):
    f = random_smooth_field(plan96.space_grid, rng)
    lhs = forward_transform(plan96, reflect_cartesian(f))
    rhs = reflect_cartesian(forward_transform(plan96, f))
    assert np.max(np.abs(lhs.values - rhs.values)) <= 1e-12


def test_inverse_is_reflected_forward_on_self_dual_grid():
    # with L = R = sqrt(pi n / 2) the frequency grid coincides with the
    # space grid, and the inverse equals the forward composed with
    # Cartesian reflection
    n = 64
    L = math.sqrt(math.pi * n / 2.0)
    grid = Grid(1, BesselIndex(0.5), (n,), (L,), n, L)
    plan = build_plan(grid)
    assert np.allclose(plan.freq_grid.cart_axis(0), grid.cart_axis(0))
    G = random_smooth_field(plan.freq_grid, np.random.default_rng(3))
    lhs = inverse_transform(plan, G)
    rhs = reflect_cartesian(forward_transform(plan, Field(grid, G.values)))
    assert np.max(np.abs(lhs.values - rhs.values)) <= 1e-10


def test_norms_and_errors(plan96, rng):
    f = random_smooth_field(plan96.space_grid, rng)
    assert norm(plan96, f, math.inf) == np.max(np.abs(f.values))
    assert norm(plan96, f, 1) > 0
    with pytest.raises(ValueError):
        norm(plan96, f, 3)
    g = Field(plan96.freq_grid, f.values)
    with pytest.raises(ValueError):
        inner_product(plan96, f, g)
    with pytest.raises(ValueError):
        forward_transform(plan96, g)
    with pytest.raises(ValueError):
        inverse_transform(plan96, f)


def test_build_plan_contracts():
    grid = Grid(1, BesselIndex(0.5), (16,), (4.0,), 16, 4.0)
    with pytest.raises(ValueError):
        build_plan(grid.with_side("frequency"))
    with pytest.raises(ValueError):
        build_plan(grid, freq_extents=(1.0,))
    plan = build_plan(grid, freq_extents=(5.0, 5.0))
    assert plan.freq_grid.cart_extents == (5.0,)
    with pytest.raises(ValueError):
        plan.weights_for(grid.refined())


def test_kernel_point_evaluation():
    idx = BesselIndex(0.5)
    lam = np.array([0.7, 1.1])
    x = np.array([-0.4, 2.0])
    v = weinstein_kernel(idx, lam, x)
    expect = np.exp(-1j * x[0] * lam[0]) * math.sin(x[1] * lam[1]) / (x[1] * lam[1])
    assert abs(v - expect) <= 1e-14
    with pytest.raises(ValueError):
        weinstein_kernel(idx, np.array([0.7, -1.0]), x)
    with pytest.raises(ValueError):
        weinstein_kernel(idx, np.array([0.7]), x)


def test_kernel_on_grid_matches_pointwise(plan_small):
    point = np.array([0.8, 1.4])
    sec = kernel_on_grid(plan_small.freq_grid, point)
    nodes = plan_small.freq_grid.nodes()
    idx = plan_small.space_grid.index
    for k in (0, 100, 311, 575):
        assert abs(sec[k] - weinstein_kernel(idx, nodes[k], point)) <= 1e-13
    with pytest.raises(ValueError):
        kernel_on_grid(plan_small.freq_grid, np.array([0.8, -1.0]))


def test_synthesize_matches_inverse(plan_small, rng):
    G = random_smooth_field(plan_small.freq_grid, rng)
    back = inverse_transform(plan_small, G)
    pts = plan_small.space_grid.nodes()[::37]
    vals = synthesize_at_points(plan_small, G, pts)
    assert np.max(np.abs(vals - back.values[::37])) <= 1e-12
