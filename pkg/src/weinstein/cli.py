"""Batch command-line surface.

Every subcommand reads/writes plain-text field files (see
:mod:`weinstein.fieldio`) and an optional YAML run configuration; the
library does all the numerics.  Exit codes: 0 success, 1 numerical or
data error, 2 usage error.  Outputs are deterministic: fixed summation
orders, and randomness only through an explicit ``--seed``.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fieldio
from .acceptance import run_all
from .grids import Field
from .multipliers import (
    SigmaQuadrature,
    apply_multiplier,
    calderon_first,
    calderon_second,
    symbol,
)
from .rkhs import RegParams, ZetaWeight, extremal, psi_field, theta_field
from .transform import build_plan, forward_transform, inverse_transform, norm
from .translation import convolve, translate_spectral, translate_theta

__all__ = ["main", "run_command"]


def _parse_point(text: str, dim: int) -> np.ndarray:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != dim:
        raise ValueError(f"point must have {dim} comma-separated coordinates, got {len(parts)}")
    return np.asarray(parts)


def _parse_params(pairs) -> dict:
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ValueError(f"--param expects key=value, got {pair!r}")
        k, v = pair.split("=", 1)
        out[k] = float(v)
    return out


def _make_symbol(args, cfg):
    if args.symbol is not None:
        return symbol(args.symbol, **_parse_params(getattr(args, "param", None)))
    return cfg.symbol()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weinstein",
        description="Weighted half-space transform, convolution, multipliers, "
                    "Calderon formulas and the regularized inverse.")
    parser.add_argument("--config", help="YAML run configuration file")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads for the accelerated kernels "
                             "(results are identical for any value)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized trial (selftest)")
    sub = parser.add_subparsers(dest="command", required=True)

    def io(p, output=True):
        p.add_argument("--input", "-i", required=True, help="input field file")
        if output:
            p.add_argument("--output", "-o", required=True, help="output field file")

    p = sub.add_parser("transform", help="forward (or inverse) transform of a field")
    p.add_argument("--inverse", action="store_true",
                   help="input is a frequency-side field; apply the inverse")
    io(p)

    p = sub.add_parser("translate", help="generalized translation by a point")
    p.add_argument("--x", required=True, help="shift, comma-separated coordinates")
    p.add_argument("--method", choices=["spectral", "theta"], default="spectral")
    io(p)

    p = sub.add_parser("convolve", help="generalized convolution of two fields")
    p.add_argument("--with", dest="second", required=True, help="second input field file")
    p.add_argument("--method", choices=["direct", "spectral"], default="spectral")
    io(p)

    p = sub.add_parser("multiply", help="apply the multiplier operator T_{w,m,sigma}")
    p.add_argument("--symbol", help="symbol name (default from config)")
    p.add_argument("--param", action="append", help="symbol parameter key=value")
    p.add_argument("--sigma", type=float, default=None)
    io(p)

    p = sub.add_parser("calderon", help="windowed Calderon reconstruction")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--first", action="store_true", help="scale-quadrature formula")
    g.add_argument("--second", action="store_true", help="window-multiplier formula (default)")
    p.add_argument("--symbol", help="symbol name (default from config)")
    p.add_argument("--param", action="append", help="symbol parameter key=value")
    p.add_argument("--points", type=int, default=None, help="sigma quadrature points")
    io(p)

    p = sub.add_parser("plancherel-check", help="report the transform isometry defect")
    io(p, output=False)

    p = sub.add_parser("extremal", help="Tikhonov-regularized inverse of T applied to h")
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--zeta-s", type=float, default=None)
    p.add_argument("--symbol", help="symbol name (default from config)")
    p.add_argument("--param", action="append", help="symbol parameter key=value")
    p.add_argument("--sigma", type=float, default=None)
    io(p)

    p = sub.add_parser("kernel", help="reproducing kernel section as a field")
    p.add_argument("--type", choices=["psi", "theta"], required=True)
    p.add_argument("--y", required=True, help="section point, comma-separated")
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--zeta-s", type=float, default=None)
    p.add_argument("--symbol", help="symbol name (default from config)")
    p.add_argument("--param", action="append", help="symbol parameter key=value")
    p.add_argument("--sigma", type=float, default=None)
    io(p)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--quick", action="store_true",
                   help="reduce randomized trial counts (tolerances unchanged)")
    return parser


def run_command(argv) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise ValueError("--threads must be >= 1")
        try:  # pragma: no cover - depends on numba availability
            import numba

            numba.set_num_threads(args.threads)
        except (ImportError, ValueError):
            pass

    if args.config:
        cfg = fieldio.load_config(args.config)
    else:
        # defaults only; grid always comes from the input field
        cfg = fieldio.RunConfig(
            symbol_name="gaussian_admissible", symbol_params={}, sigma=1.0, eta=0.1,
            gamma=1e-3, delta=1e3, sigma_points=256, zeta_family="power", zeta_s=3.0,
            grid_spec={"d": 1, "alpha": 0.5, "n": [96, 96], "L": [10.0], "R": 10.0})

    if args.command == "selftest":
        results = run_all(quick=args.quick, seed=args.seed)
        failed = [r for r in results if not r.passed]
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.number:2d}  {r.title}: {r.detail}")
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
        return 1 if failed else 0

    f = fieldio.read_field(args.input)
    dim = f.grid.d + 1

    if args.command == "transform":
        if args.inverse:
            if f.grid.side != "frequency":
                raise ValueError("--inverse expects a frequency-side field")
            plan = _plan_for_frequency_field(f)
            out = inverse_transform(plan, Field(plan.freq_grid, f.values))
        else:
            if f.grid.side != "space":
                raise ValueError("transform expects a space-side field (use --inverse)")
            plan = build_plan(f.grid)
            out = forward_transform(plan, f)
        fieldio.write_field(args.output, out)
        return 0

    if f.grid.side != "space":
        raise ValueError(f"{args.command} expects a space-side field")
    plan = build_plan(f.grid)

    if args.command == "translate":
        x = _parse_point(args.x, dim)
        op = translate_spectral if args.method == "spectral" else translate_theta
        fieldio.write_field(args.output, op(plan, f, x))
        return 0

    if args.command == "convolve":
        g = fieldio.read_field(args.second)
        fieldio.write_field(args.output, convolve(plan, f, g, method=args.method))
        return 0

    if args.command == "multiply":
        m = _make_symbol(args, cfg)
        sigma = args.sigma if args.sigma is not None else cfg.sigma
        fieldio.write_field(args.output, apply_multiplier(plan, m, sigma, f))
        return 0

    if args.command == "calderon":
        m = _make_symbol(args, cfg)
        gamma = args.gamma if args.gamma is not None else cfg.gamma
        delta = args.delta if args.delta is not None else cfg.delta
        points = args.points if args.points is not None else cfg.sigma_points
        if args.first:
            out = calderon_first(plan, m, f, SigmaQuadrature(gamma, delta, points))
        else:
            out = calderon_second(plan, m, f, gamma, delta, points=points)
        err = norm(plan, Field(plan.space_grid, out.values - f.values), 2) \
            / norm(plan, f, 2)
        print(f"relative reconstruction error: {err:.6e}")
        fieldio.write_field(args.output, out)
        return 0

    if args.command == "plancherel-check":
        defect = abs(norm(plan, forward_transform(plan, f), 2) / norm(plan, f, 2) - 1.0)
        print(f"plancherel defect: {defect:.6e}")
        return 0

    if args.command == "extremal":
        m = _make_symbol(args, cfg)
        reg = RegParams(eta=args.eta if args.eta is not None else cfg.eta,
                        sigma=args.sigma if args.sigma is not None else cfg.sigma)
        zeta = ZetaWeight(args.zeta_s if args.zeta_s is not None else cfg.zeta_s)
        fieldio.write_field(args.output, extremal(plan, zeta, reg, m, f))
        return 0

    if args.command == "kernel":
        m = _make_symbol(args, cfg)
        reg = RegParams(eta=args.eta if args.eta is not None else cfg.eta,
                        sigma=args.sigma if args.sigma is not None else cfg.sigma)
        zeta = ZetaWeight(args.zeta_s if args.zeta_s is not None else cfg.zeta_s)
        y = _parse_point(args.y, dim)
        op = psi_field if args.type == "psi" else theta_field
        fieldio.write_field(args.output, op(plan, zeta, reg, m, y))
        return 0

    raise ValueError(f"unknown command {args.command!r}")  # pragma: no cover


def _plan_for_frequency_field(f: Field):
    """Plan whose frequency grid matches a stored frequency-side field.

    The Nyquist pairing Lambda = pi n / (2 L) is an involution, so the
    space extents are recovered the same way.
    """
    import math

    g = f.grid
    space_cart = tuple(math.pi * n / (2.0 * L) for n, L in zip(g.cart_counts, g.cart_extents))
    space_rad = math.pi * g.radial_count / (2.0 * g.radial_extent)
    from .grids import Grid

    space = Grid(g.d, g.index, g.cart_counts, space_cart, g.radial_count, space_rad)
    return build_plan(space, freq_extents=g.cart_extents + (g.radial_extent,))


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
