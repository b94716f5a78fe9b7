"""Plain-text serialization of fields and run configuration.

Field files are diffable, language-neutral text: one ``#``-prefixed
header line with ``key=value`` tokens describing the grid, then one
``re,im`` row per sample in field (row-major, radial fastest) order,
printed with 17 significant digits so the round trip is binary exact.

The run configuration is a single YAML file; every value is
re-validated on load through the same constructors the library uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np
import yaml

from .grids import Field, Grid
from .multipliers import MultiplierSymbol, symbol
from .rkhs import RegParams, ZetaWeight
from .special import BesselIndex

__all__ = ["ParseError", "RunConfig", "read_field", "write_field", "load_config"]

_FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed field file or configuration; carries the line number."""

    def __init__(self, path, line: int, message: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


def _format_reals(x: float, y: float) -> str:
    return f"{x:.17g},{y:.17g}"


def write_field(path, f: Field) -> None:
    """Serialize ``f`` with a lossless (17 significant digit) round trip."""
    g = f.grid
    header = (
        f"# version={_FORMAT_VERSION} d={g.d} alpha={g.alpha:.17g}"
        f" n={','.join(str(n) for n in g.shape)}"
        f" L={','.join(f'{L:.17g}' for L in g.cart_extents)}"
        f" R={g.radial_extent:.17g} side={g.side}"
    )
    lines = [header]
    lines.extend(_format_reals(v.real, v.imag) for v in f.values)
    Path(path).write_text("\n".join(lines) + "\n")


def _parse_header(path, line: str) -> Grid:
    tokens = line.lstrip("#").split()
    kv = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(path, 1, f"malformed header token {tok!r}")
        k, v = tok.split("=", 1)
        if k in kv:
            raise ParseError(path, 1, f"duplicate header key {k!r}")
        kv[k] = v
    required = ("d", "alpha", "n", "L", "R", "side")
    missing = [k for k in required if k not in kv]
    if missing:
        raise ParseError(path, 1, f"header missing keys {missing}")
    if "version" in kv and kv["version"] != str(_FORMAT_VERSION):
        raise ParseError(path, 1, f"unsupported format version {kv['version']!r}")
    try:
        d = int(kv["d"])
        alpha = float(kv["alpha"])
        counts = tuple(int(s) for s in kv["n"].split(","))
        # A bare L=<value> is accepted for d=1 convenience; generally one
        # entry per Cartesian axis.
        cart_extents = tuple(float(s) for s in kv["L"].split(",")) if d > 0 else ()
        radial_extent = float(kv["R"])
    except ValueError as exc:
        raise ParseError(path, 1, f"malformed header value: {exc}") from None
    if len(counts) != d + 1:
        raise ParseError(path, 1, f"n must list {d + 1} axis counts, got {len(counts)}")
    if len(cart_extents) != d:
        raise ParseError(path, 1, f"L must list {d} extents, got {len(cart_extents)}")
    try:
        return Grid(d, BesselIndex(alpha), counts[:-1], cart_extents, counts[-1],
                    radial_extent, side=kv["side"])
    except ValueError as exc:
        raise ParseError(path, 1, str(exc)) from None


def read_field(path) -> Field:
    """Parse a field file; errors carry the offending line number."""
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ParseError(path, 1, "expected a '#'-prefixed header line")
    grid = _parse_header(path, lines[0])
    rows = [(i + 1, ln) for i, ln in enumerate(lines) if i > 0 and ln.strip()]
    if len(rows) != grid.size:
        raise ParseError(
            path, len(lines), f"expected {grid.size} sample rows, got {len(rows)}"
            + (f" ({grid.size - len(rows)} missing)" if len(rows) < grid.size else ""))
    values = np.empty(grid.size, dtype=np.complex128)
    for k, (lineno, row) in enumerate(rows):
        parts = row.split(",")
        if len(parts) != 2:
            raise ParseError(path, lineno, f"expected 're,im', got {row!r}")
        try:
            re, im = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(path, lineno, f"non-numeric sample {row!r}") from None
        if not (np.isfinite(re) and np.isfinite(im)):
            raise ParseError(path, lineno, f"non-finite sample {row!r}")
        values[k] = complex(re, im)
    return Field(grid, values)


_DEFAULTS = {
    "symbol": {"name": "gaussian_admissible", "params": {}},
    "sigma": 1.0,
    "eta": 0.1,
    "gamma": 1e-3,
    "delta": 1e3,
    "sigma_points": 256,
    "zeta": {"family": "power", "s": 3.0},
    "grid": {"d": 1, "alpha": 0.5, "n": [96, 96], "L": [10.0], "R": 10.0},
    "output": {},
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration: symbol, scales, window, weight, grid."""

    symbol_name: str
    symbol_params: dict
    sigma: float
    eta: float
    gamma: float
    delta: float
    sigma_points: int
    zeta_family: str
    zeta_s: float
    grid_spec: dict
    output: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        # Re-run every library-side validation so a loaded config can
        # never carry values the constructors would reject.
        self.symbol()
        self.reg()
        self.zeta()
        self.grid()
        if not 0 < self.gamma < self.delta:
            raise ValueError("need 0 < gamma < delta")
        if self.sigma_points < 1:
            raise ValueError("sigma_points must be >= 1")

    def symbol(self) -> MultiplierSymbol:
        return symbol(self.symbol_name, **self.symbol_params)

    def reg(self) -> RegParams:
        return RegParams(eta=self.eta, sigma=self.sigma)

    def zeta(self) -> ZetaWeight:
        return ZetaWeight(s=self.zeta_s, family=self.zeta_family)

    def grid(self) -> Grid:
        gs = self.grid_spec
        counts = [int(n) for n in gs["n"]]
        return Grid(int(gs["d"]), BesselIndex(float(gs["alpha"])),
                    tuple(counts[:-1]), tuple(float(L) for L in gs["L"]),
                    counts[-1], float(gs["R"]))


def load_config(path) -> RunConfig:
    """Load and re-validate a YAML run configuration."""
    try:
        raw = yaml.safe_load(Path(path).read_text())
    except yaml.YAMLError as exc:
        line = getattr(getattr(exc, "problem_mark", None), "line", 0)
        raise ParseError(path, line + 1, f"invalid YAML: {exc}") from None
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ParseError(path, 1, "config root must be a mapping")
    unknown = set(raw) - set(_DEFAULTS)
    if unknown:
        raise ParseError(path, 1, f"unknown config keys {sorted(unknown)}")
    merged = {**_DEFAULTS, **raw}
    for key in ("symbol", "zeta", "grid", "output"):
        if not isinstance(merged[key], dict):
            raise ParseError(path, 1, f"config key {key!r} must be a mapping")
        merged[key] = {**_DEFAULTS[key], **merged[key]}
    try:
        return RunConfig(
            symbol_name=str(merged["symbol"]["name"]),
            symbol_params=dict(merged["symbol"].get("params") or {}),
            sigma=float(merged["sigma"]),
            eta=float(merged["eta"]),
            gamma=float(merged["gamma"]),
            delta=float(merged["delta"]),
            sigma_points=int(merged["sigma_points"]),
            zeta_family=str(merged["zeta"]["family"]),
            zeta_s=float(merged["zeta"]["s"]),
            grid_spec=merged["grid"],
            output=merged["output"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(path, 1, f"invalid configuration: {exc}") from None
