"""Discretization of the half-space R^d x (0, inf) and sampled fields.

A grid has d Cartesian axes covering [-L_j, L_j] and one radial axis
covering (0, R].  Samples sit at midpoint nodes, so the radial axis
never touches zero.  Field values are stored flat, row-major, with the
radial index fastest.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .special import BesselIndex

__all__ = ["Grid", "Field", "reflect_cartesian", "gaussian_field", "random_smooth_field"]


@dataclass(frozen=True)
class Grid:
    d: int
    index: BesselIndex
    cart_counts: tuple[int, ...]
    cart_extents: tuple[float, ...]
    radial_count: int
    radial_extent: float
    side: str = "space"

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("d must be nonnegative")
        object.__setattr__(self, "cart_counts", tuple(int(n) for n in self.cart_counts))
        object.__setattr__(self, "cart_extents", tuple(float(x) for x in self.cart_extents))
        if len(self.cart_counts) != self.d or len(self.cart_extents) != self.d:
            raise ValueError("cart_counts/cart_extents must have length d")
        if any(n < 2 for n in self.cart_counts) or self.radial_count < 2:
            raise ValueError("all axis counts must be >= 2")
        if any(L <= 0 for L in self.cart_extents) or self.radial_extent <= 0:
            raise ValueError("all extents must be positive")
        if self.side not in ("space", "frequency"):
            raise ValueError(f"side must be 'space' or 'frequency', got {self.side!r}")

    @property
    def alpha(self) -> float:
        return self.index.alpha

    @property
    def shape(self) -> tuple[int, ...]:
        return self.cart_counts + (self.radial_count,)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def cart_axis(self, j: int) -> np.ndarray:
        n, L = self.cart_counts[j], self.cart_extents[j]
        step = 2.0 * L / n
        return -L + (np.arange(n) + 0.5) * step

    def radial_axis(self) -> np.ndarray:
        step = self.radial_extent / self.radial_count
        return (np.arange(self.radial_count) + 0.5) * step

    def axes(self) -> list[np.ndarray]:
        return [self.cart_axis(j) for j in range(self.d)] + [self.radial_axis()]

    def steps(self) -> list[float]:
        return [2.0 * L / n for n, L in zip(self.cart_counts, self.cart_extents)] + [
            self.radial_extent / self.radial_count
        ]

    def nodes(self) -> np.ndarray:
        """All sample points, shape (size, d+1), radial index fastest."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def with_side(self, side: str) -> "Grid":
        return replace(self, side=side)

    def refined(self, factor: int = 2) -> "Grid":
        return replace(
            self,
            cart_counts=tuple(n * factor for n in self.cart_counts),
            radial_count=self.radial_count * factor,
        )


@dataclass
class Field:
    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=np.complex128).ravel()
        if self.values.size != self.grid.size:
            raise ValueError(
                f"field length {self.values.size} does not match grid size {self.grid.size}"
            )
        if not np.all(np.isfinite(self.values.view(float))):
            raise ValueError("field contains non-finite values")

    def reshaped(self) -> np.ndarray:
        return self.values.reshape(self.grid.shape)

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy())

    @classmethod
    def from_function(cls, grid: Grid, fn: Callable[[np.ndarray], np.ndarray]) -> "Field":
        """Sample ``fn`` (points array (N, d+1) -> values (N,)) on the grid."""
        return cls(grid, np.asarray(fn(grid.nodes()), dtype=np.complex128))


def reflect_cartesian(f: Field) -> Field:
    """x = (x', x_r) -> (-x', x_r); exact on the symmetric midpoint grid."""
    v = f.reshaped()
    for ax in range(f.grid.d):
        v = np.flip(v, axis=ax)
    return Field(f.grid, v.ravel())


def gaussian_field(grid: Grid, scale: float = 1.0) -> Field:
    """exp(-||x||^2 / (2 scale^2)) sampled on the grid."""
    pts = grid.nodes()
    return Field(grid, np.exp(-np.sum(pts * pts, axis=1) / (2.0 * scale * scale)))


def random_smooth_field(grid: Grid, rng: np.random.Generator, modes: int = 4) -> Field:
    """Gaussian envelope times a random low-order polynomial.

    The polynomial uses even powers of the radial coordinate, so the
    field extends evenly through r = 0 and its spectrum decays fast
    enough for the quadrature-level identities to hold tightly.
    """
    pts = grid.nodes()
    env = np.exp(-np.sum(pts * pts, axis=1) / 2.0)
    poly = np.zeros(pts.shape[0], dtype=np.complex128)
    for _ in range(modes):
        c = rng.standard_normal() + 1j * rng.standard_normal()
        term = np.full(pts.shape[0], c)
        for j in range(grid.d):
            term = term * pts[:, j] ** rng.integers(0, 4)
        term = term * pts[:, -1] ** (2 * rng.integers(0, 3))
        poly += term
    vals = env * poly
    scale = np.max(np.abs(vals))
    if scale > 0:
        vals = vals / scale
    return Field(grid, vals)
