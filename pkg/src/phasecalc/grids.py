"""Discrete phase-space geometry shared by all operator and symbol objects.

Positions live on ``x_k = -L + k*dx`` with ``dx = 2L/n``; momenta on
``xi_m = (m - n/2)*dxi`` with ``dxi = h/(2L)``, so that ``dx*dxi*n = h``
(discrete Fourier duality).  Everything is periodic: the box is a torus,
and accuracy statements for R^d objects assume decay well inside the box.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform position/momentum grid plus the semiclassical parameter.

    Parameters
    ----------
    d : spatial dimension (phase space has dimension 2d).
    n_points : points per axis, even.
    half_width : L; the position box is [-L, L) per axis.
    hbar : semiclassical parameter; h = 2*pi*hbar.
    """

    d: int
    n_points: int
    half_width: float
    hbar: float

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d}")
        if self.n_points < 2 or self.n_points % 2 != 0:
            raise ValueError(f"n_points must be even and >= 2, got {self.n_points}")
        if self.half_width <= 0:
            raise ValueError(f"half_width must be > 0, got {self.half_width}")
        if self.hbar <= 0:
            raise ValueError(f"hbar must be > 0, got {self.hbar}")

    @property
    def h(self) -> float:
        return 2.0 * np.pi * self.hbar

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.n_points

    @property
    def dxi(self) -> float:
        return self.h / (2.0 * self.half_width)

    @property
    def dz(self) -> float:
        """Phase-space cell volume dx^d * dxi^d."""
        return (self.dx * self.dxi) ** self.d

    @property
    def x(self) -> np.ndarray:
        """Position nodes, one axis."""
        return -self.half_width + self.dx * np.arange(self.n_points)

    @property
    def xi(self) -> np.ndarray:
        """Momentum nodes, one axis, centered at 0."""
        return (np.arange(self.n_points) - self.n_points // 2) * self.dxi

    @property
    def size(self) -> int:
        """Hilbert-space dimension n_points**d."""
        return self.n_points**self.d

    def position_freqs(self) -> np.ndarray:
        """Fourier frequencies dual to the position axis (cycles per unit)."""
        return np.fft.fftfreq(self.n_points, d=self.dx)

    def momentum_freqs(self) -> np.ndarray:
        """Fourier frequencies dual to the momentum axis."""
        return np.fft.fftfreq(self.n_points, d=self.dxi)


@dataclass
class SymbolField:
    """Complex samples of a phase-space function on a PhaseGrid.

    ``values`` has shape (n,)*d + (n,)*d: position axes first, then momentum
    axes; entry [i..., m...] is f(x_i..., xi_m...).
    """

    grid: PhaseGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        n, d = self.grid.n_points, self.grid.d
        expected = (n,) * (2 * d)
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != expected:
            raise ValueError(f"field shape {self.values.shape} does not match grid {expected}")

    def copy(self) -> "SymbolField":
        return SymbolField(self.grid, self.values.copy())

    def lp_norm(self, p: float) -> float:
        """Discrete L^p norm with the dz quadrature weight (p = inf -> max)."""
        a = np.abs(self.values)
        if np.isinf(p):
            return float(a.max())
        return float((np.sum(a**p) * self.grid.dz) ** (1.0 / p))

    def integral(self) -> complex:
        return complex(np.sum(self.values) * self.grid.dz)


def make_grid(d: int, n_points: int, half_width: float, hbar: float) -> PhaseGrid:
    """Construct a PhaseGrid, validating the invariants."""
    return PhaseGrid(d=d, n_points=n_points, half_width=half_width, hbar=hbar)


def sample_symbol(grid: PhaseGrid, f) -> SymbolField:
    """Sample a pointwise-evaluable phase-space function on the grid.

    ``f`` is called with 2d broadcastable arrays (x_1..x_d, xi_1..xi_d).
    Non-finite samples are rejected.
    """
    d, n = grid.d, grid.n_points
    axes = []
    for k in range(2 * d):
        nodes = grid.x if k < d else grid.xi
        shape = [1] * (2 * d)
        shape[k] = n
        axes.append(nodes.reshape(shape))
    vals = np.asarray(f(*axes), dtype=complex)
    vals = np.broadcast_to(vals, (n,) * (2 * d)).copy()
    if not np.all(np.isfinite(vals)):
        raise ValueError("symbol sample contains non-finite values")
    return SymbolField(grid, vals)


def gaussian_symbol(grid: PhaseGrid) -> SymbolField:
    """The semiclassical Gaussian g_h(z) = (2/h)^d exp(-|z|^2/hbar)."""
    amp = (2.0 / grid.h) ** grid.d

    def g(*zs):
        r2 = sum(np.asarray(z) ** 2 for z in zs)
        return amp * np.exp(-r2 / grid.hbar)

    return sample_symbol(grid, g)
