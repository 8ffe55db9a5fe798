"""Symbols <-> operators: Weyl and Wigner transforms, coherent states,
positivity-preserving (anti-Wick) quantization, and Gaussian smoothing.

A KernelOperator acts through the fixed quadrature convention
``(A phi)(x_i) = dx^d * sum_j kernel[i, j] phi(x_j)``; every norm in the
package weights the kernel by dx^d accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernelops as ko
from .grids import PhaseGrid, SymbolField, gaussian_symbol


@dataclass
class KernelOperator:
    """Operator on the position grid stored as a complex kernel matrix.

    ``factors = (U, V)`` optionally records a low-rank factorization
    kernel = U @ V.conj().T used by the translation-difference norms to
    avoid dense SVDs per offset; it is carried where cheap and dropped
    otherwise.
    """

    grid: PhaseGrid
    kernel: np.ndarray = field(repr=False)
    factors: Optional[tuple] = field(default=None, repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.kernel = np.asarray(self.kernel, dtype=complex)
        size = self.grid.size
        if self.kernel.shape != (size, size):
            raise ValueError(f"kernel shape {self.kernel.shape}, expected {(size, size)}")
        if not np.all(np.isfinite(self.kernel)):
            raise ValueError("kernel contains non-finite entries")

    def weighted(self) -> np.ndarray:
        """Matrix of the operator in the dx^d quadrature convention."""
        return self.kernel * self.grid.dx**self.grid.d

    def apply(self, phi: np.ndarray) -> np.ndarray:
        return self.weighted() @ phi

    def dagger(self) -> "KernelOperator":
        f = None
        if self.factors is not None:
            u, v = self.factors
            f = (v, u)
        return KernelOperator(self.grid, self.kernel.conj().T, factors=f)

    def trace(self) -> complex:
        """Operator trace under the quadrature convention (dx^d sum of the diagonal)."""
        return complex(np.trace(self.kernel) * self.grid.dx**self.grid.d)

    def __add__(self, other):
        _check_same_grid(self, other)
        return KernelOperator(self.grid, self.kernel + other.kernel)

    def __sub__(self, other):
        _check_same_grid(self, other)
        return KernelOperator(self.grid, self.kernel - other.kernel)

    def __mul__(self, c):
        f = None
        if self.factors is not None:
            u, v = self.factors
            f = (u * c, v)
        return KernelOperator(self.grid, self.kernel * c, factors=f)

    __rmul__ = __mul__

    def __matmul__(self, other):
        _check_same_grid(self, other)
        return KernelOperator(self.grid, self.weighted() @ other.kernel)


def _check_same_grid(a, b):
    if a.grid is not b.grid and a.grid != b.grid:
        raise ValueError("operators live on different grids")


def operator_from_factors(grid: PhaseGrid, u: np.ndarray, v: np.ndarray) -> KernelOperator:
    """Rank-r kernel U V^H from columns of position-grid vectors."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    return KernelOperator(grid, u @ v.conj().T, factors=(u, v))


@dataclass
class CoherentState:
    """Gaussian minimal-uncertainty state centered at z0 = (x0, xi0)."""

    grid: PhaseGrid
    center: tuple
    amplitude: np.ndarray = field(repr=False)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitude) ** 2) * self.grid.dx**self.grid.d))

    def projector(self) -> KernelOperator:
        """h^{-d} |psi><psi|, the Weyl quantization of the translated Gaussian."""
        psi = self.amplitude
        scale = self.grid.h ** (-self.grid.d)
        return KernelOperator(
            self.grid,
            scale * np.outer(psi, psi.conj()),
            factors=(scale * psi[:, None], psi[:, None]),
        )


def coherent_state(grid: PhaseGrid, z0=(0.0, 0.0)) -> CoherentState:
    """Translated Gaussian tau_{z0} psi_h with psi_h = (2/h)^{d/4} e^{-|x|^2/(2 hbar)}.

    x0 must be a lattice multiple of dx (periodic wrap); xi0 is free.
    The amplitude is normalized to unit discrete L2 norm, which makes the
    lattice resolution of identity and the trace of the Gaussian
    projector exact.
    """
    d, n = grid.d, grid.n_points
    x0 = np.atleast_1d(np.asarray(z0[0], dtype=float))
    xi0 = np.atleast_1d(np.asarray(z0[1], dtype=float))
    if x0.size != d or xi0.size != d:
        raise ValueError(f"center must have {d} position and {d} momentum components")
    if np.max(np.abs(x0)) > grid.half_width or np.max(np.abs(xi0)) > n * grid.dxi / 2:
        raise ValueError("center lies outside the grid box")
    s = ko.lattice_steps(grid, x0)

    env = np.ones((n,) * d)
    for a in range(d):
        shape = [1] * d
        shape[a] = n
        env = env * np.exp(-grid.x**2 / (2.0 * grid.hbar)).reshape(shape)
    env = np.roll(env, shift=tuple(s), axis=tuple(range(d))).ravel()
    amp = env * ko.translation_phase(grid, xi0)
    # tau_z phase is e^{i xi0 (x - x0/2)/hbar}: shift the pure modulation by -x0/2
    amp = amp * np.exp(-1j * float(np.dot(xi0, x0)) / (2.0 * grid.hbar))
    amp = amp / np.sqrt(np.sum(np.abs(amp) ** 2) * grid.dx**d)
    return CoherentState(grid, (tuple(x0), tuple(xi0)), amp)


def gaussian_projector(grid: PhaseGrid) -> KernelOperator:
    """op_{g_h} = h^{-d} |psi_h><psi_h| built directly from the coherent state."""
    return coherent_state(grid).projector()


def weyl_quantize(f: SymbolField) -> KernelOperator:
    """Operator with kernel h^{-d} int e^{-2 i pi (y-x) p / h} f((x+y)/2, p) dp.

    The midpoint (x+y)/2 is realized on the half-step lattice by
    band-limited interpolation, so the transform is an exact bijection
    from grid symbols to kernels.
    """
    return KernelOperator(f.grid, ko.kernel_from_field(f.values, f.grid))


def wigner_transform(A: KernelOperator) -> SymbolField:
    """Phase-space function of an operator; exact inverse of weyl_quantize."""
    return SymbolField(A.grid, ko.field_from_kernel(A.kernel, A.grid))


def toplitz_quantize(f: SymbolField) -> KernelOperator:
    """Superposition of coherent-state projectors weighted by the symbol.

    Equals the phase-space convolution of f with the Gaussian projector,
    evaluated exactly on the lattice; positive symbols give positive
    semidefinite operators.
    """
    proj = gaussian_projector(f.grid)
    return KernelOperator(f.grid, ko.convolve_field_kernel(f.values, proj.kernel, f.grid))


def husimi_transform(A: KernelOperator) -> SymbolField:
    """Gaussian smoothing of the Wigner transform.

    The smoothing kernel is the Wigner field of the discrete Gaussian
    projector (its mass is exactly 1 on the lattice, so constants map to
    constants); for positive operators the result is a nonnegative
    function up to roundoff.
    """
    grid = A.grid
    w_a = ko.field_from_kernel(A.kernel, grid)
    w_g = ko.field_from_kernel(gaussian_projector(grid).kernel, grid)
    axes = tuple(range(2 * grid.d))
    # re-index the smoothing field from grid values to offsets
    w_g = np.roll(w_g, -(grid.n_points // 2), axis=axes)
    conv = np.fft.ifftn(np.fft.fftn(w_a, axes=axes) * np.fft.fftn(w_g, axes=axes), axes=axes)
    return SymbolField(grid, conv * grid.dz)


def gaussian_smooth(A: KernelOperator) -> KernelOperator:
    """g_h star A: the operator-level Gaussian smoothing (Toplitz of the Wigner)."""
    g = gaussian_symbol(A.grid)
    return KernelOperator(A.grid, ko.convolve_field_kernel(g.values, A.kernel, A.grid))
