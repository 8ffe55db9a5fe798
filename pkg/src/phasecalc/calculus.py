"""Operator-level phase-space calculus: translations, gradients,
semiclassical convolution, fractional Laplacians, dyadic blocks, and the
Riesz Schur multiplier.

Lattice conventions: position offsets are multiples of dx (periodic
wrap); momentum offsets are arbitrary reals (pure phases), with the
group law exact on the dxi lattice.  Symbol-side Fourier multipliers act
on the Wigner transform and annihilate the zero mode: on the torus the
constant mode has no homogeneous counterpart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernelops as ko
from .constants import riesz_constant
from .grids import PhaseGrid, SymbolField
from .quantize import KernelOperator


@dataclass(frozen=True)
class PhasePoint:
    """Phase-space offset z = (x, xi); x must sit on the dx lattice."""

    x: tuple
    xi: tuple

    @staticmethod
    def of(grid: PhaseGrid, x, xi) -> "PhasePoint":
        x = np.atleast_1d(np.asarray(x, dtype=float))
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        if x.size != grid.d or xi.size != grid.d:
            raise ValueError(f"offset needs {grid.d} components per leg")
        # reduce position offsets mod the torus
        period = 2.0 * grid.half_width
        x = (x + grid.half_width) % period - grid.half_width
        return PhasePoint(tuple(x), tuple(xi))


def translate(A: KernelOperator, z) -> KernelOperator:
    """Conjugation by the phase-space translation tau_z."""
    x0, xi0 = (z.x, z.xi) if isinstance(z, PhasePoint) else z
    new = ko.translate_kernel(A.kernel, A.grid, x0, xi0)
    factors = None
    if A.factors is not None:
        n, d = A.grid.n_points, A.grid.d
        s = ko.lattice_steps(A.grid, x0)
        phase = ko.translation_phase(A.grid, xi0)

        def move(m):
            m = m.reshape((n,) * d + (m.shape[-1],))
            m = np.roll(m, shift=tuple(s), axis=tuple(range(d)))
            return m.reshape(-1, m.shape[-1]) * phase[:, None]

        factors = (move(A.factors[0]), move(A.factors[1]))
    return KernelOperator(A.grid, new, factors=factors)


def translate_vector(grid: PhaseGrid, phi: np.ndarray, z) -> np.ndarray:
    """tau_z phi = e^{i xi0.(x - x0/2)/hbar} phi(x - x0) on the grid."""
    x0, xi0 = (z.x, z.xi) if isinstance(z, PhasePoint) else z
    n, d = grid.n_points, grid.d
    s = ko.lattice_steps(grid, x0)
    out = np.asarray(phi, dtype=complex).reshape((n,) * d)
    out = np.roll(out, shift=tuple(s), axis=tuple(range(d))).ravel()
    out = out * ko.translation_phase(grid, xi0)
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    xi0 = np.atleast_1d(np.asarray(xi0, dtype=float))
    return out * np.exp(-1j * float(np.dot(xi0, x0)) / (2.0 * grid.hbar))


@dataclass
class GradientPair:
    """The 2d components of the phase-space gradient of an operator."""

    grad_x: tuple
    grad_xi: tuple

    def all_components(self) -> tuple:
        return tuple(self.grad_x) + tuple(self.grad_xi)


def _spectral_shift_derivative(K: np.ndarray, grid: PhaseGrid) -> list:
    """[d/dx_i + d/dx_j] K per axis, by DFT differentiation of rows and columns."""
    n, d = grid.n_points, grid.d
    Krs = K.reshape((n,) * (2 * d))
    freqs = 2j * np.pi * np.fft.fftfreq(n, d=grid.dx)
    out = []
    for a in range(d):
        da = np.fft.ifft(np.fft.fft(Krs, axis=a) * ko._axis_view(freqs, a, 2 * d), axis=a)
        da += np.fft.ifft(
            np.fft.fft(Krs, axis=d + a) * ko._axis_view(freqs, d + a, 2 * d), axis=d + a
        )
        out.append(da.reshape(grid.size, grid.size))
    return out


def quantum_gradient(A: KernelOperator) -> GradientPair:
    """Commutator gradients: [nabla, A] and [x/(i hbar), A].

    The position-gradient kernel is (d/dx_i + d/dx_j) A(x_i, x_j) by DFT
    differentiation of rows and columns.  The momentum gradient
    multiplies by (x_i - x_j)/(i hbar), with the difference reduced to
    its symmetric torus representative: on the periodic grid this is the
    chart of the position observable that matches the phase-space
    derivative of the Wigner transform for every kernel, delocalized
    ones included.
    """
    grid = A.grid
    n, d = grid.n_points, grid.d
    gx = [KernelOperator(grid, m) for m in _spectral_shift_derivative(A.kernel, grid)]
    gxi = []
    period = 2.0 * grid.half_width
    for a in range(d):
        xa = np.broadcast_to(ko._axis_view(grid.x, a, d), (n,) * d).ravel()
        diff = xa[:, None] - xa[None, :]
        diff = (diff + grid.half_width) % period - grid.half_width
        gxi.append(KernelOperator(grid, diff / (1j * grid.hbar) * A.kernel))
    return GradientPair(tuple(gx), tuple(gxi))


def semiclassical_convolve(f: SymbolField, A: KernelOperator) -> KernelOperator:
    """f star A = sum_z dz f(z) T_z A over the full offset lattice (exact)."""
    if f.grid != A.grid:
        raise ValueError("symbol and operator live on different grids")
    return KernelOperator(A.grid, ko.convolve_field_kernel(f.values, A.kernel, A.grid))


# ---------------------------------------------------------------------------
# symbol-side Fourier multipliers


def _freq_norm_sq(grid: PhaseGrid) -> np.ndarray:
    """|w|^2 on the 2d-dimensional symbol frequency grid, FFT layout."""
    n, d = grid.n_points, grid.d
    total = np.zeros((n,) * (2 * d))
    for a in range(2 * d):
        step = grid.dx if a < d else grid.dxi
        w = np.fft.fftfreq(n, d=step)
        total = total + ko._axis_view(w, a, 2 * d) ** 2
    return total


def apply_symbol_multiplier(A: KernelOperator, mult: np.ndarray) -> KernelOperator:
    """Weyl-quantize(mult * Fourier(Wigner(A))) for a frequency-space multiplier."""
    grid = A.grid
    axes = tuple(range(2 * grid.d))
    W = ko.field_from_kernel(A.kernel, grid)
    W = np.fft.ifftn(np.fft.fftn(W, axes=axes) * mult, axes=axes)
    return KernelOperator(grid, ko.kernel_from_field(W, grid))


def fractional_laplacian(A: KernelOperator, s: float) -> KernelOperator:
    """(-Delta_h)^s A via the spectral multiplier (2 pi |w|)^{2s} on the Wigner side.

    The zero frequency is mapped to 0 (homogeneous multipliers kill the
    constant mode).  s may be negative down to -d/2 in practice; strongly
    negative powers are ill-conditioned on the torus.
    """
    grid = A.grid
    if s <= -grid.d:
        raise ValueError(f"s must exceed -d = {-grid.d}, got {s}")
    w2 = _freq_norm_sq(grid)
    with np.errstate(all="ignore"):
        mult = (4.0 * np.pi**2 * w2) ** s
    mult[(0,) * (2 * grid.d)] = 0.0
    return apply_symbol_multiplier(A, mult)


@lru_cache(maxsize=32)
def _periodized_weight_cached(n, d, dx, dxi, alpha, images, sub):
    import itertools

    steps = [dx] * d + [dxi] * d
    axes_off = [(np.arange(n) - n // 2) * st for st in steps]
    periods = [n * st for st in steps]
    R = (images + 0.5) * min(periods)
    W = np.zeros((n,) * (2 * d))
    ranges = [range(-images - 1, images + 2)] * (2 * d)
    for ks in itertools.product(*ranges):
        shift = [k * p for k, p in zip(ks, periods)]
        if math.hypot(*shift) > R:
            continue  # disk truncation; the tail below covers the rest
        base = all(k == 0 for k in ks)
        if base and sub > 1:
            # cell-average the singular base image on a sub x sub stencil
            offs = ((np.arange(sub) + 0.5) / sub - 0.5)
            for frac in itertools.product(offs, repeat=2 * d):
                r2 = np.zeros_like(W)
                for a in range(2 * d):
                    r2 = r2 + ko._axis_view(axes_off[a] + frac[a] * steps[a], a, 2 * d) ** 2
                r2[(n // 2,) * (2 * d)] = np.inf  # origin cell excluded
                W += r2 ** (-alpha / 2.0) / float(sub ** (2 * d))
            continue
        r2 = np.zeros_like(W)
        for a in range(2 * d):
            r2 = r2 + ko._axis_view(axes_off[a] + shift[a], a, 2 * d) ** 2
        if base:
            r2[(n // 2,) * (2 * d)] = np.inf  # origin cell excluded
        W += r2 ** (-alpha / 2.0)
    # analytic tail: image density 1/cell times the integral over |u| > R
    cell = float(np.prod(periods))
    area = 2.0 * np.pi**d / math.gamma(d)  # |S^{2d-1}|
    W += area * R ** (2 * d - alpha) / ((alpha - 2 * d) * cell)
    # the origin slot multiplies delta_0 A = 0 everywhere it is used
    W[(n // 2,) * (2 * d)] = 0.0
    W.flags.writeable = False
    return W


def periodized_riesz_weight(grid: PhaseGrid, alpha: float, images: int = 12, sub: int = 8) -> np.ndarray:
    """Lattice-periodized |z|^{-alpha}, indexed like a SymbolField, origin zeroed.

    Summing translate differences against this weight quadratures the
    R^{2d} integral over all periodic images of the offset box, removing
    the O(L^{-(alpha-2d)}) truncation bias of the bare weight; the
    singular base image is cell-averaged on a sub^{2d} stencil.  The
    origin cell is excluded (weight 0).
    """
    return _periodized_weight_cached(
        grid.n_points, grid.d, round(grid.dx, 15), round(grid.dxi, 15), float(alpha), images, sub
    )


def fractional_laplacian_integral(A: KernelOperator, s: float, images: int = 12) -> KernelOperator:
    """(-Delta_h)^{s/2} A = c_{2d,s} int (A - T_z A)/|z|^{2d+s} dz, by lattice quadrature."""
    if not 0 < s < 2:
        raise ValueError(f"s must lie in (0,2), got {s}")
    grid = A.grid
    W = periodized_riesz_weight(grid, 2 * grid.d + s, images=images)
    c = riesz_constant(2 * grid.d, s)
    mass = float(W.sum()) * grid.dz
    smeared = ko.convolve_field_kernel(W, A.kernel, grid)
    return KernelOperator(grid, c * (mass * A.kernel - smeared))


# ---------------------------------------------------------------------------
# dyadic decomposition


def _smooth_step(t: np.ndarray) -> np.ndarray:
    """C^inf cutoff: 1 on (-inf,1], 0 on [2,inf), exp(-1/t) mollifier in between."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    out[t <= 1.0] = 1.0
    mid = (t > 1.0) & (t < 2.0)
    u = t[mid]
    a = np.exp(-1.0 / (2.0 - u))
    b = np.exp(-1.0 / (u - 1.0))
    out[mid] = a / (a + b)
    return out


def dyadic_bump(t: np.ndarray) -> np.ndarray:
    """chi(t) = eta(t) - eta(2t): supported on [1/2, 2], telescopes to 1."""
    return _smooth_step(t) - _smooth_step(2.0 * np.asarray(t, dtype=float))


def resolvable_band(grid: PhaseGrid) -> range:
    """Dyadic indices j for which the blocks tile every nonzero grid frequency."""
    wmin = min(1.0 / (grid.n_points * grid.dx), 1.0 / (grid.n_points * grid.dxi))
    wmax = math.sqrt(
        grid.d * (0.5 / grid.dx) ** 2 + grid.d * (0.5 / grid.dxi) ** 2
    )
    jmin = math.floor(math.log2(wmin))
    jmax = math.ceil(math.log2(wmax))
    return range(jmin, jmax + 1)


def dyadic_block(A: KernelOperator, j: int) -> KernelOperator:
    """Frequency-localized piece of A: multiplier chi(|w|/2^j) on the Wigner side."""
    grid = A.grid
    w = np.sqrt(_freq_norm_sq(grid))
    mult = dyadic_bump(w / 2.0**j)
    mult[(0,) * (2 * grid.d)] = 0.0
    return apply_symbol_multiplier(A, mult)


def riesz_schur_multiplier(A: KernelOperator) -> KernelOperator:
    """Entrywise -i (x_i - x_j)/|x_i - x_j| with zero diagonal (d = 1)."""
    grid = A.grid
    if grid.d != 1:
        raise ValueError("sign-function form is one-dimensional; apply per axis for d > 1")
    x = grid.x
    mult = -1j * np.sign(x[:, None] - x[None, :])
    return KernelOperator(grid, mult * A.kernel)


def dilate(A: KernelOperator, lam: float) -> KernelOperator:
    """A_lam(x, y) = lam^d A(lam x, lam y) for lam in {1/2, 1, 2} (d = 1).

    Integer lam resamples on the sublattice; lam = 1/2 reads half-step
    values off the band-limited interpolation of the kernel.
    """
    grid = A.grid
    if grid.d != 1:
        raise ValueError("dilation helper is one-dimensional")
    n = grid.n_points
    if lam == 1:
        return A
    if lam == 2:
        idx = (2 * np.arange(n) - n // 2) % n
        return KernelOperator(grid, 2.0 * A.kernel[np.ix_(idx, idx)])
    if lam == 0.5:
        half = n // 2
        src = np.r_[0:half, n - half : n]
        dst = np.r_[0:half, 2 * n - half : 2 * n]
        Fp = np.zeros((2 * n, 2 * n), dtype=complex)
        Fp[np.ix_(dst, dst)] = np.fft.fft2(A.kernel)[np.ix_(src, src)]
        up = np.fft.ifft2(Fp) * 4.0
        idx = half + np.arange(n)
        return KernelOperator(grid, 0.5 * up[np.ix_(idx, idx)])
    raise ValueError(f"unsupported dilation factor {lam}")
