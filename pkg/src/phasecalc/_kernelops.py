"""Low-level kernel <-> diagonal-representation plumbing.

A kernel matrix K of side n^d is viewed as an array over (i_1..i_d,
j_1..j_d).  The diagonal representation stores D[i, delta] = K[i, (i+delta) % n]
per axis, which turns phase-space translations into index rolls and pure
phases, and makes the Weyl/Wigner pair a set of axis-wise FFT shears.

Index conventions (per axis, n even):
  - position index m: x_m = -L + m*dx
  - momentum index nu: xi_nu = (nu - n/2)*dxi
  - diagonal index delta: stored in FFT order; the integer frequency at
    slot k is k for k < n/2 and k - n for k >= n/2.

The momentum-centered DFT  sum_nu F[nu] exp(-2i pi delta (nu - n/2)/n)
equals fft(F) times the parity twist (-1)^delta, which in FFT order is
just (-1)^k.
"""

from __future__ import annotations

import numpy as np

from .grids import PhaseGrid


def fft_ints(n: int) -> np.ndarray:
    """Integer frequencies in FFT order: 0..n/2-1, -n/2..-1."""
    return np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)


def parity_twist(n: int) -> np.ndarray:
    """(-1)^delta along an FFT-ordered axis (n even)."""
    return np.where(np.arange(n) % 2 == 0, 1.0, -1.0)


def _axis_view(vec: np.ndarray, axis: int, ndim: int) -> np.ndarray:
    shape = [1] * ndim
    shape[axis] = vec.size
    return vec.reshape(shape)


def mom_to_diag(field: np.ndarray, axis: int) -> np.ndarray:
    """Centered momentum DFT along one axis: nu -> delta (FFT order)."""
    out = np.fft.fft(field, axis=axis)
    out *= _axis_view(parity_twist(field.shape[axis]), axis, field.ndim)
    return out


def diag_to_mom(block: np.ndarray, axis: int) -> np.ndarray:
    """Inverse of mom_to_diag."""
    n = block.shape[axis]
    return np.fft.ifft(block * _axis_view(parity_twist(n), axis, block.ndim), axis=axis)


def diag_index_arrays(n: int, d: int):
    """Open-mesh fancy indices mapping K[i, j] <-> D[i, delta].

    Returns a tuple of 2d index arrays such that D = K[idx] has axes
    (i_1..i_d, delta_1..delta_d) with delta in FFT order, and K[idx] = D
    scatters back.
    """
    rows, cols = [], []
    ints = fft_ints(n)
    for a in range(d):
        i_a = _axis_view(np.arange(n), a, 2 * d)
        dl_a = _axis_view(ints, d + a, 2 * d)
        rows.append(i_a)
        cols.append((i_a + dl_a) % n)
    return tuple(rows) + tuple(cols)


def gather_diagonals(kernel: np.ndarray, n: int, d: int) -> np.ndarray:
    """Kernel (n^d x n^d) -> D[i-axes, delta-axes]."""
    K = kernel.reshape((n,) * (2 * d))
    return K[diag_index_arrays(n, d)]


def scatter_diagonals(D: np.ndarray, n: int, d: int) -> np.ndarray:
    """Inverse of gather_diagonals; returns the (n^d, n^d) kernel."""
    K = np.empty((n,) * (2 * d), dtype=complex)
    K[diag_index_arrays(n, d)] = D
    return K.reshape(n**d, n**d)


def _shear(block: np.ndarray, d: int, sign: float) -> np.ndarray:
    """Half-diagonal position shift: spectrum on axis a times exp(sign*i*pi*a*delta/n).

    Realizes band-limited interpolation of the symbol at the midpoints
    (i + delta/2) of each kernel diagonal.
    """
    n = block.shape[0]
    ints = fft_ints(n)
    out = block
    for a in range(d):
        out = np.fft.fft(out, axis=a)
        phase = np.exp(
            sign * 1j * np.pi / n
            * _axis_view(ints, a, 2 * d)
            * _axis_view(ints, d + a, 2 * d)
        )
        out = np.fft.ifft(out * phase, axis=a)
    return out


def kernel_from_field(values: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """Weyl quantization core: symbol samples -> kernel matrix.

    Per axis: centered momentum DFT to the diagonal index, then the
    half-diagonal shear that evaluates the symbol at kernel midpoints.
    """
    n, d = grid.n_points, grid.d
    block = np.asarray(values, dtype=complex)
    for a in range(d, 2 * d):
        block = mom_to_diag(block, axis=a)
    block = _shear(block, d, sign=+1.0)
    block /= (n * grid.dx) ** d
    return scatter_diagonals(block, n, d)


def field_from_kernel(kernel: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """Wigner transform core: kernel matrix -> symbol samples.

    Exact inverse of kernel_from_field (the shears and centered DFTs are
    unitary up to the (n dx)^d scale).
    """
    n, d = grid.n_points, grid.d
    block = gather_diagonals(kernel, n, d)
    block = _shear(block, d, sign=-1.0)
    for a in range(d, 2 * d):
        block = diag_to_mom(block, axis=a)
    block *= (n * grid.dx) ** d
    return block


def convolve_field_kernel(values: np.ndarray, kernel: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """Exact lattice evaluation of sum_z dz f(z) T_z K.

    The translation phase is constant along each kernel diagonal for
    lattice momentum offsets, so the sum factorizes into a centered DFT
    over the momentum offsets followed by a circular convolution in the
    position offsets, one pass per axis.
    """
    n, d = grid.n_points, grid.d
    D = gather_diagonals(kernel, n, d)
    # grid index s holds the offset value (s - n/2)*dx: re-index by shift steps
    g = np.roll(np.asarray(values, dtype=complex), -(n // 2), axis=tuple(range(d)))
    for a in range(d, 2 * d):
        g = mom_to_diag(g, axis=a)  # momentum offset axis -> delta axis
    pos_axes = tuple(range(d))
    D = np.fft.ifftn(np.fft.fftn(g, axes=pos_axes) * np.fft.fftn(D, axes=pos_axes), axes=pos_axes)
    return scatter_diagonals(D * grid.dz, n, d)


def lattice_steps(grid: PhaseGrid, x0) -> np.ndarray:
    """Integer lattice steps for a position offset; rejects off-lattice values."""
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    steps = x0 / grid.dx
    s = np.rint(steps).astype(int)
    if np.max(np.abs(steps - s)) > 1e-9:
        raise ValueError(f"position offset {x0} is not a lattice multiple of dx={grid.dx}")
    return s


def translation_phase(grid: PhaseGrid, xi0) -> np.ndarray:
    """Vector of e^{i xi0 . x_k / hbar} over the flattened position grid."""
    n, d = grid.n_points, grid.d
    xi0 = np.atleast_1d(np.asarray(xi0, dtype=float))
    phase = np.ones((n,) * d, dtype=complex)
    for a in range(d):
        phase = phase * _axis_view(np.exp(1j * xi0[a] * grid.x / grid.hbar), a, d)
    return phase.ravel()


def translate_kernel(kernel: np.ndarray, grid: PhaseGrid, x0, xi0) -> np.ndarray:
    """Conjugation by the phase-space translation: K'[i,j] = p_i conj(p_j) K[i-s, j-s]."""
    n, d = grid.n_points, grid.d
    s = lattice_steps(grid, x0)
    K = kernel.reshape((n,) * (2 * d))
    K = np.roll(K, shift=tuple(s) + tuple(s), axis=tuple(range(2 * d)))
    K = K.reshape(n**d, n**d)
    phase = translation_phase(grid, xi0)
    return phase[:, None] * K * phase[None, :].conj()
