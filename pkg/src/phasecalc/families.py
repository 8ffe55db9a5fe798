"""Operator families the verification harness sweeps over.

Every family produces compact, nonzero operators that decay well inside
the box (position and momentum extents scale with sqrt(hbar)), so the
torus discretization faithfully represents the R^d objects.
"""

from __future__ import annotations

import numpy as np
from scipy.special import eval_hermite, gammaln

from .constants import conjugate
from .grids import PhaseGrid, SymbolField, sample_symbol
from .quantize import KernelOperator, operator_from_factors, toplitz_quantize

FAMILY_IDS = (
    "toplitz-gaussian",
    "toplitz-sobolev-optimizer",
    "random-lowrank-bandlimited",
    "hermite-projection",
)


def hermite_basis(grid: PhaseGrid, count: int, sigma: float | None = None) -> np.ndarray:
    """Orthonormal matrix of the first `count` oscillator states of width sigma.

    Works in log space to keep high orders finite; re-orthonormalized on
    the grid so the basis is exactly unitary under the dx^d weight.
    """
    if grid.d != 1:
        raise NotImplementedError("families are built for d = 1")
    sigma = float(sigma if sigma is not None else np.sqrt(grid.hbar))
    x = grid.x / sigma
    cols = []
    for k in range(count):
        lognorm = -0.5 * (k * np.log(2.0) + gammaln(k + 1) + 0.5 * np.log(np.pi))
        cols.append(eval_hermite(k, x) * np.exp(-x * x / 2.0 + lognorm))
    H = np.stack(cols, axis=1).astype(complex)
    q, r = np.linalg.qr(H)
    q = q * np.sign(np.real(np.diag(r)))[None, :]
    return q / np.sqrt(grid.dx)


def random_lowrank(grid: PhaseGrid, rng: np.random.Generator, rank: int = 4,
                   width: float = 0.7, hermitian: bool = False) -> KernelOperator:
    """Random band-limited low-rank operator from narrow oscillator modes.

    width is the oscillator sigma in units of sqrt(hbar); 0.7 keeps
    opposite-edge kernel products below 1e-10 on the default box.
    """
    levels = max(2 * rank, 8)
    H = hermite_basis(grid, levels, sigma=width * np.sqrt(grid.hbar))
    mu = 0.5 ** np.arange(rank) * (0.5 + rng.random(rank))
    cu = rng.standard_normal((levels, rank)) + 1j * rng.standard_normal((levels, rank))
    u, _ = np.linalg.qr(H @ cu)
    if hermitian:
        return operator_from_factors(grid, u * mu, u)
    cv = rng.standard_normal((levels, rank)) + 1j * rng.standard_normal((levels, rank))
    v, _ = np.linalg.qr(H @ cv)
    return operator_from_factors(grid, u * mu, v)


def hermite_projection(grid: PhaseGrid, rank: int = 4) -> KernelOperator:
    """Projection onto the lowest `rank` oscillator states (a pure-state sum)."""
    H = hermite_basis(grid, rank)
    return operator_from_factors(grid, H, H)


def gaussian_mixture_symbol(grid: PhaseGrid, rng: np.random.Generator, terms: int = 2) -> SymbolField:
    """Positive mixture of phase-space Gaussians at the semiclassical scale."""
    sh = np.sqrt(grid.hbar)
    amps = 0.5 + rng.random(terms)
    cx = rng.uniform(-1.5, 1.5, terms) * sh
    cxi = rng.uniform(-1.5, 1.5, terms) * sh
    wid = (1.0 + rng.random(terms)) * grid.hbar

    def f(x, xi):
        out = 0.0
        for a, x0, xi0, w in zip(amps, cx, cxi, wid):
            out = out + a * np.exp(-((x - x0) ** 2 + (xi - xi0) ** 2) / (2.0 * w))
        return out

    return sample_symbol(grid, f)


def toplitz_gaussian(grid: PhaseGrid, rng: np.random.Generator, terms: int = 2) -> KernelOperator:
    return toplitz_quantize(gaussian_mixture_symbol(grid, rng, terms))


def sobolev_optimizer_symbol(grid: PhaseGrid, s: float, p: float, lam: float = 1.0) -> SymbolField:
    """The extremal profile (1 + |z/lam|^{p'})^{-2d/q} of the classical inequality."""
    d = grid.d
    q = 1.0 / (1.0 / p - s / (2 * d))
    pp = conjugate(p)
    if not np.isfinite(pp) or not np.isfinite(q) or q <= 0:
        raise ValueError(f"no optimizer profile for s={s}, p={p}, d={d}")

    def f(x, xi):
        r = np.sqrt(x**2 + xi**2) / lam
        return (1.0 + r**pp) ** (-2 * d / q)

    return sample_symbol(grid, f)


def toplitz_sobolev_optimizer(grid: PhaseGrid, s: float, p: float, lam: float = 1.0) -> KernelOperator:
    return toplitz_quantize(sobolev_optimizer_symbol(grid, s, p, lam))


def make_operator(family: str, grid: PhaseGrid, rng: np.random.Generator,
                  rank: int = 4, hermitian: bool = False, **kw) -> KernelOperator:
    """Dispatch on the family id; rng is consumed deterministically."""
    if family == "toplitz-gaussian":
        return toplitz_gaussian(grid, rng)
    if family == "toplitz-sobolev-optimizer":
        return toplitz_sobolev_optimizer(grid, kw.get("s", 0.5), kw.get("p", 2.0), kw.get("lam", 1.0))
    if family == "random-lowrank-bandlimited":
        return random_lowrank(grid, rng, rank=rank, hermitian=hermitian)
    if family == "hermite-projection":
        return hermite_projection(grid, rank=rank)
    raise ValueError(f"unknown family {family!r}; known: {FAMILY_IDS}")
