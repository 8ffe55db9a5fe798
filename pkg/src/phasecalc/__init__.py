"""Numerical toolkit for quantum phase-space analysis.

Operators on the position grid are kernel matrices; symbols live on the
phase-space lattice.  The package provides the Weyl/Wigner/Husimi
transforms, phase-space translations and gradients, the semiclassical
convolution, fractional Laplacians, the scaled-Schatten Sobolev/Besov
norm family, and a verification harness that sweeps the functional
inequalities over operator families and values of hbar.
"""

from .calculus import (
    GradientPair,
    PhasePoint,
    dyadic_block,
    fractional_laplacian,
    fractional_laplacian_integral,
    quantum_gradient,
    riesz_schur_multiplier,
    semiclassical_convolve,
    translate,
)
from .constants import (
    gagliardo_constant,
    riesz_constant,
    sobolev_constant,
    sphere_area,
    theta,
)
from .grids import PhaseGrid, SymbolField, gaussian_symbol, make_grid, sample_symbol
from .norms import (
    besov_norm_diff1,
    besov_norm_diff2,
    besov_norm_lp,
    bessel_norm,
    holder_norm,
    mixed_schatten_norm,
    schatten_norm,
    sobolev_norm,
    sobolev_norm_frac,
)
from .quantize import (
    CoherentState,
    KernelOperator,
    coherent_state,
    husimi_transform,
    toplitz_quantize,
    weyl_quantize,
    wigner_transform,
)

__version__ = "0.1.0"
