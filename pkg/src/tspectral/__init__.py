"""Weighted spectral calculus on transmuted grids.

Signals on a geometry ``(psi, omega)`` are mapped to the plain line by the
transmutation ``T f = (omega f) o psi_inv``; Fourier analysis, Hermite
expansions, Sobolev norms and the fractional aging solver all run there and
are pulled back.
"""
from .discretization import Grid, WeightedSignal, build_grid, smooth_window, weighted_inner, weighted_norm
from .distributions import delta_convergence_study, mollified_delta, pair
from .errors import *  # noqa: F401,F403
from .geometry import (
    Affine,
    Composed,
    ConstantWeight,
    GeometryPair,
    Hadamard,
    Identity,
    PolynomialCoeffs,
    PolyWeight,
    jacobian_factor,
    make_geometry,
    validate_geometry,
)
from .hermite import HermiteExpansion, expand, hermite_function, reconstruct, weighted_hermite
from .sobolev import check_embedding, embedding_constant, random_hs_sample, sobolev_norm
from .solver import (
    AgingSymbol,
    aging_symbol_eval,
    apply_aging_operator,
    check_decay_envelope,
    green_function,
    solve_aging,
)
from .transmutation import EuclideanSignal, inverse_transmute, pullback, seminorm, transmute, weighted_derivative
from .weighted_fourier import SpectralDensity, apply_multiplier, iwft, wft

__version__ = "0.1.0"
