"""Weighted Fourier transform ``F o T`` and spectral multipliers.

Convention: unitary, angular frequency,
``g_hat(xi) = (2 pi)**-0.5 * int g(y) exp(-i xi y) dy``, so Plancherel holds with
constant one and the Sobolev constants agree with the classical ones.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _fft
from .discretization import Grid, WeightedSignal, _Sampled
from .errors import SymbolSingular
from .transmutation import EuclideanSignal, inverse_transmute, transmute

__all__ = ["SpectralDensity", "wft", "iwft", "apply_multiplier", "spectral_norm"]


@dataclass(frozen=True, eq=False)
class SpectralDensity(_Sampled):
    """Samples at ``grid.xi_nodes`` (ascending frequencies)."""

    samples: np.ndarray
    grid: Grid


def wft(f: WeightedSignal) -> SpectralDensity:
    v = transmute(f)
    return SpectralDensity(_fft.forward(v.samples, f.grid), f.grid)


def iwft(F: SpectralDensity) -> WeightedSignal:
    v = EuclideanSignal(_fft.inverse(F.samples, F.grid), F.grid)
    return inverse_transmute(v)


def apply_multiplier(F: SpectralDensity, symbol) -> SpectralDensity:
    """Pointwise product with ``symbol(xi)``.

    ``symbol`` is a vectorised callable of the frequency nodes or an array of
    values at them.  Any Bernstein-type symbol can be passed here; only the
    power family is certified by :mod:`tspectral.solver`.
    """
    xi = F.grid.xi_nodes
    vals = symbol(xi) if callable(symbol) else symbol
    vals = np.broadcast_to(np.asarray(vals, dtype=complex), xi.shape)
    if not np.all(np.isfinite(vals)):
        bad = xi[~np.isfinite(vals)]
        raise SymbolSingular(f"symbol is not finite at xi = {bad[:5]}")
    return SpectralDensity(F.samples * vals, F.grid)


def spectral_norm(F: SpectralDensity) -> float:
    """Rectangle-rule L^2 norm in xi."""
    return float(np.sqrt(F.grid.dxi) * np.linalg.norm(F.samples))
