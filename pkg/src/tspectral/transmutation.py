"""The transmutation ``T``, its inverse, the weighted derivative and seminorms.

``(T f)(y) = omega(psi_inv(y)) f(psi_inv(y))``.  On the matched grid the
physical nodes are exactly ``psi_inv(y_j)``, so ``T`` is a pointwise
multiplication by ``omega(t_j)`` with no interpolation.

The weighted derivative ``(1 / (omega psi')) d/dt (omega f)`` is conjugate to
``d/dy`` under ``T`` (chain rule), and is evaluated that way: transmute,
differentiate spectrally in ``y``, pull back.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _fft
from .discretization import Grid, WeightedSignal, _Sampled

__all__ = [
    "EuclideanSignal",
    "transmute",
    "inverse_transmute",
    "pullback",
    "y_derivative",
    "weighted_derivative",
    "seminorm",
]


@dataclass(frozen=True, eq=False)
class EuclideanSignal(_Sampled):
    """Samples of a function at the uniform nodes ``grid.y_nodes``."""

    samples: np.ndarray
    grid: Grid


def transmute(f: WeightedSignal) -> EuclideanSignal:
    return EuclideanSignal(f.grid.omega_nodes * f.samples, f.grid)


def inverse_transmute(v: EuclideanSignal) -> WeightedSignal:
    return WeightedSignal(v.samples / v.grid.omega_nodes, v.grid)


def pullback(grid: Grid, profile) -> WeightedSignal:
    """``T^-1`` of the y-profile ``profile`` (a callable or an array of samples)."""
    v = profile(grid.y_nodes) if callable(profile) else profile
    return inverse_transmute(EuclideanSignal(v, grid))


def y_derivative(v: EuclideanSignal, m: int = 1) -> EuclideanSignal:
    """Spectral ``(d/dy)**m``: multiply the unitary DFT by ``(i xi)**m``."""
    if m < 0:
        raise ValueError(f"derivative order must be >= 0, got {m}")
    if m == 0:
        return v
    grid = v.grid
    V = _fft.forward(v.samples, grid) * (1j * grid.xi_nodes) ** m
    return EuclideanSignal(_fft.inverse(V, grid), grid)


def weighted_derivative(f: WeightedSignal, m: int = 1) -> WeightedSignal:
    """Apply the fundamental weighted derivative ``m`` times.

    The y-space spectrum of ``T f`` has to decay by ``+-L``; profiles that do
    not vanish at the grid ends must be windowed by the caller (see
    :func:`tspectral.discretization.smooth_window`), otherwise Gibbs ringing
    pollutes the result.
    """
    if m == 0:
        return f
    return inverse_transmute(y_derivative(transmute(f), m))


def seminorm(f: WeightedSignal, k: int, m: int) -> float:
    """Grid maximum of ``|psi(t)**k * D**m f(t)|``.

    Since ``psi(t_j) = y_j`` exactly, the y-nodes are used directly.  The grid
    maximum is a lower bound for the true supremum.
    """
    if k < 0 or m < 0:
        raise ValueError("seminorm indices must be nonnegative")
    d = weighted_derivative(f, m).samples
    y = f.grid.y_nodes
    return float(np.max(np.abs(y ** k * d)))
