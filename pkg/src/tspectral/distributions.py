"""Mollified weighted deltas and the bilinear duality pairing.

A weighted delta at ``tau`` samples test functions against the weighted
measure ``omega**2 psi' dt``; as a multiple of the standard delta it carries the
amplitude ``1 / (omega(tau)**2 psi'(tau))``.  Here the standard delta is
replaced by a Gaussian of width ``eps`` in t, so every statement becomes an
integral against a sampled function with an ``O(eps**2)`` error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .discretization import Grid, WeightedSignal, check_same_grid
from .errors import GridMismatch, UnresolvedMollifier
from .geometry import GeometryPair, jacobian_factor

__all__ = [
    "gaussian_mollifier",
    "mollified_delta",
    "pair",
    "local_spacing",
    "ConvergenceTable",
    "delta_convergence_study",
]

#: minimum number of local t-spacings per mollifier width
MIN_POINTS_PER_WIDTH = 4.0


def gaussian_mollifier(t, eps: float):
    """Unit-mass Gaussian ``(2 pi eps**2)**-0.5 exp(-t**2 / (2 eps**2))``."""
    t = np.asarray(t, dtype=float)
    return np.exp(-0.5 * (t / eps) ** 2) / (math.sqrt(2.0 * math.pi) * eps)


def mollified_delta(g: GeometryPair, grid: Grid, tau: float, eps: float, scaled: bool = True) -> WeightedSignal:
    """Gaussian approximation of the weighted delta at ``tau``.

    With ``scaled=False`` the jacobian amplitude is omitted and the result
    approximates the *standard* delta, which is what the scaling-law checks
    compare against.
    """
    if grid.geometry != g:
        raise GridMismatch("grid was not built from this geometry")
    if not eps > 0:
        raise ValueError(f"mollifier width must be positive, got {eps}")
    amp = jacobian_factor(g, tau) if scaled else 1.0
    return WeightedSignal(amp * gaussian_mollifier(grid.t_nodes - tau, eps), grid)


def pair(d: WeightedSignal, phi: WeightedSignal) -> complex:
    """Bilinear pairing ``int d phi omega**2 psi' dt`` (no conjugation)."""
    check_same_grid(d, phi)
    w2 = d.grid.omega_nodes ** 2
    return complex(d.grid.dy * np.sum(w2 * d.samples * phi.samples))


def local_spacing(grid: Grid, tau: float) -> float:
    """t-spacing of the grid near ``tau``: ``dy / psi'(tau)``."""
    return float(grid.dy / grid.geometry.dpsi(tau))


@dataclass(frozen=True)
class ConvergenceTable:
    eps: np.ndarray
    abs_error: np.ndarray
    est_order: np.ndarray
    tau: float
    exact: complex

    def rows(self):
        return list(zip(self.eps.tolist(), self.abs_error.tolist(), self.est_order.tolist()))

    @property
    def orders(self) -> np.ndarray:
        """Estimated orders without the leading undefined entry."""
        return self.est_order[1:]


TestFunction = Union[Callable, WeightedSignal]


def delta_convergence_study(
    g: GeometryPair,
    grid: Grid,
    tau: float,
    phi: TestFunction,
    eps_list: Sequence[float],
) -> ConvergenceTable:
    """Pairing error ``|<delta_eps, phi> - phi(tau)|`` over decreasing widths.

    ``phi`` is a callable of t (preferred: then ``phi(tau)`` is exact) or a
    sampled signal, in which case ``phi(tau)`` is read off by interpolation in
    y.  The order column compares consecutive rows; its first entry is NaN.
    """
    eps = np.asarray(eps_list, dtype=float)
    if eps.size < 1:
        raise ValueError("need at least one width")
    if np.any(np.diff(eps) >= 0):
        raise ValueError("eps_list must be strictly decreasing")
    h = local_spacing(grid, tau)
    if eps[-1] < MIN_POINTS_PER_WIDTH * h:
        raise UnresolvedMollifier(
            f"eps={eps[-1]:.3g} is below {MIN_POINTS_PER_WIDTH:g} local spacings ({h:.3g}) at tau={tau}"
        )
    if callable(phi):
        phi_sig = grid.sample(phi)
        exact = complex(phi(np.asarray(tau, dtype=float)))
    else:
        phi_sig = phi
        y0 = float(g.psi(tau))
        exact = complex(
            np.interp(y0, grid.y_nodes, phi.real) + 1j * np.interp(y0, grid.y_nodes, phi.imag)
        )
    err = np.array([abs(pair(mollified_delta(g, grid, tau, e), phi_sig) - exact) for e in eps])
    order = np.full(eps.size, np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        order[1:] = np.log(err[:-1] / err[1:]) / np.log(eps[:-1] / eps[1:])
    return ConvergenceTable(eps, err, order, float(tau), exact)
