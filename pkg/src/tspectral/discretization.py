"""Matched y/t/xi grids and weighted quadrature.

The uniform grid lives in transmuted space ``y``; physical nodes are its
pull-back ``t_j = psi_inv(y_j)`` and frequencies are the FFT dual of ``y``.
Under the substitution ``y = psi(t)`` the weighted measure
``omega(t)**2 psi'(t) dt`` becomes ``omega**2 dy``, so every weighted integral
is a rectangle rule on the uniform y-grid.  That makes the transmutation an
exact isometry at the discrete level.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainOverflow, GridMismatch, InvalidGridSize
from .geometry import GeometryPair

__all__ = ["Grid", "WeightedSignal", "build_grid", "weighted_inner", "weighted_norm", "smooth_window"]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Grid:
    """Uniform y-grid on [-L, L) with its t and xi companions.

    Use :func:`build_grid` rather than the constructor so that errors are
    reported with the documented exception types.
    """

    geometry: GeometryPair
    half_width: float
    n_points: int
    y_nodes: np.ndarray = field(init=False, repr=False, compare=False)
    t_nodes: np.ndarray = field(init=False, repr=False, compare=False)
    xi_nodes: np.ndarray = field(init=False, repr=False, compare=False)
    omega_nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        L, N = self.half_width, self.n_points
        j = np.arange(N)
        dy = 2.0 * L / N
        y = -L + j * dy
        with np.errstate(over="ignore", invalid="ignore"):
            t = self.geometry.psi_inv(y)
        if not np.all(np.isfinite(t)):
            raise DomainOverflow(f"psi_inv(+-{L}) is not representable for {self.geometry!r}")
        if not self.geometry.contains(t) or not np.all(np.diff(t) > 0):
            raise DomainOverflow(
                f"pulled-back nodes collapse onto the domain boundary for L={L}; reduce L"
            )
        k = np.arange(-N // 2, N // 2)
        object.__setattr__(self, "y_nodes", _frozen(y))
        object.__setattr__(self, "t_nodes", _frozen(t))
        object.__setattr__(self, "xi_nodes", _frozen(np.pi * k / L))
        object.__setattr__(self, "omega_nodes", _frozen(self.geometry.omega(t)))

    @property
    def dy(self) -> float:
        return 2.0 * self.half_width / self.n_points

    @property
    def dxi(self) -> float:
        return np.pi / self.half_width

    @property
    def shape(self) -> tuple:
        return (self.n_points,)

    def zeros(self) -> "WeightedSignal":
        return WeightedSignal(np.zeros(self.n_points, dtype=complex), self)

    def sample(self, func) -> "WeightedSignal":
        """Signal with samples ``func(t_nodes)``."""
        return WeightedSignal(np.asarray(func(self.t_nodes), dtype=complex), self)


def build_grid(g: GeometryPair, L: float = 20.0, N: int = 4096) -> Grid:
    """Grid with ``N`` uniform y-nodes on [-L, L).

    ``N`` must be a power of two, at least 8.
    """
    if not (isinstance(N, (int, np.integer)) and N >= 8 and (N & (N - 1)) == 0):
        raise InvalidGridSize(f"N must be a power of two >= 8, got {N!r}")
    if not (np.isfinite(L) and L > 0):
        raise InvalidGridSize(f"half width must be positive and finite, got {L!r}")
    return Grid(g, float(L), int(N))


def check_same_grid(a, b) -> None:
    if a.grid is not b.grid and a.grid != b.grid:
        raise GridMismatch("operands are sampled on different grids")


class _Sampled:
    """Shared behaviour of the three sampled-function types.

    Subclasses are frozen dataclasses with ``samples`` and ``grid`` fields.
    """

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex)
        if s.shape != (self.grid.n_points,):
            raise ValueError(f"expected {self.grid.n_points} samples, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def _like(self, samples):
        return type(self)(samples, self.grid)

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        check_same_grid(self, other)
        return self._like(self.samples + other.samples)

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        check_same_grid(self, other)
        return self._like(self.samples - other.samples)

    def __mul__(self, c):
        if not np.isscalar(c):
            return NotImplemented
        return self._like(c * self.samples)

    __rmul__ = __mul__

    def __neg__(self):
        return self._like(-self.samples)

    def __len__(self):
        return len(self.samples)

    @property
    def real(self) -> np.ndarray:
        return self.samples.real

    @property
    def imag(self) -> np.ndarray:
        return self.samples.imag


@dataclass(frozen=True, eq=False)
class WeightedSignal(_Sampled):
    """Samples of a function at the physical nodes ``grid.t_nodes``."""

    samples: np.ndarray
    grid: Grid


def weighted_inner(f: WeightedSignal, h: WeightedSignal) -> complex:
    """Weighted inner product ``dy * sum(omega**2 f conj(h))``."""
    check_same_grid(f, h)
    w2 = f.grid.omega_nodes ** 2
    return complex(f.grid.dy * np.sum(w2 * f.samples * np.conj(h.samples)))


def weighted_norm(f: WeightedSignal) -> float:
    """Norm in L^2 of the weighted measure; computed as ``||omega f||`` in y."""
    v = f.grid.omega_nodes * f.samples
    return float(np.sqrt(f.grid.dy) * np.linalg.norm(v))


def smooth_window(x, half_plateau: float, edge: float = 1.0):
    """Erf plateau equal to 1 on ``|x| < half_plateau - few*edge``.

    Never applied implicitly; callers that feed non-decaying profiles into the
    spectral routines window them explicitly with this.
    """
    from scipy.special import erf

    x = np.asarray(x, dtype=float)
    return 0.5 * (erf((x + half_plateau) / edge) - erf((x - half_plateau) / edge))
