"""Hermite functions and the weighted Hermite basis ``T^-1 h_n``.

Classical Hermite functions come from the normalised three-term recurrence

    h_{n+1}(y) = sqrt(2/(n+1)) y h_n(y) - sqrt(n/(n+1)) h_{n-1}(y),
    h_0(y) = pi**-0.25 exp(-y**2/2),

run on a mantissa/exponent split so that large ``|y|`` neither underflows in
the seed nor overflows in the growth phase.  Tested for ``n <= 500``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .discretization import Grid, WeightedSignal, build_grid
from .errors import GridMismatch, TooManyModes
from .geometry import GeometryPair, make_geometry

__all__ = [
    "hermite_functions",
    "hermite_function",
    "weighted_hermite",
    "HermiteExpansion",
    "expand",
    "reconstruct",
    "gram_matrix",
]

_RESCALE = 1e150
_LOG_RESCALE = np.log(_RESCALE)


def hermite_functions(n_max: int, points) -> np.ndarray:
    """Rows ``h_0 .. h_{n_max}`` evaluated at ``points``; shape (n_max+1, len)."""
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    y = np.atleast_1d(np.asarray(points, dtype=float))
    out = np.empty((n_max + 1, y.size))
    expo = -0.5 * y * y
    prev = np.zeros_like(y)
    cur = np.full_like(y, np.pi ** -0.25)
    out[0] = _combine(cur, expo)
    for n in range(n_max):
        nxt = np.sqrt(2.0 / (n + 1)) * y * cur - np.sqrt(n / (n + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            cur = np.where(big, cur / _RESCALE, cur)
            prev = np.where(big, prev / _RESCALE, prev)
            expo = np.where(big, expo + _LOG_RESCALE, expo)
        out[n + 1] = _combine(cur, expo)
    return out


def _combine(mant, expo):
    # exp(expo) alone may underflow even when the product is representable
    with np.errstate(divide="ignore"):
        return np.sign(mant) * np.exp(expo + np.log(np.abs(mant)))


def hermite_function(n: int, points) -> np.ndarray:
    """Classical orthonormal Hermite function ``h_n`` at ``points``."""
    if n < 0:
        raise ValueError(f"Hermite index must be >= 0, got {n}")
    return hermite_functions(n, points)[n].reshape(np.shape(points))


def weighted_hermite(g: GeometryPair, n: int, grid: Grid) -> WeightedSignal:
    """Samples ``h_n(psi(t_j)) / omega(t_j)`` of the weighted basis function."""
    if grid.geometry != g:
        raise GridMismatch("grid was not built from this geometry")
    return WeightedSignal(hermite_function(n, grid.y_nodes) / grid.omega_nodes, grid)


@dataclass(frozen=True)
class HermiteExpansion:
    coefficients: np.ndarray
    grid: Grid

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).ravel()
        if c.size < 1 or not np.all(np.isfinite(c)):
            raise ValueError("expansion needs at least one finite coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def geometry(self) -> GeometryPair:
        return self.grid.geometry

    @property
    def n_modes(self) -> int:
        return self.coefficients.size

    def to_json(self) -> str:
        return json.dumps(
            {
                "geometry": self.geometry.descriptor(),
                "grid": {"L": self.grid.half_width, "N": self.grid.n_points},
                "coeffs": [[float(c.real), float(c.imag)] for c in self.coefficients],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "HermiteExpansion":
        d = json.loads(text)
        gd = d.get("grid", {})
        grid = build_grid(make_geometry(d["geometry"]), gd.get("L", 20.0), gd.get("N", 4096))
        coeffs = [complex(re, im) for re, im in d["coeffs"]]
        return cls(np.array(coeffs), grid)


def expand(f: WeightedSignal, M: int) -> HermiteExpansion:
    """First ``M`` coefficients ``c_n = <f, H_n>`` in the weighted inner product."""
    N = f.grid.n_points
    if not 1 <= M <= N // 2:
        raise TooManyModes(f"need 1 <= M <= N/2 = {N // 2}, got M={M}")
    grid = f.grid
    H = hermite_functions(M - 1, grid.y_nodes)
    # <f, T^-1 h_n> = dy * sum(omega**2 f h_n / omega); h_n is real
    c = grid.dy * (H @ (grid.omega_nodes * f.samples))
    return HermiteExpansion(c, grid)


def reconstruct(e: HermiteExpansion) -> WeightedSignal:
    grid = e.grid
    H = hermite_functions(e.n_modes - 1, grid.y_nodes)
    return WeightedSignal((e.coefficients @ H) / grid.omega_nodes, grid)


def gram_matrix(g: GeometryPair, grid: Grid, n_max: int) -> np.ndarray:
    """``G[m, n] = <H_m, H_n>`` for ``m, n <= n_max`` via the weighted quadrature."""
    from .discretization import weighted_inner

    basis = [weighted_hermite(g, n, grid) for n in range(n_max + 1)]
    G = np.empty((n_max + 1, n_max + 1), dtype=complex)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis[i:], start=i):
            G[i, j] = weighted_inner(a, b)
            G[j, i] = np.conj(G[i, j])
    return G
