"""Spectral Sobolev norms, the embedding constant and an H^s sampler."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import integrate

from . import _fft
from .discretization import Grid, WeightedSignal
from .errors import EmbeddingThreshold
from .weighted_fourier import wft

__all__ = [
    "sobolev_norm",
    "embedding_constant",
    "EmbeddingReport",
    "check_embedding",
    "random_hs_sample",
]


def sobolev_norm(f: WeightedSignal, s: float) -> float:
    """``sqrt(dxi * sum((1 + xi**2)**s |wft(f)|**2))``."""
    F = wft(f)
    xi = f.grid.xi_nodes
    dens = (1.0 + xi * xi) ** s * np.abs(F.samples) ** 2
    return float(math.sqrt(f.grid.dxi * np.sum(dens)))


def embedding_constant(s: float) -> float:
    """Constant ``C_s`` with ``sup|v| <= C_s ||v||_{H^s}`` on the line.

    ``C_s = (2 pi)**-0.5 * (int (1 + xi**2)**-s dxi)**0.5`` comes from bounding
    ``|v|`` by the L^1 norm of its spectrum and applying Cauchy-Schwarz.  It is
    a valid constant, not necessarily the sharp one.
    """
    if not s > 0.5:
        raise EmbeddingThreshold(f"embedding needs s > 1/2, got s={s}")
    half, _ = integrate.quad(lambda x: (1.0 + x * x) ** (-s), 0.0, np.inf, epsabs=0.0, epsrel=1e-13, limit=200)
    return math.sqrt(2.0 * half / (2.0 * math.pi))


@dataclass(frozen=True)
class EmbeddingReport:
    s: float
    C_s: float
    lhs: float
    rhs: float
    ratio: float
    passed: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def check_embedding(f: WeightedSignal, s: float, slack: float = 1e-6) -> EmbeddingReport:
    """Compare ``max omega |f|`` against ``C_s ||f||_{H^s}``."""
    C = embedding_constant(s)
    lhs = float(np.max(f.grid.omega_nodes * np.abs(f.samples)))
    rhs = C * sobolev_norm(f, s)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
    return EmbeddingReport(float(s), C, lhs, rhs, ratio, ratio <= 1.0 + slack)


def random_hs_sample(seed, s: float, margin: float, grid: Grid) -> WeightedSignal:
    """Real random signal with finite H^s norm.

    Standard complex Gaussian coefficients on the xi-grid are coloured by
    ``(1 + xi**2)**(-(s + margin)/2)`` and symmetrised (``c(-xi) = conj c(xi)``,
    Nyquist and zero modes real) before the inverse transform.  ``seed`` is an
    int or a ``numpy.random.Generator``.
    """
    if not margin > 0.5:
        raise ValueError(f"margin must exceed 1/2, got {margin}")
    rng = np.random.default_rng(seed)
    N = grid.n_points
    z = (rng.standard_normal(N) + 1j * rng.standard_normal(N)) / math.sqrt(2.0)
    mirror = (N - np.arange(N)) % N  # index of -xi_k in the ascending layout
    z = 0.5 * (z + np.conj(z[mirror]))
    xi = grid.xi_nodes
    F = z * (1.0 + xi * xi) ** (-0.5 * (s + margin))
    v = _fft.inverse(F, grid).real
    return WeightedSignal(v / grid.omega_nodes, grid)
