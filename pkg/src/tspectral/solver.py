"""Shifted fractional aging equation ``(D^alpha + I) u = f``.

``D^alpha`` is defined spectrally: the ``(i xi)**alpha`` multiplier of the
weighted Fourier transform, principal branch
``(i xi)**alpha = |xi|**alpha exp(i alpha pi sign(xi) / 2)``.  For
``0 < alpha < 2`` the shifted symbol ``sigma = (i xi)**alpha + 1`` has argument
strictly inside ``(-pi, pi)`` and never vanishes, so the solve is a pointwise
division.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .discretization import Grid, WeightedSignal
from .distributions import mollified_delta
from .errors import OrderOutOfRange, OrderTooLowForEnvelope
from .geometry import GeometryPair
from .sobolev import sobolev_norm
from .weighted_fourier import SpectralDensity, apply_multiplier, iwft, wft

__all__ = [
    "AgingSymbol",
    "aging_symbol_eval",
    "apply_aging_operator",
    "SolveReport",
    "solve_aging",
    "green_function",
    "envelope_sup",
    "EnvelopeReport",
    "check_decay_envelope",
    "green_sweep",
]


@dataclass(frozen=True)
class AgingSymbol:
    """Shifted power symbol ``sigma(xi) = (i xi)**alpha + 1``, ``0 < alpha < 2``."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (0.0 < a < 2.0):
            raise OrderOutOfRange(f"alpha must lie in (0, 2), got {self.alpha}")
        object.__setattr__(self, "alpha", a)

    def power(self, xi):
        """``(i xi)**alpha`` on the principal branch; 0 at xi = 0."""
        xi = np.asarray(xi, dtype=float)
        return np.abs(xi) ** self.alpha * np.exp(0.5j * math.pi * self.alpha * np.sign(xi))

    def __call__(self, xi):
        return self.power(xi) + 1.0

    def multiplier(self, xi):
        """Regularity-gain factor ``(1 + xi**2)**(alpha/2) / |sigma(xi)|``."""
        xi = np.asarray(xi, dtype=float)
        return (1.0 + xi * xi) ** (0.5 * self.alpha) / np.abs(self(xi))


def aging_symbol_eval(a: AgingSymbol, xi):
    out = a(xi)
    return complex(out) if np.ndim(out) == 0 else out


def apply_aging_operator(u: WeightedSignal, a: AgingSymbol) -> WeightedSignal:
    return iwft(apply_multiplier(wft(u), a))


@dataclass(frozen=True)
class SolveReport:
    solution: WeightedSignal
    alpha: float
    s: float
    multiplier_bound: float
    input_norm_s: float
    output_norm_s_plus_alpha: float

    @property
    def bound_holds(self) -> bool:
        return self.output_norm_s_plus_alpha <= self.multiplier_bound * self.input_norm_s * (1 + 1e-9)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "s": self.s,
            "multiplier_bound": self.multiplier_bound,
            "input_norm_s": self.input_norm_s,
            "output_norm_s_plus_alpha": self.output_norm_s_plus_alpha,
            "bound_holds": self.bound_holds,
        }


def solve_aging(f: WeightedSignal, a: AgingSymbol, s: float = 0.0) -> SolveReport:
    """Solve ``(D^alpha + I) u = f`` by dividing the spectrum by sigma.

    ``s`` only selects which norms go into the report; the solution does not
    depend on it.
    """
    F = wft(f)
    xi = f.grid.xi_nodes
    U = SpectralDensity(F.samples / a(xi), f.grid)
    u = iwft(U)
    return SolveReport(
        solution=u,
        alpha=a.alpha,
        s=float(s),
        multiplier_bound=float(np.max(a.multiplier(xi))),
        input_norm_s=sobolev_norm(f, s),
        output_norm_s_plus_alpha=sobolev_norm(u, s + a.alpha),
    )


def green_function(
    g: GeometryPair,
    grid: Grid,
    a: AgingSymbol,
    t0: float,
    eps: float,
    envelope: bool = False,
) -> WeightedSignal:
    """Mollified fundamental solution driven by the weighted delta at ``t0``.

    Pass ``envelope=True`` when the result feeds a pointwise envelope check;
    that claim needs ``alpha > 1``.
    """
    if envelope and not a.alpha > 1.0:
        raise OrderTooLowForEnvelope(f"pointwise envelope needs alpha > 1, got {a.alpha}")
    return solve_aging(mollified_delta(g, grid, t0, eps), a).solution


def envelope_sup(G: WeightedSignal, t0: float) -> float:
    """``max_j omega(t_j) omega(t0) |G_j|``."""
    w0 = float(G.grid.geometry.omega(t0))
    return float(np.max(G.grid.omega_nodes * np.abs(G.samples)) * w0)


@dataclass(frozen=True)
class EnvelopeReport:
    t0: tuple
    sups: tuple
    spread: float
    passed: bool

    def to_dict(self) -> dict:
        return {"t0": list(self.t0), "sups": list(self.sups), "spread": self.spread, "pass": self.passed}


def check_decay_envelope(greens: Sequence[WeightedSignal], t0s: Sequence[float], alpha: float | None = None) -> EnvelopeReport:
    """Envelope sups over a sweep of source points.

    Passes when every sup is finite and positive, i.e. the family is bounded.
    ``spread`` is max/min of the sups; the constant itself is not certified.
    """
    if alpha is not None and not alpha > 1.0:
        raise OrderTooLowForEnvelope(f"pointwise envelope needs alpha > 1, got {alpha}")
    if len(greens) != len(t0s):
        raise ValueError("one Green's function per source point is required")
    sups = np.array([envelope_sup(G, t0) for G, t0 in zip(greens, t0s)])
    ok = bool(np.all(np.isfinite(sups)) and np.all(sups > 0))
    spread = float(sups.max() / sups.min()) if ok else math.inf
    return EnvelopeReport(tuple(float(t) for t in t0s), tuple(sups.tolist()), spread, ok)


def green_sweep(g: GeometryPair, grid: Grid, a: AgingSymbol, t0s: Sequence[float], eps: float) -> EnvelopeReport:
    greens = [green_function(g, grid, a, t0, eps, envelope=True) for t0 in t0s]
    return check_decay_envelope(greens, t0s, a.alpha)
