"""Structural pairs (psi, omega): a scale function and a weight.

A geometry is the pair of a strictly increasing smooth scale ``psi`` mapping an
open interval ``I`` onto the real line, and a strictly positive smooth weight
``omega`` of at most polynomial growth.  Only closed-form presets are offered,
so every geometry has an exact inverse and its admissibility can be checked
when it is built.

Scales
    :class:`Identity`, :class:`Affine`, :class:`Hadamard` (``psi = ln(t + t_shift)``)
    and :class:`Composed` chains of those.
Weights
    :class:`ConstantWeight`, :class:`PolyWeight` (``(1 + t**2)**(p/2)``) and
    :class:`PolynomialCoeffs`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Union

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainEmpty, NonMonotoneScale, NonPositiveWeight, OutOfDomain

__all__ = [
    "Identity",
    "Affine",
    "Hadamard",
    "Composed",
    "ConstantWeight",
    "PolyWeight",
    "PolynomialCoeffs",
    "GeometryPair",
    "GeometryReport",
    "make_geometry",
    "validate_geometry",
    "jacobian_factor",
]


# ---------------------------------------------------------------------------
# scale functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    """psi(t) = t on the whole line."""

    domain = (-math.inf, math.inf)

    def psi(self, t):
        return np.asarray(t, dtype=float) * 1.0

    def dpsi(self, t):
        return np.ones_like(np.asarray(t, dtype=float))

    def inverse(self, y):
        return np.asarray(y, dtype=float) * 1.0

    def descriptor(self) -> dict:
        return {"kind": "identity", "params": {}}


@dataclass(frozen=True)
class Affine:
    """psi(t) = a t + b with slope a > 0."""

    a: float = 1.0
    b: float = 0.0

    domain = (-math.inf, math.inf)

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainEmpty(f"affine parameters must be finite, got a={self.a}, b={self.b}")
        if self.a <= 0:
            raise NonMonotoneScale(f"affine slope must be positive, got a={self.a}")

    def psi(self, t):
        return self.a * np.asarray(t, dtype=float) + self.b

    def dpsi(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.a)

    def inverse(self, y):
        return (np.asarray(y, dtype=float) - self.b) / self.a

    def descriptor(self) -> dict:
        return {"kind": "affine", "params": {"a": self.a, "b": self.b}}


@dataclass(frozen=True)
class Hadamard:
    """psi(t) = ln(t + t_shift) on (-t_shift, inf)."""

    t_shift: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.t_shift):
            raise DomainEmpty(f"t_shift must be finite, got {self.t_shift}")

    @property
    def domain(self):
        return (-self.t_shift, math.inf)

    def psi(self, t):
        return np.log(np.asarray(t, dtype=float) + self.t_shift)

    def dpsi(self, t):
        return 1.0 / (np.asarray(t, dtype=float) + self.t_shift)

    def inverse(self, y):
        return np.exp(np.asarray(y, dtype=float)) - self.t_shift

    def descriptor(self) -> dict:
        return {"kind": "hadamard", "params": {"t_shift": self.t_shift}}


@dataclass(frozen=True)
class Composed:
    """psi = maps[-1] o ... o maps[0].

    Every map after the first must be defined on the whole line, since the
    previous map is onto R.
    """

    maps: tuple = ()

    def __post_init__(self):
        if not self.maps:
            raise DomainEmpty("composed scale needs at least one map")
        object.__setattr__(self, "maps", tuple(self.maps))
        for m in self.maps[1:]:
            lo, hi = m.domain
            if lo != -math.inf or hi != math.inf:
                raise DomainEmpty(
                    f"{type(m).__name__} is not defined on all of R and cannot follow another map"
                )

    @property
    def domain(self):
        return self.maps[0].domain

    def psi(self, t):
        y = np.asarray(t, dtype=float)
        for m in self.maps:
            y = m.psi(y)
        return y

    def dpsi(self, t):
        x = np.asarray(t, dtype=float)
        d = np.ones_like(x)
        for m in self.maps:
            d = d * m.dpsi(x)
            x = m.psi(x)
        return d

    def inverse(self, y):
        t = np.asarray(y, dtype=float)
        for m in reversed(self.maps):
            t = m.inverse(t)
        return t

    def descriptor(self) -> dict:
        return {"kind": "composed", "params": {"maps": [m.descriptor() for m in self.maps]}}


Scale = Union[Identity, Affine, Hadamard, Composed]


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantWeight:
    c: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise NonPositiveWeight(f"constant weight must be positive and finite, got {self.c}")

    def omega(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.c)

    def domega(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))

    def descriptor(self) -> dict:
        return {"kind": "constant", "c": self.c}


@dataclass(frozen=True)
class PolyWeight:
    """omega(t) = (1 + t**2)**(p/2)."""

    p: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.p):
            raise NonPositiveWeight(f"exponent must be finite, got {self.p}")

    def omega(self, t):
        t = np.asarray(t, dtype=float)
        return (1.0 + t * t) ** (0.5 * self.p)

    def domega(self, t):
        t = np.asarray(t, dtype=float)
        return self.p * t * (1.0 + t * t) ** (0.5 * self.p - 1.0)

    def descriptor(self) -> dict:
        return {"kind": "poly", "p": self.p}


@dataclass(frozen=True)
class PolynomialCoeffs:
    """omega(t) = sum_k coeffs[k] t**k (ascending order).

    Positivity on the domain is checked by :class:`GeometryPair`, which knows
    the interval.
    """

    coeffs: tuple = (1.0,)

    def __post_init__(self):
        c = tuple(float(x) for x in self.coeffs)
        if not c or not all(math.isfinite(x) for x in c) or all(x == 0 for x in c):
            raise NonPositiveWeight(f"polynomial weight needs finite, not all zero coefficients: {c}")
        object.__setattr__(self, "coeffs", c)

    def omega(self, t):
        return P.polyval(np.asarray(t, dtype=float), self.coeffs)

    def domega(self, t):
        return P.polyval(np.asarray(t, dtype=float), P.polyder(self.coeffs))

    def descriptor(self) -> dict:
        return {"kind": "coeffs", "coeffs": list(self.coeffs)}

    def check_positive(self, domain) -> None:
        lo, hi = domain
        roots = P.polyroots(self.coeffs) if len(self.coeffs) > 1 else np.array([])
        scale = max(1.0, *(abs(r) for r in roots)) if len(roots) else 1.0
        for r in roots:
            if abs(r.imag) <= 1e-12 * scale and lo < r.real < hi:
                raise NonPositiveWeight(f"polynomial weight vanishes at t={r.real:.17g} inside the domain")
        probe = 0.0 if lo < 0.0 < hi else (lo + 1.0 if math.isinf(hi) else 0.5 * (lo + hi))
        if not self.omega(probe) > 0:
            raise NonPositiveWeight("polynomial weight is negative on the domain")


Weight = Union[ConstantWeight, PolyWeight, PolynomialCoeffs]


# ---------------------------------------------------------------------------
# the pair
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeometryPair:
    """Validated structural pair.  Immutable; all methods accept arrays."""

    scale: Scale = field(default_factory=Identity)
    weight: Weight = field(default_factory=ConstantWeight)

    def __post_init__(self):
        lo, hi = self.scale.domain
        if not lo < hi:
            raise DomainEmpty(f"empty domain ({lo}, {hi})")
        if isinstance(self.weight, PolynomialCoeffs):
            self.weight.check_positive(self.scale.domain)

    @property
    def kind(self) -> str:
        return self.scale.descriptor()["kind"]

    @property
    def domain(self) -> tuple:
        return self.scale.domain

    def psi(self, t):
        return self.scale.psi(t)

    def dpsi(self, t):
        return self.scale.dpsi(t)

    def psi_inv(self, y):
        return self.scale.inverse(y)

    def omega(self, t):
        return self.weight.omega(t)

    def domega(self, t):
        return self.weight.domega(t)

    def contains(self, t) -> bool:
        lo, hi = self.domain
        t = np.asarray(t, dtype=float)
        return bool(np.all((t > lo) & (t < hi)))

    def require_inside(self, t) -> None:
        if not self.contains(t):
            raise OutOfDomain(f"point(s) {t} outside the domain {self.domain}")

    def descriptor(self) -> dict:
        d = self.scale.descriptor()
        d["weight"] = self.weight.descriptor()
        return d

    def __repr__(self):
        return f"GeometryPair({self.scale!r}, {self.weight!r})"


_SCALES = {"identity", "affine", "hadamard", "composed"}


def _make_scale(kind: str, params: Mapping[str, Any]) -> Scale:
    if kind == "identity":
        return Identity()
    if kind == "affine":
        return Affine(float(params.get("a", 1.0)), float(params.get("b", 0.0)))
    if kind == "hadamard":
        return Hadamard(float(params.get("t_shift", 0.0)))
    if kind == "composed":
        maps = [_make_scale(m["kind"], m.get("params", {})) for m in params.get("maps", [])]
        return Composed(tuple(maps))
    raise KeyError(f"unknown scale kind {kind!r}; expected one of {sorted(_SCALES)}")


def _make_weight(desc: Mapping[str, Any] | None) -> Weight:
    if desc is None:
        return ConstantWeight(1.0)
    kind = desc.get("kind", "constant")
    if kind == "constant":
        return ConstantWeight(float(desc.get("c", 1.0)))
    if kind == "poly":
        return PolyWeight(float(desc.get("p", 1.0)))
    if kind == "coeffs":
        return PolynomialCoeffs(tuple(desc["coeffs"]))
    raise KeyError(f"unknown weight kind {kind!r}; expected constant, poly or coeffs")


def make_geometry(desc: Mapping[str, Any] | GeometryPair | None = None) -> GeometryPair:
    """Build a geometry from a JSON-style descriptor.

    ``{"kind": "identity"|"affine"|"hadamard"|"composed", "params": {...},
    "weight": {"kind": "constant"|"poly"|"coeffs", ...}}``.  Missing pieces
    default to the identity scale and the unit weight.

    >>> g = make_geometry({"kind": "hadamard", "params": {"t_shift": 0}})
    >>> float(g.psi(np.e))
    1.0
    """
    if isinstance(desc, GeometryPair):
        return desc
    desc = dict(desc or {})
    scale = _make_scale(desc.get("kind", "identity"), desc.get("params", {}) or {})
    return GeometryPair(scale, _make_weight(desc.get("weight")))


@dataclass(frozen=True)
class GeometryReport:
    n_samples: int
    min_dpsi: float
    min_omega: float
    max_roundtrip_error: float
    failures: tuple
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "min_dpsi": self.min_dpsi,
            "min_omega": self.min_omega,
            "max_roundtrip_error": self.max_roundtrip_error,
            "failures": list(self.failures),
            "pass": self.passed,
        }


def sample_domain(g: GeometryPair, n: int, decades: float = 6.0) -> np.ndarray:
    """Log-spaced sample of the domain, dense near its finite end or near 0."""
    lo, hi = g.domain
    if math.isinf(lo) and math.isinf(hi):
        half = np.logspace(-decades / 2, decades / 2, n // 2)
        pts = np.concatenate([-half[::-1], [0.0] if n % 2 else [], half])
    elif math.isinf(hi):
        pts = lo + np.logspace(-decades, decades, n)
    else:  # pragma: no cover - presets only have right-unbounded domains
        pts = np.linspace(lo, hi, n + 2)[1:-1]
    return pts


def validate_geometry(g: GeometryPair, n_samples: int = 100) -> GeometryReport:
    """Spot-check (H1)/(H2) and the inverse on a log-spaced sample."""
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    t = sample_domain(g, n_samples)
    dpsi = g.dpsi(t)
    om = g.omega(t)
    back = g.psi_inv(g.psi(t))
    rt = float(np.max(np.abs(back - t) / np.maximum(np.abs(t), 1.0)))
    failures = []
    if not np.all(np.isfinite(dpsi)) or np.min(dpsi) <= 0:
        failures.append("psi' is not strictly positive on the sample")
    if not np.all(np.isfinite(om)) or np.min(om) <= 0:
        failures.append("omega is not strictly positive on the sample")
    if not rt <= 1e-12:
        failures.append(f"psi_inv(psi(t)) round trip error {rt:.3g} exceeds 1e-12")
    return GeometryReport(
        n_samples=len(t),
        min_dpsi=float(np.min(dpsi)),
        min_omega=float(np.min(om)),
        max_roundtrip_error=rt,
        failures=tuple(failures),
        passed=not failures,
    )


def jacobian_factor(g: GeometryPair, tau):
    """Amplitude 1 / (omega(tau)**2 psi'(tau)) that normalises a delta at tau."""
    g.require_inside(tau)
    w = g.omega(tau)
    out = 1.0 / (w * w * g.dpsi(tau))
    return float(out) if np.ndim(out) == 0 else out
