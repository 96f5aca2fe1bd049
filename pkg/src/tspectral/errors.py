"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`TransmutationError`, which is itself a :class:`ValueError`, so callers
that only care about "bad input" can catch the builtin.
"""


class TransmutationError(ValueError):
    """Base class for all library errors."""


class NonMonotoneScale(TransmutationError):
    """The scale function is not strictly increasing."""


class NonPositiveWeight(TransmutationError):
    """The weight function is not strictly positive on the domain."""


class DomainEmpty(TransmutationError):
    """The geometry has no admissible domain."""


class OutOfDomain(TransmutationError):
    """A point lies outside the open interval on which the scale is defined."""


class InvalidGridSize(TransmutationError):
    """Grid size is not a power of two >= 8, or the half width is not positive."""


class DomainOverflow(TransmutationError):
    """Pulled-back grid nodes leave the representable or admissible range."""


class GridMismatch(TransmutationError):
    """Two sampled objects live on different grids."""


class SymbolSingular(TransmutationError):
    """A spectral symbol is not finite at some frequency node."""


class TooManyModes(TransmutationError):
    """Requested Hermite expansion is outside 1 <= M <= N/2."""


class UnresolvedMollifier(TransmutationError):
    """Mollifier width is below the local grid resolution."""


class EmbeddingThreshold(TransmutationError):
    """Sobolev embedding requested with s <= 1/2."""


class OrderOutOfRange(TransmutationError):
    """Fractional order outside the open interval (0, 2)."""


class OrderTooLowForEnvelope(TransmutationError):
    """Pointwise envelope checks require fractional order > 1."""
