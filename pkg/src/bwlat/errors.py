"""
Exception types for the bwlat package.

Every error is a ValueError subclass so callers that only know about
ValueError still catch them.
"""


class BwlatError(ValueError):
    """Base class for all bwlat errors."""


class SingularMatrix(BwlatError):
    """A matrix that must be invertible has determinant zero."""


class SingularGram(BwlatError):
    """A lattice basis has a degenerate Gram matrix."""


class InvalidParameter(BwlatError):
    """A numeric parameter is outside its allowed range."""


class InvalidDimension(BwlatError):
    """A dimension is not of the required shape (e.g. not a multiple of 8)."""


class OutOfRange(BwlatError):
    """An argument of an asymptotic formula is outside its domain."""


class TooLarge(BwlatError):
    """An exhaustive computation was requested beyond its cap."""


class ResourceCap(BwlatError):
    """A construction would exceed the configured rank or level cap."""


class NotIntegral(BwlatError):
    """An integral lattice was required."""


class NotAnIsometry(BwlatError):
    """A matrix does not preserve the lattice it is applied to."""


class NotInvariant(BwlatError):
    """A fourvolution does not preserve the lattice it twists."""


class NotASublattice(BwlatError):
    """A lattice is not contained in the lattice it is compared with."""


class NotBetween(BwlatError):
    """A lattice M fails 2L <= M <= L."""


class NotMinimal(BwlatError):
    """A vector is not a minimal vector of the lattice."""


class NoDualityLevel(BwlatError):
    """Neither L[0] nor L[-1] equals the dual lattice."""


class CodeNotAdmissible(BwlatError):
    """A gluing code is not doubly even, self-orthogonal and indecomposable."""


class NotNormalized(BwlatError):
    """A 2-special lattice has duality level outside {0, 1}."""


class NotIsometry(BwlatError):
    """A map between discriminant sections does not preserve the form."""


class Exhausted(BwlatError):
    """Rejection sampling ran out of attempts."""


class FormatError(BwlatError):
    """A lattice, code or certificate file is malformed."""


__all__ = [
    "BwlatError",
    "SingularMatrix",
    "SingularGram",
    "InvalidParameter",
    "InvalidDimension",
    "OutOfRange",
    "TooLarge",
    "ResourceCap",
    "NotIntegral",
    "NotAnIsometry",
    "NotInvariant",
    "NotASublattice",
    "NotBetween",
    "NotMinimal",
    "NoDualityLevel",
    "CodeNotAdmissible",
    "NotNormalized",
    "NotIsometry",
    "Exhausted",
    "FormatError",
]
