class DegenerateGeometryError(ValueError):
    """Raised when a construction needs two distinct points and gets one."""


class CertificateError(RuntimeError):
    """A returned certificate failed its own post-verification."""


class IterationLimitError(RuntimeError):
    """An oracle call inside a larger algorithm hit its iteration cap."""

    def __init__(self, message, outcome=None, index=None):
        super().__init__(message)
        self.outcome = outcome
        self.index = index


class DegenerateRowError(ValueError):
    """A zero row with zero right-hand side cannot be normalized."""


class GammaDegenerateError(RuntimeError):
    """LP recovery would divide by a vanishing homogenizing weight."""


class DimensionDeficientError(ValueError):
    """Points do not affinely span the ambient space."""


class SizeLimitError(ValueError):
    """Instance exceeds the size the exact oracle accepts."""
