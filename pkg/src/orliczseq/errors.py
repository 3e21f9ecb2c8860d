"""Exception hierarchy shared across the package.

Every error raised by this package derives from :class:`OrliczSeqError` so
callers can catch package failures with a single handler while still
distinguishing bad inputs, unmet hypotheses, and numeric breakdowns.
"""


class OrliczSeqError(Exception):
    """Base class for all package-specific errors."""


class DomainError(OrliczSeqError, ValueError):
    """An argument lies outside an operation's mathematical domain."""


class PreconditionError(OrliczSeqError, ValueError):
    """A hypothesis required by a certificate-producing operation fails."""


class CompositionError(OrliczSeqError, ValueError):
    """Two certificates do not share the intermediate space needed to chain."""


class CertificateError(OrliczSeqError, ArithmeticError):
    """A requested certificate cannot be produced numerically."""


class ComputationOverflowError(OrliczSeqError, OverflowError):
    """A weighted term left double range; carries the offending index."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class CertificateRefutedError(OrliczSeqError):
    """A concrete sample violated a certified bound; carries the witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
