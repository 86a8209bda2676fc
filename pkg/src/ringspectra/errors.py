"""Exception hierarchy shared across the package.

Domain errors (bad inputs, impossible requests) and numeric failures
(root finders that did not converge) are kept distinct so the CLI can
map them to different exit codes.
"""


class RingsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(RingsError, ValueError):
    """Invalid input or a request outside the supported domain."""


class InvalidNecklaceError(DomainError):
    """Necklace vector violates the {1,2} alphabet or the dropped-arc convention."""


class InvalidSizeError(DomainError):
    """Size parameters (n, m, N) out of range."""


class ResourceLimitError(DomainError):
    """Request exceeds a deliberate size guard (polynomial degree, enumeration width)."""


class DegenerateEllipseError(DomainError):
    """The c = 1 ellipse degenerates to the real segment [0, 4]; use segment membership."""


class BracketError(DomainError):
    """Bisection bracket does not straddle a criterion flip."""


class NoSpanningTreeError(DomainError):
    """Zero is a repeated Laplacian eigenvalue: no spanning converging tree, consensus impossible."""


class NumericFailureError(RingsError):
    """A numeric routine failed to converge; carries a residual report."""

    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals
