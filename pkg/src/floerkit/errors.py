"""Exception hierarchy for floerkit.

Everything raised on purpose derives from :class:`FloerkitError`, so callers
(the CLI in particular) can separate bad input from programming errors.
"""

from __future__ import annotations


class FloerkitError(Exception):
    """Base class for all floerkit errors."""


class ConfigError(FloerkitError):
    """Raised when an environment setting cannot be parsed."""


class F2DimensionError(FloerkitError):
    """Raised when matrix shapes do not fit an F2 operation."""


# ---------------------------------------------------------------------------
# Complexes
# ---------------------------------------------------------------------------


class ComplexFormatError(FloerkitError):
    """Raised for duplicate names, dangling arrow endpoints or unreadable input."""


class ComplexValidationError(FloerkitError):
    """Raised when a complex fails validation where a valid one is required."""


class NotAHomologySphereError(FloerkitError):
    """Raised when the U-inverted homology of a complex does not have rank 1."""


class WindowTooSmallError(FloerkitError):
    """Raised when a translate window cannot contain the requested computation."""


class TrichotomyError(FloerkitError):
    """Raised when tau, nu and nu' do not fall into exactly one epsilon case."""


# ---------------------------------------------------------------------------
# Surgery
# ---------------------------------------------------------------------------


class FlipMapError(FloerkitError):
    """Raised when a flip map is invalid or none could be found."""


class ConeError(FloerkitError):
    """Raised when a truncated mapping cone violates its end conditions."""


class CalibrationError(FloerkitError):
    """Raised when the unknot self-test of the 1/n cone disagrees."""


# ---------------------------------------------------------------------------
# Plumbing
# ---------------------------------------------------------------------------


class GraphError(FloerkitError):
    """Raised for graphs that are not trees or reference unknown vertices."""


class IndefiniteFormError(FloerkitError):
    """Raised when an intersection form is neither positive nor negative definite."""


class BadVertexError(FloerkitError):
    """Raised when a plumbing graph has more than one bad vertex."""


class EnumerationBudgetError(FloerkitError):
    """Raised when lattice enumeration exceeds its node limit."""


class PipelineError(FloerkitError):
    """Raised when a computed d-invariant is not of the expected arithmetic form."""


class UnknownFixtureError(FloerkitError):
    """Raised when a catalog name is not known."""
