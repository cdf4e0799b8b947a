"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI can emit
one-line parseable diagnostics on stderr.
"""

from __future__ import annotations


class QradiusError(Exception):
    """Base class for all domain errors."""

    code = "Error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.__doc__ or self.code)

    def one_line(self) -> str:
        return f"error code={self.code} msg={str(self)!r}"


class NotHermitian(QradiusError):
    """Input matrix is not Hermitian within tolerance."""

    code = "NotHermitian"


class DimensionMismatch(QradiusError):
    """Operands have incompatible dimensions."""

    code = "DimensionMismatch"


class NotUnit(QradiusError):
    """Vector is not unit-norm within tolerance."""

    code = "NotUnit"


class DimTooSmall(QradiusError):
    """Operation requires dimension at least 2."""

    code = "DimTooSmall"


class QOutOfRange(QradiusError):
    """Parameter q outside its admissible range."""

    code = "QOutOfRange"


class UnknownName(QradiusError):
    """Unknown registered-function name."""

    code = "UnknownName"


class Unbounded(QradiusError):
    """Kernel stays below the requested level up to the search cap."""

    code = "Unbounded"


class PredicateUnmet(QradiusError):
    """Bound applicability predicate not satisfied by the inputs."""

    code = "PredicateUnmet"


class ArityMismatch(QradiusError):
    """Wrong number of matrix inputs for the requested bound."""

    code = "ArityMismatch"


class DivisionDomain(QradiusError):
    """Ratio undefined: denominator not positive."""

    code = "DivisionDomain"


class UnknownFigure(QradiusError):
    """Unknown figure identifier."""

    code = "UnknownFigure"


class GenerationFailed(QradiusError):
    """Random instance generator exhausted its step budget."""

    code = "GenerationFailed"


class ConfigError(QradiusError):
    """Invalid campaign or CLI configuration."""

    code = "ConfigError"


class MatrixFormatError(QradiusError):
    """Matrix file violates the JSON interchange schema."""

    code = "MatrixFormatError"
