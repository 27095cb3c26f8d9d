"""
Exception hierarchy for IsoKin.

Every error raised by the package derives from IsoKinError and carries the
process exit code the command line reports for it.
"""
from typing import Iterable, List

EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3


class IsoKinError(Exception):
    """Base class for all IsoKin errors."""
    exit_code = EXIT_NUMERIC

    @property
    def name(self) -> str:
        return type(self).__name__


# ========== Validation errors (exit 2) ==========

class ValidationError(IsoKinError, ValueError):
    """Input rejected before any numerics ran."""
    exit_code = EXIT_VALIDATION


class EmptySet(ValidationError):
    pass


class UnitMismatch(ValidationError):
    pass


class DegeneratePolygon(ValidationError):
    pass


class CentroidMismatch(ValidationError):
    pass


class ArityMismatch(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class EnumerationTooLarge(ValidationError):
    pass


class NonpositiveLength(ValidationError):
    pass


class InvalidOrdering(ValidationError):
    pass


class InvalidDocument(ValidationError):
    pass


class NothingToRender(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class NotAModelSet(ValidationError):
    """
    The point set cannot generate an isotropic model matrix.

    Args:
        failures: which of the model-set conditions failed, any of
            "centroid" (sum of k_i is not zero), "isotropy" and "scale"
            (sum of k_i k_i^T is not n times the identity)
    """

    def __init__(self, failures: Iterable[str], message: str = ""):
        self.failures: List[str] = list(failures)
        super().__init__(message or f"not a model set: failed {', '.join(self.failures)}")


# ========== Numeric errors (exit 3) ==========

class NumericError(IsoKinError, ArithmeticError):
    """The inputs were well-formed but the computation has no valid answer."""
    exit_code = EXIT_NUMERIC


class DegenerateLink(NumericError):
    pass


class SingularMatrix(NumericError):
    pass


class NotIsotropic(NumericError):
    pass


class DegenerateConfiguration(NumericError):
    pass


class NonpositiveAlignment(NumericError):
    pass


class NoValidPosture(NumericError):
    pass
