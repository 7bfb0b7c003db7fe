"""
Exception hierarchy

Every failure raised by the toolkit derives from PaulianError. The class
attribute ``exit_code`` is the process exit status main() returns for it:

    2 = validation, 3 = not correctable, 4 = capacity exceeded,
    5 = numerical certification failure
"""
from typing import Optional


class PaulianError(Exception):
    """Base class for all toolkit errors"""

    exit_code = 1
    category = "error"

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> dict:
        return {
            'error': type(self).__name__,
            'category': self.category,
            'exit_code': self.exit_code,
            'message': self.message,
            'details': self.details,
        }


# ============================================================
# Validation (exit 2)
# ============================================================

class ValidationFailure(PaulianError):
    exit_code = 2
    category = "validation"


class InvalidInput(ValidationFailure):
    pass


class DimensionMismatch(ValidationFailure):
    pass


class LengthMismatch(ValidationFailure):
    pass


class ParseError(ValidationFailure):
    pass


class CodeFileValidationError(ValidationFailure):
    """Raised with the full list of violated fields, not just the first"""

    def __init__(self, message: str, violations: Optional[list[str]] = None):
        super().__init__(message, {'violations': violations or []})
        self.violations = violations or []


class IndexOutOfRange(ValidationFailure):
    pass


class CutoffTooSmall(ValidationFailure):
    pass


class NotDivisible(ValidationFailure):
    pass


class TooManyErrors(ValidationFailure):
    pass


class InvalidChannel(ValidationFailure):
    pass


class StateOutsideDomain(ValidationFailure):
    pass


class ScalarOperator(ValidationFailure):
    pass


class IoError(ValidationFailure):
    pass


# ============================================================
# Not correctable (exit 3)
# ============================================================

class CorrectabilityFailure(PaulianError):
    exit_code = 3
    category = "not_correctable"


class NotCorrectable(CorrectabilityFailure):
    pass


class UncorrectableSyndrome(CorrectabilityFailure):
    pass


class SignatureCollision(CorrectabilityFailure):
    pass


class NonOrthogonalCodewords(CorrectabilityFailure):
    pass


# ============================================================
# Capacity (exit 4)
# ============================================================

class CapacityFailure(PaulianError):
    exit_code = 4
    category = "capacity"


class CapacityExceeded(CapacityFailure):
    pass


class InsufficientSpace(CapacityFailure):
    pass


class InsufficientSpares(CapacityFailure):
    pass


# ============================================================
# Certification (exit 5)
# ============================================================

class CertificationFailure(PaulianError):
    exit_code = 5
    category = "certification"


class NotAnInvolution(CertificationFailure):
    pass


class NotSelfAdjoint(CertificationFailure):
    pass


class NotIsometry(CertificationFailure):
    pass


class NotUnitary(CertificationFailure):
    pass


class NotInvariant(CertificationFailure):
    pass


class NotPaulian(CertificationFailure):
    pass


class NotNormal(CertificationFailure):
    pass


class NotMaximalAbelian(CertificationFailure):
    pass


class ZeroProjection(CertificationFailure):
    pass


class TableInvalid(CertificationFailure):
    pass


class NotCertified(CertificationFailure):
    pass
