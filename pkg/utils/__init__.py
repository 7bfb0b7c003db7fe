"""
Logging and the toolkit exception hierarchy
"""
from .errors import (
    CapacityFailure,
    CertificationFailure,
    CorrectabilityFailure,
    PaulianError,
    ValidationFailure,
)
from .logger import get_logger

__all__ = [
    'CapacityFailure',
    'CertificationFailure',
    'CorrectabilityFailure',
    'PaulianError',
    'ValidationFailure',
    'get_logger',
]
