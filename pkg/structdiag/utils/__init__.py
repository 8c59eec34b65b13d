"""structdiag utilities module.

Provides configuration, logging, and exception handling utilities.
"""

from .config import Config
from .exceptions import (
    AnalysisError,
    ConfigurationError,
    DifferentiationError,
    DuplicateIdentifierError,
    FaultPlacementError,
    FusionError,
    InconsistentCollectionError,
    LinearModelError,
    ModelError,
    ModelSyntaxError,
    NormalizationMismatchError,
    NotComputableError,
    NotPSOError,
    OracleBoundExceededError,
    OracleMismatchError,
    SingularCovarianceError,
    SingularPivotError,
    StructDiagError,
    UnionClosureError,
    UnknownIdentifierError,
    UnknownOperatorError,
)
from .logger import Logger, get_logger

__all__ = [
    "Config",
    "Logger",
    "get_logger",
    "StructDiagError",
    "ModelError",
    "ModelSyntaxError",
    "DuplicateIdentifierError",
    "FaultPlacementError",
    "DifferentiationError",
    "UnknownIdentifierError",
    "LinearModelError",
    "ConfigurationError",
    "AnalysisError",
    "NotPSOError",
    "NotComputableError",
    "SingularPivotError",
    "OracleBoundExceededError",
    "UnknownOperatorError",
    "UnionClosureError",
    "InconsistentCollectionError",
    "FusionError",
    "SingularCovarianceError",
    "NormalizationMismatchError",
    "OracleMismatchError",
]
