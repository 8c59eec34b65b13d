"""structdiag exception classes.

Provides a hierarchy of custom exceptions for structural analysis. All
exceptions inherit from StructDiagError, allowing callers to catch every
structdiag failure with a single except clause. The three direct branches
map onto the command-line exit statuses: ModelError (bad input), AnalysisError
(a precondition of an analysis does not hold) and OracleMismatchError (an
enumerator disagreed with its brute-force counterpart).
"""

from typing import Optional


class StructDiagError(Exception):
    """Base exception class for all structdiag errors.

    Example:
        >>> try:
        ...     model = load_model("plant.json")
        ... except StructDiagError as e:
        ...     print(f"Analysis failed: {e}")

    """

    pass


class ModelError(StructDiagError):
    """Raised when a model document or model object is invalid."""

    pass


class ModelSyntaxError(ModelError):
    """Raised when a model file cannot be parsed.

    Carries the position of the problem: a line/column pair for JSON syntax
    errors, or a JSON path such as ``equations[2].unknowns[0]`` for schema
    errors.

    Attributes:
        line: 1-based line number, if known
        column: 1-based column number, if known
        path: JSON path of the offending element, if known

    Example:
        >>> parse_model('{"name": ')
        Traceback (most recent call last):
        ...
        ModelSyntaxError: line 1, column 10: Expecting value

    """

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        path: Optional[str] = None,
    ):
        """Initialize the error with an optional position.

        Args:
            message: Description of the problem
            line: 1-based line number
            column: 1-based column number
            path: JSON path of the offending element

        """
        self.line = line
        self.column = column
        self.path = path

        if line is not None:
            message = f"line {line}, column {column}: {message}"
        elif path:
            message = f"{path}: {message}"
        super().__init__(message)


class DuplicateIdentifierError(ModelError):
    """Raised when an equation or variable id is declared twice."""

    pass


class FaultPlacementError(ModelError):
    """Raised when a fault does not appear in exactly one equation.

    Every fault is assumed to affect a single equation, its home equation.
    A fault listed in several equations, or in none, violates this.
    """

    pass


class DifferentiationError(ModelError):
    """Raised when an equation carries more than one differentiated incidence.

    Semi-explicit form requires that each differential equation defines
    exactly one derivative. Differentiated occurrences are also only legal
    for unknown variables.
    """

    pass


class UnknownIdentifierError(ModelError):
    """Raised when an equation, fault or variable id does not resolve in a model.

    Example:
        >>> faults_of(model, EquationSet.of(["e9"]))  # Raises UnknownIdentifierError

    """

    pass


class LinearModelError(ModelError):
    """Raised when the numeric linear block of a model file is invalid.

    Validation failures:
        - coefficient refers to an undeclared symbol
        - nonzero pattern over unknowns or faults disagrees with the structure
        - noise covariance is not square, not symmetric or not semidefinite

    """

    pass


class ConfigurationError(StructDiagError):
    """Raised when configuration is invalid.

    Example:
        >>> config = Config()
        >>> config.set_oracle_bound(0)  # Raises ConfigurationError

    """

    pass


class AnalysisError(StructDiagError):
    """Raised when a precondition of an analysis does not hold."""

    pass


class NotPSOError(AnalysisError):
    """Raised when an operation requiring a PSO set receives something else."""

    pass


class NotComputableError(AnalysisError):
    """Raised when a set is not computable by sequential back-substitution."""

    pass


class SingularPivotError(AnalysisError):
    """Raised when a structurally valid elimination step has a zero coefficient."""

    pass


class OracleBoundExceededError(AnalysisError):
    """Raised when a brute-force oracle is asked to enumerate too large a set.

    The bound defaults to 16 equations and can be raised through
    ``Config.set_oracle_bound`` or the STRUCTDIAG_ORACLE_BOUND variable.
    """

    pass


class UnknownOperatorError(AnalysisError):
    """Raised when a testability operator name is not registered."""

    pass


class UnionClosureError(AnalysisError):
    """Raised when the union of testable PSO sets is not itself testable PSO.

    The existence of a unique largest testable PSO set per fault signature
    depends on testability being closed under union. Oracles surface
    violations of that assumption through this error.
    """

    pass


class InconsistentCollectionError(AnalysisError):
    """Raised when a collection of RG results has duplicate signatures."""

    pass


class FusionError(AnalysisError):
    """Raised when residuals cannot be fused."""

    pass


class SingularCovarianceError(FusionError):
    """Raised when the residual covariance matrix is not positive definite."""

    pass


class NormalizationMismatchError(FusionError):
    """Raised when residuals do not share the unit gain on the target fault."""

    pass


class OracleMismatchError(StructDiagError):
    """Raised when an enumerator and its brute-force oracle disagree."""

    pass
