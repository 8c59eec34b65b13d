"""structdiag: structural analysis for model-based fault diagnosis.

structdiag works on the structure of a diagnosis model, which equations
contain which unknowns, known signals and faults, and answers design
questions from it: which equation sets are overdetermined, which can be
turned into residuals under a given residual generation method, which
faults can be detected and isolated, and which residuals carry the
irreducible fault signatures.

Main Classes:
    StructuralAnalyzer: One model and one testability operator, with every analysis
    StructuralModel: Validated structural model
    EquationSet / FaultSignature: Canonical id sets

Main Functions:
    load_model / load_document: Read a model file
    dm_decompose, overdetermined_part, redundancy: Structural graph analysis
    mstar: Largest testable PSO subset under an operator
    find_msos, find_rg, find_irg, find_mtes: Enumerators
    detectable_faults, isolability, isolability_matrix: Diagnosability
    derive_residuals, min_variance_fusion: Linear residuals and fusion

Configuration:
    Config: Singleton configuration (oracle bound, logging, cache)

Exceptions:
    StructDiagError: Base exception class
    ModelError: Invalid model input
    AnalysisError: An analysis precondition does not hold
    ConfigurationError: Invalid configuration
    OracleMismatchError: An enumerator disagreed with its oracle

Example:
    >>> from structdiag import StructuralAnalyzer
    >>> analyzer = StructuralAnalyzer.from_file("models/eq2.json", operator="backsub")
    >>> [str(r.signature) for r in analyzer.rg()]
    ['{f2}', '{f1, f2}']

"""

from .api import StructuralAnalyzer
from .enumeration import (
    detectable_faults,
    find_irg,
    find_msos,
    find_mtes,
    find_rg,
    find_tes,
    isolability,
    isolability_matrix,
    oracle_check,
)
from .graph import dm_decompose, overdetermined_part, redundancy
from .linres import derive_residuals, min_variance_fusion
from .model import (
    EquationSet,
    FaultSignature,
    StructuralModel,
    load_document,
    load_model,
    parse_model,
    serialize_model,
)
from .operators import get_operator, mstar, register_operator
from .utils.config import Config
from .utils.exceptions import (
    AnalysisError,
    ConfigurationError,
    ModelError,
    OracleMismatchError,
    StructDiagError,
)

__version__ = "1.0.0"

__all__ = [
    "StructuralAnalyzer",
    "StructuralModel",
    "EquationSet",
    "FaultSignature",
    "load_model",
    "load_document",
    "parse_model",
    "serialize_model",
    "dm_decompose",
    "overdetermined_part",
    "redundancy",
    "mstar",
    "get_operator",
    "register_operator",
    "find_msos",
    "find_rg",
    "find_irg",
    "find_tes",
    "find_mtes",
    "detectable_faults",
    "isolability",
    "isolability_matrix",
    "oracle_check",
    "derive_residuals",
    "min_variance_fusion",
    "Config",
    "StructDiagError",
    "ModelError",
    "AnalysisError",
    "ConfigurationError",
    "OracleMismatchError",
]
