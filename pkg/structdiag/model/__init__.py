"""structdiag model module.

Provides the structural model data types, the model file format, and the
fault/equation bookkeeping queries.
"""

from .parser import (
    load_document,
    load_model,
    model_from_data,
    model_to_data,
    parse_model,
    serialize_model,
)
from .structural import (
    SemiExplicitPartition,
    StructuralModel,
    classify_semi_explicit,
    equations_of_faults,
    faults_of,
)
from .types import (
    EMPTY_EQUATIONS,
    EMPTY_SIGNATURE,
    Equation,
    EquationSet,
    FaultSignature,
    Incidence,
    Occurrence,
    VariableKind,
    VariableRef,
)

__all__ = [
    "VariableKind",
    "Occurrence",
    "VariableRef",
    "Incidence",
    "Equation",
    "EquationSet",
    "FaultSignature",
    "EMPTY_EQUATIONS",
    "EMPTY_SIGNATURE",
    "StructuralModel",
    "SemiExplicitPartition",
    "faults_of",
    "equations_of_faults",
    "classify_semi_explicit",
    "parse_model",
    "model_from_data",
    "serialize_model",
    "model_to_data",
    "load_model",
    "load_document",
]
