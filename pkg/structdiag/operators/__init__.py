"""structdiag operators module.

Provides testability operators, the M* fixed point and its brute-force
oracle. Importing this package registers the built-in operators plus,
backsub and lowindex.
"""

from .base import (
    PredicateOperator,
    TestabilityOperator,
    get_operator,
    operator_names,
    register_operator,
    testable,
)
from .builtin import (
    BACKSUB,
    LOWINDEX,
    PLUS,
    BackSubstitutionOperator,
    ComputationOrder,
    LowIndexOperator,
    PlusOperator,
    back_substitution_closure,
    computation_order,
    semi_explicit_structure,
)
from .mstar import (
    audit_union_closure,
    brute_force_mstar,
    iter_pso_subsets,
    mstar,
    testable_pso_subsets,
)

__all__ = [
    "TestabilityOperator",
    "PredicateOperator",
    "register_operator",
    "get_operator",
    "operator_names",
    "testable",
    "PlusOperator",
    "BackSubstitutionOperator",
    "LowIndexOperator",
    "PLUS",
    "BACKSUB",
    "LOWINDEX",
    "ComputationOrder",
    "back_substitution_closure",
    "computation_order",
    "semi_explicit_structure",
    "mstar",
    "brute_force_mstar",
    "audit_union_closure",
    "iter_pso_subsets",
    "testable_pso_subsets",
]
