"""structdiag graph module.

Provides the bipartite structure of an equation set, maximum matching, the
coarse Dulmage-Mendelsohn decomposition and PSO/MSO classification.
"""

from .bipartite import BipartiteStructure, MatchingResult, bipartite_structure, maximum_matching
from .dm import (
    DmResult,
    PsoClass,
    classify_pso,
    coarse_decomposition,
    dm_decompose,
    is_minimal_pso,
    is_pso,
    overdetermined_part,
    redundancy,
)

__all__ = [
    "BipartiteStructure",
    "MatchingResult",
    "bipartite_structure",
    "maximum_matching",
    "DmResult",
    "PsoClass",
    "coarse_decomposition",
    "dm_decompose",
    "overdetermined_part",
    "is_pso",
    "redundancy",
    "classify_pso",
    "is_minimal_pso",
]
