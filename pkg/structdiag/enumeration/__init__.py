"""structdiag enumeration module.

Provides MSO and RG set enumeration, irreducible fault signatures, TES/MTES,
detectability and isolability, and the brute-force oracles that check them.
"""

from .isolation import (
    IsolabilityMatrix,
    IsolabilityVerdict,
    detectable_faults,
    isolability,
    isolability_matrix,
)
from .mso import brute_force_msos, find_msos
from .oracle import OracleComparison, OracleReport, oracle_check
from .registry import ResultRegistry
from .rg import (
    RgResult,
    brute_force_rg,
    brute_force_tes,
    find_irg,
    find_mtes,
    find_rg,
    find_tes,
)

__all__ = [
    "ResultRegistry",
    "find_msos",
    "brute_force_msos",
    "RgResult",
    "find_rg",
    "find_irg",
    "find_tes",
    "find_mtes",
    "brute_force_rg",
    "brute_force_tes",
    "detectable_faults",
    "IsolabilityVerdict",
    "isolability",
    "IsolabilityMatrix",
    "isolability_matrix",
    "OracleComparison",
    "OracleReport",
    "oracle_check",
]
