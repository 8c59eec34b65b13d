"""structdiag analyzer module.

This module contains the StructuralAnalyzer class, the main entry point for
running analyses on one model with one testability operator.

The StructuralAnalyzer bundles:
- The structural model and, when the model file has one, its linear companion
- The testability operator used by M*, RG enumeration and isolability
- Memoized results for the expensive enumerations
- Counters for analyses run and subset cache usage
"""

import threading
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from ..cache.subset_cache import get_subset_cache
from ..enumeration.isolation import (
    IsolabilityMatrix,
    IsolabilityVerdict,
    detectable_faults,
    isolability,
    isolability_matrix,
)
from ..enumeration.mso import find_msos
from ..enumeration.oracle import OracleReport, oracle_check
from ..enumeration.rg import RgResult, find_irg, find_mtes, find_rg
from ..graph.dm import DmResult, dm_decompose
from ..linres.fusion import FusionResult, min_variance_fusion
from ..linres.linear_model import LinearStaticModel
from ..linres.residual import LinearResidual, derive_residuals
from ..model.parser import load_document
from ..model.structural import StructuralModel
from ..model.types import EquationSet, FaultSignature
from ..operators.base import TestabilityOperator, get_operator
from ..operators.builtin import computation_order
from ..operators.mstar import mstar
from ..utils.config import Config
from ..utils.exceptions import LinearModelError
from ..utils.logger import get_logger

logger = get_logger()


class StructuralAnalyzer:
    """Structural fault diagnosis analyses for one model.

    Attributes:
        config: Configuration instance
        model: The structural model
        linear: Linear companion model, or None
        operator: Testability operator for M*-based analyses

    Example:
        >>> analyzer = StructuralAnalyzer.from_file("models/eq4.json", operator="lowindex")
        >>> [str(r.signature) for r in analyzer.irg() if r.irreducible]
        ['{f2, f3}', '{f1}', '{f1, f2}', '{f1, f3}']

    """

    def __init__(
        self,
        model: StructuralModel,
        operator: Union[str, TestabilityOperator, None] = None,
        linear: Optional[LinearStaticModel] = None,
    ):
        """Initialize an analyzer.

        Args:
            model: The structural model
            operator: Operator or operator name; defaults to Config().default_operator
            linear: Linear companion of the model

        Raises:
            UnknownOperatorError: If the operator name is not registered

        """
        self.config = Config()
        self.model = model
        self.linear = linear
        self.operator = get_operator(operator or self.config.default_operator)

        self._lock = threading.RLock()
        self._rg: Optional[List[RgResult]] = None
        self._irg: Optional[List[RgResult]] = None
        self._stats = {"analyses": 0, "rg_runs": 0, "mstar_calls": 0}

    @classmethod
    def from_file(
        cls, path: Union[str, Path], operator: Union[str, TestabilityOperator, None] = None
    ) -> "StructuralAnalyzer":
        """Load a model file, with its linear block if any.

        Raises:
            OSError: If the file cannot be read
            ModelError: If the content is invalid

        """
        model, linear = load_document(path)
        logger.info(f"Loaded model {model.name!r} from {path}: {len(model)} equations")
        return cls(model, operator=operator, linear=linear)

    def _count(self, key: str = "analyses") -> None:
        with self._lock:
            self._stats[key] += 1

    def dm(self, subset: Optional[Iterable[str]] = None) -> DmResult:
        """Coarse DM decomposition of a subset, by default the whole model."""
        self._count()
        return dm_decompose(self.model, self._subset(subset))

    def msos(self, subset: Optional[Iterable[str]] = None) -> List[EquationSet]:
        """MSO sets of a subset, by default the whole model."""
        self._count()
        return find_msos(self.model, self._subset(subset))

    def mstar(self, subset: Optional[Iterable[str]] = None) -> EquationSet:
        """Largest testable PSO subset under the analyzer's operator."""
        self._count("mstar_calls")
        return mstar(self.model, self._subset(subset), self.operator)

    def rg(self) -> List[RgResult]:
        """All RG sets, computed once and reused."""
        self._count()
        with self._lock:
            if self._rg is None:
                self._rg = find_rg(self.model, self.operator)
                self._stats["rg_runs"] += 1
            return list(self._rg)

    def irg(self) -> List[RgResult]:
        """All RG sets with their irreducible flags set."""
        with self._lock:
            if self._irg is None:
                self._irg = find_irg(self.rg())
            return list(self._irg)

    def mtes(self) -> List[EquationSet]:
        """Minimal test equation supports."""
        self._count()
        return find_mtes(self.model)

    def detectable(self) -> FaultSignature:
        """Structurally detectable faults."""
        self._count()
        return detectable_faults(self.model, self.operator)

    def isolability(self, from_mode: Iterable[str], wrt_mode: Iterable[str]) -> IsolabilityVerdict:
        """Whether from_mode is structurally isolable from wrt_mode."""
        self._count()
        return isolability(self.model, self.operator, from_mode, wrt_mode)

    def isolability_matrix(self) -> IsolabilityMatrix:
        """Single-fault isolability matrix."""
        self._count()
        return isolability_matrix(self.model, self.operator)

    def oracle_check(self, bound: Optional[int] = None) -> OracleReport:
        """Run every enumerator against its brute-force oracle."""
        self._count()
        return oracle_check(self.model, bound=bound)

    def residuals(self, subset: Iterable[str]) -> List[LinearResidual]:
        """Residuals of a back-substitution computable PSO set.

        Raises:
            LinearModelError: If the model has no linear companion
            NotComputableError: If the set is not back-substitution computable

        """
        self._count()
        if self.linear is None:
            raise LinearModelError(f"Model {self.model.name!r} has no linear block")
        order = computation_order(self.model, self.model.resolve(subset))
        return derive_residuals(self.linear, order)

    def fuse(self, residuals: Iterable[LinearResidual], target_fault: str) -> FusionResult:
        """Minimum-variance fusion of residuals, each rescaled to the target fault.

        Raises:
            LinearModelError: If the model has no linear companion

        """
        self._count()
        if self.linear is None:
            raise LinearModelError(f"Model {self.model.name!r} has no linear block")
        scaled = [r.scaled_to(target_fault) for r in residuals]
        return min_variance_fusion(scaled, target_fault, self.linear.noise_cov)

    def _subset(self, subset: Optional[Iterable[str]]) -> EquationSet:
        return self.model.all_equations() if subset is None else self.model.resolve(subset)

    def stats(self) -> Dict[str, Any]:
        """Get analyzer statistics.

        Returns:
            Dictionary containing:
            - stats: Counters (analyses, rg_runs, mstar_calls)
            - model: Equation, unknown and fault counts
            - operator: Operator name
            - cache: Subset cache entries, hits and misses

        Example:
            >>> analyzer.stats()["cache"]["hits"]

        """
        with self._lock:
            return {
                "stats": dict(self._stats),
                "model": {
                    "name": self.model.name,
                    "equations": len(self.model),
                    "unknowns": len(self.model.unknowns),
                    "faults": len(self.model.faults),
                },
                "operator": self.operator.name,
                "cache": get_subset_cache().stats(),
            }

    def __repr__(self) -> str:
        return f"StructuralAnalyzer(model={self.model.name!r}, operator={self.operator.name!r})"
