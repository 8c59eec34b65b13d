"""Cross-check of every enumerator against its brute-force counterpart.

For one model, compares:

    mstar           vs brute_force_mstar   per built-in operator
    find_rg         vs brute_force_rg      per built-in operator
    find_msos       vs brute_force_msos
    find_tes        vs brute_force_tes

RG and TES collections are compared as maps from signature to set.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

from ..model.structural import StructuralModel
from ..operators.base import get_operator
from ..operators.builtin import BACKSUB, LOWINDEX, PLUS
from ..operators.mstar import brute_force_mstar, mstar
from ..utils.config import Config
from ..utils.exceptions import OracleBoundExceededError, OracleMismatchError
from ..utils.logger import get_logger
from .mso import brute_force_msos, find_msos
from .rg import RgResult, brute_force_rg, brute_force_tes, find_rg, find_tes

logger = get_logger()

BUILTIN_OPERATORS = (PLUS.name, BACKSUB.name, LOWINDEX.name)


@dataclass(frozen=True)
class OracleComparison:
    """One enumerator-versus-oracle comparison.

    Attributes:
        check: Name of the compared operation
        operator: Operator name, or None for operator-free checks
        expected: Oracle result, rendered as sorted strings
        actual: Enumerator result, rendered as sorted strings

    """

    check: str
    operator: Optional[str]
    expected: Sequence[str]
    actual: Sequence[str]

    @property
    def matched(self) -> bool:
        """Whether the enumerator agreed with the oracle."""
        return list(self.expected) == list(self.actual)

    def to_dict(self) -> dict:
        """JSON-ready form of the comparison."""
        return {
            "check": self.check,
            "operator": self.operator,
            "matched": self.matched,
            "expected": list(self.expected),
            "actual": list(self.actual),
        }


@dataclass
class OracleReport:
    """All comparisons run on one model."""

    model_name: str
    comparisons: List[OracleComparison] = field(default_factory=list)

    @property
    def matched(self) -> bool:
        """Whether every comparison matched."""
        return all(c.matched for c in self.comparisons)

    def mismatches(self) -> List[OracleComparison]:
        """The failed comparisons, in run order."""
        return [c for c in self.comparisons if not c.matched]

    def raise_on_mismatch(self) -> None:
        """Raise if any comparison failed.

        Raises:
            OracleMismatchError: Naming every failed comparison

        """
        failed = self.mismatches()
        if failed:
            names = ", ".join(
                c.check if c.operator is None else f"{c.check}[{c.operator}]" for c in failed
            )
            raise OracleMismatchError(f"Model {self.model_name!r}: oracle mismatch in {names}")

    def to_dict(self) -> dict:
        """JSON-ready form of the report."""
        return {
            "model": self.model_name,
            "matched": self.matched,
            "comparisons": [c.to_dict() for c in self.comparisons],
        }


def _signature_map(results: Iterable[RgResult]) -> List[str]:
    return sorted(f"{r.signature} -> {r.equations}" for r in results)


def oracle_check(
    model: StructuralModel,
    bound: Optional[int] = None,
    operators: Iterable[str] = BUILTIN_OPERATORS,
) -> OracleReport:
    """Run every enumerator against its oracle on one model.

    Args:
        model: The model
        bound: Oracle bound for this run; defaults to ``Config().oracle_bound``
        operators: Operator names to check

    Returns:
        The report; mismatches do not raise here

    Raises:
        OracleBoundExceededError: If the model is larger than the bound

    """
    config = Config()
    previous = config.oracle_bound
    if bound is not None:
        config.set_oracle_bound(bound)
    try:
        if len(model) > config.oracle_bound:
            raise OracleBoundExceededError(
                f"oracle bound exceeded: {len(model)} equations, bound is {config.oracle_bound}"
            )
        report = OracleReport(model.name)
        everything = model.all_equations()

        for name in operators:
            op = get_operator(name)
            report.comparisons.append(
                OracleComparison(
                    "mstar",
                    op.name,
                    expected=[str(brute_force_mstar(model, everything, op))],
                    actual=[str(mstar(model, everything, op))],
                )
            )
            report.comparisons.append(
                OracleComparison(
                    "rg",
                    op.name,
                    expected=_signature_map(brute_force_rg(model, op)),
                    actual=_signature_map(find_rg(model, op)),
                )
            )

        report.comparisons.append(
            OracleComparison(
                "mso",
                None,
                expected=[str(s) for s in brute_force_msos(model)],
                actual=[str(s) for s in find_msos(model)],
            )
        )
        report.comparisons.append(
            OracleComparison(
                "tes",
                None,
                expected=_signature_map(brute_force_tes(model)),
                actual=_signature_map(find_tes(model)),
            )
        )
    finally:
        config.oracle_bound = previous

    for comparison in report.mismatches():
        logger.warning(
            f"Oracle mismatch on {model.name!r}: {comparison.check} "
            f"[{comparison.operator}] expected {list(comparison.expected)}, "
            f"got {list(comparison.actual)}"
        )
    return report
