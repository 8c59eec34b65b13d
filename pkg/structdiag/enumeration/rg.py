"""RG set enumeration, irreducible fault signatures and TES/MTES.

An RG set is the largest testable PSO set with a given fault signature. The
recursive enumeration starts from M* of the whole model and alternates two
steps: remove one fault-carrying equation, then take M* of what is left.
Every reachable set with a nonempty signature is an RG set, and every RG set
is reachable. Unlike MSO enumeration, branches cannot be pruned in advance,
so revisits are collapsed in a result registry instead.
"""

from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Union

from ..graph.dm import redundancy
from ..model.structural import StructuralModel, faults_of
from ..model.types import EMPTY_SIGNATURE, EquationSet, FaultSignature
from ..operators.base import TestabilityOperator, get_operator
from ..operators.builtin import PLUS
from ..operators.mstar import mstar, testable_pso_subsets
from ..utils.exceptions import InconsistentCollectionError, UnionClosureError
from ..utils.logger import get_logger
from .registry import ResultRegistry

logger = get_logger()


@dataclass(frozen=True)
class RgResult:
    """An RG set with its fault signature.

    Attributes:
        equations: The RG set
        signature: Its faults, nonempty
        redundancy: Its redundancy
        irreducible: Whether the signature is join-irreducible in its
            collection; only meaningful after ``find_irg``

    """

    equations: EquationSet
    signature: FaultSignature
    redundancy: int
    irreducible: bool = False

    @property
    def sort_key(self):
        """Canonical order of the underlying equation set."""
        return self.equations.sort_key

    def to_dict(self) -> dict:
        """JSON-ready form of the result."""
        return {
            "set": list(self.equations),
            "signature": list(self.signature),
            "irreducible": self.irreducible,
            "redundancy": self.redundancy,
        }


def _result(model: StructuralModel, equations: EquationSet) -> RgResult:
    return RgResult(
        equations=equations,
        signature=faults_of(model, equations),
        redundancy=redundancy(model, equations),
    )


def find_rg(
    model: StructuralModel, operator: Union[str, TestabilityOperator]
) -> List[RgResult]:
    """All RG sets of a model under an operator.

    Fault-carrying equations are removed in canonical id order; output is
    sorted by (set size, ids).

    Args:
        model: The model
        operator: Operator or operator name

    Returns:
        One RgResult per fault signature

    Example:
        >>> [str(r.equations) for r in find_rg(eq2, "backsub")]
        ['{e1, e2, e3, e5}', '{e1, e2, e3, e4, e5}']

    """
    op = get_operator(operator)
    registry: ResultRegistry[RgResult] = ResultRegistry()

    def explore(current: EquationSet) -> None:
        for equation_id in model.fault_equations(current):
            child = mstar(model, current - {equation_id}, op)
            if not faults_of(model, child):
                continue
            if registry.add(child, _result(model, child)):
                logger.debug(f"find_rg[{op.name}]: {child} from {current} without {equation_id}")
                explore(child)

    root = mstar(model, model.all_equations(), op)
    if faults_of(model, root):
        registry.add(root, _result(model, root))
        explore(root)

    logger.info(
        f"find_rg[{op.name}]: {registry.get_count()} RG sets, "
        f"{registry.get_duplicates()} revisits"
    )
    return registry.values()


def find_irg(results: Iterable[RgResult]) -> List[RgResult]:
    """Flag the results whose signature is join-irreducible.

    A signature is reducible when it is the union of the other signatures of
    the collection that it contains. The irreducible signatures must
    generate every signature by union and none of them can be dropped.

    Args:
        results: One collection from ``find_rg``

    Returns:
        The same results, in the same order, with irreducible flags set

    Raises:
        InconsistentCollectionError: If two results share a signature, or
            the irreducible signatures do not generate the collection

    Example:
        >>> [r.irreducible for r in find_irg(find_rg(eq4, "lowindex"))]
        [True, True, True, True, False]

    """
    results = list(results)
    by_signature: Dict[FaultSignature, RgResult] = {}
    for result in results:
        if result.signature in by_signature:
            raise InconsistentCollectionError(
                f"inconsistent collection: signature {result.signature} belongs to both "
                f"{by_signature[result.signature].equations} and {result.equations}"
            )
        by_signature[result.signature] = result

    signatures = list(by_signature)
    flagged = []
    for result in results:
        union = EMPTY_SIGNATURE
        for other in signatures:
            if other < result.signature:
                union = union | other
        flagged.append(replace(result, irreducible=union != result.signature))

    irreducible = [r.signature for r in flagged if r.irreducible]
    for signature in signatures:
        union = EMPTY_SIGNATURE
        for generator in irreducible:
            if generator <= signature:
                union = union | generator
        if union != signature:
            raise InconsistentCollectionError(
                f"inconsistent collection: {signature} is not a union of irreducible signatures"
            )
    return flagged


def find_tes(model: StructuralModel) -> List[RgResult]:
    """All TESs: RG sets when every PSO set is testable."""
    return find_rg(model, PLUS)


def find_mtes(model: StructuralModel) -> List[EquationSet]:
    """The inclusion-minimal TESs.

    Example:
        >>> [str(s) for s in find_mtes(eq4)]
        ['{e1, e2, e3, e6}', '{e1, e3, e4, e6}', '{e1, e3, e5, e6}']

    """
    tes = [result.equations for result in find_tes(model)]
    return [t for t in tes if not any(other < t for other in tes)]


def brute_force_rg(
    model: StructuralModel, operator: Union[str, TestabilityOperator]
) -> List[RgResult]:
    """All RG sets by exhaustive enumeration.

    Groups the testable PSO subsets with a nonempty signature by signature
    and takes the union of each group, which must itself be in the group.

    Raises:
        OracleBoundExceededError: If the model is larger than the oracle bound
        UnionClosureError: If a group's union is not one of its members

    """
    op = get_operator(operator)
    groups: Dict[FaultSignature, List[EquationSet]] = {}
    for candidate in testable_pso_subsets(model, model.all_equations(), op):
        signature = faults_of(model, candidate)
        if signature:
            groups.setdefault(signature, []).append(candidate)

    results = []
    for signature, members in groups.items():
        union = members[0]
        for candidate in members[1:]:
            union = union | candidate
        if union not in members:
            raise UnionClosureError(
                f"Union {union} of the testable PSO sets with signature {signature} "
                f"is not testable PSO under {op.name!r}"
            )
        results.append(_result(model, union))
    return sorted(results, key=lambda r: r.sort_key)


def brute_force_tes(model: StructuralModel) -> List[RgResult]:
    """All TESs by exhaustive enumeration."""
    return brute_force_rg(model, PLUS)
