"""The M* operator: largest testable PSO subset.

``mstar`` computes it by a fixed point. Starting from the overdetermined
part, it checks the operator's predicate. If the predicate fails, it drops
every equation that contains a blocked unknown, takes the overdetermined
part again, and repeats until the predicate holds or nothing is left.

``brute_force_mstar`` computes the same set literally, as the union of all
testable PSO subsets. It is exponential and used as an oracle.
"""

import itertools
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from ..graph.dm import is_pso, overdetermined_part
from ..model.structural import StructuralModel
from ..model.types import EMPTY_EQUATIONS, EquationSet
from ..utils.config import Config
from ..utils.exceptions import AnalysisError, OracleBoundExceededError, UnionClosureError
from ..utils.logger import get_logger
from .base import TestabilityOperator, get_operator

logger = get_logger()


def mstar(
    model: StructuralModel,
    subset: Iterable[str],
    operator: Union[str, TestabilityOperator],
) -> EquationSet:
    """Largest testable PSO subset of an equation set.

    Operators without a blocked-unknown function are evaluated with
    ``brute_force_mstar``.

    Args:
        model: Host model
        subset: Equation ids
        operator: Operator or operator name

    Returns:
        The largest testable PSO subset, or the empty set

    Raises:
        AnalysisError: If the predicate fails but the operator names no
            blocked unknown
        UnknownOperatorError: If the operator name is not registered

    Example:
        >>> mstar(eq2, eq2.all_equations() - {"e4"}, "backsub")
        EquationSet(['e1', 'e2', 'e3', 'e5'])

    """
    op = get_operator(operator)
    members = model.resolve(subset)

    if not op.has_blocked:
        logger.warning(f"Operator {op.name!r} has no blocked-unknown function; using the oracle")
        return brute_force_mstar(model, members, op)

    current = overdetermined_part(model, members)
    iteration = 0
    while current:
        if op.predicate(model, current):
            return current

        blocked = op.blocked_unknowns(model, current)
        if not blocked:
            raise AnalysisError(
                f"Operator {op.name!r} rejects {current} without naming a blocked unknown"
            )

        kept = EquationSet(e for e in current if not model.equation(e).unknowns & blocked)
        iteration += 1
        logger.debug(
            f"mstar[{op.name}] iteration {iteration}: blocked {sorted(blocked)}, "
            f"removed {len(current) - len(kept)} equations"
        )
        current = overdetermined_part(model, kept)

    return EMPTY_EQUATIONS


def _check_oracle_bound(members: EquationSet) -> None:
    bound = Config().oracle_bound
    if len(members) > bound:
        raise OracleBoundExceededError(
            f"oracle bound exceeded: {len(members)} equations, bound is {bound}"
        )


def iter_pso_subsets(model: StructuralModel, subset: Iterable[str]) -> Iterator[EquationSet]:
    """All nonempty PSO subsets of a set, smallest first.

    Raises:
        OracleBoundExceededError: If the set is larger than the oracle bound

    """
    members = model.resolve(subset)
    _check_oracle_bound(members)

    for size in range(1, len(members) + 1):
        for combination in itertools.combinations(members, size):
            candidate = EquationSet(combination)
            # a PSO set has more equations than unknowns
            if len(candidate) <= len(model.unknowns_of(candidate)):
                continue
            if is_pso(model, candidate):
                yield candidate


def testable_pso_subsets(
    model: StructuralModel,
    subset: Iterable[str],
    operator: Union[str, TestabilityOperator],
) -> List[EquationSet]:
    """All predicate-true PSO subsets of a set, smallest first.

    Raises:
        OracleBoundExceededError: If the set is larger than the oracle bound

    """
    op = get_operator(operator)
    return [
        candidate
        for candidate in iter_pso_subsets(model, subset)
        if op.predicate(model, candidate)
    ]


def brute_force_mstar(
    model: StructuralModel,
    subset: Iterable[str],
    operator: Union[str, TestabilityOperator],
    strict: bool = False,
) -> EquationSet:
    """Union of every testable PSO subset, by exhaustive enumeration.

    The union is expected to be a testable PSO set itself. A violation is
    logged as a warning, or raised when strict is set.

    Args:
        model: Host model
        subset: Equation ids, at most ``Config().oracle_bound`` of them
        operator: Operator or operator name
        strict: Raise instead of warning when the union is not testable PSO

    Returns:
        The union, or the empty set

    Raises:
        OracleBoundExceededError: If the set is larger than the oracle bound
        UnionClosureError: If strict and the union is not a testable PSO set

    """
    op = get_operator(operator)
    members = model.resolve(subset)

    union = EMPTY_EQUATIONS
    for candidate in testable_pso_subsets(model, members, op):
        union = union | candidate

    if union and not (is_pso(model, union) and op.predicate(model, union)):
        message = f"Union of testable PSO subsets {union} is not testable PSO under {op.name!r}"
        if strict:
            raise UnionClosureError(message)
        logger.warning(message)
    return union


def audit_union_closure(
    model: StructuralModel,
    operator: Union[str, TestabilityOperator],
    subset: Optional[Iterable[str]] = None,
) -> List[Tuple[EquationSet, EquationSet]]:
    """Pairs of testable PSO sets whose PSO union is not testable.

    Args:
        model: Host model
        operator: Operator or operator name
        subset: Equation ids to search in; defaults to the whole model

    Returns:
        Violating pairs (A, B) with A before B in canonical order

    Raises:
        OracleBoundExceededError: If the set is larger than the oracle bound

    """
    op = get_operator(operator)
    members = model.all_equations() if subset is None else model.resolve(subset)
    candidates = sorted(testable_pso_subsets(model, members, op), key=lambda s: s.sort_key)

    violations = []
    for first, second in itertools.combinations(candidates, 2):
        union = first | second
        if union == first or union == second:
            continue
        if is_pso(model, union) and not op.predicate(model, union):
            violations.append((first, second))

    if violations:
        logger.warning(
            f"Operator {op.name!r} is not union-closed on {members}: {len(violations)} pairs"
        )
    return violations
