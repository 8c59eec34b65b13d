"""MSO set enumeration.

Top-down recursion over PSO sets: a set of redundancy one is an MSO set;
otherwise every single-equation removal is followed by the overdetermined
part and explored in turn. Removal lowers redundancy by exactly one, so the
recursion depth is bounded by the redundancy of the start set.
"""

from typing import Iterable, List, Optional

from ..graph.dm import overdetermined_part, redundancy
from ..model.structural import StructuralModel
from ..model.types import EquationSet
from ..operators.mstar import iter_pso_subsets
from ..utils.logger import get_logger
from .registry import ResultRegistry

logger = get_logger()


def find_msos(
    model: StructuralModel, subset: Optional[Iterable[str]] = None
) -> List[EquationSet]:
    """All MSO subsets of a set.

    Args:
        model: Host model
        subset: Equation ids; defaults to the whole model

    Returns:
        The MSO sets in canonical order; empty if the set has no redundancy

    Example:
        >>> len(find_msos(eq2))
        10

    """
    members = model.all_equations() if subset is None else model.resolve(subset)
    visited: ResultRegistry[None] = ResultRegistry()
    found: ResultRegistry[None] = ResultRegistry()

    def explore(current: EquationSet) -> None:
        if not visited.add(current):
            return
        if redundancy(model, current) == 1:
            found.add(current)
            return
        for equation_id in current:
            child = overdetermined_part(model, current - {equation_id})
            if child:
                explore(child)

    start = overdetermined_part(model, members)
    if start:
        explore(start)

    logger.debug(
        f"find_msos: {found.get_count()} MSO sets from {visited.get_count()} PSO sets, "
        f"{visited.get_duplicates()} revisits"
    )
    return found.sets()


def brute_force_msos(
    model: StructuralModel, subset: Optional[Iterable[str]] = None
) -> List[EquationSet]:
    """All MSO subsets by exhaustive enumeration of PSO subsets.

    Subsets are visited smallest first, so a PSO subset is MSO exactly when
    no MSO set found before it is contained in it.

    Raises:
        OracleBoundExceededError: If the set is larger than the oracle bound

    """
    members = model.all_equations() if subset is None else model.resolve(subset)
    minimal: List[EquationSet] = []
    for candidate in iter_pso_subsets(model, members):
        if not any(found < candidate for found in minimal):
            minimal.append(candidate)
    return sorted(minimal, key=lambda s: s.sort_key)
