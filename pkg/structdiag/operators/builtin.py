"""Built-in testability operators.

    plus      every PSO set is testable; M* is the overdetermined part
    backsub   unknowns must be computable by sequential back-substitution,
              one unknown per equation, no simultaneous solving
    lowindex  the set, read as a semi-explicit DAE, has low structural
              index: its purely algebraic unknowns are matchable into the
              non-differential equations through algebraic occurrences
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

from ..graph.bipartite import BipartiteStructure, maximum_matching
from ..graph.dm import coarse_decomposition, is_pso
from ..model.structural import StructuralModel, classify_semi_explicit
from ..model.types import EquationSet
from ..utils.exceptions import NotComputableError, NotPSOError
from .base import TestabilityOperator, register_operator


def back_substitution_closure(model: StructuralModel, subset: Iterable[str]) -> FrozenSet[str]:
    """Unknowns computable by greedy singleton propagation.

    An unknown becomes computable when some member equation contains it as
    its only uncomputed unknown. Propagation repeats until nothing changes.

    Args:
        model: Host model
        subset: Equation ids

    Returns:
        The computable unknowns

    Example:
        >>> sorted(back_substitution_closure(eq2, eq2.subset("e1", "e2", "e5")))
        ['x1', 'x2']

    """
    members = model.resolve(subset)
    equations = [model.equation(e) for e in members]
    computed = set()

    changed = True
    while changed:
        changed = False
        for equation in equations:
            pending = equation.unknowns - computed
            if len(pending) == 1:
                computed |= pending
                changed = True
    return frozenset(computed)


@dataclass(frozen=True)
class ComputationOrder:
    """A back-substitution schedule.

    Attributes:
        pivots: (equation id, unknown id) pairs in solving order; each
            equation contains its pivot and otherwise only earlier pivots
        residual_equations: Members not used as a pivot

    """

    pivots: Tuple[Tuple[str, str], ...]
    residual_equations: EquationSet

    @property
    def pivot_equations(self) -> EquationSet:
        """Equations consumed as pivots."""
        return EquationSet(e for e, _ in self.pivots)

    def to_dict(self) -> dict:
        """JSON-ready form of the schedule."""
        return {
            "pivots": [[e, x] for e, x in self.pivots],
            "residual_equations": list(self.residual_equations),
        }


def computation_order(model: StructuralModel, subset: Iterable[str]) -> ComputationOrder:
    """Schedule the unknowns of a PSO set for back-substitution.

    At each step the eligible equations are those with exactly one
    uncomputed unknown. The one with the highest id is consumed, so that
    low-id equations are left over as residual equations.

    Args:
        model: Host model
        subset: A PSO set

    Returns:
        The computation order

    Raises:
        NotPSOError: If the subset is not PSO
        NotComputableError: If some unknown cannot be reached by back-substitution

    Example:
        >>> order = computation_order(eq2, eq2.subset("e1", "e2", "e5"))
        >>> order.pivots, list(order.residual_equations)
        ((('e5', 'x2'), ('e2', 'x1')), ['e1'])

    """
    members = model.resolve(subset)
    if not is_pso(model, members):
        raise NotPSOError(f"not a PSO set: {members}")

    unknowns = model.unknowns_of(members)
    remaining = list(members)
    computed = set()
    pivots: List[Tuple[str, str]] = []

    while computed != unknowns:
        eligible = [e for e in remaining if len(model.equation(e).unknowns - computed) == 1]
        if not eligible:
            raise NotComputableError(
                f"not back-substitution computable: {members} leaves "
                f"{sorted(unknowns - computed)} uncomputed"
            )
        chosen = eligible[-1]
        (unknown,) = model.equation(chosen).unknowns - computed
        pivots.append((chosen, unknown))
        computed.add(unknown)
        remaining.remove(chosen)

    return ComputationOrder(pivots=tuple(pivots), residual_equations=EquationSet(remaining))


def semi_explicit_structure(model: StructuralModel, subset: Iterable[str]) -> BipartiteStructure:
    """Non-differential equations against purely algebraic unknowns.

    Only algebraic occurrences count as edges. Every X2 unknown is a column,
    including those with no algebraic occurrence in a non-differential
    equation.

    Example:
        >>> structure = semi_explicit_structure(eq4, eq4.subset("e4", "e5", "e6"))
        >>> structure.rows, structure.cols
        (('e4', 'e5', 'e6'), ('x1', 'x3'))

    """
    partition = classify_semi_explicit(model, subset)
    return BipartiteStructure.from_model(
        model,
        partition.algebraic,
        incidence=lambda equation: equation.algebraic_unknowns,
        columns=partition.x2,
    )


class PlusOperator(TestabilityOperator):
    """Every PSO set is testable."""

    name = "plus"
    has_blocked = True

    def predicate(self, model: StructuralModel, subset: EquationSet) -> bool:
        """Always true."""
        return True

    def blocked_unknowns(self, model: StructuralModel, subset: EquationSet) -> FrozenSet[str]:
        """Nothing is ever blocked."""
        return frozenset()


class BackSubstitutionOperator(TestabilityOperator):
    """Testable iff every unknown is reachable by back-substitution."""

    name = "backsub"
    has_blocked = True

    def predicate(self, model: StructuralModel, subset: EquationSet) -> bool:
        """Whether back-substitution reaches every unknown of the set."""
        return back_substitution_closure(model, subset) == model.unknowns_of(subset)

    def blocked_unknowns(self, model: StructuralModel, subset: EquationSet) -> FrozenSet[str]:
        """Unknowns outside the back-substitution closure."""
        return model.unknowns_of(subset) - back_substitution_closure(model, subset)


class LowIndexOperator(TestabilityOperator):
    """Testable iff the purely algebraic block has full structural column rank."""

    name = "lowindex"
    has_blocked = True

    def predicate(self, model: StructuralModel, subset: EquationSet) -> bool:
        """Whether the algebraic equations can be matched into every X2 unknown."""
        structure = semi_explicit_structure(model, subset)
        return maximum_matching(structure).size == len(structure.cols)

    def blocked_unknowns(self, model: StructuralModel, subset: EquationSet) -> FrozenSet[str]:
        """X2 unknowns in the underdetermined part of the algebraic block."""
        return coarse_decomposition(semi_explicit_structure(model, subset)).x_minus


PLUS = PlusOperator()
BACKSUB = BackSubstitutionOperator()
LOWINDEX = LowIndexOperator()

for _operator in (PLUS, BACKSUB, LOWINDEX):
    register_operator(_operator, replace=True)
