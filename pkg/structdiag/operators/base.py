"""Testability operators and their registry.

A testability operator pairs a structural predicate on PSO sets (which PSO
sets a residual generation method can turn into a residual) with a function
naming the unknowns that block the predicate. The generic M* fixed point in
``mstar.py`` only needs those two pieces.

Operators are looked up by name. The built-in ones register themselves when
``structdiag.operators`` is imported; third-party operators register with
``register_operator``.
"""

import threading
from abc import ABC, abstractmethod
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Union

from ..graph.dm import is_pso
from ..model.structural import StructuralModel
from ..model.types import EquationSet
from ..utils.exceptions import ConfigurationError, NotPSOError, UnknownOperatorError

Predicate = Callable[[StructuralModel, EquationSet], bool]
BlockedFunction = Callable[[StructuralModel, EquationSet], FrozenSet[str]]


class TestabilityOperator(ABC):
    """A named structural testability restriction.

    Subclasses implement ``predicate``. Those that can explain a false
    predicate also override ``blocked_unknowns`` and set ``has_blocked``;
    operators without it are evaluated by the brute-force oracle only.

    Attributes:
        name: Registry name, used on the command line

    """

    __test__ = False

    name: str = ""
    has_blocked: bool = False

    @abstractmethod
    def predicate(self, model: StructuralModel, subset: EquationSet) -> bool:
        """Whether a PSO set is testable under this restriction.

        Only called on PSO sets.
        """

    def blocked_unknowns(self, model: StructuralModel, subset: EquationSet) -> FrozenSet[str]:
        """Unknowns of a predicate-false PSO set that no testable subset can contain.

        Every equation containing one of them can be dropped without losing a
        testable PSO subset.

        Raises:
            NotImplementedError: If the operator does not provide blocked unknowns

        """
        raise NotImplementedError(f"Operator {self.name!r} has no blocked-unknown function")

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"


class PredicateOperator(TestabilityOperator):
    """Operator assembled from plain functions.

    Example:
        >>> even = PredicateOperator("even", lambda model, subset: len(subset) % 2 == 0)
        >>> register_operator(even)

    """

    def __init__(
        self,
        name: str,
        predicate: Predicate,
        blocked: Optional[BlockedFunction] = None,
    ):
        """Initialize the operator.

        Args:
            name: Registry name
            predicate: Testability predicate on PSO sets
            blocked: Optional blocked-unknown function; without it M* falls
                back to the brute-force oracle

        """
        if not name:
            raise ConfigurationError("Operator name cannot be empty")
        self.name = name
        self._predicate = predicate
        self._blocked = blocked
        self.has_blocked = blocked is not None

    def predicate(self, model: StructuralModel, subset: EquationSet) -> bool:
        """Apply the wrapped predicate."""
        return bool(self._predicate(model, subset))

    def blocked_unknowns(self, model: StructuralModel, subset: EquationSet) -> FrozenSet[str]:
        """Apply the wrapped blocked-unknown function.

        Raises:
            NotImplementedError: If the operator was built without one

        """
        if self._blocked is None:
            return super().blocked_unknowns(model, subset)
        return frozenset(self._blocked(model, subset))


_registry: Dict[str, TestabilityOperator] = {}
_registry_lock = threading.Lock()


def register_operator(operator: TestabilityOperator, replace: bool = False) -> None:
    """Add an operator to the registry.

    Args:
        operator: The operator
        replace: Overwrite an operator registered under the same name

    Raises:
        ConfigurationError: If the name is taken and replace is False

    """
    with _registry_lock:
        if operator.name in _registry and not replace:
            raise ConfigurationError(f"Operator {operator.name!r} is already registered")
        _registry[operator.name] = operator


def get_operator(operator: Union[str, TestabilityOperator]) -> TestabilityOperator:
    """Resolve an operator name, or pass an operator instance through.

    Raises:
        UnknownOperatorError: If no operator has that name

    """
    if isinstance(operator, TestabilityOperator):
        return operator
    with _registry_lock:
        try:
            return _registry[operator]
        except KeyError as e:
            raise UnknownOperatorError(
                f"Unknown operator {operator!r}. Registered: {sorted(_registry)}"
            ) from e


def operator_names() -> List[str]:
    """Names of all registered operators, sorted."""
    with _registry_lock:
        return sorted(_registry)


def testable(
    model: StructuralModel,
    subset: Iterable[str],
    operator: Union[str, TestabilityOperator],
) -> bool:
    """Evaluate an operator's predicate on a PSO set.

    Args:
        model: Host model
        subset: A PSO set
        operator: Operator or operator name

    Returns:
        Whether the set is testable under the operator

    Raises:
        NotPSOError: If the subset is not PSO
        UnknownOperatorError: If the operator name is not registered

    Example:
        >>> testable(eq2, eq2.subset("e1", "e2", "e5"), "backsub")
        True

    """
    op = get_operator(operator)
    members = model.resolve(subset)
    if not is_pso(model, members):
        raise NotPSOError(f"not a PSO set: {members}")
    return op.predicate(model, members)
