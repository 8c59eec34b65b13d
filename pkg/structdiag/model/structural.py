"""Structural model and fault bookkeeping.

Provides the StructuralModel container with its validation rules, and the
model-level queries used by every analysis: the faults of a subset, the home
equations of a fault mode, and the semi-explicit partition of a subset into
differential and algebraic parts.
"""

from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from ..utils.exceptions import (
    DuplicateIdentifierError,
    FaultPlacementError,
    ModelError,
    UnknownIdentifierError,
)
from .types import Equation, EquationSet, FaultSignature, VariableKind, VariableRef


class StructuralModel:
    """Immutable incidence structure of an equation system.

    Holds equations in declaration order together with registries of the
    declared unknowns, known signals and faults, and the map from each fault
    to the single equation it affects.

    Validation rules:
        - equation ids are unique; variable ids are unique across all kinds
        - every equation refers only to declared variables
        - every declared unknown occurs in at least one equation
        - every declared fault occurs in exactly one equation

    Attributes:
        name: Model name
        equations: Equations in declaration order
        unknowns: Registry of unknown variables, in declaration order
        knowns: Registry of known signals, in declaration order
        faults: Registry of faults, in declaration order
        fault_home: Map from fault id to the id of the equation it affects

    Example:
        >>> model = load_model("models/eq2.json")
        >>> model.fault_home["f1"]
        'e4'

    """

    def __init__(
        self,
        name: str,
        equations: Iterable[Equation],
        unknowns: Iterable[str],
        knowns: Iterable[str] = (),
        faults: Iterable[str] = (),
    ):
        """Build and validate a model.

        Args:
            name: Model name
            equations: Equations in declaration order
            unknowns: Declared unknown ids in declaration order
            knowns: Declared known-signal ids in declaration order
            faults: Declared fault ids in declaration order

        Raises:
            DuplicateIdentifierError: If an equation or variable id repeats
            FaultPlacementError: If a fault is in zero or several equations
            ModelError: If an equation refers to an undeclared variable, or an
                unknown never occurs

        """
        self.name = name
        self.equations: Tuple[Equation, ...] = tuple(equations)

        self.unknowns = self._registry(unknowns, VariableKind.UNKNOWN)
        self.knowns = self._registry(knowns, VariableKind.KNOWN)
        self.faults = self._registry(faults, VariableKind.FAULT)
        self._check_cross_kind_ids()

        self._by_id: Dict[str, Equation] = {}
        for equation in self.equations:
            if equation.id in self._by_id:
                raise DuplicateIdentifierError(f"Duplicate equation id {equation.id!r}")
            self._by_id[equation.id] = equation

        self._check_references()
        self.fault_home: Mapping[str, str] = MappingProxyType(self._place_faults())
        self._check_unknown_coverage()

        self._all = EquationSet.of(self._by_id)
        self._identity = self._key()
        self._hash = hash(self._identity)

    @staticmethod
    def _registry(ids: Iterable[str], kind: VariableKind) -> Mapping[str, VariableRef]:
        registry: Dict[str, VariableRef] = {}
        for variable_id in ids:
            if variable_id in registry:
                raise DuplicateIdentifierError(f"Duplicate {kind.value} id {variable_id!r}")
            registry[variable_id] = VariableRef(variable_id, kind)
        return MappingProxyType(registry)

    def _check_cross_kind_ids(self) -> None:
        seen: Dict[str, VariableKind] = {}
        for registry in (self.unknowns, self.knowns, self.faults):
            for variable in registry.values():
                if variable.id in seen:
                    raise DuplicateIdentifierError(
                        f"Variable id {variable.id!r} declared as both "
                        f"{seen[variable.id].value} and {variable.kind.value}"
                    )
                seen[variable.id] = variable.kind

    def _check_references(self) -> None:
        for equation in self.equations:
            for incidence in equation.incidences:
                if incidence.variable.id not in self.unknowns:
                    raise ModelError(
                        f"Equation {equation.id!r} refers to undeclared unknown "
                        f"{incidence.variable.id!r}"
                    )
            for known in equation.knowns:
                if known.id not in self.knowns:
                    raise ModelError(
                        f"Equation {equation.id!r} refers to undeclared known {known.id!r}"
                    )
            for fault in equation.faults:
                if fault.id not in self.faults:
                    raise ModelError(
                        f"Equation {equation.id!r} refers to undeclared fault {fault.id!r}"
                    )

    def _place_faults(self) -> Dict[str, str]:
        homes: Dict[str, List[str]] = {fault_id: [] for fault_id in self.faults}
        for equation in self.equations:
            for fault_id in equation.fault_ids:
                homes[fault_id].append(equation.id)

        placement: Dict[str, str] = {}
        for fault_id, equation_ids in homes.items():
            if len(equation_ids) > 1:
                raise FaultPlacementError(
                    f"fault in multiple equations: {fault_id!r} appears in {sorted(equation_ids)}"
                )
            if not equation_ids:
                raise FaultPlacementError(f"fault in no equation: {fault_id!r}")
            placement[fault_id] = equation_ids[0]
        return placement

    def _check_unknown_coverage(self) -> None:
        occurring = set()
        for equation in self.equations:
            occurring |= equation.unknowns
        missing = [unknown for unknown in self.unknowns if unknown not in occurring]
        if missing:
            raise ModelError(f"Unknowns {missing} occur in no equation")

    def _key(self) -> tuple:
        return (
            self.name,
            self.equations,
            tuple(self.unknowns),
            tuple(self.knowns),
            tuple(self.faults),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructuralModel):
            return NotImplemented
        return self._identity == other._identity

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.equations)

    def __repr__(self) -> str:
        return (
            f"StructuralModel(name={self.name!r}, equations={len(self.equations)}, "
            f"unknowns={len(self.unknowns)}, faults={len(self.faults)})"
        )

    @property
    def fingerprint(self) -> tuple:
        """The full model structure as a hashable tuple, used to key caches.

        Two models share a fingerprint only when they are equal.
        """
        return self._identity

    def equation(self, equation_id: str) -> Equation:
        """Look up an equation by id.

        Raises:
            UnknownIdentifierError: If the id is not an equation of the model

        """
        try:
            return self._by_id[equation_id]
        except KeyError as e:
            raise UnknownIdentifierError(f"Unknown equation id {equation_id!r}") from e

    def all_equations(self) -> EquationSet:
        """The full equation set of the model."""
        return self._all

    def resolve(self, subset: Iterable[str]) -> EquationSet:
        """Canonicalize a subset and check that every member is an equation.

        Args:
            subset: Equation ids, as an EquationSet or any iterable

        Returns:
            The canonical EquationSet

        Raises:
            UnknownIdentifierError: If a member is not an equation of the model

        """
        canonical = EquationSet.of(subset)
        for equation_id in canonical:
            if equation_id not in self._by_id:
                raise UnknownIdentifierError(f"Unknown equation id {equation_id!r}")
        return canonical

    def subset(self, *equation_ids: str) -> EquationSet:
        """Shorthand for ``resolve(equation_ids)``."""
        return self.resolve(equation_ids)

    def unknowns_of(self, subset: Iterable[str]) -> FrozenSet[str]:
        """Ids of the unknowns occurring in a subset, any occurrence kind."""
        found = set()
        for equation_id in subset:
            found |= self.equation(equation_id).unknowns
        return frozenset(found)

    def fault_equations(self, subset: Optional[Iterable[str]] = None) -> EquationSet:
        """Members of a subset (default: the whole model) that carry a fault."""
        members = self._all if subset is None else subset
        return EquationSet.of(e for e in members if self.equation(e).faults)


def faults_of(model: StructuralModel, subset: Iterable[str]) -> FaultSignature:
    """Union of the fault labels over the member equations.

    May be empty; callers that need a fault signature in the strict sense
    check nonemptiness themselves.

    Args:
        model: Host model
        subset: Equation ids

    Returns:
        The faults included in the subset

    Raises:
        UnknownIdentifierError: If a member is not an equation of the model

    Example:
        >>> faults_of(eq2, eq2.subset("e1", "e2", "e3", "e5"))
        FaultSignature(['f2'])

    """
    found = set()
    for equation_id in model.resolve(subset):
        found |= model.equation(equation_id).fault_ids
    return FaultSignature(found)


def equations_of_faults(model: StructuralModel, modes: Iterable[str]) -> EquationSet:
    """Home equations of the given faults.

    Args:
        model: Host model
        modes: Fault ids

    Returns:
        The set of equations affected by the faults

    Raises:
        UnknownIdentifierError: If a fault id is not declared in the model

    """
    homes = []
    for fault_id in FaultSignature.of(modes):
        if fault_id not in model.fault_home:
            raise UnknownIdentifierError(f"Unknown fault id {fault_id!r}")
        homes.append(model.fault_home[fault_id])
    return EquationSet(homes)


@dataclass(frozen=True)
class SemiExplicitPartition:
    """Split of a subset into the blocks of a semi-explicit DAE.

    The partition is relative to the subset: an unknown differentiated in one
    subset can be purely algebraic in another.

    Attributes:
        differential: Members that define a derivative
        algebraic: Members without a differentiated incidence
        x1: Unknowns differentiated in some member
        x2: Remaining unknowns of the subset

    """

    differential: EquationSet
    algebraic: EquationSet
    x1: FrozenSet[str]
    x2: FrozenSet[str]


def classify_semi_explicit(model: StructuralModel, subset: Iterable[str]) -> SemiExplicitPartition:
    """Partition a subset into differential/non-differential equations and X1/X2.

    Args:
        model: Host model
        subset: Equation ids

    Returns:
        The semi-explicit partition of the subset

    Raises:
        UnknownIdentifierError: If a member is not an equation of the model

    Example:
        >>> part = classify_semi_explicit(eq4, eq4.subset("e1", "e3", "e4", "e6"))
        >>> sorted(part.x1), sorted(part.x2)
        (['x1', 'x3'], ['x2'])

    """
    members = model.resolve(subset)

    differential = []
    algebraic = []
    x1 = set()
    for equation_id in members:
        equation = model.equation(equation_id)
        derivative = equation.differentiated_unknown
        if derivative is None:
            algebraic.append(equation_id)
        else:
            differential.append(equation_id)
            x1.add(derivative)

    x2 = model.unknowns_of(members) - x1
    return SemiExplicitPartition(
        differential=EquationSet(differential),
        algebraic=EquationSet(algebraic),
        x1=frozenset(x1),
        x2=frozenset(x2),
    )
