"""Value types of a structural model.

A structural model keeps only the incidence pattern of an equation system:
which unknowns, known signals and faults appear in which equation, and
whether an unknown appears differentiated. All types here are immutable and
hashable, so they can be shared across threads and used as dictionary keys.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, Optional, Tuple

from ..utils.exceptions import DifferentiationError, ModelError


class VariableKind(str, Enum):
    """Kind of a model variable."""

    UNKNOWN = "unknown"
    KNOWN = "known"
    FAULT = "fault"


class Occurrence(str, Enum):
    """How an unknown occurs in an equation."""

    ALGEBRAIC = "algebraic"
    DIFFERENTIATED = "differentiated"


@dataclass(frozen=True, order=True)
class VariableRef:
    """A symbolic variable of a given kind.

    Attributes:
        id: Nonempty identifier, unique within the model
        kind: Unknown, known signal or fault

    """

    id: str
    kind: VariableKind

    def __post_init__(self) -> None:
        """Validate the identifier.

        Raises:
            ModelError: If id is not a nonempty string

        """
        if not isinstance(self.id, str) or not self.id:
            raise ModelError(f"Variable id must be a nonempty string, got {self.id!r}")


@dataclass(frozen=True, order=True)
class Incidence:
    """One occurrence of an unknown in an equation.

    Attributes:
        variable: The unknown variable
        occurrence: Algebraic (x) or differentiated (x dot)

    """

    variable: VariableRef
    occurrence: Occurrence = Occurrence.ALGEBRAIC

    def __post_init__(self) -> None:
        """Validate that only unknowns carry incidences.

        Raises:
            DifferentiationError: If a differentiated occurrence refers to a non-unknown
            ModelError: If an algebraic occurrence refers to a non-unknown

        """
        if self.variable.kind is not VariableKind.UNKNOWN:
            if self.occurrence is Occurrence.DIFFERENTIATED:
                raise DifferentiationError(
                    f"Only unknowns can be differentiated, {self.variable.id!r} is "
                    f"{self.variable.kind.value}"
                )
            raise ModelError(f"Incidence must refer to an unknown, got {self.variable.id!r}")

    @property
    def differentiated(self) -> bool:
        """Whether this is a differentiated occurrence."""
        return self.occurrence is Occurrence.DIFFERENTIATED


@dataclass(frozen=True)
class Equation:
    """Incidence structure of a single equation.

    Attributes:
        id: Equation identifier
        incidences: Occurrences of unknowns
        knowns: Known signals appearing in the equation
        faults: Faults appearing in the equation

    Example:
        >>> x1 = VariableRef("x1", VariableKind.UNKNOWN)
        >>> e1 = Equation("e1", frozenset({Incidence(x1, Occurrence.DIFFERENTIATED)}))
        >>> e1.is_differential
        True

    """

    id: str
    incidences: FrozenSet[Incidence] = field(default_factory=frozenset)
    knowns: FrozenSet[VariableRef] = field(default_factory=frozenset)
    faults: FrozenSet[VariableRef] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        """Validate the semi-explicit form restrictions.

        Raises:
            ModelError: If the id is empty or a known/fault has the wrong kind
            DifferentiationError: If more than one incidence is differentiated

        """
        if not isinstance(self.id, str) or not self.id:
            raise ModelError(f"Equation id must be a nonempty string, got {self.id!r}")

        differentiated = [inc for inc in self.incidences if inc.differentiated]
        if len(differentiated) > 1:
            names = sorted(inc.variable.id for inc in differentiated)
            raise DifferentiationError(
                f"Equation {self.id!r} differentiates {len(names)} unknowns {names}; "
                "semi-explicit form allows at most one"
            )

        for variable in self.knowns:
            if variable.kind is not VariableKind.KNOWN:
                raise ModelError(f"Equation {self.id!r}: {variable.id!r} is not a known signal")
        for variable in self.faults:
            if variable.kind is not VariableKind.FAULT:
                raise ModelError(f"Equation {self.id!r}: {variable.id!r} is not a fault")

    @cached_property
    def unknowns(self) -> FrozenSet[str]:
        """Ids of all unknowns in the equation, any occurrence kind."""
        return frozenset(inc.variable.id for inc in self.incidences)

    @cached_property
    def algebraic_unknowns(self) -> FrozenSet[str]:
        """Ids of unknowns with an algebraic occurrence."""
        return frozenset(inc.variable.id for inc in self.incidences if not inc.differentiated)

    @cached_property
    def differentiated_unknown(self) -> Optional[str]:
        """Id of the differentiated unknown, or None for a non-differential equation."""
        for inc in self.incidences:
            if inc.differentiated:
                return inc.variable.id
        return None

    @cached_property
    def is_differential(self) -> bool:
        """Whether the equation defines a derivative."""
        return self.differentiated_unknown is not None

    @cached_property
    def known_ids(self) -> FrozenSet[str]:
        """Ids of the known signals in the equation."""
        return frozenset(variable.id for variable in self.knowns)

    @cached_property
    def fault_ids(self) -> FrozenSet[str]:
        """Ids of the faults in the equation."""
        return frozenset(variable.id for variable in self.faults)


class _CanonicalIdSet:
    """Sorted, duplicate-free tuple of identifiers with set operations.

    Two instances are equal iff their canonical member tuples are identical,
    so they can key dictionaries and be compared across runs.
    """

    __slots__ = ("members", "_frozen")

    members: Tuple[str, ...]

    def __init__(self, members: Iterable[str] = ()):
        """Build the canonical form.

        Args:
            members: Identifiers in any order, duplicates allowed

        """
        if isinstance(members, str):
            raise TypeError("members must be an iterable of ids, not a single string")
        unique = frozenset(members)
        object.__setattr__(self, "members", tuple(sorted(unique)))
        object.__setattr__(self, "_frozen", unique)

    @classmethod
    def of(cls, members: Iterable[str] = ()):
        """Build an instance from any iterable of ids, or return it unchanged."""
        if isinstance(members, cls):
            return members
        return cls(members)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self._frozen

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.members == other.members

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.members))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.members)!r})"

    def __str__(self) -> str:
        return "{" + ", ".join(self.members) + "}"

    @property
    def sort_key(self) -> Tuple[int, Tuple[str, ...]]:
        """Canonical ordering key: size first, then ids."""
        return (len(self.members), self.members)

    def union(self, other: Iterable[str]):
        """Members of either set."""
        return type(self)((*self.members, *other))

    def difference(self, other: Iterable[str]):
        """Members of this set not in other."""
        removed = set(other)
        return type(self)(m for m in self.members if m not in removed)

    def intersection(self, other: Iterable[str]):
        """Members of both sets."""
        kept = set(other)
        return type(self)(m for m in self.members if m in kept)

    def issubset(self, other: Iterable[str]) -> bool:
        """Whether every member is in other."""
        return self._frozen <= frozenset(other)

    def issuperset(self, other: Iterable[str]) -> bool:
        """Whether every member of other is in this set."""
        return self._frozen >= frozenset(other)

    __or__ = union
    __sub__ = difference
    __and__ = intersection

    def __le__(self, other) -> bool:
        return self.issubset(other)

    def __lt__(self, other) -> bool:
        return self.issubset(other) and len(self) < len(type(self).of(other))

    def __ge__(self, other) -> bool:
        return self.issuperset(other)

    def __gt__(self, other) -> bool:
        return self.issuperset(other) and len(self) > len(type(self).of(other))


class EquationSet(_CanonicalIdSet):
    """Canonical subset of equation ids.

    The universal currency of the set operators: overdetermined part, M*,
    enumeration results. Ordering is lexicographic by id.

    Example:
        >>> EquationSet.of(["e5", "e1", "e2"])
        EquationSet(['e1', 'e2', 'e5'])

    """

    __slots__ = ()


class FaultSignature(_CanonicalIdSet):
    """Canonical set of fault ids.

    As the signature of a testable PSO set it is nonempty; as the result of
    ``faults_of`` on an arbitrary subset it may be empty.
    """

    __slots__ = ()


EMPTY_EQUATIONS = EquationSet()
EMPTY_SIGNATURE = FaultSignature()
