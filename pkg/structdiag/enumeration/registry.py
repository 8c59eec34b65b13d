"""structdiag result registry module.

Provides the sorted, deduplicating store used by the recursive enumerators.
Recursion branches revisit the same equation sets many times; the registry
records each canonical set once and hands results back in canonical order,
size first and then ids.
"""

import threading
from typing import Generic, Iterator, List, Optional, Tuple, TypeVar

from sortedcontainers import SortedDict

from ..model.types import EquationSet

V = TypeVar("V")

SortKey = Tuple[int, Tuple[str, ...]]


class ResultRegistry(Generic[V]):
    """Thread-safe sorted map from equation sets to results.

    Keys are the canonical sort keys of the equation sets, so iteration is
    ordered by (set size, ids) regardless of insertion order. Inserting an
    existing set is a no-op that reports the set as already seen.

    Attributes:
        _data: SortedDict mapping sort key -> (EquationSet, value)
        _lock: RLock for thread-safe operations
        _attempts: Number of insert calls, including duplicates

    Example:
        >>> registry = ResultRegistry()
        >>> registry.add(EquationSet(["e1", "e2", "e5"]), "mso")
        True
        >>> registry.add(EquationSet(["e5", "e2", "e1"]), "mso")
        False

    """

    def __init__(self):
        """Initialize an empty registry."""
        self._lock = threading.RLock()
        self._data: SortedDict = SortedDict()
        self._attempts = 0

    def add(self, equations: EquationSet, value: Optional[V] = None) -> bool:
        """Insert a set unless it is already present.

        Args:
            equations: The equation set
            value: Result to store with it

        Returns:
            True if the set was new, False if it was already registered

        """
        key = equations.sort_key
        with self._lock:
            self._attempts += 1
            if key in self._data:
                return False
            self._data[key] = (equations, value)
            return True

    def get(self, equations: EquationSet) -> Optional[V]:
        """Value stored for a set, or None if absent."""
        with self._lock:
            entry = self._data.get(equations.sort_key)
            return None if entry is None else entry[1]

    def sets(self) -> List[EquationSet]:
        """Registered sets in canonical order."""
        with self._lock:
            return [equations for equations, _ in self._data.values()]

    def values(self) -> List[V]:
        """Stored values in the canonical order of their sets."""
        with self._lock:
            return [value for _, value in self._data.values()]

    def items(self) -> List[Tuple[EquationSet, V]]:
        """(set, value) pairs in canonical order."""
        with self._lock:
            return list(self._data.values())

    def get_count(self) -> int:
        """Number of distinct sets registered."""
        with self._lock:
            return len(self._data)

    def get_duplicates(self) -> int:
        """Number of inserts rejected as revisits."""
        with self._lock:
            return self._attempts - len(self._data)

    def clear(self) -> None:
        """Remove all entries and reset the counters."""
        with self._lock:
            self._data.clear()
            self._attempts = 0

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, equations: EquationSet) -> bool:
        with self._lock:
            return equations.sort_key in self._data

    def __iter__(self) -> Iterator[EquationSet]:
        return iter(self.sets())

    def __repr__(self) -> str:
        with self._lock:
            return f"ResultRegistry(entries={len(self._data)}, revisits={self.get_duplicates()})"
