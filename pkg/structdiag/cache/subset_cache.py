"""structdiag subset cache module.

Provides an LRU cache of per-subset results. The overdetermined part of a
subset is requested over and over: by every M* iteration, by the recursive
enumerators, and thousands of times by the brute-force oracles. Caching it
once per (model, subset) pair lets operators share that work.
"""

import threading
from collections import OrderedDict
from typing import Hashable, Optional, Tuple

from ..model.types import EquationSet
from ..utils.config import Config

CacheKey = Tuple[Hashable, Hashable, EquationSet]


class SubsetCache:
    """Thread-safe LRU cache keyed by (model fingerprint, tag, subset).

    The tag separates different cached quantities for the same subset.
    When the cache reaches its capacity the least recently used entry is
    evicted.

    Attributes:
        maximum_entries: Capacity of the cache
        _cache: OrderedDict storing key -> EquationSet
        _lock: RLock for thread-safe operations
        hits: Number of successful lookups
        misses: Number of failed lookups

    Example:
        >>> cache = SubsetCache(max_entries=1024)
        >>> cache.put(model.fingerprint, "plus", subset, result)
        >>> cache.get(model.fingerprint, "plus", subset)

    """

    def __init__(self, max_entries: Optional[int] = None):
        """Initialize the cache.

        Args:
            max_entries: Maximum number of entries. If None, uses the default
                from Config.

        """
        self.config = Config()
        self.maximum_entries = (
            self.config.subset_cache_entries if max_entries is None else max_entries
        )

        self._lock = threading.RLock()
        self._cache: "OrderedDict[CacheKey, EquationSet]" = OrderedDict()
        self.hits = 0
        self.misses = 0

    def put(
        self, fingerprint: Hashable, tag: Hashable, subset: EquationSet, value: EquationSet
    ) -> None:
        """Store a result, evicting the least recently used entries if full.

        Args:
            fingerprint: Model fingerprint; compared by equality, not by hash
            tag: Name of the cached quantity
            subset: Argument subset
            value: Result to cache

        """
        if self.maximum_entries <= 0:
            return

        key = (fingerprint, tag, subset)
        with self._lock:
            self._cache[key] = value
            self._cache.move_to_end(key)

            while len(self._cache) > self.maximum_entries:
                self._cache.popitem(last=False)

    def get(
        self, fingerprint: Hashable, tag: Hashable, subset: EquationSet
    ) -> Optional[EquationSet]:
        """Retrieve a cached result and mark it as recently used.

        Returns:
            The cached EquationSet, or None if absent

        """
        key = (fingerprint, tag, subset)
        with self._lock:
            value = self._cache.get(key)
            if value is None:
                self.misses += 1
                return None
            self._cache.move_to_end(key)
            self.hits += 1
            return value

    def clear(self) -> None:
        """Remove all entries and reset the hit/miss counters."""
        with self._lock:
            self._cache.clear()
            self.hits = 0
            self.misses = 0

    def get_count(self) -> int:
        """Get the number of entries currently in the cache."""
        return len(self._cache)

    def stats(self) -> dict:
        """Get entry count and hit/miss counters."""
        with self._lock:
            return {"entries": len(self._cache), "hits": self.hits, "misses": self.misses}

    def __repr__(self) -> str:
        """Get string representation of the cache."""
        return f"SubsetCache(entries={len(self._cache)}, hits={self.hits}, misses={self.misses})"


_shared_cache: Optional[SubsetCache] = None
_shared_lock = threading.Lock()


def get_subset_cache() -> SubsetCache:
    """Get the process-wide subset cache, creating it on first use."""
    global _shared_cache
    with _shared_lock:
        if _shared_cache is None:
            _shared_cache = SubsetCache()
        return _shared_cache


def reset_subset_cache() -> None:
    """Drop the process-wide cache so the next use picks up new Config values."""
    global _shared_cache
    with _shared_lock:
        _shared_cache = None
