"""structdiag cache module.

Provides the LRU cache shared by the set operators.
"""

from .subset_cache import SubsetCache, get_subset_cache, reset_subset_cache

__all__ = ["SubsetCache", "get_subset_cache", "reset_subset_cache"]
