"""structdiag public API module.

This module exposes the main user-facing class:
- StructuralAnalyzer: One model and one testability operator, with every analysis
"""

from .analyzer import StructuralAnalyzer

__all__ = [
    "StructuralAnalyzer",
]
