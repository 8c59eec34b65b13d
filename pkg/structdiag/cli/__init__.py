"""structdiag command-line module."""

from .main import RunConfig, build_parser, execute, main
from .render import Report, render

__all__ = [
    "RunConfig",
    "build_parser",
    "execute",
    "main",
    "Report",
    "render",
]
