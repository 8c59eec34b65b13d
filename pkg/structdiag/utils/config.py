"""structdiag configuration module.

Provides a singleton configuration class that centralizes the tunable
parameters of the analyses: the brute-force oracle bound, logging, default
operator and output format for the command line, and the subset cache used by
the overdetermined-part computation.

All configuration parameters have defaults but can be overridden in code or
from the environment before running an analysis.
"""

import os
from pathlib import Path
from typing import Mapping, Optional

from .exceptions import ConfigurationError

ORACLE_BOUND_VARIABLE = "STRUCTDIAG_ORACLE_BOUND"
LOG_LEVEL_VARIABLE = "STRUCTDIAG_LOG_LEVEL"


class Config:
    """Singleton configuration for structdiag parameters.

    Uses the singleton pattern so that the command line, the oracles and the
    cache observe the same settings.

    Class Attributes:
        DEFAULT_ORACLE_BOUND: Largest equation count an oracle enumerates (16)
        DEFAULT_LOG_LEVEL: Logging level (WARNING)
        DEFAULT_LOG_FILE: Optional log file path (None)
        DEFAULT_OPERATOR: Testability operator used when none is given (plus)
        DEFAULT_OUTPUT_FORMAT: Command-line output format (table)
        DEFAULT_SUBSET_CACHE_ENTRIES: Capacity of the subset cache (65536)
        DEFAULT_ENABLE_SUBSET_CACHE: Enable the subset cache (True)

    Example:
        >>> config = Config()
        >>> config.set_oracle_bound(12)
        >>> config.set_log_level("DEBUG")

    """

    DEFAULT_ORACLE_BOUND = 16
    DEFAULT_LOG_LEVEL = "WARNING"
    DEFAULT_LOG_FILE: Optional[str] = None
    DEFAULT_OPERATOR = "plus"
    DEFAULT_OUTPUT_FORMAT = "table"
    DEFAULT_SUBSET_CACHE_ENTRIES = 65536
    DEFAULT_ENABLE_SUBSET_CACHE = True

    VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
    VALID_OUTPUT_FORMATS = ("table", "json", "csv")

    _instance: Optional["Config"] = None

    def __new__(cls) -> "Config":
        """Create or return the singleton Config instance.

        Returns:
            The singleton Config instance. Multiple calls return the same object.

        """
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self) -> None:
        """Initialize the configuration with default values.

        Only initializes once due to singleton pattern.
        """
        if self._initialized:
            return

        self.oracle_bound: int = self.DEFAULT_ORACLE_BOUND
        self.log_level: str = self.DEFAULT_LOG_LEVEL
        self.log_file: Optional[Path] = None
        self.default_operator: str = self.DEFAULT_OPERATOR
        self.output_format: str = self.DEFAULT_OUTPUT_FORMAT
        self.subset_cache_entries: int = self.DEFAULT_SUBSET_CACHE_ENTRIES
        self.enable_subset_cache: bool = self.DEFAULT_ENABLE_SUBSET_CACHE

        self._initialized = True

    def set_oracle_bound(self, bound: int) -> None:
        """Set the largest set size a brute-force oracle may enumerate.

        Oracles visit every subset, so the cost doubles with each equation.

        Args:
            bound: Number of equations (must be positive)

        Raises:
            ConfigurationError: If bound is not a positive integer

        """
        if not isinstance(bound, int) or isinstance(bound, bool) or bound <= 0:
            raise ConfigurationError(f"Oracle bound must be a positive integer, got {bound!r}")
        self.oracle_bound = bound

    def set_log_level(self, level: str) -> None:
        """Set the logging level.

        Args:
            level: One of DEBUG, INFO, WARNING, ERROR, CRITICAL (case-insensitive)

        Raises:
            ConfigurationError: If level is not a valid logging level

        """
        normalized = str(level).upper()
        if normalized not in self.VALID_LOG_LEVELS:
            raise ConfigurationError(
                f"Invalid log level {level!r}. Must be one of {list(self.VALID_LOG_LEVELS)}"
            )
        self.log_level = normalized

    def set_log_file(self, path: Optional[str]) -> None:
        """Send log records to a file in addition to stderr.

        Args:
            path: Log file path, or None to disable file logging

        """
        self.log_file = Path(path) if path else None

    def set_output_format(self, output_format: str) -> None:
        """Set the default command-line output format.

        Args:
            output_format: One of table, json, csv

        Raises:
            ConfigurationError: If the format is unknown

        """
        if output_format not in self.VALID_OUTPUT_FORMATS:
            raise ConfigurationError(
                f"Invalid output format {output_format!r}. "
                f"Must be one of {list(self.VALID_OUTPUT_FORMATS)}"
            )
        self.output_format = output_format

    def set_default_operator(self, name: str) -> None:
        """Set the testability operator used when none is requested.

        The name is resolved against the operator registry when an analysis
        runs, so third-party operators registered later are accepted here.

        Args:
            name: Operator name

        Raises:
            ConfigurationError: If name is empty

        """
        if not name:
            raise ConfigurationError("Operator name cannot be empty")
        self.default_operator = name

    def set_subset_cache_entries(self, entries: int) -> None:
        """Set the capacity of the subset cache.

        Set to 0 to disable caching.

        Args:
            entries: Maximum number of cached subsets (cannot be negative)

        Raises:
            ConfigurationError: If entries is negative

        """
        if entries < 0:
            raise ConfigurationError("Subset cache size cannot be negative")
        self.subset_cache_entries = entries
        self.enable_subset_cache = entries > 0

    def load_environment(self, environ: Optional[Mapping[str, str]] = None) -> None:
        """Apply overrides from environment variables.

        Reads STRUCTDIAG_ORACLE_BOUND and STRUCTDIAG_LOG_LEVEL.

        Args:
            environ: Mapping to read from (defaults to os.environ)

        Raises:
            ConfigurationError: If a variable holds a malformed value

        """
        environ = os.environ if environ is None else environ

        bound = environ.get(ORACLE_BOUND_VARIABLE)
        if bound is not None and bound.strip():
            try:
                parsed = int(bound)
            except ValueError as e:
                raise ConfigurationError(
                    f"{ORACLE_BOUND_VARIABLE} must be an integer, got {bound!r}"
                ) from e
            self.set_oracle_bound(parsed)

        level = environ.get(LOG_LEVEL_VARIABLE)
        if level is not None and level.strip():
            self.set_log_level(level.strip())

    def to_dict(self) -> dict:
        """Get all configuration parameters as a dictionary.

        Returns:
            Dictionary with all configuration key-value pairs

        """
        return {
            "oracle_bound": self.oracle_bound,
            "log_level": self.log_level,
            "log_file": str(self.log_file) if self.log_file else None,
            "default_operator": self.default_operator,
            "output_format": self.output_format,
            "subset_cache_entries": self.subset_cache_entries,
            "enable_subset_cache": self.enable_subset_cache,
        }

    @classmethod
    def reset(cls) -> None:
        """Reset the configuration singleton to None.

        Used primarily for testing to clear the singleton instance.

        Example:
            >>> Config.reset()
            >>> config = Config()  # Fresh instance with defaults

        """
        cls._instance = None
