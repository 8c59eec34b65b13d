"""structdiag logging module.

Provides a singleton logger for analysis progress. Records go to stderr, so
that stdout carries only analysis output, and optionally to a log file.

Levels in use:
    DEBUG    per-step progress (mstar iterations, recursion, cache hits)
    INFO     analysis summaries
    WARNING  union-closure violations, oracle fallbacks and mismatches
"""

import logging
import sys

from .config import Config

LOGGER_NAME = "structdiag"
LOG_FORMAT = "[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class Logger:
    """Singleton wrapper around the "structdiag" logging.Logger.

    Level and log file are read from Config when the wrapper is built and
    again on every ``reconfigure()``.

    Attributes:
        logger: The wrapped logging.Logger

    Example:
        >>> get_logger().debug("mstar[lowindex] iteration 1: blocked ['x2']")

    """

    _instance = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        """Build the wrapped logger once; later calls are no-ops."""
        if Logger._initialized:
            return

        self.logger = self._build()
        Logger._initialized = True

    @staticmethod
    def _build() -> logging.Logger:
        """Attach fresh handlers to the named logger.

        A log file that cannot be opened is skipped; console logging still
        works.
        """
        config = Config()
        level = config.log_level

        logger = logging.getLogger(LOGGER_NAME)
        logger.setLevel(level)
        logger.propagate = False
        for handler in list(logger.handlers):
            handler.close()
            logger.removeHandler(handler)

        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
        handlers = [logging.StreamHandler(sys.stderr)]
        if config.log_file:
            try:
                config.log_file.parent.mkdir(parents=True, exist_ok=True)
                handlers.append(logging.FileHandler(config.log_file))
            except OSError:
                pass

        for handler in handlers:
            handler.setLevel(level)
            handler.setFormatter(formatter)
            logger.addHandler(handler)
        return logger

    def reconfigure(self) -> None:
        """Re-read level and log file from Config.

        The command line calls this after applying flags and environment
        overrides.
        """
        self.logger = self._build()

    def is_enabled_for(self, level: int) -> bool:
        """Whether a record at the given level would be emitted."""
        return self.logger.isEnabledFor(level)

    def debug(self, message: str) -> None:
        """Log at DEBUG."""
        self.logger.debug(message)

    def info(self, message: str) -> None:
        """Log at INFO."""
        self.logger.info(message)

    def warning(self, message: str) -> None:
        """Log at WARNING."""
        self.logger.warning(message)


def get_logger() -> Logger:
    """Return the singleton Logger."""
    return Logger()
