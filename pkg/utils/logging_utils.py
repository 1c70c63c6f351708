"""
Logging utilities for the command-line tools.
"""

import logging

# Third-party loggers that are noisy at INFO.
QUIET_LOGGERS = ("matplotlib", "numba", "galois")


def init_logging(level: int | str = logging.INFO):
    """Initialize logging configuration; `level` is a number or a name such as "DEBUG"."""
    if isinstance(level, str):
        name = level.upper()
        level = logging.getLevelName(name)
        if not isinstance(level, int):
            raise ValueError(f"unknown log level '{name}'")
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(max(level, logging.WARNING))
