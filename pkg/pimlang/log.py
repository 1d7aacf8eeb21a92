"""Logging module"""

import logging
import sys
from typing import Optional

LOGGING_FORMATTER = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
PACKAGE_LOGGER = "pimlang"

DebugLevels = ["DEBUG", "INFO", "WARNING", "ERROR"]
DebugLevelType = str


def get_logger(
    name: Optional[str] = None, level: DebugLevelType = "WARNING"
) -> logging.Logger:
    """
    Creates and configures a logger for logging messages.

    Records go to stderr, stdout is kept for command output.

    Parameters:
        name (Optional[str]): The name of the logger. Defaults to None.
        level (DebugLevelType): The logging level. Defaults to WARNING.

    Returns:
        logging.Logger: The configured logger object.
    """
    logger = logging.getLogger(name=name)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOGGING_FORMATTER))
        logger.addHandler(handler)
        logger.propagate = False

    if not level or level not in DebugLevels:
        logger.warning(
            "Invalid logging level %s. Setting logging level to WARNING.", level
        )
        level = "WARNING"

    logger.setLevel(level=level)
    return logger


def set_level(level: DebugLevelType) -> None:
    """
    Re-levels every logger created for the package.

    Parameters:
        level (DebugLevelType): One of DEBUG, INFO, WARNING, ERROR.
    """
    if level not in DebugLevels:
        raise ValueError(f"Invalid logging level {level}")
    for name, logger in logging.Logger.manager.loggerDict.items():
        if isinstance(logger, logging.Logger) and (
            name == PACKAGE_LOGGER or name.startswith(PACKAGE_LOGGER + ".")
        ):
            logger.setLevel(level)
