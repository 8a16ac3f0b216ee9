"""Logging configuration for the nonlocal Gray-Scott solver."""

import logging
import os
import sys
from typing import Optional, Union

import numpy as np
import scipy

from nonlocal_grayscott.config.settings import LOG_LEVEL_ENV_VAR


def resolve_level(level: Union[int, str, None]) -> int:
    """Translate a level name or number into a logging level.

    Raises:
        ValueError: If the name is not a known logging level
    """
    if level is None:
        return logging.INFO
    if isinstance(level, int):
        return level
    value = logging.getLevelName(level.strip().upper())
    if not isinstance(value, int):
        raise ValueError(f"Unknown log level: {level!r}")
    return value


def setup_logging(
    level: Union[int, str] = logging.INFO, log_format: Optional[str] = None
) -> None:
    """Configure logging for the application.

    Args:
        level: Logging level or level name (default: INFO)
        log_format: Custom log format string
    """
    if log_format is None:
        log_format = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

    # Configure root logger
    logging.basicConfig(level=resolve_level(level), format=log_format, force=True)

    # Quiet down noisy libraries
    logging.getLogger("asyncio").setLevel(logging.WARNING)

    nlgs_env = {k: v for k, v in os.environ.items() if k.startswith("NLGS_")}
    logging.debug(f"Environment overrides: {nlgs_env} (level from {LOG_LEVEL_ENV_VAR})")
    logging.debug(
        f"Python {sys.version.split()[0]}, numpy {np.__version__}, scipy {scipy.__version__}"
    )

    logging.info("Logging initialized")
