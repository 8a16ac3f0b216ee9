"""Environment and file configuration for the nonlocal Gray-Scott solver."""

import os
from typing import Optional

from dotenv import load_dotenv

from nonlocal_grayscott.config.settings import (
    DEFAULT_LOG_LEVEL,
    DEFAULT_OUTPUT_DIR,
    LOG_LEVEL_ENV_VAR,
    OUTPUT_DIR_ENV_VAR,
)


class Configuration:
    """Manages environment variables for the solver CLI."""

    def __init__(self) -> None:
        """Initialize configuration with environment variables."""
        self.load_env()
        self.log_level = os.getenv(LOG_LEVEL_ENV_VAR, DEFAULT_LOG_LEVEL)
        self.output_dir = os.getenv(OUTPUT_DIR_ENV_VAR, DEFAULT_OUTPUT_DIR)

    @staticmethod
    def load_env() -> None:
        """Load environment variables from .env file."""
        load_dotenv()

    def resolve_output_dir(self, override: Optional[str] = None) -> str:
        """Pick the output directory: CLI flag first, then the environment."""
        return override if override else self.output_dir
