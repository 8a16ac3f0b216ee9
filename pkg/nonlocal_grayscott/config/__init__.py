"""Configuration module for the nonlocal Gray-Scott solver."""

from nonlocal_grayscott.config.config import Configuration

__all__ = ["Configuration"]
