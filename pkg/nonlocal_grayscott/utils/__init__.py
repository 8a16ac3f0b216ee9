"""Utility functions and helpers."""

from nonlocal_grayscott.utils.integration import integrate, integrate_vec
from nonlocal_grayscott.utils.logging import setup_logging

__all__ = ["integrate", "integrate_vec", "setup_logging"]
