"""Periodic Fourier comparison solver."""

from nonlocal_grayscott.spectral.solver import (
    SpectralOperator,
    imex_step,
    run_periodic,
    symbol,
)

__all__ = ["SpectralOperator", "imex_step", "run_periodic", "symbol"]
