"""Nonlocal Gray-Scott - quadrature and spectral solvers for nonlocal reaction-diffusion."""

__version__ = "0.1.0"
