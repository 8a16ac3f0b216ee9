"""Grids, quadrature weights and the assembled discrete operator."""

from nonlocal_grayscott.quadrature.grid import Grid, PeriodicGrid
from nonlocal_grayscott.quadrature.operator import DiscreteOperator, apply, assemble
from nonlocal_grayscott.quadrature.weights import WeightSet, compute_weights, tent

__all__ = [
    "DiscreteOperator",
    "Grid",
    "PeriodicGrid",
    "WeightSet",
    "apply",
    "assemble",
    "compute_weights",
    "tent",
]
