"""Nonlocal boundary constraints.

The Neumann extension lives in ``nonlocal_grayscott.boundary.extension``; it
depends on the assembled operator, which in turn depends on the constraints.
"""

from nonlocal_grayscott.boundary.constraints import (
    BoundaryConstraint,
    BoundaryPair,
    DecayProfile,
    DirichletConstraint,
    FreeConstraint,
    NeumannConstraint,
    exterior_value,
)

__all__ = [
    "BoundaryConstraint",
    "BoundaryPair",
    "DecayProfile",
    "DirichletConstraint",
    "FreeConstraint",
    "NeumannConstraint",
    "exterior_value",
]
