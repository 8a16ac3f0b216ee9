"""Nonlocal Gray-Scott model and manufactured solutions."""

from nonlocal_grayscott.model.grayscott import (
    GrayScottParams,
    SystemState,
    make_rhs,
    pulse_initial_conditions,
    quasilinear_det,
    rhs,
)
from nonlocal_grayscott.model.manufactured import (
    ManufacturedCase,
    manufactured_sources,
    unit_interval_case,
)

__all__ = [
    "GrayScottParams",
    "ManufacturedCase",
    "SystemState",
    "make_rhs",
    "manufactured_sources",
    "pulse_initial_conditions",
    "quasilinear_det",
    "rhs",
    "unit_interval_case",
]
