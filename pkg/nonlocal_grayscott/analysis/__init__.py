"""Error norms, convergence reports and profile metrics."""

from nonlocal_grayscott.analysis.errors import (
    ConvergenceReport,
    ConvergenceRow,
    lp_error,
    observed_order,
    restrict,
)
from nonlocal_grayscott.analysis.profiles import ProfileMetrics, profile_metrics

__all__ = [
    "ConvergenceReport",
    "ConvergenceRow",
    "ProfileMetrics",
    "lp_error",
    "observed_order",
    "profile_metrics",
    "restrict",
]
