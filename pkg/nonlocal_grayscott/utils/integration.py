"""Adaptive quadrature helpers built on scipy's Gauss-Kronrod routines."""

import logging
import warnings
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad, quad_vec

from nonlocal_grayscott.config.settings import (
    DEFAULT_QUAD_EPSABS,
    DEFAULT_QUAD_EPSREL,
    DEFAULT_QUAD_LIMIT,
)
from nonlocal_grayscott.errors import NumericalError


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    points: Optional[Sequence[float]] = None,
    epsabs: float = DEFAULT_QUAD_EPSABS,
    epsrel: float = DEFAULT_QUAD_EPSREL,
    limit: int = DEFAULT_QUAD_LIMIT,
) -> float:
    """Integrate a scalar function over [a, b] (either end may be infinite).

    Args:
        f: Scalar integrand
        a: Lower limit
        b: Upper limit
        points: Interior break points (kinks, support edges); finite limits only
        epsabs: Absolute tolerance
        epsrel: Relative tolerance
        limit: Maximum number of subintervals

    Returns:
        The integral value

    Raises:
        NumericalError: If QUADPACK reports non-convergence
    """
    if a == b:
        return 0.0
    if points is not None and np.isfinite(a) and np.isfinite(b):
        lo, hi = min(a, b), max(a, b)
        points = sorted({float(p) for p in points if lo < p < hi}) or None
    else:
        points = None

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, error = quad(
                f, a, b, points=points, epsabs=epsabs, epsrel=epsrel, limit=limit
            )
        except IntegrationWarning as e:
            raise NumericalError(f"Adaptive quadrature on [{a}, {b}] failed: {e}")

    logging.debug(f"quad [{a}, {b}] = {value:.16e} (error estimate {error:.2e})")
    return value


def integrate_vec(
    f: Callable[[float], np.ndarray],
    a: float,
    b: float,
    epsabs: float = DEFAULT_QUAD_EPSABS,
    epsrel: float = DEFAULT_QUAD_EPSREL,
    limit: int = DEFAULT_QUAD_LIMIT,
) -> np.ndarray:
    """Integrate a vector-valued function over [a, b] in one adaptive pass.

    The error is controlled in the max norm over the components.

    Raises:
        NumericalError: If the adaptive scheme does not converge
    """
    value, error, info = quad_vec(
        f, a, b, epsabs=epsabs, epsrel=epsrel, norm="max", limit=limit, full_output=True
    )
    if not info.success:
        raise NumericalError(
            f"Vector quadrature on [{a}, {b}] did not converge "
            f"(error estimate {error:.2e}, {info.intervals.shape[0]} intervals)"
        )
    return np.asarray(value, dtype=float)
