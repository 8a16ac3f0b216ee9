"""Shape metrics of pulse profiles (plateau width, ripples at the top)."""

from dataclasses import dataclass
from typing import Union

import numpy as np

from nonlocal_grayscott.config.settings import PLATEAU_LEVEL
from nonlocal_grayscott.errors import ArgumentError, DegenerateProfileError
from nonlocal_grayscott.quadrature.grid import Grid, PeriodicGrid

_FLAT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ProfileMetrics:
    max_value: float
    max_location: float
    plateau_width: float
    boundary_value: float
    oscillation_count: int


def _level_set_measure(v: np.ndarray, h: float, level: float) -> float:
    lo, hi = v[:-1], v[1:]
    both = (lo >= level) & (hi >= level)
    width = h * np.count_nonzero(both)
    crossing = (lo >= level) != (hi >= level)
    top = np.maximum(lo[crossing], hi[crossing])
    bottom = np.minimum(lo[crossing], hi[crossing])
    width += h * np.sum((top - level) / (top - bottom))
    return float(width)


def _count_sign_changes(v: np.ndarray, inside: np.ndarray, scale: float) -> int:
    count = 0
    last_sign = 0
    for i in range(v.shape[0] - 1):
        if not (inside[i] and inside[i + 1]):
            last_sign = 0
            continue
        step = v[i + 1] - v[i]
        if abs(step) <= _FLAT_TOLERANCE * scale:
            continue
        sign = 1 if step > 0 else -1
        if last_sign and sign != last_sign:
            count += 1
        last_sign = sign
    return count


def profile_metrics(
    v: np.ndarray, grid: Union[Grid, PeriodicGrid], level: float = PLATEAU_LEVEL
) -> ProfileMetrics:
    """Summarize a pulse profile.

    The plateau is {x : v(x) >= level·max v}, measured with linear
    interpolation between nodes. The oscillation count is the number of
    strict sign changes of the nodal differences within each connected piece
    of the plateau.

    Raises:
        ArgumentError: If v is not finite or does not match the grid
        DegenerateProfileError: If v is identically zero
    """
    v = np.asarray(v, dtype=float)
    if v.shape != grid.x.shape:
        raise ArgumentError(f"Expected {grid.x.shape[0]} values, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ArgumentError("Profile contains non-finite values")
    scale = float(np.max(np.abs(v)))
    if scale == 0.0:
        raise DegenerateProfileError("Profile is identically zero")

    i_max = int(np.argmax(v))
    max_value = float(v[i_max])
    threshold = max_value - (1.0 - level) * abs(max_value)

    samples = np.append(v, v[0]) if isinstance(grid, PeriodicGrid) else v
    inside = samples >= threshold
    ends = (float(v[0]), float(v[-1]))
    return ProfileMetrics(
        max_value=max_value,
        max_location=float(grid.x[i_max]),
        plateau_width=_level_set_measure(samples, grid.h, threshold),
        boundary_value=max(ends, key=abs),
        oscillation_count=_count_sign_changes(samples, inside, scale),
    )
