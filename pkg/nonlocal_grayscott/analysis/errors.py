"""Discrete error norms and observed convergence orders."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from nonlocal_grayscott.errors import ArgumentError
from nonlocal_grayscott.quadrature.grid import Grid, PeriodicGrid

Reference = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]
AnyGrid = Union[Grid, PeriodicGrid]

NORMS = {"L1": 1, "L2": 2}
REPORT_COLUMNS = ("M", "h", "dt", "error_u", "error_v", "order_u", "order_v")
UNDEFINED_ORDER = "undefined"


def _node_weights(grid: AnyGrid) -> np.ndarray:
    weights = np.full(grid.x.shape[0], grid.h)
    if isinstance(grid, Grid):
        weights[0] = weights[-1] = 0.5 * grid.h
    return weights


def restrict(values: np.ndarray, grid: AnyGrid) -> np.ndarray:
    """Restrict values from a nested finer grid onto the nodes of grid.

    Raises:
        ArgumentError: If the finer grid is not nested in grid
    """
    values = np.asarray(values, dtype=float)
    n_fine, n = values.shape[0], grid.x.shape[0]
    if n_fine == n:
        return values
    if isinstance(grid, Grid):
        intervals_fine, intervals = n_fine - 1, n - 1
        if intervals_fine < intervals or intervals_fine % intervals:
            raise ArgumentError(f"Grid with {n_fine} nodes is not nested over {n} nodes")
        return values[:: intervals_fine // intervals]
    if n_fine < n or n_fine % n:
        raise ArgumentError(f"Periodic grid of {n_fine} is not nested over {n}")
    return values[:: n_fine // n]


def lp_error(u: np.ndarray, ref: Reference, p: int, grid: AnyGrid) -> float:
    """Discrete Lᵖ distance (Σ_i ω_i |u_i - ref_i|ᵖ)^{1/p}.

    ω_i is the composite trapezoid weight: h/2 at the end nodes x = ±L of a
    bounded grid and h at every other node, so both ends are counted and the
    sum approximates ∫_{-L}^{L} |u - ref|ᵖ dx. A periodic grid has no
    duplicated end node and weighs every node by h. Callers measuring only
    the physical part of a Neumann run pass the restricted inner grid.

    Args:
        u: Nodal values on grid
        ref: Callable evaluated at the nodes, or nodal values on grid or on a
            nested finer grid of the same domain
        p: 1 or 2
        grid: Grid of u

    Raises:
        ArgumentError: If p is unsupported, lengths mismatch or grids are not nested
    """
    if p not in (1, 2):
        raise ArgumentError(f"Only L1 and L2 errors are supported, got p={p}")
    u = np.asarray(u, dtype=float)
    if u.shape != grid.x.shape:
        raise ArgumentError(f"Expected {grid.x.shape[0]} values, got shape {u.shape}")
    ref_values = ref(grid.x) if callable(ref) else restrict(ref, grid)
    diff = np.abs(u - np.asarray(ref_values, dtype=float))
    return float(np.sum(_node_weights(grid) * diff**p) ** (1.0 / p))


def observed_order(
    e_coarse: float, e_fine: float, h_coarse: float, h_fine: float
) -> Optional[float]:
    """log(e_fine/e_coarse) / log(h_fine/h_coarse); None when an error is zero.

    Raises:
        ArgumentError: If errors are negative or h_fine is not below h_coarse
    """
    if e_coarse < 0 or e_fine < 0:
        raise ArgumentError(f"Errors must be non-negative, got {e_coarse}, {e_fine}")
    if not 0 < h_fine < h_coarse:
        raise ArgumentError(f"Need 0 < h_fine < h_coarse, got {h_fine}, {h_coarse}")
    if e_coarse == 0 or e_fine == 0:
        return None
    return math.log(e_fine / e_coarse) / math.log(h_fine / h_coarse)


@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    h: float
    dt: float
    error_u: float
    error_v: float
    order_u: Optional[float] = None
    order_v: Optional[float] = None


@dataclass(frozen=True)
class ConvergenceReport:
    """Errors and observed orders over a refinement sequence.

    Attributes:
        rows: One row per refinement level, coarsest first
        norm: "L1" or "L2"
        reference: "exact" or "finest-mesh"
    """

    rows: Tuple[ConvergenceRow, ...]
    norm: str
    reference: str

    @classmethod
    def from_levels(
        cls,
        levels: Sequence[Tuple[int, float, float, float, float]],
        norm: str,
        reference: str,
    ) -> "ConvergenceReport":
        """Build the report from (M, h, dt, error_u, error_v) tuples."""
        rows: List[ConvergenceRow] = []
        for i, (m, h, dt, e_u, e_v) in enumerate(levels):
            order_u = order_v = None
            if i > 0:
                prev = rows[-1]
                order_u = observed_order(prev.error_u, e_u, prev.h, h)
                order_v = observed_order(prev.error_v, e_v, prev.h, h)
            rows.append(ConvergenceRow(m, h, dt, e_u, e_v, order_u, order_v))
            logging.info(
                f"M={m} h={h:.6g} dt={dt:.6g}: {norm} error u={e_u:.3e} v={e_v:.3e} "
                f"orders u={order_u} v={order_v}"
            )
        return cls(rows=tuple(rows), norm=norm, reference=reference)

    def orders(self, component: str) -> List[Optional[float]]:
        return [getattr(row, f"order_{component}") for row in self.rows[1:]]

    def average_order(self, component: str) -> Optional[float]:
        """Mean of the defined orders of a component ("u" or "v")."""
        defined = [o for o in self.orders(component) if o is not None]
        return float(np.mean(defined)) if defined else None

    def csv_rows(self) -> List[List[str]]:
        """Rows of strings matching REPORT_COLUMNS."""

        def fmt_order(i: int, order: Optional[float]) -> str:
            if i == 0:
                return ""
            return UNDEFINED_ORDER if order is None else f"{order:.17e}"

        return [
            [
                str(row.m),
                f"{row.h:.17e}",
                f"{row.dt:.17e}",
                f"{row.error_u:.17e}",
                f"{row.error_v:.17e}",
                fmt_order(i, row.order_u),
                fmt_order(i, row.order_v),
            ]
            for i, row in enumerate(self.rows)
        ]
