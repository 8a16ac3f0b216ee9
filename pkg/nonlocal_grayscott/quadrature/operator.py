"""Dense assembly and application of the discrete operator -K."""

import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy.linalg import toeplitz

from nonlocal_grayscott.boundary.constraints import (
    BoundaryConstraint,
    DirichletConstraint,
)
from nonlocal_grayscott.errors import ArgumentError, ConfigurationError
from nonlocal_grayscott.kernels.base import Kernel
from nonlocal_grayscott.quadrature.grid import Grid
from nonlocal_grayscott.quadrature.weights import WeightSet, compute_weights


@dataclass(frozen=True)
class DiscreteOperator:
    """Affine action -[Ku]_i = (A u)_i + c_left,i u(-L) + c_right,i u(+L) + b_i.

    Attributes:
        matrix: Dense N×N matrix A acting on the nodal values
        affine: Vector b independent of the unknowns
        c_left: Coupling to the left boundary value (free and Neumann only)
        c_right: Coupling to the right boundary value (free and Neumann only)
        bc: Boundary constraint the operator was assembled with
        grid: Grid of the operator
        kernel: Kernel of the operator
        weights: Quadrature weights
        tail_mass: C = ∫_{|y|>2L} γ
    """

    matrix: np.ndarray = field(repr=False)
    affine: np.ndarray = field(repr=False)
    c_left: np.ndarray = field(repr=False)
    c_right: np.ndarray = field(repr=False)
    bc: BoundaryConstraint
    grid: Grid
    kernel: Kernel
    weights: WeightSet = field(repr=False)
    tail_mass: float = 0.0

    @property
    def size(self) -> int:
        return self.grid.n

    @property
    def linear_matrix(self) -> np.ndarray:
        """A with the boundary couplings folded into the first and last columns."""
        full = self.matrix.copy()
        full[:, 0] += self.c_left
        full[:, -1] += self.c_right
        return full

    def apply(self, u: np.ndarray) -> np.ndarray:
        return apply(self, u)


def _exterior_sums(
    w_pos: np.ndarray, left: np.ndarray, right: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Weighted sums of exterior samples for every row.

    left[m-1] holds the sample at x = -L - m·h and right[m-1] the sample at
    x = L + m·h, m = 1 … M. Row p (node x_p = -L + p·h) reaches m = 1 … M-p
    on the left with offsets j = p + m, and m = 1 … p on the right with
    offsets j = M - p + m.
    """
    m = w_pos.shape[0] - 1
    s_left = np.zeros(m + 1)
    s_right = np.zeros(m + 1)
    for p in range(m + 1):
        if p < m:
            s_left[p] = np.dot(w_pos[p + 1 : m + 1], left[: m - p])
        if p > 0:
            s_right[p] = np.dot(w_pos[m + 1 - p : m + 1], right[:p])
    return s_left, s_right


def _exterior_nodes(grid: Grid) -> Tuple[np.ndarray, np.ndarray]:
    offsets = grid.h * np.arange(1, grid.m + 1, dtype=float)
    return -grid.half_width - offsets, grid.half_width + offsets


def _checked(values: np.ndarray, what: str) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ConfigurationError(f"{what} is undefined at a needed sample point")
    return values


def assemble(kernel: Kernel, grid: Grid, bc: BoundaryConstraint) -> DiscreteOperator:
    """Assemble -K on the grid under a boundary constraint.

    Samples u(x_{i-j}) inside [-L, L] come from the grid; samples outside are
    replaced by the constraint (Dirichlet data g, or the decay rule scaled by
    the same-side boundary value). The truncation at L_W = 2L contributes
    C·u_i minus the exterior data integrated against the kernel tails.

    Args:
        kernel: Convolution kernel
        grid: Uniform grid on [-L, L]
        bc: Boundary constraint for this component

    Returns:
        The assembled operator

    Raises:
        ConfigurationError: If the exterior data cannot be evaluated
        NumericalError: If a tail quadrature fails
    """
    weights = compute_weights(kernel, grid)
    w_pos = weights.one_sided
    n, half_width = grid.n, grid.half_width
    radius = weights.interaction_radius
    tail = float(kernel.tail_mass(radius))

    matrix = np.diag(np.full(n, weights.total + tail)) - toeplitz(w_pos[:n])
    x_left, x_right = _exterior_nodes(grid)
    c_left = np.zeros(n)
    c_right = np.zeros(n)

    if isinstance(bc, DirichletConstraint):
        e_left = _checked(bc.exterior_data(x_left), "Dirichlet exterior data")
        e_right = _checked(bc.exterior_data(x_right), "Dirichlet exterior data")
        s_left, s_right = _exterior_sums(w_pos, e_left, e_right)
        if bc.is_constant:
            tail_term = np.full(n, float(bc.exterior) * tail)
        else:
            tail_term = kernel.tail_integral_against(
                grid.x, radius, bc.exterior_data, "left"
            ) + kernel.tail_integral_against(grid.x, radius, bc.exterior_data, "right")
            tail_term = _checked(tail_term, "Dirichlet exterior tail integral")
        affine = -s_left - s_right - tail_term
    else:
        profile = bc.profile(half_width)
        g_boundary = float(profile(half_width))
        r_left = _checked(profile(x_left) / g_boundary, "Exterior decay profile")
        r_right = _checked(profile(x_right) / g_boundary, "Exterior decay profile")
        s_left, s_right = _exterior_sums(w_pos, r_left, r_right)
        t_left = kernel.tail_integral_against(grid.x, radius, profile, "left")
        t_right = kernel.tail_integral_against(grid.x, radius, profile, "right")
        t_left = _checked(t_left, "Exterior decay tail integral") / g_boundary
        t_right = _checked(t_right, "Exterior decay tail integral") / g_boundary

        c_left = -s_left - t_left
        c_right = -s_right - t_right
        # Decay applies to u - u_ref; the offset parts collect in b.
        one_left, one_right = _exterior_sums(
            w_pos, 1.0 - r_left, 1.0 - r_right
        )
        affine = -bc.u_ref * (one_left + one_right + tail - t_left - t_right)

    logging.info(
        f"Assembled -K for {kernel.describe()} on M={grid.m}, L={half_width:g} "
        f"with {bc.kind} constraint (tail mass {tail:.3e})"
    )
    return DiscreteOperator(
        matrix=matrix,
        affine=affine,
        c_left=c_left,
        c_right=c_right,
        bc=bc,
        grid=grid,
        kernel=kernel,
        weights=weights,
        tail_mass=tail,
    )


def apply(op: DiscreteOperator, u: np.ndarray) -> np.ndarray:
    """Return -Ku for nodal values u.

    Raises:
        ArgumentError: If len(u) differs from the grid size
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (op.size,):
        raise ArgumentError(f"Expected {op.size} nodal values, got shape {u.shape}")
    return op.matrix @ u + op.c_left * u[0] + op.c_right * u[-1] + op.affine
