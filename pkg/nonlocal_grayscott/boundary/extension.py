"""Extension solve for the nonlocal Neumann constraint."""

import logging
import warnings
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from nonlocal_grayscott.boundary.constraints import DirichletConstraint
from nonlocal_grayscott.config.settings import EXTENSION_RESIDUAL_TOLERANCE
from nonlocal_grayscott.errors import ArgumentError, ConfigurationError, NumericalError
from nonlocal_grayscott.quadrature.operator import DiscreteOperator, apply


class NeumannExtension:
    """Recover the outer-collar values from the inner values.

    The operator is assembled on [-L, L] with L = 2ℓ. Rows of the outer
    nodes (|x| > ℓ) impose Ku = 0, which gives the block system
    A_oo u_o = -(A_oi u_i + b_o). A_oo is factorized once, and every solve
    is checked against max_outer |Ku| <= residual_tolerance·max |u|.

    Attributes:
        worst_residual: Largest relative outer-collar residual seen so far
    """

    def __init__(
        self,
        op: DiscreteOperator,
        inner_half_width: Optional[float] = None,
        residual_tolerance: float = EXTENSION_RESIDUAL_TOLERANCE,
    ):
        """Factorize the outer block of an assembled operator.

        Args:
            op: Operator assembled with a free or Neumann constraint
            inner_half_width: Physical half-width ℓ; taken from the
                constraint (default L/2) when omitted
            residual_tolerance: Bound on the relative outer-collar residual

        Raises:
            ConfigurationError: If the operator uses a Dirichlet constraint
            NumericalError: If the outer block is singular
        """
        if isinstance(op.bc, DirichletConstraint):
            raise ConfigurationError("Neumann extension needs a free-type exterior")
        half_width = op.grid.half_width
        if inner_half_width is None:
            resolve = getattr(op.bc, "resolve_inner_half_width", None)
            inner_half_width = resolve(half_width) if resolve else 0.5 * half_width

        self.op = op
        self.inner_half_width = float(inner_half_width)
        self.inner = op.grid.inner_mask(self.inner_half_width)
        self.outer = ~self.inner
        self.residual_tolerance = float(residual_tolerance)
        self.worst_residual = 0.0
        if not self.outer.any():
            raise ConfigurationError(
                f"No outer nodes between ℓ={self.inner_half_width:g} "
                f"and L={half_width:g}"
            )

        full = op.linear_matrix
        a_oo = full[np.ix_(self.outer, self.outer)]
        self._a_oo = a_oo
        self._a_oi = full[np.ix_(self.outer, self.inner)]
        self._b_o = op.affine[self.outer]

        with warnings.catch_warnings():
            warnings.simplefilter("error", LinAlgWarning)
            try:
                self._lu = lu_factor(a_oo)
            except (LinAlgWarning, ValueError) as e:
                raise NumericalError(
                    f"Extension block is singular (condition estimate "
                    f"{np.linalg.cond(a_oo):.3e}): {e}"
                ) from e

        logging.info(
            f"Factorized Neumann extension block: {int(self.outer.sum())} outer "
            f"and {int(self.inner.sum())} inner nodes"
        )

    @property
    def inner_size(self) -> int:
        return int(self.inner.sum())

    def extend_inner(self, u_inner: np.ndarray) -> np.ndarray:
        """Return u on the whole grid from its values on the inner nodes.

        Raises:
            ArgumentError: If u_inner does not match the inner node count
            NumericalError: If the solve leaves a residual above tolerance
        """
        u_inner = np.asarray(u_inner, dtype=float)
        if u_inner.shape != (self.inner_size,):
            raise ArgumentError(
                f"Expected {self.inner_size} inner values, got shape {u_inner.shape}"
            )
        u = np.empty(self.op.size)
        u[self.inner] = u_inner
        rhs = -(self._a_oi @ u_inner + self._b_o)
        u[self.outer] = lu_solve(self._lu, rhs)
        self._check_solve(u, rhs)
        return u

    def _check_solve(self, u: np.ndarray, rhs: np.ndarray) -> None:
        scale = float(np.max(np.abs(u)))
        residual = float(np.max(np.abs(self._a_oo @ u[self.outer] - rhs)))
        limit = self.residual_tolerance * scale
        if residual > limit:
            raise NumericalError(
                f"Extension solve residual {residual:.3e} exceeds "
                f"{self.residual_tolerance:g}·max|u| = {limit:.3e}"
            )
        if scale > 0.0:
            self.worst_residual = max(self.worst_residual, residual / scale)

    def __call__(self, u: np.ndarray) -> np.ndarray:
        """Overwrite the outer-collar values of a full-grid function."""
        u = np.asarray(u, dtype=float)
        if u.shape != (self.op.size,):
            raise ArgumentError(f"Expected {self.op.size} values, got shape {u.shape}")
        return self.extend_inner(u[self.inner])

    def residual(self, u_extended: np.ndarray) -> float:
        """max over outer nodes of |Ku|."""
        return float(np.max(np.abs(apply(self.op, u_extended)[self.outer])))


def neumann_extend(op_big: DiscreteOperator, u_inner: np.ndarray) -> np.ndarray:
    """One-shot extension of inner values to the full grid of op_big."""
    return NeumannExtension(op_big).extend_inner(u_inner)
