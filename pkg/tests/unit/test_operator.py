"""Unit tests for assembly and application of the discrete operator."""

import numpy as np
import pytest

from nonlocal_grayscott.boundary.constraints import (
    DirichletConstraint,
    FreeConstraint,
    NeumannConstraint,
)
from nonlocal_grayscott.errors import ArgumentError, ConfigurationError
from nonlocal_grayscott.kernels import ExponentialKernel, make_kernel
from nonlocal_grayscott.model.manufactured import nonlocal_action
from nonlocal_grayscott.quadrature.grid import Grid
from nonlocal_grayscott.quadrature.operator import apply, assemble
from tests.oracles import bump


class TestAssemble:
    """Test operator assembly under each constraint."""

    def test_constant_annihilated_by_matching_dirichlet(self, kernel, small_grid):
        """Test -K1 = 0 when the exterior data is also 1."""
        op = assemble(kernel, small_grid, DirichletConstraint(1.0))
        np.testing.assert_allclose(apply(op, np.ones(small_grid.n)), 0.0, atol=1e-12)

    def test_constant_preserved_by_free_offset(self, kernel, small_grid):
        """Test -K1 = 0 for the free constraint with u_ref = 1."""
        op = assemble(kernel, small_grid, FreeConstraint(q=2.0, u_ref=1.0))
        np.testing.assert_allclose(apply(op, np.ones(small_grid.n)), 0.0, atol=1e-12)

    def test_free_decay_pulls_constants_down(self, kernel, small_grid):
        """Test that a constant above a zero far field feels outward flux."""
        op = assemble(kernel, small_grid, FreeConstraint(q=2.0, u_ref=0.0))
        values = apply(op, np.ones(small_grid.n))

        assert np.all(values >= -1e-14)
        assert values[0] > 0.0 and values[-1] > 0.0
        assert values[0] == pytest.approx(values[-1], rel=1e-10)

    def test_zero_dirichlet_is_linear(self, kernel, small_grid):
        """Test that zero exterior data leaves no affine part."""
        op = assemble(kernel, small_grid, DirichletConstraint(0.0))
        np.testing.assert_allclose(op.affine, 0.0, atol=1e-15)

    def test_linear_matrix_matches_apply(self, kernel, small_grid):
        """Test that folding the boundary couplings reproduces apply."""
        op = assemble(kernel, small_grid, FreeConstraint(q=2.0, u_ref=0.3))
        u = np.cos(small_grid.x)

        np.testing.assert_allclose(
            op.linear_matrix @ u + op.affine, apply(op, u), atol=1e-13
        )
        np.testing.assert_allclose(op.apply(u), apply(op, u))

    def test_callable_dirichlet_matches_constant(self, kernel, small_grid):
        """Test the tail quadrature path against the closed-form constant tail."""
        constant = assemble(kernel, small_grid, DirichletConstraint(0.5))
        callable_ = assemble(
            kernel, small_grid, DirichletConstraint(lambda x: np.full_like(x, 0.5))
        )
        np.testing.assert_allclose(callable_.affine, constant.affine, atol=1e-9)

    def test_undefined_exterior_data(self, exp_kernel, small_grid):
        """Test that NaN exterior samples are a configuration error."""
        bc = DirichletConstraint(lambda x: np.where(x > 0, 0.0, np.nan))
        with pytest.raises(ConfigurationError):
            assemble(exp_kernel, small_grid, bc)

    def test_neumann_assembles_like_free(self, exp_kernel):
        """Test that the Neumann constraint uses the free exterior rule."""
        grid = Grid(4.0, 32)
        neumann = assemble(exp_kernel, grid, NeumannConstraint(q=2.0, u_ref=0.0))
        free = assemble(exp_kernel, grid, FreeConstraint(q=2.0, u_ref=0.0))

        np.testing.assert_allclose(neumann.linear_matrix, free.linear_matrix)

    def test_shape_mismatch(self, exp_kernel, small_grid):
        """Test that apply checks the number of nodal values."""
        op = assemble(exp_kernel, small_grid, DirichletConstraint(0.0))
        with pytest.raises(ArgumentError):
            apply(op, np.ones(small_grid.n - 1))


class TestConsistency:
    """Compare -K against adaptive quadrature of the defining integral."""

    @pytest.mark.parametrize("family_shape", [("exponential", 1.0), ("algebraic", 0.5)])
    def test_second_order(self, family_shape):
        """Test that the error decreases at second order under refinement."""
        kernel = make_kernel(*family_shape)
        coarse = Grid(1.0, 64)
        probe = coarse.x[8:-8:4]
        oracle = np.array([-nonlocal_action(bump, kernel, x, 1.0) for x in probe])

        errors = []
        for m in (64, 128, 256, 512):
            grid = Grid(1.0, m)
            op = assemble(kernel, grid, DirichletConstraint(0.0))
            values = apply(op, bump(grid.x))
            stride = m // 64
            on_probe = values[::stride][8:-8:4]
            errors.append(float(np.max(np.abs(on_probe - oracle))))

        order = np.log2(errors[-2] / errors[-1])
        assert errors[0] > errors[1] > errors[2] > errors[3]
        assert order >= 1.8

    def test_single_node_at_fine_resolution(self):
        """Test a single node against the oracle at a fine resolution."""
        kernel = ExponentialKernel(2.0)
        grid = Grid(1.0, 512)
        op = assemble(kernel, grid, DirichletConstraint(0.0))
        i = grid.m // 2

        expected = -nonlocal_action(bump, kernel, 0.0, 1.0)
        assert apply(op, bump(grid.x))[i] == pytest.approx(expected, abs=1e-4)
