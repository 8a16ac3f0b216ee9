"""Unit tests for error norms, convergence orders and profile metrics."""

import numpy as np
import pytest

from nonlocal_grayscott.analysis.errors import (
    UNDEFINED_ORDER,
    ConvergenceReport,
    lp_error,
    observed_order,
    restrict,
)
from nonlocal_grayscott.analysis.profiles import profile_metrics
from nonlocal_grayscott.errors import ArgumentError, DegenerateProfileError
from nonlocal_grayscott.quadrature.grid import Grid, PeriodicGrid


class TestLpError:
    """Test the trapezoid-weighted discrete norms."""

    def test_bounded_grid_weights(self):
        """Test that end nodes carry half weight."""
        grid = Grid(1.0, 4)
        u = np.ones(grid.n)

        assert lp_error(u, np.zeros_like, 1, grid) == pytest.approx(2.0)
        assert lp_error(u, np.zeros_like, 2, grid) == pytest.approx(np.sqrt(2.0))

    def test_end_node_counted_with_half_weight(self):
        """Test that an error at x = -L alone contributes h/2."""
        grid = Grid(1.0, 4)
        u = np.zeros(grid.n)
        u[0] = 1.0

        assert lp_error(u, np.zeros_like, 1, grid) == pytest.approx(0.5 * grid.h)
        u[2] = 1.0
        assert lp_error(u, np.zeros_like, 1, grid) == pytest.approx(1.5 * grid.h)

    def test_periodic_grid_weights(self):
        """Test uniform weights on a periodic grid."""
        grid = PeriodicGrid(1.0, 4)
        assert lp_error(np.ones(4), np.zeros(4), 1, grid) == pytest.approx(2.0)

    def test_reference_on_finer_grid(self):
        """Test that a nested finer reference is restricted to the nodes."""
        grid = Grid(1.0, 4)
        fine = grid.refine(4)

        error = lp_error(grid.x**2, fine.x**2, 2, grid)

        assert error == pytest.approx(0.0, abs=1e-15)

    def test_unsupported_norm(self):
        """Test that only p = 1, 2 are accepted."""
        grid = Grid(1.0, 4)
        with pytest.raises(ArgumentError):
            lp_error(np.ones(grid.n), np.zeros(grid.n), 3, grid)

    def test_length_mismatch(self):
        """Test that u must match the grid."""
        with pytest.raises(ArgumentError):
            lp_error(np.ones(3), np.zeros(3), 1, Grid(1.0, 4))


class TestRestrict:
    """Test nested-grid restriction."""

    def test_bounded(self):
        """Test that every second node is kept when M doubles."""
        grid = Grid(1.0, 4)
        np.testing.assert_array_equal(restrict(np.arange(9.0), grid), [0, 2, 4, 6, 8])

    def test_periodic(self):
        """Test restriction on periodic grids."""
        grid = PeriodicGrid(1.0, 4)
        np.testing.assert_array_equal(restrict(np.arange(8.0), grid), [0, 2, 4, 6])

    def test_not_nested(self):
        """Test that a non-nested grid is rejected."""
        with pytest.raises(ArgumentError):
            restrict(np.arange(7.0), Grid(1.0, 4))


class TestObservedOrder:
    """Test the observed order of convergence."""

    @pytest.mark.parametrize(
        "e_coarse,e_fine", [(8.35e-5, 2.16e-5), (3.70e-3, 9.58e-4)]
    )
    def test_tabulated_errors(self, e_coarse, e_fine):
        """Test orders computed from successive halvings."""
        assert observed_order(e_coarse, e_fine, 0.1, 0.05) == pytest.approx(
            1.95, abs=0.01
        )

    def test_zero_error(self):
        """Test that a zero error leaves the order undefined."""
        assert observed_order(1e-3, 0.0, 0.1, 0.05) is None

    def test_invalid_spacing(self):
        """Test that h_fine must be smaller than h_coarse."""
        with pytest.raises(ArgumentError):
            observed_order(1e-3, 1e-4, 0.05, 0.1)


class TestConvergenceReport:
    """Test report assembly and CSV rows."""

    @pytest.fixture
    def report(self):
        return ConvergenceReport.from_levels(
            [(40, 0.05, 0.05, 1e-3, 2e-3), (80, 0.025, 0.025, 2.5e-4, 0.0)],
            norm="L2",
            reference="exact",
        )

    def test_orders(self, report):
        """Test the orders of each component."""
        assert report.orders("u") == [pytest.approx(2.0)]
        assert report.orders("v") == [None]
        assert report.average_order("u") == pytest.approx(2.0)
        assert report.average_order("v") is None

    def test_csv_rows(self, report):
        """Test that the first row has empty orders and zero errors give undefined."""
        first, second = report.csv_rows()

        assert first[0] == "40"
        assert first[5:] == ["", ""]
        assert float(second[5]) == pytest.approx(2.0)
        assert second[6] == UNDEFINED_ORDER


class TestProfileMetrics:
    """Test plateau width and oscillation count."""

    def test_tent_width(self):
        """Test the 95% level set of a unit tent."""
        grid = Grid(2.0, 400)
        v = np.maximum(0.0, 1.0 - np.abs(grid.x))

        metrics = profile_metrics(v, grid)

        assert metrics.max_value == pytest.approx(1.0)
        assert metrics.max_location == pytest.approx(0.0)
        assert metrics.plateau_width == pytest.approx(0.1, abs=1e-9)
        assert metrics.oscillation_count == 1
        assert metrics.boundary_value == 0.0

    def test_rippled_plateau(self):
        """Test counting ripples on a flat top."""
        grid = Grid(2.0, 800)
        v = np.where(
            np.abs(grid.x) < 0.99, 1.0 + 0.01 * np.cos(20.0 * np.pi * grid.x), 0.0
        )

        metrics = profile_metrics(v, grid)

        assert metrics.oscillation_count == 39

    def test_periodic_wraparound(self):
        """Test that a plateau crossing the periodic seam is measured whole."""
        grid = PeriodicGrid(1.0, 8)
        v = np.array([1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])

        metrics = profile_metrics(v, grid)

        assert metrics.plateau_width == pytest.approx(0.525)
        assert metrics.oscillation_count == 0

    def test_zero_profile(self):
        """Test that an identically zero profile is degenerate."""
        grid = Grid(1.0, 4)
        with pytest.raises(DegenerateProfileError):
            profile_metrics(np.zeros(grid.n), grid)

    @pytest.mark.parametrize("v", [np.full(5, np.nan), np.ones(4)])
    def test_invalid_profile(self, v):
        """Test that non-finite or mis-sized profiles are rejected."""
        with pytest.raises(ArgumentError):
            profile_metrics(v, Grid(1.0, 4))
