"""Unit tests for the Adams-Bashforth time stepper."""

import numpy as np
import pytest

from nonlocal_grayscott.errors import ConfigurationError, DivergenceError
from nonlocal_grayscott.model.grayscott import SystemState
from nonlocal_grayscott.timestepper.stepper import (
    STOP_NMAX,
    STOP_STEADY,
    StepperConfig,
    ab2_step,
    run,
    trial_step,
)
from tests.oracles import linear_rhs


def scalar_state(value=1.0, t=0.0):
    return SystemState(np.array([value]), np.array([value]), t)


class TestStepperConfig:
    """Test StepperConfig validation."""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"dt": 0.0, "nmax": 10},
            {"dt": -0.1, "nmax": 10},
            {"dt": 0.1, "nmax": 0},
            {"dt": 0.1, "nmax": 10, "tol": float("nan")},
            {"dt": 0.1, "nmax": 10, "mode": "periodic"},
            {"dt": 0.1, "nmax": 10, "checkpoint_every": 0},
        ],
    )
    def test_invalid(self, kwargs):
        """Test that invalid controls are configuration errors."""
        with pytest.raises(ConfigurationError):
            StepperConfig(**kwargs)


class TestSingleSteps:
    """Test the trial and AB2 steps on u' = -u."""

    def test_trial_step(self):
        """Test one forward-Euler step from 1 with dt = 0.1."""
        new = trial_step(scalar_state(), 0.1, linear_rhs(-1.0))

        assert new.u[0] == pytest.approx(0.9)
        assert new.t == pytest.approx(0.1)

    def test_ab2_step(self):
        """Test W2 = W1 + dt(1.5 G(W1) - 0.5 G(W0))."""
        rhs = linear_rhs(-1.0)
        w0 = scalar_state()
        w1 = trial_step(w0, 0.1, rhs)
        w2 = ab2_step(w1, w0, 0.1, rhs)

        assert w2.u[0] == pytest.approx(0.815)
        assert w2.v[0] == pytest.approx(0.815)

    def test_non_finite_step(self):
        """Test that a non-finite result raises with the step index."""
        with np.errstate(invalid="ignore"):
            with pytest.raises(DivergenceError) as exc_info:
                trial_step(scalar_state(np.inf), 0.1, linear_rhs(-1.0))
        assert exc_info.value.step == 1


class TestRun:
    """Test the marching loop."""

    def test_second_order_accuracy(self):
        """Test that halving dt divides the error at t = 1 by about four."""
        errors = []
        for dt in (0.02, 0.01):
            config = StepperConfig(dt=dt, nmax=int(round(1.0 / dt)), tol=-1.0)
            result = run(scalar_state(), config, linear_rhs(-1.0))
            errors.append(abs(result.final.u[0] - np.exp(-1.0)))

        assert result.final.t == pytest.approx(1.0)
        assert 3.6 <= errors[0] / errors[1] <= 4.4

    def test_nmax_counts_trial_step(self):
        """Test the step count, history and checkpoints at nmax."""
        config = StepperConfig(dt=0.1, nmax=7, tol=-1.0, checkpoint_every=3)
        result = run(scalar_state(t=2.0), config, linear_rhs(-1.0))

        assert result.reason == STOP_NMAX
        assert result.steps == 7
        assert result.final.t == pytest.approx(2.7)
        assert result.history.shape == (7, 3)
        np.testing.assert_array_equal(result.history[:, 0], np.arange(1, 8))
        assert [c.step for c in result.checkpoints] == [0, 3, 6, 7]

    def test_steady_state(self):
        """Test that a zero right-hand side stops after the trial step."""
        config = StepperConfig(dt=0.1, nmax=100, tol=1e-8)
        result = run(scalar_state(), config, linear_rhs(0.0))

        assert result.reason == STOP_STEADY
        assert result.steps == 1
        assert result.last_update == 0.0

    def test_stable_step_decays(self):
        """Test dt·λ = -0.9, inside the AB2 interval (-1, 0)."""
        config = StepperConfig(dt=0.9, nmax=1000, tol=-1.0)
        result = run(scalar_state(), config, linear_rhs(-1.0))

        assert abs(result.final.u[0]) < 1e-10

    def test_outside_stability_interval_grows(self):
        """Test dt·λ = -1.2, where the AB2 amplification exceeds one."""
        config = StepperConfig(dt=1.2, nmax=200, tol=-1.0)
        result = run(scalar_state(), config, linear_rhs(-1.0))

        assert abs(result.final.u[0]) > 1e6

    def test_divergence_keeps_checkpoint(self):
        """Test dt·λ = -2.5 diverges within 1000 steps."""
        config = StepperConfig(dt=2.5, nmax=1000, tol=-1.0, checkpoint_every=100)
        with np.errstate(over="ignore", invalid="ignore"):
            with pytest.raises(DivergenceError) as exc_info:
                run(scalar_state(), config, linear_rhs(-1.0))

        error = exc_info.value
        assert 1 < error.step <= 1000
        assert error.last_checkpoint is not None
        assert error.last_checkpoint.step < error.step
        assert error.last_checkpoint.state.is_finite()

    def test_neumann_mode_requires_extension(self):
        """Test that neumann mode without an extension is rejected."""
        config = StepperConfig(dt=0.1, nmax=5, mode="neumann")
        with pytest.raises(ConfigurationError):
            run(scalar_state(), config, linear_rhs(-1.0))

    def test_extension_applied_each_step(self):
        """Test that the extension sees the initial and every new state."""
        seen = []

        def extend(state):
            seen.append(state.t)
            return SystemState(state.u.copy(), np.zeros_like(state.v), state.t)

        config = StepperConfig(dt=0.1, nmax=4, tol=-1.0, mode="neumann")
        result = run(scalar_state(), config, linear_rhs(-1.0), extend)

        assert len(seen) == 5
        np.testing.assert_array_equal(result.final.v, 0.0)

    def test_update_mask(self):
        """Test that the steady check only looks at masked nodes."""
        state = SystemState(np.array([1.0, 1.0]), np.array([0.0, 0.0]))

        def rhs(s):
            return np.array([0.0, 1.0]), np.zeros(2)

        config = StepperConfig(dt=0.1, nmax=50, tol=1e-8)
        result = run(state, config, rhs, update_mask=np.array([True, False]))

        assert result.reason == STOP_STEADY
        assert result.steps == 1
