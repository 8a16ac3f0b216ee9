"""Explicit Adams-Bashforth time marching with steady-state detection."""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from nonlocal_grayscott.config.settings import (
    DEFAULT_CHECKPOINT_EVERY,
    DEFAULT_STEADY_TOLERANCE,
)
from nonlocal_grayscott.errors import ConfigurationError, DivergenceError
from nonlocal_grayscott.model.grayscott import RightHandSide, SystemState

Extension = Callable[[SystemState], SystemState]
Derivative = Tuple[np.ndarray, np.ndarray]

MODES = ("dirichlet_free", "neumann")
STOP_STEADY = "steady"
STOP_NMAX = "nmax"


@dataclass(frozen=True)
class StepperConfig:
    """Time-marching controls.

    Attributes:
        dt: Time step
        nmax: Maximum number of steps, trial step included
        tol: Steady-state tolerance on max |W_{n+1} - W_n|; negative disables it
        mode: "dirichlet_free" or "neumann"
        checkpoint_every: Snapshot and progress-log cadence in steps
    """

    dt: float
    nmax: int
    tol: float = DEFAULT_STEADY_TOLERANCE
    mode: str = "dirichlet_free"
    checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY

    def __post_init__(self) -> None:
        if not np.isfinite(self.dt) or self.dt <= 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")
        if int(self.nmax) != self.nmax or self.nmax < 1:
            raise ConfigurationError(f"nmax must be an integer >= 1, got {self.nmax}")
        if np.isnan(self.tol):
            raise ConfigurationError("tol must not be NaN")
        if self.mode not in MODES:
            raise ConfigurationError(
                f"Unknown stepper mode {self.mode!r}, expected {MODES}"
            )
        if self.checkpoint_every < 1:
            raise ConfigurationError(
                f"checkpoint_every must be >= 1, got {self.checkpoint_every}"
            )


@dataclass(frozen=True)
class Checkpoint:
    """Snapshot of the state after a given number of steps."""

    step: int
    state: SystemState


@dataclass(frozen=True)
class RunResult:
    """Outcome of a time-marching run.

    Attributes:
        final: State after the last step
        steps: Number of steps taken
        reason: "steady" or "nmax"
        checkpoints: Snapshots taken every checkpoint_every steps
        history: Array of rows (step, t, max_update)
    """

    final: SystemState
    steps: int
    reason: str
    checkpoints: Tuple[Checkpoint, ...] = ()
    history: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)), repr=False)

    @property
    def last_update(self) -> float:
        return float(self.history[-1, 2]) if len(self.history) else float("nan")


def _advance(
    state: SystemState, dt: float, du: np.ndarray, dv: np.ndarray
) -> SystemState:
    return SystemState(state.u + dt * du, state.v + dt * dv, state.t + dt)


def ensure_finite(
    state: SystemState, step: int, last_checkpoint: Optional[Checkpoint]
) -> SystemState:
    """Raise DivergenceError unless every nodal value is finite."""
    if not state.is_finite():
        raise DivergenceError(
            "Time integration produced non-finite values",
            step=step,
            t=state.t,
            last_checkpoint=last_checkpoint,
        )
    return state


def _ab2_combine(
    state_n: SystemState, dt: float, g_n: Derivative, g_nm1: Derivative
) -> SystemState:
    du = 1.5 * g_n[0] - 0.5 * g_nm1[0]
    dv = 1.5 * g_n[1] - 0.5 * g_nm1[1]
    return _advance(state_n, dt, du, dv)


def trial_step(
    state: SystemState,
    dt: float,
    rhs: RightHandSide,
    step: int = 1,
    last_checkpoint: Optional[Checkpoint] = None,
) -> SystemState:
    """Forward-Euler step W_1 = W_0 + dt·G(W_0).

    Raises:
        DivergenceError: If the new state is not finite
    """
    du, dv = rhs(state)
    return ensure_finite(_advance(state, dt, du, dv), step, last_checkpoint)


def ab2_step(
    state_n: SystemState,
    state_nm1: SystemState,
    dt: float,
    rhs: RightHandSide,
    step: int = 2,
    last_checkpoint: Optional[Checkpoint] = None,
) -> SystemState:
    """W_{n+1} = W_n + (3/2)dt·G(W_n) - (1/2)dt·G(W_{n-1}).

    Raises:
        DivergenceError: If the new state is not finite
    """
    new = _ab2_combine(state_n, dt, rhs(state_n), rhs(state_nm1))
    return ensure_finite(new, step, last_checkpoint)


def run(
    initial: SystemState,
    config: StepperConfig,
    rhs: RightHandSide,
    extend: Optional[Extension] = None,
    update_mask: Optional[np.ndarray] = None,
) -> RunResult:
    """March from the initial state until steady or nmax steps.

    In neumann mode the extension is applied to the initial state, after the
    trial step and after every AB2 step, so G always sees extended states.

    Args:
        initial: Initial state
        config: Time-marching controls
        rhs: G(W) returning (du/dt, dv/dt)
        extend: Extension callable, required in neumann mode
        update_mask: Nodes on which the steady-state update is measured

    Returns:
        The run result

    Raises:
        ConfigurationError: If neumann mode has no extension
        DivergenceError: If non-finite values appear
    """
    if config.mode == "neumann" and extend is None:
        raise ConfigurationError("Neumann mode requires an extension callable")

    def finish(state: SystemState) -> SystemState:
        return extend(state) if extend is not None else state

    dt, t0 = config.dt, initial.t
    current = finish(initial)
    last_checkpoint = Checkpoint(0, current)
    checkpoints: List[Checkpoint] = [last_checkpoint]
    history: List[Tuple[int, float, float]] = []

    logging.info(
        f"Starting {config.mode} run: dt={dt:g}, nmax={config.nmax}, tol={config.tol:g}"
    )

    g_prev = rhs(current)
    new = finish(ensure_finite(_advance(current, dt, *g_prev), 1, last_checkpoint))
    step = 1
    reason = STOP_NMAX
    while True:
        new = SystemState(new.u, new.v, t0 + step * dt)
        ensure_finite(new, step, last_checkpoint)
        update = new.max_difference(current, update_mask)
        history.append((step, new.t, update))

        if step % config.checkpoint_every == 0:
            last_checkpoint = Checkpoint(step, new)
            checkpoints.append(last_checkpoint)
            logging.info(
                f"step={step} t={new.t:.6g} max_update={update:.6e} "
                f"max_update_per_dt={update / dt:.6e}"
            )

        if update < config.tol:
            reason = STOP_STEADY
            break
        if step >= config.nmax:
            break

        g_curr = rhs(new)
        advanced = ensure_finite(
            _ab2_combine(new, dt, g_curr, g_prev), step + 1, last_checkpoint
        )
        current, new, g_prev = new, finish(advanced), g_curr
        step += 1

    if checkpoints[-1].step != step:
        checkpoints.append(Checkpoint(step, new))
    logging.info(
        f"Run stopped ({reason}) after {step} steps at t={new.t:.6g}, "
        f"last max_update={history[-1][2]:.6e}"
    )
    return RunResult(
        final=new,
        steps=step,
        reason=reason,
        checkpoints=tuple(checkpoints),
        history=np.array(history, dtype=float),
    )
