"""Adams-Bashforth time marching."""

from nonlocal_grayscott.timestepper.stepper import (
    Checkpoint,
    RunResult,
    StepperConfig,
    ab2_step,
    run,
    trial_step,
)

__all__ = ["Checkpoint", "RunResult", "StepperConfig", "ab2_step", "run", "trial_step"]
