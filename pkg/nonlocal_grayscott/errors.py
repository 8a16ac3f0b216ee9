"""Exception hierarchy for the nonlocal Gray-Scott solver."""

from typing import Optional


class NonlocalGrayScottError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(NonlocalGrayScottError, ValueError):
    """Invalid configuration or violated setup precondition.

    Attributes:
        key_path: Dotted path of the offending configuration key, if known
        line: 1-based line number in the configuration file, if known
    """

    def __init__(
        self, message: str, key_path: Optional[str] = None, line: Optional[int] = None
    ) -> None:
        self.key_path = key_path
        self.line = line
        location = ""
        if line is not None:
            location += f"line {line}: "
        if key_path:
            location += f"{key_path}: "
        super().__init__(f"{location}{message}")


class ArgumentError(NonlocalGrayScottError, ValueError):
    """Invalid argument passed to a numerical operation."""


class NumericalError(NonlocalGrayScottError, RuntimeError):
    """A numerical procedure failed (quadrature, linear solve, transform)."""


class DivergenceError(NumericalError):
    """The time integration produced non-finite values.

    Attributes:
        step: Index of the step that produced non-finite values
        t: Simulation time of that step
        last_checkpoint: Last finite state recorded before divergence
    """

    def __init__(self, message: str, step: int, t: float, last_checkpoint=None) -> None:
        self.step = step
        self.t = t
        self.last_checkpoint = last_checkpoint
        super().__init__(f"{message} (step {step}, t={t:.6g})")


class DegenerateProfileError(ArgumentError):
    """Profile metrics requested for an identically zero profile."""
