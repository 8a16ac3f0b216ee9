"""Periodic Fourier solver for the nonlocal Gray-Scott system."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from nonlocal_grayscott.config.settings import (
    DEFAULT_SPECTRAL_SCHEME,
    IMAGINARY_RESIDUE_TOLERANCE,
)
from nonlocal_grayscott.errors import ConfigurationError, NumericalError
from nonlocal_grayscott.kernels.base import ArrayLike, Kernel
from nonlocal_grayscott.model.grayscott import GrayScottParams, SystemState, reaction
from nonlocal_grayscott.quadrature.grid import PeriodicGrid
from nonlocal_grayscott.timestepper.stepper import (
    STOP_NMAX,
    STOP_STEADY,
    Checkpoint,
    RunResult,
    StepperConfig,
    ensure_finite,
)

SCHEMES = ("imex-bdf2", "ab2")


def symbol(kernel: Kernel, xi: ArrayLike) -> ArrayLike:
    """Fourier multiplier K̂(ξ) = γ̂(ξ) - 1 of the nonlocal operator."""
    return kernel.symbol(xi)


@dataclass(frozen=True)
class SpectralOperator:
    """K diagonalized on a periodic grid.

    Attributes:
        grid: Periodic grid with a power-of-two size
        kernel: Kernel of the operator
        values: K̂ at the grid wavenumbers, numpy FFT order
    """

    grid: PeriodicGrid
    kernel: Kernel
    values: np.ndarray = field(repr=False)

    @classmethod
    def from_kernel(cls, kernel: Kernel, grid: PeriodicGrid) -> "SpectralOperator":
        values = np.asarray(symbol(kernel, grid.wavenumbers), dtype=float)
        values[0] = 0.0
        if np.any(values > 0):
            raise NumericalError(f"Symbol of {kernel.describe()} is not diffusive")
        return cls(grid=grid, kernel=kernel, values=values)

    def transform(self, u: np.ndarray) -> np.ndarray:
        return np.fft.fft(u)

    def inverse(self, u_hat: np.ndarray) -> np.ndarray:
        """Inverse transform, discarding an imaginary residue after checking it.

        Raises:
            NumericalError: If the imaginary part exceeds the residue tolerance
        """
        u = np.fft.ifft(u_hat)
        scale = max(1.0, float(np.max(np.abs(u.real), initial=0.0)))
        residue = float(np.max(np.abs(u.imag), initial=0.0))
        if residue > IMAGINARY_RESIDUE_TOLERANCE * scale:
            raise NumericalError(f"Imaginary residue {residue:.3e} after inverse transform")
        return u.real.copy()

    def apply(self, u: np.ndarray) -> np.ndarray:
        """Ku on the periodic grid."""
        return self.inverse(self.values * self.transform(u))


def imex_euler_update(
    u_hat: np.ndarray, g_hat: np.ndarray, dt: float, multiplier: np.ndarray
) -> np.ndarray:
    """(û + dt·Ĝ) / (1 - dt·d·K̂)."""
    return (u_hat + dt * g_hat) / (1.0 - dt * multiplier)


def imex_bdf2_update(
    u_hat: np.ndarray,
    u_hat_prev: np.ndarray,
    g_hat: np.ndarray,
    g_hat_prev: np.ndarray,
    dt: float,
    multiplier: np.ndarray,
) -> np.ndarray:
    """(4û^n - û^{n-1} + 2dt(2Ĝ^n - Ĝ^{n-1})) / (3 - 2dt·d·K̂)."""
    numerator = 4.0 * u_hat - u_hat_prev + 2.0 * dt * (2.0 * g_hat - g_hat_prev)
    return numerator / (3.0 - 2.0 * dt * multiplier)


def _component_update(
    u: np.ndarray,
    g: np.ndarray,
    prev: Optional[Tuple[np.ndarray, np.ndarray]],
    dt: float,
    diffusivity: float,
    op: SpectralOperator,
    scheme: str,
) -> np.ndarray:
    multiplier = diffusivity * op.values
    u_hat, g_hat = op.transform(u), op.transform(g)
    if scheme == "ab2":
        rate = multiplier * u_hat + g_hat
        if prev is None:
            return op.inverse(u_hat + dt * rate)
        p_hat, pg_hat = op.transform(prev[0]), op.transform(prev[1])
        rate_prev = multiplier * p_hat + pg_hat
        return op.inverse(u_hat + dt * (1.5 * rate - 0.5 * rate_prev))
    if prev is None:
        return op.inverse(imex_euler_update(u_hat, g_hat, dt, multiplier))
    p_hat, pg_hat = op.transform(prev[0]), op.transform(prev[1])
    return op.inverse(imex_bdf2_update(u_hat, p_hat, g_hat, pg_hat, dt, multiplier))


def imex_step(
    state: SystemState,
    dt: float,
    params: GrayScottParams,
    spectral_op: SpectralOperator,
    previous: Optional[SystemState] = None,
    scheme: str = DEFAULT_SPECTRAL_SCHEME,
) -> SystemState:
    """Advance (u, v) one step with implicit diffusion and explicit reaction.

    Without a previous state the step is IMEX-Euler; with one it is
    IMEX-BDF2 using the extrapolated reaction 2G_n - G_{n-1}. The "ab2"
    scheme treats diffusion explicitly as well.

    Raises:
        ConfigurationError: If the scheme is unknown
        NumericalError: If a transform leaves an imaginary residue
    """
    if scheme not in SCHEMES:
        raise ConfigurationError(f"Unknown spectral scheme {scheme!r}, expected {SCHEMES}")
    g_u, g_v = reaction(state, params)
    prev_u = prev_v = None
    if previous is not None:
        pg_u, pg_v = reaction(previous, params)
        prev_u, prev_v = (previous.u, pg_u), (previous.v, pg_v)
    u = _component_update(state.u, g_u, prev_u, dt, params.d_u, spectral_op, scheme)
    v = _component_update(state.v, g_v, prev_v, dt, params.d_v, spectral_op, scheme)
    return SystemState(u, v, state.t + dt)


def run_periodic(
    initial: SystemState,
    config: StepperConfig,
    params: GrayScottParams,
    spectral_op: SpectralOperator,
    scheme: str = DEFAULT_SPECTRAL_SCHEME,
) -> RunResult:
    """March the periodic problem with the same stopping rules as the quadrature path.

    Raises:
        DivergenceError: If non-finite values appear
    """
    dt, t0 = config.dt, initial.t
    current = initial
    last_checkpoint = Checkpoint(0, current)
    checkpoints: List[Checkpoint] = [last_checkpoint]
    history: List[Tuple[int, float, float]] = []
    logging.info(
        f"Starting periodic {scheme} run on N={spectral_op.grid.n}: dt={dt:g}, "
        f"nmax={config.nmax}, tol={config.tol:g}"
    )

    previous: Optional[SystemState] = None
    step = 0
    reason = STOP_NMAX
    while step < config.nmax:
        step += 1
        new = imex_step(current, dt, params, spectral_op, previous, scheme)
        new = ensure_finite(SystemState(new.u, new.v, t0 + step * dt), step, last_checkpoint)
        update = new.max_difference(current)
        history.append((step, new.t, update))
        previous, current = current, new

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

    if checkpoints[-1].step != step:
        checkpoints.append(Checkpoint(step, current))
    logging.info(f"Periodic run stopped ({reason}) after {step} steps at t={current.t:.6g}")
    return RunResult(
        final=current,
        steps=step,
        reason=reason,
        checkpoints=tuple(checkpoints),
        history=np.array(history, dtype=float),
    )
