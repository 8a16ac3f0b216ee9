"""The nonlocal Gray-Scott system."""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.special import gamma

from nonlocal_grayscott.config.settings import DEFAULT_PULSE_ALPHA, DEFAULT_PULSE_BETA
from nonlocal_grayscott.errors import ArgumentError, ConfigurationError
from nonlocal_grayscott.quadrature.grid import Grid, PeriodicGrid
from nonlocal_grayscott.quadrature.operator import DiscreteOperator, apply

SourceTerms = Callable[[float], Tuple[np.ndarray, np.ndarray]]
RightHandSide = Callable[["SystemState"], Tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class GrayScottParams:
    """Parameters of u_t = d_u Ku + A(1 - u) - uv², v_t = d_v Kv - Bv + uv².

    Attributes:
        d_u: Diffusivity of u
        d_v: Diffusivity of v
        a: Feed rate A
        b: Removal rate B
    """

    d_u: float
    d_v: float
    a: float
    b: float

    def __post_init__(self) -> None:
        for name in ("d_u", "d_v", "a", "b"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ConfigurationError(f"Parameter {name} must be positive, got {value}")


@dataclass(frozen=True)
class SystemState:
    """Nodal values of (u, v) at time t."""

    u: np.ndarray
    v: np.ndarray
    t: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", np.asarray(self.u, dtype=float))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float))
        if self.u.shape != self.v.shape or self.u.ndim != 1:
            raise ArgumentError(
                f"u and v must be 1-D of equal length, got {self.u.shape} and {self.v.shape}"
            )

    @property
    def size(self) -> int:
        return self.u.shape[0]

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.v)))

    def max_difference(self, other: "SystemState", mask: Optional[np.ndarray] = None) -> float:
        """max |W - W'| over both components, optionally restricted to a node mask."""
        du = np.abs(self.u - other.u)
        dv = np.abs(self.v - other.v)
        if mask is not None:
            du, dv = du[mask], dv[mask]
        return float(max(du.max(initial=0.0), dv.max(initial=0.0)))


def reaction(state: SystemState, params: GrayScottParams) -> Tuple[np.ndarray, np.ndarray]:
    """Local reaction terms (A(1 - u) - uv², -Bv + uv²)."""
    uv2 = state.u * state.v**2
    return params.a * (1.0 - state.u) - uv2, -params.b * state.v + uv2


def rhs(
    state: SystemState,
    params: GrayScottParams,
    op_u: DiscreteOperator,
    op_v: DiscreteOperator,
    sources: Optional[SourceTerms] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Evaluate (du/dt, dv/dt).

    Args:
        state: Current state
        params: Model parameters
        op_u: Assembled -K for u
        op_v: Assembled -K for v
        sources: Optional callable t -> (f_u, f_v) on the grid

    Returns:
        Tuple of the two time derivatives

    Raises:
        ArgumentError: If the operators or state live on different grids
    """
    if op_u.grid != op_v.grid:
        raise ArgumentError("u and v operators are assembled on different grids")
    if state.size != op_u.size:
        raise ArgumentError(f"State has {state.size} nodes, operators have {op_u.size}")

    react_u, react_v = reaction(state, params)
    du = -params.d_u * apply(op_u, state.u) + react_u
    dv = -params.d_v * apply(op_v, state.v) + react_v
    if sources is not None:
        f_u, f_v = sources(state.t)
        du = du + f_u
        dv = dv + f_v
    return du, dv


def make_rhs(
    params: GrayScottParams,
    op_u: DiscreteOperator,
    op_v: DiscreteOperator,
    sources: Optional[SourceTerms] = None,
) -> RightHandSide:
    """Bind parameters and operators into G(W) for the time stepper."""

    def evaluate(state: SystemState) -> Tuple[np.ndarray, np.ndarray]:
        return rhs(state, params, op_u, op_v, sources)

    return evaluate


def pulse_initial_conditions(
    grid: Union[Grid, PeriodicGrid],
    alpha: float = DEFAULT_PULSE_ALPHA,
    beta: float = DEFAULT_PULSE_BETA,
) -> SystemState:
    """Localized pulse: a Gaussian dip in u and a generalized Gaussian bump in v.

    u₀(x) = 1 - 0.67·exp(-x²/(2α²))/(α√(2π))
    v₀(x) = 0.925·β·exp(-(|x|/α)^β)/(2√2·α·Γ(1/β))

    Raises:
        ConfigurationError: If α or β is not positive
    """
    if alpha <= 0 or beta <= 0:
        raise ConfigurationError(f"Pulse needs α > 0 and β > 0, got α={alpha}, β={beta}")
    x = grid.x
    u0 = 1.0 - 0.67 * np.exp(-0.5 * (x / alpha) ** 2) / (alpha * np.sqrt(2.0 * np.pi))
    v0 = (
        0.925
        * beta
        / (alpha * 2.0 * np.sqrt(2.0) * gamma(1.0 / beta))
        * np.exp(-((np.abs(x) / alpha) ** beta))
    )
    return SystemState(u0, v0, 0.0)


def quasilinear_det(
    state: SystemState, epsilon: float, params: GrayScottParams
) -> np.ndarray:
    """Nodal determinant of the quasilinear diffusion matrix.

    det [[d_u + ε²A + ε²v², 2ε²uv], [-ε²v², d_v + ε²B - 2ε²uv]]

    Raises:
        ArgumentError: If ε is negative
    """
    if epsilon < 0:
        raise ArgumentError(f"ε must be non-negative, got {epsilon}")
    e2 = epsilon**2
    u, v = state.u, state.v
    a11 = params.d_u + e2 * params.a + e2 * v**2
    a12 = 2.0 * e2 * u * v
    a21 = -e2 * v**2
    a22 = params.d_v + e2 * params.b - 2.0 * e2 * u * v
    return a11 * a22 - a12 * a21
