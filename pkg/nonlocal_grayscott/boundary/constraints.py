"""Nonlocal boundary constraints: Dirichlet, free decay and Neumann."""

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from nonlocal_grayscott.config.settings import (
    DEFAULT_DECAY_EXPONENT,
    DEFAULT_FAR_FIELD_OFFSET,
)
from nonlocal_grayscott.errors import ArgumentError, ConfigurationError
from nonlocal_grayscott.kernels.base import ArrayLike

ExteriorData = Union[float, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class DecayProfile:
    """Algebraic decay profile g(x) = |L|^q / |x|^q."""

    q: float
    half_width: float

    def __call__(self, x: ArrayLike) -> ArrayLike:
        with np.errstate(divide="ignore"):
            return (self.half_width / np.abs(x)) ** self.q


@dataclass(frozen=True)
class DirichletConstraint:
    """Prescribe u = g on the exterior |x| > L.

    Attributes:
        exterior: Constant exterior value or a vectorized callable g(x)
    """

    exterior: ExteriorData = 0.0
    kind = "dirichlet"

    @property
    def is_constant(self) -> bool:
        return not callable(self.exterior)

    def exterior_data(self, x: ArrayLike) -> ArrayLike:
        if self.is_constant:
            return np.full_like(np.asarray(x, dtype=float), float(self.exterior))
        return np.asarray(self.exterior(np.asarray(x, dtype=float)), dtype=float)


@dataclass(frozen=True)
class FreeConstraint:
    """Prescribe algebraic decay u - u_ref ∝ |x|^{-q} beyond the boundary.

    The boundary amplitudes u(±L) are unknowns of the solve.
    """

    q: float = DEFAULT_DECAY_EXPONENT
    u_ref: float = DEFAULT_FAR_FIELD_OFFSET
    kind = "free"

    def __post_init__(self) -> None:
        if not np.isfinite(self.q) or self.q <= 0:
            raise ConfigurationError(f"Decay exponent q must be positive, got {self.q}")

    def profile(self, half_width: float) -> DecayProfile:
        return DecayProfile(self.q, half_width)


@dataclass(frozen=True)
class NeumannConstraint(FreeConstraint):
    """Zero nonlocal flux Ku = 0 on the outer collar ℓ < |x| <= L = 2ℓ.

    The computational domain is [-2ℓ, 2ℓ]; beyond it the free decay rule
    applies.

    Attributes:
        inner_half_width: Physical half-width ℓ; defaults to L/2
    """

    inner_half_width: Optional[float] = None
    kind = "neumann"

    def resolve_inner_half_width(self, half_width: float) -> float:
        """Return ℓ for a computational half-width L, enforcing L = 2ℓ.

        Raises:
            ConfigurationError: If the configured ℓ is inconsistent with L
        """
        if self.inner_half_width is None:
            return 0.5 * half_width
        if not np.isclose(2.0 * self.inner_half_width, half_width, rtol=1e-12, atol=0.0):
            raise ConfigurationError(
                f"Neumann constraint needs L = 2ℓ, got L={half_width} "
                f"and ℓ={self.inner_half_width}"
            )
        return float(self.inner_half_width)


BoundaryConstraint = Union[DirichletConstraint, FreeConstraint, NeumannConstraint]


@dataclass(frozen=True)
class BoundaryPair:
    """Separate constraints for the u and v components."""

    u: BoundaryConstraint
    v: BoundaryConstraint

    def __post_init__(self) -> None:
        if (self.u.kind == "neumann") != (self.v.kind == "neumann"):
            raise ConfigurationError(
                "Neumann constraints must be applied to both components or neither"
            )

    @property
    def is_neumann(self) -> bool:
        return self.u.kind == "neumann"


def exterior_value(
    bc: BoundaryConstraint,
    x: ArrayLike,
    u_left: float,
    u_right: float,
    half_width: float,
) -> ArrayLike:
    """Value of the unknown at exterior point(s) x, |x| > L.

    Dirichlet returns g(x); free and Neumann return
    u_ref + g(x)/g(±L)·(u(±L) - u_ref) using the same-side boundary value.

    Args:
        bc: Boundary constraint
        x: Exterior point(s)
        u_left: u(-L)
        u_right: u(+L)
        half_width: Domain half-width L

    Raises:
        ArgumentError: If any |x| <= L
    """
    xs = np.asarray(x, dtype=float)
    if np.any(np.abs(xs) <= half_width):
        raise ArgumentError(f"exterior_value requires |x| > L = {half_width}")

    if isinstance(bc, DirichletConstraint):
        value = bc.exterior_data(xs)
    else:
        profile = bc.profile(half_width)
        boundary = np.where(xs < 0, u_left, u_right)
        ratio = profile(xs) / profile(half_width)
        value = bc.u_ref + ratio * (boundary - bc.u_ref)
    return float(value) if np.ndim(x) == 0 else value
