"""Base convolution kernel interface."""

from abc import ABC, abstractmethod
from typing import Callable, Tuple, Union

import numpy as np

from nonlocal_grayscott.config.settings import DEFAULT_QUAD_EPSABS
from nonlocal_grayscott.errors import ArgumentError, ConfigurationError
from nonlocal_grayscott.utils.integration import integrate_vec

ArrayLike = Union[float, np.ndarray]


def _match_shape(value: ArrayLike, like: ArrayLike) -> ArrayLike:
    return float(value) if np.ndim(like) == 0 else np.asarray(value, dtype=float)


class Kernel(ABC):
    """Abstract base class for even, unit-mass convolution kernels.

    A kernel defines the nonlocal operator
    Ku(x) = ∫ (u(y) - u(x)) γ(|x - y|) dy. Subclasses supply closed forms for
    the density, its first and second antiderivatives, the truncated second
    moment f1 and the tail mass.

    Antiderivatives follow a fixed convention: F'(z) = ∫_0^z γ and
    F(z) = ∫_0^z F', so F' is odd and F is even. Quadrature weights only use
    differences in which affine changes of F cancel.
    """

    family: str = ""

    def __init__(self, shape: float) -> None:
        """Initialize the kernel.

        Args:
            shape: Positive shape parameter (σ or a)

        Raises:
            ConfigurationError: If the shape parameter is not positive
        """
        if not np.isfinite(shape) or shape <= 0:
            raise ConfigurationError(
                f"{self.family} kernel shape parameter must be positive, got {shape}"
            )
        self.shape = float(shape)

    @abstractmethod
    def density(self, z: ArrayLike) -> ArrayLike:
        """Evaluate γ(|z|)."""
        raise NotImplementedError("Subclasses must implement density")

    @abstractmethod
    def antiderivatives(self, z: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        """Return (F(z), F'(z)) with F'' = γ."""
        raise NotImplementedError("Subclasses must implement antiderivatives")

    @abstractmethod
    def _f1(self, h: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    @abstractmethod
    def _tail_mass(self, r: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    @abstractmethod
    def symbol(self, xi: ArrayLike) -> ArrayLike:
        """Fourier symbol K̂(ξ) = γ̂(ξ) - 1 with γ̂(ξ) = ∫ γ(z) e^{-iξz} dz."""
        raise NotImplementedError("Subclasses must implement symbol")

    @abstractmethod
    def second_moment(self) -> float:
        """Return ∫ z² γ(z) dz."""
        raise NotImplementedError("Subclasses must implement second_moment")

    def diffusivity(self) -> float:
        """Effective diffusivity α with K̂(ξ) ≈ -α ξ² near ξ = 0."""
        return 0.5 * self.second_moment()

    def f1(self, h: ArrayLike) -> ArrayLike:
        """Closed form of f1(h) = ∫_0^h y² γ(y) dy.

        Raises:
            ArgumentError: If h is negative
        """
        h_arr = np.asarray(h, dtype=float)
        if np.any(h_arr < 0):
            raise ArgumentError(f"f1 requires h >= 0, got {h}")
        return _match_shape(self._f1(h_arr), h)

    def tail_mass(self, r: ArrayLike) -> ArrayLike:
        """Closed form of C = ∫_{|y|>R} γ(y) dy (both tails).

        Raises:
            ArgumentError: If R is negative
        """
        r_arr = np.asarray(r, dtype=float)
        if np.any(r_arr < 0):
            raise ArgumentError(f"tail_mass requires R >= 0, got {r}")
        return _match_shape(self._tail_mass(r_arr), r)

    def tail_integral_against(
        self,
        x: ArrayLike,
        r: float,
        g: Callable[[np.ndarray], np.ndarray],
        side: str,
        epsabs: float = DEFAULT_QUAD_EPSABS,
    ) -> ArrayLike:
        """Integrate an exterior profile against one kernel tail.

        side="left" returns ∫_{y>R} g(x - y) γ(y) dy, which samples g to the
        left of x - R; side="right" returns ∫_{y<-R} g(x - y) γ(y) dy.

        Args:
            x: Evaluation point(s)
            r: Tail cut-off R > 0
            g: Vectorized exterior profile
            side: "left" or "right"
            epsabs: Absolute tolerance of the adaptive quadrature

        Returns:
            Scalar or array matching x

        Raises:
            ArgumentError: If R is not positive or side is unknown
            NumericalError: If the quadrature does not converge
        """
        if r <= 0:
            raise ArgumentError(f"tail_integral_against requires R > 0, got {r}")
        if side not in ("left", "right"):
            raise ArgumentError(f"side must be 'left' or 'right', got {side!r}")

        scalar = np.ndim(x) == 0
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        sign = -1.0 if side == "left" else 1.0

        def integrand(s: float) -> np.ndarray:
            return np.asarray(g(xs + sign * s), dtype=float) * self.density(s)

        value = integrate_vec(integrand, r, np.inf, epsabs=epsabs)
        return float(value[0]) if scalar else value

    def describe(self) -> str:
        """Short human-readable description used in logs."""
        return f"{self.family}({self.shape:g})"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.shape!r})"

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self.shape == other.shape  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.shape))
