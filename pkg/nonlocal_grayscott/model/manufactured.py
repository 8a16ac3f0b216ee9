"""Manufactured solutions and their source terms."""

import logging
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from nonlocal_grayscott.kernels.base import ArrayLike, Kernel
from nonlocal_grayscott.model.grayscott import GrayScottParams, SourceTerms
from nonlocal_grayscott.quadrature.grid import Grid
from nonlocal_grayscott.utils.integration import integrate

Amplitude = Callable[[float], float]
Profile = Callable[[ArrayLike], ArrayLike]


def nonlocal_action(
    profile: Profile, kernel: Kernel, x: float, support_half_width: float
) -> float:
    """Kφ(x) by adaptive quadrature for φ vanishing outside [-s, s].

    Kφ(x) = ∫_{-s}^{s} φ(y) γ(x - y) dy - φ(x), using ∫γ = 1.

    Raises:
        NumericalError: If the quadrature does not converge
    """
    s = support_half_width
    inner = integrate(
        lambda y: float(profile(y)) * float(kernel.density(x - y)), -s, s, points=[x]
    )
    value = float(profile(x)) if abs(x) <= s else 0.0
    return inner - value


@dataclass(frozen=True)
class ManufacturedCase:
    """Separable exact solution u = a_u(t)·φ_u(x), v = a_v(t)·φ_v(x).

    The profiles vanish outside [-s, s] so that homogeneous Dirichlet data
    holds on the exterior.
    """

    params: GrayScottParams
    u_amplitude: Amplitude
    u_amplitude_dt: Amplitude
    u_profile: Profile
    v_amplitude: Amplitude
    v_amplitude_dt: Amplitude
    v_profile: Profile
    support_half_width: float = 1.0

    def exact(self, x: ArrayLike, t: float) -> Tuple[ArrayLike, ArrayLike]:
        return (
            self.u_amplitude(t) * self.u_profile(x),
            self.v_amplitude(t) * self.v_profile(x),
        )

    def time_derivative(self, x: ArrayLike, t: float) -> Tuple[ArrayLike, ArrayLike]:
        return (
            self.u_amplitude_dt(t) * self.u_profile(x),
            self.v_amplitude_dt(t) * self.v_profile(x),
        )

    def profile_actions(self, kernel: Kernel, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Kφ_u and Kφ_v at every point of x."""
        s = self.support_half_width
        ku = np.array([nonlocal_action(self.u_profile, kernel, float(xi), s) for xi in x])
        kv = np.array([nonlocal_action(self.v_profile, kernel, float(xi), s) for xi in x])
        return ku, kv

    def sources_from_actions(
        self, x: np.ndarray, t: float, ku: np.ndarray, kv: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        p = self.params
        u, v = self.exact(x, t)
        u_t, v_t = self.time_derivative(x, t)
        uv2 = u * v**2
        f_u = u_t - p.d_u * self.u_amplitude(t) * ku - p.a * (1.0 - u) + uv2
        f_v = v_t - p.d_v * self.v_amplitude(t) * kv + p.b * v - uv2
        return f_u, f_v

    def bind(self, grid: Grid, kernel: Kernel) -> SourceTerms:
        """Precompute the profile actions on the grid and return t -> (f_u, f_v)."""
        ku, kv = self.profile_actions(kernel, grid.x)
        logging.info(
            f"Evaluated manufactured profile actions at {grid.n} nodes for "
            f"{kernel.describe()}"
        )
        x = grid.x

        def sources(t: float) -> Tuple[np.ndarray, np.ndarray]:
            return self.sources_from_actions(x, t, ku, kv)

        return sources


def manufactured_sources(
    case: ManufacturedCase, grid: Grid, kernel: Kernel, t: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Source terms (f_u, f_v) on the grid at time t."""
    ku, kv = case.profile_actions(kernel, grid.x)
    return case.sources_from_actions(grid.x, t, ku, kv)


def _u_profile(x: ArrayLike) -> ArrayLike:
    x = np.asarray(x, dtype=float)
    value = (1.0 + np.sin(np.pi * (x - 0.5))) * (1.0 - x**2) * np.exp(1.0 - x**2)
    return np.where(np.abs(x) <= 1.0, value, 0.0)


def _v_profile(x: ArrayLike) -> ArrayLike:
    x = np.asarray(x, dtype=float)
    value = np.cos(0.5 * np.pi * x) * x**3 * np.sin(np.pi * x)
    return np.where(np.abs(x) <= 1.0, value, 0.0)


def unit_interval_case(params: GrayScottParams) -> ManufacturedCase:
    """The [-1, 1] verification pair with homogeneous exterior data.

    u = 0.5 cos(t)(1 + sin(π(x - 0.5)))(1 - x²)exp(1 - x²)
    v = cos(t²) cos(πx/2) x³ sin(πx)
    """
    return ManufacturedCase(
        params=params,
        u_amplitude=lambda t: 0.5 * np.cos(t),
        u_amplitude_dt=lambda t: -0.5 * np.sin(t),
        u_profile=_u_profile,
        v_amplitude=lambda t: np.cos(t**2),
        v_amplitude_dt=lambda t: -2.0 * t * np.sin(t**2),
        v_profile=_v_profile,
        support_half_width=1.0,
    )
