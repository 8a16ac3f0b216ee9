"""Thin-tailed exponential kernel γ(z) = (σ/2) exp(-σ|z|)."""

from typing import Tuple

import numpy as np
from scipy.special import gammainc

from nonlocal_grayscott.kernels.base import ArrayLike, Kernel


class ExponentialKernel(Kernel):
    """Exponential kernel; σ has units of inverse length."""

    family = "exponential"

    @property
    def sigma(self) -> float:
        return self.shape

    def density(self, z: ArrayLike) -> ArrayLike:
        s = self.sigma
        return 0.5 * s * np.exp(-s * np.abs(z))

    def antiderivatives(self, z: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        s = self.sigma
        az = np.abs(z)
        decay = np.expm1(-s * az)
        big_f = 0.5 * (az + decay / s)
        big_f_prime = -0.5 * np.sign(z) * decay
        return big_f, big_f_prime

    def _f1(self, h: ArrayLike) -> ArrayLike:
        # ∫_0^h y² (σ/2) e^{-σy} dy = P(3, σh) / σ²
        s = self.sigma
        return gammainc(3.0, s * np.asarray(h, dtype=float)) / s**2

    def _tail_mass(self, r: ArrayLike) -> ArrayLike:
        return np.exp(-self.sigma * np.asarray(r, dtype=float))

    def symbol(self, xi: ArrayLike) -> ArrayLike:
        xi2 = np.square(xi)
        return -xi2 / (self.sigma**2 + xi2)

    def second_moment(self) -> float:
        return 2.0 / self.sigma**2
