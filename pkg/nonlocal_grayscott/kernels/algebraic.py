"""Fat-tailed algebraic kernel γ(z) = 2a³ / (π (z² + a²)²)."""

from typing import Tuple

import numpy as np

from nonlocal_grayscott.kernels.base import ArrayLike, Kernel

_SERIES_CUTOFF = 1e-2


def _arctan_defect(t: ArrayLike) -> ArrayLike:
    """Return arctan(t) - t / (1 + t²), accurate for small t and t = inf."""
    t = np.asarray(t, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        direct = np.where(np.isinf(t), 0.5 * np.pi, np.arctan(t) - t / (1.0 + t * t))
        t2 = t * t
        # 2t³/3 - 4t⁵/5 + 6t⁷/7 - 8t⁹/9
        series = t * t2 * (
            2.0 / 3.0 - t2 * (4.0 / 5.0 - t2 * (6.0 / 7.0 - t2 * 8.0 / 9.0))
        )
    return np.where(np.abs(t) < _SERIES_CUTOFF, series, direct)


class AlgebraicKernel(Kernel):
    """Algebraic kernel; a has units of length."""

    family = "algebraic"

    @property
    def a(self) -> float:
        return self.shape

    def density(self, z: ArrayLike) -> ArrayLike:
        a = self.a
        return 2.0 * a**3 / (np.pi * (np.square(z) + a * a) ** 2)

    def antiderivatives(self, z: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        a = self.a
        z = np.asarray(z, dtype=float)
        angle = np.arctan(z / a)
        big_f = z * angle / np.pi
        big_f_prime = (a * z / (z * z + a * a) + angle) / np.pi
        return big_f, big_f_prime

    def _f1(self, h: ArrayLike) -> ArrayLike:
        a = self.a
        return a * a / np.pi * _arctan_defect(np.asarray(h, dtype=float) / a)

    def _tail_mass(self, r: ArrayLike) -> ArrayLike:
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore"):
            t = np.where(r == 0.0, np.inf, self.a / np.where(r == 0.0, 1.0, r))
        return 2.0 / np.pi * _arctan_defect(t)

    def symbol(self, xi: ArrayLike) -> ArrayLike:
        s = self.a * np.abs(xi)
        return np.expm1(-s) + s * np.exp(-s)

    def second_moment(self) -> float:
        return self.a**2
