"""Quadrature weights for the discrete nonlocal operator."""

import logging
from dataclasses import dataclass

import numpy as np

from nonlocal_grayscott.errors import ArgumentError, ConfigurationError
from nonlocal_grayscott.kernels.base import ArrayLike, Kernel
from nonlocal_grayscott.quadrature.grid import Grid


def tent(t: ArrayLike, h: float) -> ArrayLike:
    """Tent function T_h(t) = max(0, 1 - |t|/h)."""
    if h <= 0:
        raise ArgumentError(f"Tent width must be positive, got {h}")
    value = np.maximum(0.0, 1.0 - np.abs(t) / h)
    return float(value) if np.ndim(t) == 0 else value


@dataclass(frozen=True)
class WeightSet:
    """Weights w_j for offsets j = -M … M.

    Attributes:
        values: Array of length 2M + 1, values[j + M] = w_j
        f1: f1(h) of the kernel on this grid
        kernel: Kernel the weights were built from
        grid: Grid the weights were built on
    """

    values: np.ndarray
    f1: float
    kernel: Kernel
    grid: Grid

    @property
    def interaction_radius(self) -> float:
        """L_W = 2L, the truncation radius of the quadrature sum."""
        return 2.0 * self.grid.half_width

    @property
    def one_sided(self) -> np.ndarray:
        """w_j for j = 0 … M."""
        return self.values[self.grid.m :]

    def __getitem__(self, j: int) -> float:
        m = self.grid.m
        if abs(j) > m:
            raise ArgumentError(f"Weight offset {j} outside [-{m}, {m}]")
        return float(self.values[j + m])

    @property
    def total(self) -> float:
        """Σ_j w_j over all offsets."""
        return float(2.0 * np.sum(self.one_sided[1:]))


def compute_weights(kernel: Kernel, grid: Grid) -> WeightSet:
    """Build the weights from the antiderivatives F, F' of the kernel.

    w_0 = 0
    w_{±1} = f1(h)/h² - F'(x_1) + [F(x_2) - F(x_1)]/h
    w_j = [F(x_{j+1}) - 2F(x_j) + F(x_{j-1})]/h, 1 < |j| < M
    w_{±M} = F'(x_M) + [F(x_{M-1}) - F(x_M)]/h

    Args:
        kernel: Convolution kernel
        grid: Uniform grid with L = (M/2)·h

    Returns:
        The symmetric weight set

    Raises:
        ConfigurationError: If M < 2
    """
    m, h = grid.m, grid.h
    if m < 2:
        raise ConfigurationError(f"compute_weights needs M >= 2, got {m}")

    xj = h * np.arange(m + 2, dtype=float)
    big_f, big_f_prime = kernel.antiderivatives(xj)
    f1 = float(kernel.f1(h))

    w = np.zeros(m + 1)
    w[1] = f1 / h**2 - big_f_prime[1] + (big_f[2] - big_f[1]) / h
    if m > 2:
        w[2:m] = (big_f[3 : m + 1] - 2.0 * big_f[2:m] + big_f[1 : m - 1]) / h
    w[m] = big_f_prime[m] + (big_f[m - 1] - big_f[m]) / h

    values = np.concatenate([w[:0:-1], w])
    logging.debug(
        f"Weights for {kernel.describe()} on M={m}, h={h:.6g}: "
        f"w_1={w[1]:.6e}, w_M={w[m]:.6e}, sum={2.0 * w[1:].sum():.12f}"
    )
    return WeightSet(values=values, f1=f1, kernel=kernel, grid=grid)
