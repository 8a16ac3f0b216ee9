"""Uniform one-dimensional grids."""

from dataclasses import dataclass, field

import numpy as np

from nonlocal_grayscott.errors import ConfigurationError


@dataclass(frozen=True)
class Grid:
    """Uniform mesh x_i = i·h, i = -M/2 … M/2, on [-L, L].

    Attributes:
        half_width: Domain half-width L
        m: Even node-count parameter M (N = M + 1 nodes)
    """

    half_width: float
    m: int
    h: float = field(init=False)
    x: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.m, (int, np.integer)) or self.m < 2 or self.m % 2:
            raise ConfigurationError(f"M must be an even integer >= 2, got {self.m}")
        if not np.isfinite(self.half_width) or self.half_width <= 0:
            raise ConfigurationError(
                f"Domain half-width must be positive, got {self.half_width}"
            )
        h = 2.0 * self.half_width / self.m
        half = self.m // 2
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "x", h * np.arange(-half, half + 1, dtype=float))

    @property
    def n(self) -> int:
        """Number of nodes N = M + 1."""
        return self.m + 1

    def inner_mask(self, inner_half_width: float) -> np.ndarray:
        """Boolean mask of the nodes with |x| <= inner_half_width."""
        tol = 1e-12 * self.h
        return np.abs(self.x) <= inner_half_width + tol

    def refine(self, factor: int = 2) -> "Grid":
        """Return the nested grid with M multiplied by factor."""
        return Grid(self.half_width, self.m * factor)


@dataclass(frozen=True)
class PeriodicGrid:
    """N equispaced nodes on [-L, L), right endpoint excluded."""

    half_width: float
    n: int
    h: float = field(init=False)
    x: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 2 or self.n & (self.n - 1):
            raise ConfigurationError(
                f"Periodic grid size must be a power of two, got {self.n}"
            )
        if not np.isfinite(self.half_width) or self.half_width <= 0:
            raise ConfigurationError(
                f"Domain half-width must be positive, got {self.half_width}"
            )
        h = 2.0 * self.half_width / self.n
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "x", -self.half_width + h * np.arange(self.n, dtype=float))

    @property
    def wavenumbers(self) -> np.ndarray:
        """Discrete frequencies ξ_k = πk/L in numpy FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.h)
