"""Shared fixtures for the solver tests."""

import pytest

from nonlocal_grayscott.kernels import AlgebraicKernel, ExponentialKernel
from nonlocal_grayscott.model.grayscott import GrayScottParams
from nonlocal_grayscott.quadrature.grid import Grid


@pytest.fixture
def exp_kernel():
    """Exponential kernel with σ = 2."""
    return ExponentialKernel(2.0)


@pytest.fixture
def alg_kernel():
    """Algebraic kernel with a = 0.5."""
    return AlgebraicKernel(0.5)


@pytest.fixture(params=["exponential", "algebraic"])
def kernel(request):
    """Each shipped kernel family."""
    if request.param == "exponential":
        return ExponentialKernel(2.0)
    return AlgebraicKernel(0.5)


@pytest.fixture
def small_grid():
    """Grid on [-2, 2] with 65 nodes."""
    return Grid(2.0, 64)


@pytest.fixture
def pulse_params():
    """Pulse parameters d_u=1, d_v=0.01, A=0.01, B=A^(1/3)/2."""
    return GrayScottParams(d_u=1.0, d_v=0.01, a=0.01, b=0.01 ** (1.0 / 3.0) / 2.0)


@pytest.fixture
def mms_params():
    """Manufactured-solution parameters."""
    return GrayScottParams(d_u=0.05, d_v=0.01, a=6.0, b=8.0)
