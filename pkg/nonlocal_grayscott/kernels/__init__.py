"""Convolution kernels and the kernel factory."""

from nonlocal_grayscott.errors import ConfigurationError
from nonlocal_grayscott.kernels.algebraic import AlgebraicKernel
from nonlocal_grayscott.kernels.base import Kernel
from nonlocal_grayscott.kernels.exponential import ExponentialKernel

__all__ = ["AlgebraicKernel", "ExponentialKernel", "Kernel", "make_kernel"]

KERNEL_FAMILIES = {
    ExponentialKernel.family: ExponentialKernel,
    AlgebraicKernel.family: AlgebraicKernel,
}


def make_kernel(family: str, shape: float) -> Kernel:
    """Create a kernel from its family name and shape parameter.

    Args:
        family: "exponential" or "algebraic"
        shape: σ for the exponential kernel, a for the algebraic kernel

    Returns:
        The kernel instance

    Raises:
        ConfigurationError: If the family is unknown or the shape invalid
    """
    try:
        kernel_cls = KERNEL_FAMILIES[family]
    except KeyError:
        raise ConfigurationError(
            f"Unsupported kernel family: {family!r} "
            f"(expected one of {sorted(KERNEL_FAMILIES)})"
        ) from None
    return kernel_cls(shape)
