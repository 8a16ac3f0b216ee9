"""In-process invariant suite behind --seed-check."""

import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from nonlocal_grayscott.boundary.constraints import (
    DirichletConstraint,
    FreeConstraint,
    NeumannConstraint,
)
from nonlocal_grayscott.boundary.extension import NeumannExtension
from nonlocal_grayscott.errors import NonlocalGrayScottError
from nonlocal_grayscott.kernels import AlgebraicKernel, ExponentialKernel, Kernel
from nonlocal_grayscott.kernels.base import ArrayLike
from nonlocal_grayscott.model.grayscott import GrayScottParams, SystemState, rhs
from nonlocal_grayscott.quadrature.grid import Grid
from nonlocal_grayscott.quadrature.operator import apply, assemble
from nonlocal_grayscott.quadrature.weights import compute_weights

ANNIHILATION_TOLERANCE = 1e-12
RESIDUAL_TOLERANCE = 1e-10


class CheckFailed(Exception):
    """An invariant did not hold."""


def _require(condition: object, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


class GaugeShiftedKernel(Kernel):
    """Kernel whose antiderivative F is shifted by c0 + c1·z (F' by c1)."""

    def __init__(self, base: Kernel, c0: float, c1: float) -> None:
        super().__init__(base.shape)
        self.base = base
        self.family = base.family
        self.c0 = c0
        self.c1 = c1

    def density(self, z: ArrayLike) -> ArrayLike:
        return self.base.density(z)

    def antiderivatives(self, z: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        big_f, big_f_prime = self.base.antiderivatives(z)
        return big_f + self.c0 + self.c1 * np.asarray(z), big_f_prime + self.c1

    def _f1(self, h: ArrayLike) -> ArrayLike:
        return self.base.f1(h)

    def _tail_mass(self, r: ArrayLike) -> ArrayLike:
        return self.base.tail_mass(r)

    def symbol(self, xi: ArrayLike) -> ArrayLike:
        return self.base.symbol(xi)

    def second_moment(self) -> float:
        return self.base.second_moment()


def _kernels() -> List[Kernel]:
    return [ExponentialKernel(2.0), AlgebraicKernel(0.5)]


def _constant_annihilation() -> str:
    grid = Grid(2.0, 64)
    worst = 0.0
    for kernel in _kernels():
        op = assemble(kernel, grid, DirichletConstraint(1.0))
        worst = max(worst, float(np.max(np.abs(apply(op, np.ones(grid.n))))))
    _require(worst <= ANNIHILATION_TOLERANCE, f"max |Ku| = {worst:.3e}")
    return f"max |Ku| = {worst:.3e}"


def _free_constant() -> str:
    grid = Grid(2.0, 64)
    worst = 0.0
    for kernel in _kernels():
        op = assemble(kernel, grid, FreeConstraint(q=2.0, u_ref=1.0))
        worst = max(worst, float(np.max(np.abs(apply(op, np.ones(grid.n))))))
    _require(worst <= ANNIHILATION_TOLERANCE, f"max |Ku| = {worst:.3e}")
    return f"max |Ku| = {worst:.3e}"


def _weights() -> str:
    grid = Grid(2.0, 64)
    for kernel in _kernels():
        w = compute_weights(kernel, grid).values
        _require(w[grid.m] == 0.0, "w_0 is not zero")
        _require(np.array_equal(w, w[::-1]), "weights are not symmetric")
        interior = w[grid.m + 2 : 2 * grid.m]
        _require(np.all(interior >= 0.0), "negative interior weight")
    return "w_0 = 0, w_j = w_-j, interior weights >= 0"


def _gauge() -> str:
    grid = Grid(2.0, 64)
    worst = 0.0
    for kernel in _kernels():
        plain = compute_weights(kernel, grid).values
        shifted = compute_weights(GaugeShiftedKernel(kernel, 0.7, -0.3), grid).values
        worst = max(worst, float(np.max(np.abs(plain - shifted))))
    _require(worst <= 1e-12, f"weights change by {worst:.3e}")
    return f"max weight change {worst:.3e}"


def _extension() -> str:
    grid = Grid(4.0, 64)
    kernel = ExponentialKernel(2.0)
    op = assemble(kernel, grid, NeumannConstraint(q=2.0, u_ref=0.0))
    extension = NeumannExtension(op)
    u = extension(np.exp(-grid.x**2))
    residual = extension.residual(u) / max(1.0, float(np.max(np.abs(u))))
    _require(residual <= RESIDUAL_TOLERANCE, f"residual {residual:.3e}")

    constant_op = assemble(kernel, grid, NeumannConstraint(q=2.0, u_ref=1.0))
    constant = NeumannExtension(constant_op)(np.ones(grid.n))
    drift = float(np.max(np.abs(constant - 1.0)))
    _require(drift <= ANNIHILATION_TOLERANCE, f"constant drifts by {drift:.3e}")
    return f"residual {residual:.3e}, constant drift {drift:.3e}"


def _symbols() -> str:
    xi = np.linspace(0.0, 20.0, 201)
    for kernel in _kernels():
        values = kernel.symbol(xi)
        _require(values[0] == 0.0, "symbol(0) is not zero")
        _require(np.all(values <= 0.0), "symbol is positive somewhere")
    return "symbol(0) = 0 and symbol <= 0"


def _fixed_point() -> str:
    grid = Grid(2.0, 64)
    kernel = ExponentialKernel(2.0)
    op_u = assemble(kernel, grid, DirichletConstraint(1.0))
    op_v = assemble(kernel, grid, DirichletConstraint(0.0))
    params = GrayScottParams(d_u=1.0, d_v=0.01, a=0.01, b=0.1)
    du, dv = rhs(SystemState(np.ones(grid.n), np.zeros(grid.n)), params, op_u, op_v)
    worst = float(max(np.max(np.abs(du)), np.max(np.abs(dv))))
    _require(worst <= ANNIHILATION_TOLERANCE, f"max |G| = {worst:.3e}")
    return f"max |G(1, 0)| = {worst:.3e}"


CHECKS: List[Tuple[str, Callable[[], str]]] = [
    ("constant annihilation (Dirichlet)", _constant_annihilation),
    ("constant preservation (free, u_ref=1)", _free_constant),
    ("weight symmetry and positivity", _weights),
    ("antiderivative gauge invariance", _gauge),
    ("Neumann extension residual", _extension),
    ("Fourier symbol normalization", _symbols),
    ("homogeneous fixed point", _fixed_point),
]


def run_seed_checks() -> List[CheckResult]:
    """Run every invariant check, logging one line per check."""
    results = []
    for name, check in CHECKS:
        try:
            detail = check()
            results.append(CheckResult(name, True, detail))
            logging.info(f"PASS {name}: {detail}")
        except (CheckFailed, NonlocalGrayScottError) as e:
            results.append(CheckResult(name, False, str(e)))
            logging.error(f"FAIL {name}: {e}")
    return results
