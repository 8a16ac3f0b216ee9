"""Experiment orchestration: simulations, convergence studies and comparisons."""

import asyncio
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from nonlocal_grayscott.analysis.errors import ConvergenceReport, lp_error
from nonlocal_grayscott.analysis.profiles import profile_metrics
from nonlocal_grayscott.boundary.extension import NeumannExtension
from nonlocal_grayscott.config.run_config import RunConfig, leg_configs
from nonlocal_grayscott.errors import (
    ConfigurationError,
    DegenerateProfileError,
    DivergenceError,
)
from nonlocal_grayscott.experiments import outputs
from nonlocal_grayscott.kernels import ExponentialKernel
from nonlocal_grayscott.model.grayscott import (
    SystemState,
    make_rhs,
    pulse_initial_conditions,
    quasilinear_det,
)
from nonlocal_grayscott.model.manufactured import unit_interval_case
from nonlocal_grayscott.quadrature.grid import Grid, PeriodicGrid
from nonlocal_grayscott.quadrature.operator import assemble
from nonlocal_grayscott.spectral.solver import SpectralOperator, run_periodic
from nonlocal_grayscott.timestepper.stepper import RunResult, StepperConfig, run

NORM_ORDER = {"L1": 1, "L2": 2}


@dataclass
class ExperimentOutcome:
    """Files written and headline numbers of one experiment."""

    kind: str
    directory: Path
    files: List[Path] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Simulation:
    """A finished run together with the nodes it lives on."""

    grid: Union[Grid, PeriodicGrid]
    result: RunResult
    extension_residual: Optional[float] = None

    @property
    def x(self) -> np.ndarray:
        return self.grid.x


def _steps_to(horizon: float, dt: float) -> int:
    steps = int(round(horizon / dt))
    if steps < 1 or not np.isclose(steps * dt, horizon, rtol=1e-9, atol=0.0):
        raise ConfigurationError(
            f"horizon {horizon} is not a whole number of steps of {dt}",
            key_path="convergence.horizon",
        )
    return steps


def _level_stepper(config: RunConfig, dt: float) -> StepperConfig:
    study = config.convergence
    assert study is not None
    if study.horizon is None:
        return replace(config.stepper, dt=dt)
    return replace(config.stepper, dt=dt, nmax=_steps_to(study.horizon, dt), tol=-1.0)


def simulate_quadrature(
    config: RunConfig,
    grid: Optional[Grid] = None,
    stepper: Optional[StepperConfig] = None,
    checkpoint_dir: Optional[Path] = None,
) -> Simulation:
    """Assemble the operators and march the pulse on a bounded grid.

    Raises:
        DivergenceError: After writing checkpoint.csv to checkpoint_dir
        NumericalError: If an extension solve is inaccurate
    """
    assert config.boundary is not None
    grid = grid or config.grid.build()
    stepper = stepper or config.stepper
    kernel = config.kernel.build()
    pair = config.boundary.build()

    op_u = assemble(kernel, grid, pair.u)
    op_v = assemble(kernel, grid, pair.v)
    initial = pulse_initial_conditions(grid, config.initial.alpha, config.initial.beta)

    extend: Optional[Callable[[SystemState], SystemState]] = None
    update_mask = None
    ext_u = ext_v = None
    if pair.is_neumann:
        ext_u, ext_v = NeumannExtension(op_u), NeumannExtension(op_v)

        def extend(state: SystemState) -> SystemState:
            return SystemState(ext_u(state.u), ext_v(state.v), state.t)

        update_mask = ext_u.inner

    try:
        rhs = make_rhs(config.params, op_u, op_v)
        result = run(initial, stepper, rhs, extend, update_mask)
    except DivergenceError as e:
        if checkpoint_dir is not None and e.last_checkpoint is not None:
            outputs.write_checkpoint(checkpoint_dir, grid.x, e.last_checkpoint)
        raise

    residual = None
    if ext_u is not None and ext_v is not None:
        residual = max(ext_u.worst_residual, ext_v.worst_residual)
        logging.info(f"Worst relative extension residual of the run: {residual:.2e}")
    return Simulation(grid, result, residual)


def simulate_spectral(
    config: RunConfig, checkpoint_dir: Optional[Path] = None
) -> Simulation:
    grid = config.grid.build_periodic()
    op = SpectralOperator.from_kernel(config.kernel.build(), grid)
    initial = pulse_initial_conditions(grid, config.initial.alpha, config.initial.beta)
    try:
        scheme = config.spectral.scheme
        result = run_periodic(initial, config.stepper, config.params, op, scheme)
    except DivergenceError as e:
        if checkpoint_dir is not None and e.last_checkpoint is not None:
            outputs.write_checkpoint(checkpoint_dir, grid.x, e.last_checkpoint)
        raise
    return Simulation(grid, result)


def _metrics_summary(sim: Simulation) -> Dict[str, Any]:
    grid, v = sim.grid, sim.result.final.v
    try:
        metrics = profile_metrics(v, grid)
    except DegenerateProfileError:
        logging.warning("Final v profile is identically zero; pulse has died out")
        return {}
    logging.info(
        f"v profile: max={metrics.max_value:.6g} at x={metrics.max_location:.4g}, "
        f"plateau width={metrics.plateau_width:.4g}, "
        f"oscillations={metrics.oscillation_count}, boundary={metrics.boundary_value:.3e}"
    )
    return {
        "max_value": metrics.max_value,
        "max_location": metrics.max_location,
        "plateau_width": metrics.plateau_width,
        "boundary_value": metrics.boundary_value,
        "oscillation_count": metrics.oscillation_count,
    }


def run_simulation(config: RunConfig, directory: Path) -> ExperimentOutcome:
    outputs.ensure_directory(directory)
    if config.solver == "spectral":
        sim = simulate_spectral(config, directory)
    else:
        sim = simulate_quadrature(config, checkpoint_dir=directory)
    final = sim.result.final
    outcome = ExperimentOutcome("simulate", directory)
    outcome.files.append(outputs.write_profile(directory, sim.x, final.u, final.v))
    outcome.files.append(outputs.write_history(directory, sim.result.history))
    if config.outputs.plot_script:
        outcome.files.append(outputs.write_plot_script(directory, "simulate"))
    outcome.summary = {
        "steps": sim.result.steps,
        "reason": sim.result.reason,
        "t": final.t,
        **_metrics_summary(sim),
    }
    if sim.extension_residual is not None:
        outcome.summary["extension_residual"] = sim.extension_residual
    return outcome


def run_mms(config: RunConfig, directory: Path) -> ExperimentOutcome:
    """Refinement study against the manufactured exact solution."""
    study = config.convergence
    assert study is not None and config.boundary is not None
    if study.horizon is None:
        raise ConfigurationError(
            "required for manufactured solutions", key_path="convergence.horizon"
        )
    outputs.ensure_directory(directory)
    kernel = config.kernel.build()
    pair = config.boundary.build()
    case = unit_interval_case(config.params)
    p = NORM_ORDER[study.norm]

    levels: List[Tuple[int, float, float, float, float]] = []
    for m, dt in zip(study.levels, study.time_steps):
        grid = Grid(config.grid.half_width, m)
        op_u = assemble(kernel, grid, pair.u)
        op_v = assemble(kernel, grid, pair.v)
        sources = case.bind(grid, kernel)
        initial = SystemState(*case.exact(grid.x, 0.0), 0.0)
        stepper = _level_stepper(config, dt)
        result = run(initial, stepper, make_rhs(config.params, op_u, op_v, sources))
        t_final = result.final.t
        e_u = lp_error(result.final.u, lambda x: case.exact(x, t_final)[0], p, grid)
        e_v = lp_error(result.final.v, lambda x: case.exact(x, t_final)[1], p, grid)
        levels.append((m, grid.h, dt, e_u, e_v))

    report = ConvergenceReport.from_levels(levels, study.norm, study.reference)
    return _report_outcome("mms", config, directory, report)


def _physical_values(
    sim: Simulation, config: RunConfig, grid: Grid
) -> Tuple[Grid, np.ndarray, np.ndarray]:
    """Restrict a Neumann run to the physical domain [-ℓ, ℓ]."""
    final = sim.result.final
    assert config.boundary is not None
    if not config.boundary.is_neumann:
        return grid, final.u, final.v
    inner_half_width = config.boundary.build().u.resolve_inner_half_width(grid.half_width)
    mask = grid.inner_mask(inner_half_width)
    inner = Grid(inner_half_width, int(mask.sum()) - 1)
    return inner, final.u[mask], final.v[mask]


def run_pulse_convergence(config: RunConfig, directory: Path) -> ExperimentOutcome:
    """Self-convergence of the pulse against the finest-mesh solution."""
    study = config.convergence
    assert study is not None and study.reference_level is not None
    outputs.ensure_directory(directory)
    p = NORM_ORDER[study.norm]

    def solve(m: int, dt: float) -> Tuple[Grid, np.ndarray, np.ndarray]:
        grid = Grid(config.grid.half_width, m)
        logging.info(f"Pulse convergence level M={m}, dt={dt:g}")
        sim = simulate_quadrature(config, grid, _level_stepper(config, dt), directory)
        return _physical_values(sim, config, grid)

    _, ref_u, ref_v = solve(study.reference_level, study.time_steps[-1])
    levels: List[Tuple[int, float, float, float, float]] = []
    for m, dt in zip(study.levels, study.time_steps):
        grid, u, v = solve(m, dt)
        levels.append(
            (m, grid.h, dt, lp_error(u, ref_u, p, grid), lp_error(v, ref_v, p, grid))
        )

    report = ConvergenceReport.from_levels(levels, study.norm, study.reference)
    return _report_outcome("pulse-convergence", config, directory, report)


def _report_outcome(
    kind: str, config: RunConfig, directory: Path, report: ConvergenceReport
) -> ExperimentOutcome:
    outcome = ExperimentOutcome(kind, directory)
    outcome.files.append(outputs.write_report(directory, report))
    if config.outputs.plot_script:
        outcome.files.append(outputs.write_plot_script(directory, kind, norm=report.norm))
    outcome.summary = {
        "average_order_u": report.average_order("u"),
        "average_order_v": report.average_order("v"),
        "rows": len(report.rows),
    }
    logging.info(
        f"Average observed orders: u={outcome.summary['average_order_u']}, "
        f"v={outcome.summary['average_order_v']}"
    )
    return outcome


async def run_compare(config: RunConfig, directory: Path) -> ExperimentOutcome:
    """Run every leg concurrently and tabulate their profile metrics."""
    legs = leg_configs(config)
    outputs.ensure_directory(directory)
    logging.info(f"Running {len(legs)} comparison legs: {[name for name, _ in legs]}")

    leg_outcomes = await asyncio.gather(
        *(
            asyncio.to_thread(run_simulation, leg, directory / name)
            for name, leg in legs
        )
    )

    rows = []
    for (name, leg), leg_outcome in zip(legs, leg_outcomes):
        summary = leg_outcome.summary
        rows.append(
            {
                "leg": name,
                "half_width": leg.grid.half_width,
                "M": leg.grid.m,
                "max_value": summary.get("max_value", 0.0),
                "max_location": summary.get("max_location", 0.0),
                "plateau_width": summary.get("plateau_width", 0.0),
                "boundary_value": summary.get("boundary_value", 0.0),
                "oscillation_count": summary.get("oscillation_count", 0),
                "steps": summary["steps"],
                "reason": summary["reason"],
            }
        )

    outcome = ExperimentOutcome("compare", directory)
    for leg_outcome in leg_outcomes:
        outcome.files.extend(leg_outcome.files)
    outcome.files.append(outputs.write_comparison(directory, rows))
    if config.outputs.plot_script:
        names = [name for name, _ in legs]
        outcome.files.append(outputs.write_plot_script(directory, "compare", legs=names))
    outcome.summary = {"legs": {row["leg"]: row for row in rows}}
    return outcome


def run_determinant(config: RunConfig, directory: Path) -> ExperimentOutcome:
    """Evaluate the quasilinear determinant on a stored profile.

    A relative profile path is resolved against the working directory.
    """
    spec = config.determinant
    assert spec is not None
    outputs.ensure_directory(directory)
    x, u, v = outputs.read_profile(Path(spec.profile))

    epsilon = spec.epsilon
    if epsilon is None:
        kernel = config.kernel.build()
        assert isinstance(kernel, ExponentialKernel)
        epsilon = 1.0 / kernel.sigma
    det = quasilinear_det(SystemState(u, v), epsilon, config.params)
    i_min = int(np.argmin(det))
    logging.info(
        f"Determinant with ε={epsilon:.6g}: min {det[i_min]:.6e} at x={x[i_min]:.4g}"
    )

    outcome = ExperimentOutcome("determinant", directory)
    outcome.files.append(outputs.write_determinant(directory, x, det))
    if config.outputs.plot_script:
        outcome.files.append(outputs.write_plot_script(directory, "determinant"))
    outcome.summary = {"epsilon": epsilon, "min_det": float(det[i_min])}
    return outcome


async def run_experiment(config: RunConfig, directory: Path) -> ExperimentOutcome:
    """Dispatch on the experiment kind.

    Args:
        config: Validated configuration
        directory: Output directory

    Returns:
        The experiment outcome

    Raises:
        NonlocalGrayScottError: On invalid setup or numerical failure
    """
    logging.info(f"Running {config.kind} experiment into {directory}")
    if config.kind == "compare":
        return await run_compare(config, directory)
    if config.kind == "mms":
        return await asyncio.to_thread(run_mms, config, directory)
    if config.kind == "pulse-convergence":
        return await asyncio.to_thread(run_pulse_convergence, config, directory)
    if config.kind == "determinant":
        return run_determinant(config, directory)
    return await asyncio.to_thread(run_simulation, config, directory)
