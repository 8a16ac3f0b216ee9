"""Named experiment presets at full and desk scale."""

from typing import Any, Callable, Dict, List

from nonlocal_grayscott.config.run_config import RunConfig
from nonlocal_grayscott.errors import ConfigurationError

PULSE_HALF_WIDTH = 75.0 / 4.0
NEUMANN_HALF_WIDTH = 75.0 / 2.0
CONVERGENCE_HALF_WIDTH = 75.0 / 2.0
WIDE_HALF_WIDTH = 25.0

PULSE_PARAMS = {"d_u": 1.0, "d_v": 0.01, "A": 0.01, "B": 0.01 ** (1.0 / 3.0) / 2.0}
MMS_PARAMS = {"d_u": 0.05, "d_v": 0.01, "A": 6.0, "B": 8.0}

FULL_M = 2**13
DESK_M = 2**10
FULL_DT = 1.5625e-4
DESK_DT = 0.01
FULL_NMAX = 10_000_000
DESK_NMAX = 20_000
STEADY_TOL = 1e-8

KERNEL_VARIANTS = {
    "exp": (
        {"family": "exponential", "sigma": 3.4},
        "sigma4",
        {"family": "exponential", "sigma": 4.0},
    ),
    "alg": (
        {"family": "algebraic", "a": 0.42},
        "a039",
        {"family": "algebraic", "a": 0.39},
    ),
}


def _pulse_boundary(kind: str) -> Dict[str, Any]:
    if kind == "dirichlet":
        return {
            "u": {"type": "dirichlet", "value": 1.0},
            "v": {"type": "dirichlet", "value": 0.0},
        }
    if kind == "free":
        return {
            "u": {"type": "free", "q": 2.0, "u_ref": 1.0},
            "v": {"type": "free", "q": 2.0, "u_ref": 0.0},
        }
    inner = PULSE_HALF_WIDTH
    return {
        "u": {"type": "neumann", "q": 2.0, "u_ref": 1.0, "inner_half_width": inner},
        "v": {"type": "neumann", "q": 2.0, "u_ref": 0.0, "inner_half_width": inner},
    }


def _pulse(kernel: Dict[str, Any], bc: str, desk: bool) -> Dict[str, Any]:
    m = DESK_M if desk else FULL_M
    tree: Dict[str, Any] = {
        "kind": "simulate",
        "solver": "quadrature",
        "kernel": dict(kernel),
        "grid": {"half_width": PULSE_HALF_WIDTH, "M": m},
        "params": dict(PULSE_PARAMS),
        "initial": {"alpha": 0.1, "beta": 3.0},
        "stepper": {
            "dt": DESK_DT if desk else FULL_DT,
            "nmax": DESK_NMAX if desk else FULL_NMAX,
            "tol": STEADY_TOL,
        },
        "outputs": {"checkpoint_every": 1000 if desk else 100_000, "plot_script": True},
    }
    if bc == "periodic":
        tree["solver"] = "spectral"
        tree["spectral"] = {"scheme": "imex-bdf2"}
    else:
        tree["boundary"] = _pulse_boundary(bc)
    if bc == "neumann":
        # Same mesh size on the doubled domain
        tree["grid"] = {"half_width": NEUMANN_HALF_WIDTH, "M": 2 * m}
    return tree


def _mms(desk: bool) -> Dict[str, Any]:
    return {
        "kind": "mms",
        "solver": "quadrature",
        "kernel": {"family": "exponential", "sigma": 1.0},
        "grid": {"half_width": 1.0, "M": 40},
        "boundary": {
            "u": {"type": "dirichlet", "value": 0.0},
            "v": {"type": "dirichlet", "value": 0.0},
        },
        "params": dict(MMS_PARAMS),
        "stepper": {"dt": 0.05, "nmax": 20, "tol": -1.0},
        "convergence": {
            "levels": [40, 80, 160, 320],
            "time_steps": [0.05, 0.025, 0.0125, 0.00625],
            "norm": "L2",
            "horizon": 1.0,
        },
        "outputs": {"checkpoint_every": 1000, "plot_script": True},
    }


def _self_convergence(kernel: Dict[str, Any], bc: str, desk: bool) -> Dict[str, Any]:
    tree = _pulse(kernel, bc, desk)
    tree["kind"] = "pulse-convergence"
    reference_m = 2**12 if desk else 2**14
    tree["grid"] = {"half_width": CONVERGENCE_HALF_WIDTH, "M": reference_m}
    if desk:
        tree["stepper"]["tol"] = -1.0
        tree["convergence"] = {
            "levels": [2**8, 2**9, 2**10, 2**11],
            "time_steps": [0.02, 0.01, 0.005, 0.0025, 0.00125],
            "reference_level": reference_m,
            "norm": "L1",
            "horizon": 2.0,
        }
    else:
        tree["convergence"] = {
            "levels": [2**9, 2**10, 2**11, 2**12, 2**13],
            "time_steps": [
                0.0025, 0.00125, 6.25e-4, 3.125e-4, 1.5625e-4, 7.8125e-5
            ],
            "reference_level": reference_m,
            "norm": "L1",
        }
    return tree


def _domain_size(desk: bool) -> Dict[str, Any]:
    tree = _pulse(KERNEL_VARIANTS["exp"][0], "free", desk)
    tree["kind"] = "compare"
    narrow_m, wide_m = (1024, 1366) if desk else (2**12, 2**13)
    tree["compare"] = {
        "legs": {
            "L18.75": {"grid": {"half_width": PULSE_HALF_WIDTH, "M": narrow_m}},
            "L25": {"grid": {"half_width": WIDE_HALF_WIDTH, "M": wide_m}},
        }
    }
    return tree


def _determinant(desk: bool) -> Dict[str, Any]:
    tree = _pulse(KERNEL_VARIANTS["exp"][0], "free", desk)
    tree["kind"] = "determinant"
    tree["determinant"] = {"profile": "out/pulse-exp-free/profile.csv"}
    return tree


def _builders() -> Dict[str, Callable[[bool], Dict[str, Any]]]:
    builders: Dict[str, Callable[[bool], Dict[str, Any]]] = {"mms-convergence": _mms}
    for family, (kernel, suffix, variant) in KERNEL_VARIANTS.items():
        for bc in ("dirichlet", "neumann", "free", "periodic"):
            builders[f"pulse-{family}-{bc}"] = (
                lambda desk, k=kernel, b=bc: _pulse(k, b, desk)
            )
            builders[f"pulse-{family}-{bc}-{suffix}"] = (
                lambda desk, k=variant, b=bc: _pulse(k, b, desk)
            )
        for bc in ("dirichlet", "neumann", "free"):
            name = f"pulse-self-convergence-{family}-{bc}"
            builders[name] = (
                lambda desk, k=kernel, b=bc: _self_convergence(k, b, desk)
            )
            builders[f"{name}-{suffix}"] = (
                lambda desk, k=variant, b=bc: _self_convergence(k, b, desk)
            )
    builders["pulse-self-convergence"] = builders[
        "pulse-self-convergence-exp-neumann-sigma4"
    ]
    builders["domain-size-compare"] = _domain_size
    builders["determinant"] = _determinant
    return builders


PRESETS = _builders()

# Names the studies are also known by
PRESET_ALIASES = {
    "table1-mms": "mms-convergence",
    "appendix-convergence": "pulse-self-convergence",
}


def presets() -> List[str]:
    """Names of the shipped presets, aliases included."""
    return sorted([*PRESETS, *PRESET_ALIASES])


def preset_tree(name: str, desk: bool = False) -> Dict[str, Any]:
    """Raw configuration tree of a preset.

    Raises:
        ConfigurationError: If the preset is unknown
    """
    try:
        builder = PRESETS[PRESET_ALIASES.get(name, name)]
    except KeyError:
        raise ConfigurationError(
            f"unknown preset {name!r} (see --list-presets)", key_path="preset"
        ) from None
    return builder(desk)


def get_preset(name: str, desk: bool = False) -> RunConfig:
    """Validated configuration of a preset."""
    return RunConfig.from_dict(preset_tree(name, desk))
