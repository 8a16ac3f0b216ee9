"""Run configuration validated against the bundled JSON schema."""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, TypeVar

from jsonschema import Draft202012Validator, ValidationError
from jsonschema.exceptions import best_match, by_relevance

from nonlocal_grayscott.boundary.constraints import (
    BoundaryConstraint,
    BoundaryPair,
    DirichletConstraint,
    FreeConstraint,
    NeumannConstraint,
)
from nonlocal_grayscott.config.settings import (
    DEFAULT_CHECKPOINT_EVERY,
    DEFAULT_DECAY_EXPONENT,
    DEFAULT_FAR_FIELD_OFFSET,
    DEFAULT_PULSE_ALPHA,
    DEFAULT_PULSE_BETA,
    DEFAULT_SPECTRAL_SCHEME,
    DEFAULT_STEADY_TOLERANCE,
)
from nonlocal_grayscott.errors import ConfigurationError
from nonlocal_grayscott.kernels import Kernel, make_kernel
from nonlocal_grayscott.model.grayscott import GrayScottParams
from nonlocal_grayscott.quadrature.grid import Grid, PeriodicGrid
from nonlocal_grayscott.timestepper.stepper import StepperConfig

SCHEMA_FILE = Path(__file__).with_name("run_config.schema.json")
SHAPE_KEYS = {"exponential": "sigma", "algebraic": "a"}

# Unknown keys are usually the root cause of the other errors in their object.
_relevance = by_relevance(strong=frozenset({"additionalProperties"}))

T = TypeVar("T")


@lru_cache(maxsize=None)
def run_config_validator() -> Draft202012Validator:
    """Validator for run_config.schema.json, loaded once."""
    with open(SCHEMA_FILE, "r") as f:
        schema = json.load(f)
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def _error_key_path(error: ValidationError) -> Optional[str]:
    parts = [str(part) for part in error.absolute_path]
    if error.validator == "additionalProperties":
        allowed = error.schema.get("properties", {})
        parts += [key for key in error.instance if key not in allowed][:1]
    elif error.validator == "required":
        parts += [key for key in error.validator_value if key not in error.instance][:1]
    return ".".join(parts) or None


def _error_message(error: ValidationError) -> str:
    if error.validator == "additionalProperties":
        allowed = ", ".join(error.schema.get("properties", {}))
        return f"unknown key (allowed: {allowed})"
    if error.validator == "required":
        return "missing required key"
    if error.validator == "not":
        return "not allowed with this solver or experiment kind"
    return error.message


def validate_tree(tree: Any) -> None:
    """Check a configuration tree against the schema.

    Raises:
        ConfigurationError: With the dotted key path of the most relevant problem
    """
    error = best_match(run_config_validator().iter_errors(tree), key=_relevance)
    if error is not None:
        raise ConfigurationError(_error_message(error), key_path=_error_key_path(error))


def _build(path: str, factory: Callable[..., T], *args: Any, **kwargs: Any) -> T:
    """Construct a domain object, attaching a key path to its errors."""
    try:
        return factory(*args, **kwargs)
    except ConfigurationError as e:
        if e.key_path is not None:
            raise
        raise ConfigurationError(str(e), key_path=path) from None


def _optional_float(tree: Dict[str, Any], key: str) -> Optional[float]:
    return float(tree[key]) if key in tree else None


@dataclass(frozen=True)
class KernelSpec:
    family: str
    shape: float

    @classmethod
    def from_tree(cls, tree: Dict[str, Any]) -> "KernelSpec":
        family = tree["family"]
        spec = cls(family, float(tree[SHAPE_KEYS[family]]))
        _build("kernel", spec.build)
        return spec

    def build(self) -> Kernel:
        return make_kernel(self.family, self.shape)

    def to_dict(self) -> Dict[str, Any]:
        return {"family": self.family, SHAPE_KEYS[self.family]: self.shape}


@dataclass(frozen=True)
class GridSpec:
    half_width: float
    m: int

    @classmethod
    def from_tree(cls, tree: Dict[str, Any]) -> "GridSpec":
        return cls(float(tree["half_width"]), int(tree["M"]))

    def build(self) -> Grid:
        return Grid(self.half_width, self.m)

    def build_periodic(self) -> PeriodicGrid:
        return PeriodicGrid(self.half_width, self.m)

    def to_dict(self) -> Dict[str, Any]:
        return {"half_width": self.half_width, "M": self.m}


@dataclass(frozen=True)
class ConstraintSpec:
    """One component's boundary constraint as written in the file."""

    type: str
    value: float = 0.0
    q: float = DEFAULT_DECAY_EXPONENT
    u_ref: float = DEFAULT_FAR_FIELD_OFFSET
    inner_half_width: Optional[float] = None

    @classmethod
    def from_tree(cls, tree: Dict[str, Any], path: str) -> "ConstraintSpec":
        kind = tree["type"]
        if kind == "dirichlet":
            spec = cls(kind, value=float(tree.get("value", 0.0)))
        else:
            spec = cls(
                kind,
                q=float(tree.get("q", DEFAULT_DECAY_EXPONENT)),
                u_ref=float(tree.get("u_ref", DEFAULT_FAR_FIELD_OFFSET)),
                inner_half_width=_optional_float(tree, "inner_half_width"),
            )
        _build(path, spec.build)
        return spec

    def build(self) -> BoundaryConstraint:
        if self.type == "dirichlet":
            return DirichletConstraint(self.value)
        if self.type == "free":
            return FreeConstraint(self.q, self.u_ref)
        return NeumannConstraint(self.q, self.u_ref, self.inner_half_width)

    def to_dict(self) -> Dict[str, Any]:
        if self.type == "dirichlet":
            return {"type": self.type, "value": self.value}
        data: Dict[str, Any] = {"type": self.type, "q": self.q, "u_ref": self.u_ref}
        if self.type == "neumann" and self.inner_half_width is not None:
            data["inner_half_width"] = self.inner_half_width
        return data


@dataclass(frozen=True)
class BoundarySpec:
    u: ConstraintSpec
    v: ConstraintSpec

    @classmethod
    def from_tree(cls, tree: Dict[str, Any]) -> "BoundarySpec":
        spec = cls(
            ConstraintSpec.from_tree(tree["u"], "boundary.u"),
            ConstraintSpec.from_tree(tree["v"], "boundary.v"),
        )
        _build("boundary", spec.build)
        return spec

    def build(self) -> BoundaryPair:
        return BoundaryPair(self.u.build(), self.v.build())

    @property
    def is_neumann(self) -> bool:
        return self.u.type == "neumann"

    def to_dict(self) -> Dict[str, Any]:
        return {"u": self.u.to_dict(), "v": self.v.to_dict()}


@dataclass(frozen=True)
class InitialSpec:
    alpha: float = DEFAULT_PULSE_ALPHA
    beta: float = DEFAULT_PULSE_BETA

    @classmethod
    def from_tree(cls, tree: Dict[str, Any]) -> "InitialSpec":
        return cls(
            float(tree.get("alpha", DEFAULT_PULSE_ALPHA)),
            float(tree.get("beta", DEFAULT_PULSE_BETA)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class SpectralSpec:
    scheme: str = DEFAULT_SPECTRAL_SCHEME

    def to_dict(self) -> Dict[str, Any]:
        return {"scheme": self.scheme}


@dataclass(frozen=True)
class OutputSpec:
    """Artifact settings; directory None defers to --out or the environment."""

    directory: Optional[str] = None
    checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY
    plot_script: bool = True

    @classmethod
    def from_tree(cls, tree: Dict[str, Any]) -> "OutputSpec":
        return cls(
            directory=tree.get("directory"),
            checkpoint_every=int(
                tree.get("checkpoint_every", DEFAULT_CHECKPOINT_EVERY)
            ),
            plot_script=tree.get("plot_script", True),
        )

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "checkpoint_every": self.checkpoint_every,
            "plot_script": self.plot_script,
        }
        if self.directory is not None:
            data["directory"] = self.directory
        return data


@dataclass(frozen=True)
class ConvergenceSpec:
    """Refinement study: one time step per level, plus one for the reference level.

    Attributes:
        levels: Values of M, coarsest first
        time_steps: dt per level (and for the reference level last, if any)
        reference_level: M of the finest-mesh reference, None for an exact solution
        norm: "L1" or "L2"
        horizon: Final time; None runs each level to the steady tolerance
    """

    levels: Tuple[int, ...]
    time_steps: Tuple[float, ...]
    reference_level: Optional[int] = None
    norm: str = "L2"
    horizon: Optional[float] = None

    @classmethod
    def from_tree(cls, tree: Dict[str, Any]) -> "ConvergenceSpec":
        reference = tree.get("reference_level")
        spec = cls(
            levels=tuple(int(m) for m in tree["levels"]),
            time_steps=tuple(float(dt) for dt in tree["time_steps"]),
            reference_level=int(reference) if reference is not None else None,
            norm=tree.get("norm", "L2"),
            horizon=_optional_float(tree, "horizon"),
        )
        spec._check_ladder()
        return spec

    def _check_ladder(self) -> None:
        expected = len(self.levels) + (1 if self.reference_level is not None else 0)
        if len(self.time_steps) != expected:
            raise ConfigurationError(
                f"expected {expected} time steps, got {len(self.time_steps)}",
                key_path="convergence.time_steps",
            )
        if list(self.levels) != sorted(self.levels):
            raise ConfigurationError(
                "levels must be increasing values of M", key_path="convergence.levels"
            )
        if self.reference_level is not None and self.reference_level <= self.levels[-1]:
            raise ConfigurationError(
                "reference level must be finer than every level",
                key_path="convergence.reference_level",
            )

    @property
    def reference(self) -> str:
        return "exact" if self.reference_level is None else "finest-mesh"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "levels": list(self.levels),
            "time_steps": list(self.time_steps),
            "norm": self.norm,
        }
        if self.reference_level is not None:
            data["reference_level"] = self.reference_level
        if self.horizon is not None:
            data["horizon"] = self.horizon
        return data


@dataclass(frozen=True)
class CompareSpec:
    """Named overlays applied on top of the base configuration."""

    legs: Tuple[Tuple[str, Dict[str, Any]], ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"legs": {name: overlay for name, overlay in self.legs}}


@dataclass(frozen=True)
class DeterminantSpec:
    profile: str
    epsilon: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"profile": self.profile}
        if self.epsilon is not None:
            data["epsilon"] = self.epsilon
        return data


def _params_to_dict(params: GrayScottParams) -> Dict[str, Any]:
    return {"d_u": params.d_u, "d_v": params.d_v, "A": params.a, "B": params.b}


def _stepper_to_dict(stepper: StepperConfig) -> Dict[str, Any]:
    return {"dt": stepper.dt, "nmax": stepper.nmax, "tol": stepper.tol}


@dataclass(frozen=True)
class RunConfig:
    """A complete, validated experiment description."""

    kind: str
    solver: str
    kernel: KernelSpec
    grid: GridSpec
    boundary: Optional[BoundarySpec]
    params: GrayScottParams
    initial: InitialSpec
    stepper: StepperConfig
    spectral: SpectralSpec = field(default_factory=SpectralSpec)
    outputs: OutputSpec = field(default_factory=OutputSpec)
    convergence: Optional[ConvergenceSpec] = None
    compare: Optional[CompareSpec] = None
    determinant: Optional[DeterminantSpec] = None

    @classmethod
    def from_dict(cls, tree: Any) -> "RunConfig":
        """Validate a configuration tree.

        The schema settles keys, types, ranges and the couplings between
        kind, solver and sections; the domain constructors settle the rest.

        Raises:
            ConfigurationError: With the dotted key path of the problem
        """
        validate_tree(tree)
        solver = tree.get("solver", "quadrature")

        kernel = KernelSpec.from_tree(tree["kernel"])
        grid = GridSpec.from_tree(tree["grid"])
        boundary = None
        if "boundary" in tree:
            boundary = BoundarySpec.from_tree(tree["boundary"])
        if solver == "quadrature":
            assert boundary is not None
            _build("grid", grid.build)
            if boundary.is_neumann:
                inner = boundary.build().u.resolve_inner_half_width
                _build("boundary", inner, grid.half_width)
        else:
            _build("grid", grid.build_periodic)

        params = tree["params"]
        outputs = OutputSpec.from_tree(tree.get("outputs", {}))
        stepper = tree["stepper"]
        neumann = boundary is not None and boundary.is_neumann
        determinant = tree.get("determinant")

        return cls(
            kind=tree.get("kind", "simulate"),
            solver=solver,
            kernel=kernel,
            grid=grid,
            boundary=boundary,
            params=_build(
                "params",
                GrayScottParams,
                d_u=float(params["d_u"]),
                d_v=float(params["d_v"]),
                a=float(params["A"]),
                b=float(params["B"]),
            ),
            initial=InitialSpec.from_tree(tree.get("initial", {})),
            stepper=_build(
                "stepper",
                StepperConfig,
                dt=float(stepper["dt"]),
                nmax=int(stepper["nmax"]),
                tol=float(stepper.get("tol", DEFAULT_STEADY_TOLERANCE)),
                mode="neumann" if neumann else "dirichlet_free",
                checkpoint_every=outputs.checkpoint_every,
            ),
            spectral=SpectralSpec(
                tree.get("spectral", {}).get("scheme", DEFAULT_SPECTRAL_SCHEME)
            ),
            outputs=outputs,
            convergence=(
                ConvergenceSpec.from_tree(tree["convergence"])
                if "convergence" in tree
                else None
            ),
            compare=(
                CompareSpec(tuple(tree["compare"]["legs"].items()))
                if "compare" in tree
                else None
            ),
            determinant=(
                DeterminantSpec(
                    determinant["profile"], _optional_float(determinant, "epsilon")
                )
                if determinant is not None
                else None
            ),
        )

    def to_dict(self) -> Dict[str, Any]:
        """Inverse of from_dict."""
        data: Dict[str, Any] = {
            "kind": self.kind,
            "solver": self.solver,
            "kernel": self.kernel.to_dict(),
            "grid": self.grid.to_dict(),
            "params": _params_to_dict(self.params),
            "initial": self.initial.to_dict(),
            "stepper": _stepper_to_dict(self.stepper),
            "spectral": self.spectral.to_dict(),
            "outputs": self.outputs.to_dict(),
        }
        if self.boundary is not None:
            data["boundary"] = self.boundary.to_dict()
        for key in ("convergence", "compare", "determinant"):
            spec = getattr(self, key)
            if spec is not None:
                data[key] = spec.to_dict()
        return data


def deep_merge(base: Dict[str, Any], overlay: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively overlay one configuration tree on another."""
    merged = dict(base)
    for key, value in overlay.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def locate_key(text: str, key_path: Optional[str]) -> Optional[int]:
    """1-based line of the deepest component of a dotted key path found in JSON text.

    Array indices are skipped; a missing key resolves to its enclosing section.
    """
    if not key_path:
        return None
    position = None
    for part in key_path.split("."):
        if part.isdigit():
            continue
        found = text.find(f'"{part}"', position or 0)
        if found < 0:
            break
        position = found
    if position is None:
        return None
    return text.count("\n", 0, position) + 1


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    """Parse JSON text into a RunConfig with line-precise errors.

    Raises:
        ConfigurationError: On invalid JSON or an invalid tree
    """
    try:
        tree = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigurationError(
            f"{source}: invalid JSON: {e.msg} (column {e.colno})", line=e.lineno
        ) from None
    try:
        return RunConfig.from_dict(tree)
    except ConfigurationError as e:
        line = locate_key(text, e.key_path)
        message = str(e)
        if e.key_path:
            message = message.split(f"{e.key_path}: ", 1)[-1]
        raise ConfigurationError(f"{source}: {message}", key_path=e.key_path, line=line) from None


def load_run_config(file_path: str) -> RunConfig:
    """Read and validate a run configuration file.

    Raises:
        ConfigurationError: If the file is missing or invalid
    """
    try:
        with open(file_path, "r") as f:
            text = f.read()
    except OSError as e:
        raise ConfigurationError(f"cannot read configuration file {file_path}: {e}") from None
    config = parse_config_text(text, source=file_path)
    logging.info(f"Loaded {config.kind} configuration from {file_path}")
    return config


def dump_config(config: RunConfig) -> str:
    return json.dumps(config.to_dict(), indent=2) + "\n"


def leg_configs(config: RunConfig) -> List[Tuple[str, RunConfig]]:
    """Resolve the legs of a compare configuration into simulate configs.

    Raises:
        ConfigurationError: With the key path inside the offending leg
    """
    assert config.compare is not None
    base = config.to_dict()
    base.pop("compare")
    base["kind"] = "simulate"
    legs = []
    for name, overlay in config.compare.legs:
        try:
            legs.append((name, RunConfig.from_dict(deep_merge(base, overlay))))
        except ConfigurationError as e:
            message = str(e).split(f"{e.key_path}: ", 1)[-1] if e.key_path else str(e)
            raise ConfigurationError(
                message, key_path=f"compare.legs.{name}.{e.key_path or ''}".rstrip(".")
            ) from None
    return legs
