"""Experiment configurations and result rows for the benchmark harness.

A configuration file is a YAML (or TOML) mapping whose keys mirror the
``ExperimentConfig`` fields. Keys left out take the defaults of the chosen
experiment.
"""

import math

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

import yaml

from src.core.config import DEFAULT_SEED
from src.core.errors import ConfigError
from src.core.metrics.distance_dispatcher import METHODS
from src.core.types import ContaminationSpec, GeneratorSpec, MetricParams

EXPERIMENTS = ("approx_quality", "robustness_outliers", "heavy_tails", "timing")

# Short names accepted on the command line.
EXPERIMENT_ALIASES = {
    "approx": "approx_quality",
    "robustness": "robustness_outliers",
    "heavy-tails": "heavy_tails",
    "timing": "timing",
}

MIN_TIMING_REPEATS = 5

HEAVY_TAIL_BASELINE = "gaussian_dof_inf_independent_draw"


@dataclass(frozen=True)
class MethodSpec:
    """One distance of an experiment: method id, its parameters and a row label."""

    method: str
    params: MetricParams = field(default_factory=MetricParams)
    label: str = ""

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"Unknown method: {self.method}. Supported: {', '.join(METHODS)}")
        if not self.label:
            label = f"dr_eps{self.params.epsilon:g}" if self.method == "dr" else self.method
            object.__setattr__(self, "label", label)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    methods: Tuple[MethodSpec, ...]
    generator: GeneratorSpec
    contamination: ContaminationSpec = field(default_factory=ContaminationSpec)
    fractions: Tuple[float, ...] = (0.0,)
    contaminate_both: bool = True
    repetitions: int = 100
    base_seed: int = DEFAULT_SEED
    dims: Tuple[int, ...] = ()
    direction_counts: Tuple[int, ...] = ()
    n_alphas: Tuple[int, ...] = ()
    dofs: Tuple[float, ...] = ()
    sample_sizes: Tuple[int, ...] = ()
    timing_repeats: int = MIN_TIMING_REPEATS

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"Unknown experiment: {self.experiment}. Supported: {', '.join(EXPERIMENTS)}")
        if self.repetitions < 1:
            raise ConfigError("repetitions must be at least 1")
        if not self.methods:
            raise ConfigError("At least one method is required")
        if self.timing_repeats < MIN_TIMING_REPEATS:
            raise ConfigError(f"timing_repeats must be at least {MIN_TIMING_REPEATS}")
        if any(not (0 <= f <= 1) for f in self.fractions):
            raise ConfigError("Contamination fractions must lie in [0, 1]")
        if any(k < 1 for k in self.direction_counts) or any(a < 1 for a in self.n_alphas):
            raise ConfigError("direction_counts and n_alphas must be positive")
        if any(d < 1 for d in self.dims) or any(n < 1 for n in self.sample_sizes):
            raise ConfigError("dims and sample_sizes must be positive")
        if any(not dof >= 1 for dof in self.dofs):
            raise ConfigError("dofs must be >= 1 (or inf)")


@dataclass
class BenchRow:
    """One aggregated cell of an experiment, for one method.

    ``mean_relative_error`` is NaN when the cell failed; ``note`` then holds
    the error message.
    """

    experiment: str
    method: str
    d: int
    K: int
    n_alpha: int
    epsilon: float
    fraction: Optional[float] = None
    dof: Optional[float] = None
    mean_relative_error: float = 0.0
    std_relative_error: float = 0.0
    seconds_per_eval: float = 0.0
    repetitions: int = 0
    baseline: str = ""
    note: str = ""


@dataclass
class TimingRow:
    method: str
    n: int
    d: int
    K: int
    n_alpha: int
    median_seconds: float
    growth_ratio: Optional[float] = None


def _method(method: str, **params) -> MethodSpec:
    return MethodSpec(method, MetricParams(**params))


def default_config(experiment: str) -> ExperimentConfig:
    """Default configuration of ``experiment``."""
    experiment = EXPERIMENT_ALIASES.get(experiment, experiment)
    if experiment == "approx_quality":
        return ExperimentConfig(
            experiment=experiment,
            methods=(_method("dr", p=2.0, epsilon=0.0), _method("maxsw", p=2.0)),
            generator=GeneratorSpec("gaussian_pair", d=5, n=1000, shift=7.0),
            dims=(5,),
            direction_counts=(10, 100, 1000, 5000),
            n_alphas=(20,),
        )
    if experiment == "robustness_outliers":
        return ExperimentConfig(
            experiment=experiment,
            methods=(
                _method("dr", epsilon=0.1),
                _method("dr", epsilon=0.2),
                _method("dr", epsilon=0.3),
                _method("sw"),
            ),
            generator=GeneratorSpec("gaussian_pair", d=2, n=500, shift=10.0),
            contamination=ContaminationSpec("uniform_box", box_lower=-10.0, box_upper=20.0),
            fractions=(0.0, 0.05, 0.10, 0.15, 0.20),
        )
    if experiment == "heavy_tails":
        return ExperimentConfig(
            experiment=experiment,
            methods=(_method("dr", epsilon=0.2), _method("sw")),
            generator=GeneratorSpec("student_pair", d=10, n=1000, shift=7.0),
            direction_counts=(10, 100, 1000),
            dofs=(1.0, 2.0, 3.0, 5.0, math.inf),
        )
    if experiment == "timing":
        return ExperimentConfig(
            experiment=experiment,
            methods=(_method("dr", epsilon=0.2),),
            generator=GeneratorSpec("gaussian_pair", d=10, n=1000, shift=1.0),
            repetitions=1,
            sample_sizes=(1000, 2000, 4000, 8000),
        )
    raise ConfigError(f"Unknown experiment: {experiment}. Supported: {', '.join(EXPERIMENTS)}")


def _tuple(values: Any, cast) -> tuple:
    if not isinstance(values, (list, tuple)):
        values = [values]
    return tuple(cast(v) for v in values)


def _method_spec(entry: Any) -> MethodSpec:
    if isinstance(entry, str):
        return MethodSpec(entry)
    if not isinstance(entry, dict) or "method" not in entry:
        raise ConfigError(f"Each method entry needs a 'method' key, got {entry!r}")
    entry = dict(entry)
    method = entry.pop("method")
    label = entry.pop("label", "")
    return MethodSpec(method, MetricParams(**entry), label)


_SEQUENCE_KEYS = {
    "fractions": float,
    "dims": int,
    "direction_counts": int,
    "n_alphas": int,
    "dofs": float,
    "sample_sizes": int,
}


def config_from_mapping(data: Dict[str, Any], experiment: Optional[str] = None) -> ExperimentConfig:
    """
    Build a configuration from a parsed mapping on top of the experiment defaults.

    Args:
        data (dict): Parsed YAML/TOML content
        experiment (str): Experiment name used when the mapping has none

    Returns:
        ExperimentConfig

    Raises:
        ConfigError: On unknown keys or invalid values
    """
    if not isinstance(data, dict):
        raise ConfigError("The configuration must be a mapping")
    data = dict(data)
    name = data.pop("experiment", None) or experiment
    if name is None:
        raise ConfigError("The configuration does not name an experiment")
    name = EXPERIMENT_ALIASES.get(name, name)
    if experiment is not None and EXPERIMENT_ALIASES.get(experiment, experiment) != name:
        raise ConfigError(f"The configuration is for '{name}', not '{experiment}'")

    config = default_config(name)
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"Unknown configuration key(s): {', '.join(unknown)}")

    try:
        updates: Dict[str, Any] = {}
        for key, value in data.items():
            if key == "methods":
                updates[key] = tuple(_method_spec(entry) for entry in value)
            elif key == "generator":
                updates[key] = replace(config.generator, **value)
            elif key == "contamination":
                updates[key] = replace(config.contamination, **value)
            elif key in _SEQUENCE_KEYS:
                updates[key] = _tuple(value, _SEQUENCE_KEYS[key])
            elif key == "contaminate_both":
                updates[key] = bool(value)
            else:
                updates[key] = int(value)
        return replace(config, **updates)
    except ConfigError:
        raise
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid configuration: {e}") from e


def load_config(path, experiment: Optional[str] = None) -> ExperimentConfig:
    """Load a ``.yaml``/``.yml`` or ``.toml`` experiment configuration file."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Configuration file not found: {path}")
    try:
        if path.suffix.lower() == ".toml":
            with open(path, "rb") as handle:
                data = tomllib.load(handle)
        else:
            with open(path) as handle:
                data = yaml.safe_load(handle)
    except (tomllib.TOMLDecodeError, yaml.YAMLError) as e:
        raise ConfigError(f"Could not parse {path}: {e}") from e
    return config_from_mapping(data or {}, experiment)


def describe(config: ExperimentConfig) -> Sequence[str]:
    """Short human-readable summary lines, used for logging."""
    return [
        f"experiment={config.experiment}",
        f"methods={','.join(m.label for m in config.methods)}",
        f"generator={config.generator.family} d={config.generator.d} n={config.generator.n}",
        f"repetitions={config.repetitions} base_seed={config.base_seed}",
    ]
