"""Domain records shared across the toolbox.

Point clouds are plain ``(n, d)`` float64 arrays; everything else is a small
dataclass that validates itself on construction.
"""

import math
from dataclasses import dataclass, field, asdict
from typing import List, Optional, Tuple, Union

import numpy as np

from src.core.config import (
    ALPHA_MODES,
    DEFAULT_DEPTH_NOTION,
    DEFAULT_DIRECTIONS,
    DEFAULT_EPSILON,
    DEFAULT_MC_POINTS,
    DEFAULT_N_ALPHA,
    DEFAULT_P,
    DEFAULT_SEED,
    DEPTH_NOTIONS,
)
from src.core.errors import DegenerateBoxError, DimensionMismatchError, ParameterError

PointCloud = np.ndarray

UNIT_NORM_TOLERANCE = 1e-10


def as_cloud(points, name: str = "points") -> PointCloud:
    """Coerce input to a finite ``(n, d)`` float64 array with n >= 1."""
    cloud = np.asarray(points, dtype=np.float64)
    if cloud.ndim == 1:
        cloud = cloud.reshape(-1, 1)
    if cloud.ndim != 2:
        raise ParameterError(f"{name} must be a 2-D array of shape (n, d), got ndim={cloud.ndim}")
    if cloud.shape[0] == 0 or cloud.shape[1] == 0:
        raise ParameterError(f"{name} must contain at least one point of dimension >= 1")
    if not np.all(np.isfinite(cloud)):
        raise ParameterError(f"{name} contains non-finite values")
    return cloud


def check_same_dimension(X: PointCloud, Y: PointCloud) -> int:
    if X.shape[1] != Y.shape[1]:
        raise DimensionMismatchError(f"Dimension mismatch: {X.shape[1]} != {Y.shape[1]}")
    return X.shape[1]


@dataclass(frozen=True, eq=False)
class DirectionSet:
    """K unit vectors in R^d, stored row-wise as a ``(K, d)`` array."""

    directions: np.ndarray
    seed: Optional[int] = None

    def __post_init__(self):
        dirs = np.array(self.directions, dtype=np.float64)
        if dirs.ndim != 2 or dirs.shape[0] == 0 or dirs.shape[1] == 0:
            raise ParameterError("directions must be a non-empty (K, d) array")
        norms = np.linalg.norm(dirs, axis=1)
        if np.any(np.abs(norms - 1.0) > UNIT_NORM_TOLERANCE):
            raise ParameterError("every direction must have unit Euclidean norm")
        dirs.setflags(write=False)
        object.__setattr__(self, "directions", dirs)

    @property
    def K(self) -> int:
        return self.directions.shape[0]

    @property
    def d(self) -> int:
        return self.directions.shape[1]

    def subset(self, start: int, stop: int) -> "DirectionSet":
        """Directions ``start:stop`` as their own set (same seed)."""
        return DirectionSet(self.directions[start:stop], self.seed)


@dataclass(frozen=True, eq=False)
class ProjectionMatrix:
    """``values[k, i] = <u_k, X_i>``, direction-major."""

    values: np.ndarray
    direction_set: Optional[DirectionSet] = None

    @property
    def K(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True, eq=False)
class SupportVector:
    h: np.ndarray
    level: Optional[float] = None

    @property
    def K(self) -> int:
        return self.h.shape[0]


@dataclass(frozen=True, eq=False)
class DepthProfile:
    values: np.ndarray
    notion: str
    K: int

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def max_depth(self) -> float:
        return float(np.max(self.values))


@dataclass(frozen=True)
class DepthParams:
    notion: str = DEFAULT_DEPTH_NOTION
    K: int = DEFAULT_DIRECTIONS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.notion not in DEPTH_NOTIONS:
            raise ParameterError(f"Unknown depth notion: {self.notion}. Supported: {', '.join(DEPTH_NOTIONS)}")
        if self.K < 1:
            raise ParameterError("K must be at least 1")


@dataclass(frozen=True)
class MetricParams:
    """Parameters of the depth-based distances.

    ``alpha_mode`` chooses between i.i.d. uniform levels (the default) and an
    evenly spaced midpoint grid. ``alpha_upper`` pins the upper integration
    level so several pairs can share one grid; ``trim_upper`` integrates up to
    alpha* - epsilon instead of alpha*.
    """

    p: float = DEFAULT_P
    epsilon: float = DEFAULT_EPSILON
    n_alpha: int = DEFAULT_N_ALPHA
    K: int = DEFAULT_DIRECTIONS
    seed: int = DEFAULT_SEED
    depth_notion: str = DEFAULT_DEPTH_NOTION
    alpha_mode: str = "random"
    alpha_upper: Optional[float] = None
    trim_upper: bool = False

    def __post_init__(self):
        if not (self.p >= 1 and math.isfinite(self.p)):
            raise ParameterError(f"p must be a finite real >= 1, got {self.p}")
        if not (0 <= self.epsilon < 1):
            raise ParameterError(f"epsilon must lie in [0, 1), got {self.epsilon}")
        if self.n_alpha < 1:
            raise ParameterError("n_alpha must be at least 1")
        if self.K < 1:
            raise ParameterError("K must be at least 1")
        if self.depth_notion not in DEPTH_NOTIONS:
            raise ParameterError(
                f"Unknown depth notion: {self.depth_notion}. Supported: {', '.join(DEPTH_NOTIONS)}"
            )
        if self.alpha_mode not in ALPHA_MODES:
            raise ParameterError(f"alpha_mode must be one of: {', '.join(ALPHA_MODES)}")
        if self.alpha_upper is not None and not (self.epsilon < self.alpha_upper <= 1):
            raise ParameterError("alpha_upper must lie in (epsilon, 1]")

    def depth_params(self) -> DepthParams:
        return DepthParams(notion=self.depth_notion, K=self.K, seed=self.seed)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class DistanceResult:
    value: float
    params: MetricParams
    method: str = "dr"
    alpha_star: Optional[float] = None
    levels: List[Tuple[float, float]] = field(default_factory=list)

    def to_dict(self, include_levels: bool = False) -> dict:
        data = {
            "method": self.method,
            "value": self.value,
            "alpha_star": self.alpha_star,
            "p": self.params.p,
            "epsilon": self.params.epsilon,
            "K": self.params.K,
            "n_alpha": self.params.n_alpha,
            "seed": self.params.seed,
            "depth_notion": self.params.depth_notion,
        }
        if include_levels:
            data["levels"] = [{"alpha": a, "hausdorff": h} for a, h in self.levels]
        return data


@dataclass(frozen=True, eq=False)
class IntegrationBox:
    lower: np.ndarray
    upper: np.ndarray
    mc_points: int = DEFAULT_MC_POINTS

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=np.float64))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=np.float64))
        if lower.shape != upper.shape or lower.ndim != 1:
            raise DimensionMismatchError("box bounds must be vectors of equal length")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise DegenerateBoxError("box bounds must be finite")
        if np.any(lower >= upper):
            raise DegenerateBoxError("box lower bound must be strictly below upper bound in every coordinate")
        if self.mc_points < 1:
            raise ParameterError("mc_points must be at least 1")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def d(self) -> int:
        return self.lower.shape[0]

    @property
    def volume(self) -> float:
        return float(np.prod(self.upper - self.lower))


Shift = Union[float, List[float]]

GENERATOR_FAMILIES = ("gaussian_pair", "fragmented_hypercube", "circles", "student_pair")
CONTAMINATION_SCHEMES = ("uniform_box", "unit_ball")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str = "gaussian_pair"
    d: int = 2
    n: int = 1000
    shift: Shift = 0.0
    dof: float = math.inf
    noise: float = 0.2
    factor: float = 0.8
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.family not in GENERATOR_FAMILIES:
            raise ParameterError(f"Unknown generator family: {self.family}. Supported: {', '.join(GENERATOR_FAMILIES)}")
        if self.n < 1:
            raise ParameterError("n must be at least 1")
        if self.d < 1:
            raise ParameterError("d must be at least 1")
        if self.family == "student_pair" and not self.dof >= 1:
            raise ParameterError("dof must be >= 1 (or inf for the Gaussian case)")
        if self.noise < 0:
            raise ParameterError("noise must be non-negative")
        if self.family == "circles" and not (0 < self.factor < 1):
            raise ParameterError("factor must lie in (0, 1)")

    def shift_vector(self) -> np.ndarray:
        shift = np.atleast_1d(np.asarray(self.shift, dtype=np.float64))
        if shift.size == 1:
            return np.full(self.d, shift[0])
        if shift.size != self.d:
            raise DimensionMismatchError(f"shift has {shift.size} entries, expected {self.d}")
        return shift


@dataclass(frozen=True)
class ContaminationSpec:
    scheme: str = "uniform_box"
    fraction: float = 0.0
    box_lower: Optional[Shift] = None
    box_upper: Optional[Shift] = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.scheme not in CONTAMINATION_SCHEMES:
            raise ParameterError(f"Unknown contamination scheme: {self.scheme}")
        if not (0 <= self.fraction <= 1):
            raise ParameterError(f"fraction must lie in [0, 1], got {self.fraction}")
