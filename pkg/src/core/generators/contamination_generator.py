"""Contamination Generator for replacing a fraction of a cloud with outliers.

Replacement (rather than appending) keeps the sample size fixed, and the
points that are not replaced are returned bit-for-bit unchanged so clean and
contaminated distances can be compared pair-wise.
"""

import logging
from fractions import Fraction
from typing import Tuple

import numpy as np

from src.core.errors import DimensionMismatchError, ParameterError
from src.core.types import ContaminationSpec, PointCloud, as_cloud
from src.core.utilities.seed_utility import derive_seed, stream

logger = logging.getLogger(__name__)


def outlier_count(fraction: float, n: int) -> int:
    """floor(fraction * n), taking the fraction as written (0.29 of 100 is 29)."""
    return int(Fraction(repr(float(fraction))) * n)


class ContaminationGenerator:
    """Generator for uniform-box and unit-ball outliers."""

    def __init__(self):
        """Initialize the Contamination Generator."""
        pass

    def _box_bounds(self, spec: ContaminationSpec, d: int) -> Tuple[np.ndarray, np.ndarray]:
        if spec.box_lower is None or spec.box_upper is None:
            raise ParameterError("The uniform_box scheme needs box_lower and box_upper")
        lower = np.atleast_1d(np.asarray(spec.box_lower, dtype=np.float64))
        upper = np.atleast_1d(np.asarray(spec.box_upper, dtype=np.float64))
        lower = np.full(d, lower[0]) if lower.size == 1 else lower
        upper = np.full(d, upper[0]) if upper.size == 1 else upper
        if lower.shape != (d,) or upper.shape != (d,):
            raise DimensionMismatchError(f"Box bounds must have {d} entries")
        if np.any(lower > upper):
            raise ParameterError("box_lower must not exceed box_upper")
        return lower, upper

    def sample_outliers(self, spec: ContaminationSpec, count: int, d: int,
                        rng: np.random.Generator) -> np.ndarray:
        """Draw ``count`` outliers in R^d from the scheme of ``spec``."""
        if spec.scheme == "uniform_box":
            lower, upper = self._box_bounds(spec, d)
            return rng.uniform(lower, upper, (count, d))

        # uniform in the unit ball: Gaussian direction, radius U^(1/d)
        gaussian = rng.standard_normal((count, d))
        norms = np.linalg.norm(gaussian, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        radii = rng.random((count, 1)) ** (1.0 / d)
        return gaussian / norms * radii

    def contaminate(self, X: PointCloud, spec: ContaminationSpec) -> PointCloud:
        """
        Replace floor(fraction * n) uniformly chosen points of X with outliers.

        Args:
            X: (n, d) clean cloud (not modified)
            spec (ContaminationSpec): scheme, fraction, box bounds and seed

        Returns:
            New (n, d) cloud

        Raises:
            ParameterError: If the box scheme lacks its bounds
        """
        cloud = as_cloud(X, "X")
        n, d = cloud.shape
        if spec.scheme == "uniform_box":
            self._box_bounds(spec, d)

        count = outlier_count(spec.fraction, n)
        contaminated = cloud.copy()
        if count == 0:
            return contaminated

        rng = stream(spec.seed, 0)
        replaced = rng.choice(n, size=count, replace=False)
        contaminated[replaced] = self.sample_outliers(spec, count, d, rng)
        logger.debug("Replaced %d of %d points (%s)", count, n, spec.scheme)
        return contaminated

    def contaminate_pair(self, X: PointCloud, Y: PointCloud, spec: ContaminationSpec,
                         both: bool = True) -> Tuple[PointCloud, PointCloud]:
        """Contaminate X (and Y when ``both``), each with its own derived seed."""
        spec_x = ContaminationSpec(spec.scheme, spec.fraction, spec.box_lower, spec.box_upper,
                                   derive_seed(spec.seed, 0))
        spec_y = ContaminationSpec(spec.scheme, spec.fraction, spec.box_lower, spec.box_upper,
                                   derive_seed(spec.seed, 1))
        return self.contaminate(X, spec_x), (self.contaminate(Y, spec_y) if both else as_cloud(Y, "Y").copy())
