"""One-dimensional and sliced Wasserstein distances between empirical samples.

The 1-D transport cost comes from POT's exact quantile coupling
(``ot.wasserstein_1d``, unequal sample sizes allowed). Slices are evaluated
in direction blocks: each block's projections go to POT as one batch, one
column per direction.
"""

import logging
from typing import Optional

import numpy as np
import ot

from src.core.config import DEFAULT_CHUNK_ELEMENTS
from src.core.depth.depth_estimator import direction_blocks
from src.core.errors import DimensionMismatchError, ParameterError
from src.core.generators.direction_generator import DirectionGenerator
from src.core.types import DirectionSet, PointCloud, as_cloud, check_same_dimension

logger = logging.getLogger(__name__)

SLICING_MODES = ("mean", "max")


def _as_sample(values, name: str) -> np.ndarray:
    sample = np.asarray(values, dtype=np.float64).ravel()
    if sample.size == 0:
        raise ParameterError(f"{name} cannot be empty")
    return sample


def _check_order(p: float):
    if not p >= 1:
        raise ParameterError(f"p must be >= 1, got {p}")


class WassersteinDistance:
    """Closed-form 1-D Wasserstein distance and its sliced variants."""

    def __init__(self, chunk_elements: int = DEFAULT_CHUNK_ELEMENTS):
        self.chunk_elements = chunk_elements
        self._directions = DirectionGenerator()

    def wasserstein_1d(self, x, y, p: float = 1.0) -> float:
        """
        p-Wasserstein distance between two 1-D empirical samples.

        Args:
            x: First sample (any order)
            y: Second sample (any order, any size)
            p (float): Order, >= 1

        Returns:
            W_p(x, y)

        Raises:
            ParameterError: If a sample is empty or p < 1
        """
        _check_order(p)
        cost = ot.wasserstein_1d(_as_sample(x, "x"), _as_sample(y, "y"), p=p)
        return float(cost) ** (1.0 / p)

    def slice_costs(self, X: PointCloud, Y: PointCloud, dirs: DirectionSet, p: float) -> np.ndarray:
        """W_p^p between the projections of X and Y on every direction of ``dirs``."""
        costs = []
        for start, stop in direction_blocks(dirs.K, max(X.shape[0], Y.shape[0]), self.chunk_elements):
            U = dirs.directions[start:stop]
            # (n, k) and (m, k): POT batches over trailing axes
            costs.append(np.asarray(ot.wasserstein_1d(X @ U.T, Y @ U.T, p=p), dtype=np.float64))
        return np.concatenate(costs)

    def sliced_wasserstein(self, X: PointCloud, Y: PointCloud, p: float = 2.0, K: int = 1000,
                           seed: int = 0, mode: str = "mean",
                           directions: Optional[DirectionSet] = None) -> float:
        """
        Sliced (mode="mean") or max-sliced (mode="max") Wasserstein distance.

        Args:
            X: (n, d) sample
            Y: (m, d) sample
            p (float): Order, >= 1
            K (int): Number of random directions
            seed (int): Direction seed
            mode (str): "mean" or "max"
            directions (DirectionSet): Optional explicit directions

        Returns:
            ((1/K) sum_k W_p^p)^(1/p) for "mean", max_k W_p for "max"
        """
        if mode not in SLICING_MODES:
            raise ParameterError(f"mode must be one of: {', '.join(SLICING_MODES)}")
        _check_order(p)
        X = as_cloud(X, "X")
        Y = as_cloud(Y, "Y")
        d = check_same_dimension(X, Y)
        dirs = directions if directions is not None else self._directions.sample_directions(d, K, seed)
        if dirs.d != d:
            raise DimensionMismatchError(f"Directions have dimension {dirs.d}, samples have {d}")

        costs = self.slice_costs(X, Y, dirs, p)
        logger.debug("Sliced Wasserstein (%s): d=%d, K=%d", mode, d, dirs.K)
        if mode == "max":
            return float(costs.max() ** (1.0 / p))
        return float(costs.mean() ** (1.0 / p))
