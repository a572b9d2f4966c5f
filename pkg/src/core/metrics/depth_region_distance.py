"""Depth-region distance DR_{p,eps} between two empirical distributions.

Both samples share one direction set. Their depth regions at level alpha are
approximated by the sample points deeper than alpha, and the Hausdorff
distance between two such regions is the largest gap between their support
values over the directions. DR averages the p-th power of that distance over
levels drawn in [eps, alpha*], where alpha* is the smaller of the two maximal
depths.

The support values of every level come from a single pass per direction
block: with points sorted by decreasing depth, each region is a prefix, so a
running maximum of the projections yields all levels at once.
"""

import logging
import math
from typing import Optional

import numpy as np

from src.core.config import DEFAULT_CHUNK_ELEMENTS
from src.core.depth.depth_estimator import DepthEstimator, direction_blocks
from src.core.errors import DimensionMismatchError, LevelRangeError
from src.core.generators.direction_generator import DirectionGenerator
from src.core.types import (
    DepthProfile,
    DirectionSet,
    DistanceResult,
    MetricParams,
    PointCloud,
    as_cloud,
    check_same_dimension,
)
from src.core.utilities.parallel_utility import ordered_map
from src.core.utilities.seed_utility import STREAM_LEVELS, stream

logger = logging.getLogger(__name__)


class DepthRegionDistance:
    """Monte-Carlo approximation of the depth-region distance."""

    def __init__(self, chunk_elements: int = DEFAULT_CHUNK_ELEMENTS, workers: int = 1):
        self.chunk_elements = chunk_elements
        self.workers = workers
        self._directions = DirectionGenerator()

    def integration_range(self, params: MetricParams, alpha_star: float):
        """Lower and upper depth level of the integral."""
        upper = alpha_star
        if params.alpha_upper is not None:
            if params.alpha_upper > alpha_star:
                raise LevelRangeError(
                    f"alpha_upper={params.alpha_upper} exceeds the deepest common level {alpha_star:.6g}"
                )
            upper = params.alpha_upper
        if params.trim_upper:
            upper -= params.epsilon
        if params.epsilon >= upper:
            raise LevelRangeError(
                f"epsilon={params.epsilon} leaves no depth level below {upper:.6g}; "
                "the samples are too shallow for the requested trimming"
            )
        return params.epsilon, upper

    def draw_levels(self, params: MetricParams, alpha_star: float) -> np.ndarray:
        """Depth levels alpha_1..alpha_{n_alpha}, i.i.d. uniform or an evenly spaced grid."""
        lower, upper = self.integration_range(params, alpha_star)
        if params.alpha_mode == "grid":
            return lower + (upper - lower) * (np.arange(params.n_alpha) + 0.5) / params.n_alpha
        return stream(params.seed, STREAM_LEVELS).uniform(lower, upper, params.n_alpha)

    def region_sizes(self, profile: DepthProfile, levels: np.ndarray):
        """
        Order points by decreasing depth and count the points above each level.

        A level at or above the maximal depth would leave the region empty;
        such regions fall back to the deepest point(s).
        """
        order = np.argsort(-profile.values, kind="stable")
        descending = -profile.values[order]
        sizes = np.searchsorted(descending, -levels, side="left")

        empty = sizes == 0
        if empty.any():
            deepest = np.searchsorted(descending, descending[0], side="right")
            logger.warning("%d level(s) left a region empty; using the %d deepest point(s)",
                           int(empty.sum()), int(deepest))
            sizes = np.where(empty, deepest, sizes)
        return order, sizes

    def dr_distance(self, X: PointCloud, Y: PointCloud, params: MetricParams,
                    directions: Optional[DirectionSet] = None) -> DistanceResult:
        """
        Approximate DR_{p,eps}(X, Y).

        Args:
            X: (n, d) sample of the first distribution
            Y: (m, d) sample of the second distribution
            params (MetricParams): p, epsilon, n_alpha, K, seed, depth notion
            directions (DirectionSet): Optional explicit directions (otherwise drawn from the seed)

        Returns:
            DistanceResult with value, alpha_star and one (alpha, Hausdorff) pair per level

        Raises:
            DimensionMismatchError: If the samples (or directions) differ in dimension
            LevelRangeError: If epsilon is not below the deepest common level
        """
        X = as_cloud(X, "X")
        Y = as_cloud(Y, "Y")
        d = check_same_dimension(X, Y)
        dirs = directions if directions is not None else self._directions.sample_directions(d, params.K, params.seed)
        if dirs.d != d:
            raise DimensionMismatchError(f"Directions have dimension {dirs.d}, samples have {d}")

        estimator = DepthEstimator.from_params(params.depth_params(), self.chunk_elements, self.workers)
        depth_x = estimator.estimate(X, dirs)
        depth_y = estimator.estimate(Y, dirs)
        alpha_star = min(depth_x.max_depth, depth_y.max_depth)

        levels = self.draw_levels(params, alpha_star)
        order_x, sizes_x = self.region_sizes(depth_x, levels)
        order_y, sizes_y = self.region_sizes(depth_y, levels)
        sorted_x = X[order_x]
        sorted_y = Y[order_y]

        blocks = direction_blocks(dirs.K, max(X.shape[0], Y.shape[0]), self.chunk_elements)
        logger.debug("DR: n=%d, m=%d, d=%d, K=%d, n_alpha=%d, blocks=%d",
                     X.shape[0], Y.shape[0], d, dirs.K, params.n_alpha, len(blocks))

        def block_gaps(block):
            start, stop = block
            U = dirs.directions[start:stop]
            support_x = np.maximum.accumulate(U @ sorted_x.T, axis=1)[:, sizes_x - 1]
            support_y = np.maximum.accumulate(U @ sorted_y.T, axis=1)[:, sizes_y - 1]
            return np.abs(support_x - support_y).max(axis=0)

        hausdorff = np.maximum.reduce(ordered_map(block_gaps, blocks, self.workers))
        total = math.fsum(hausdorff ** params.p)
        value = (total / params.n_alpha) ** (1.0 / params.p)

        return DistanceResult(
            value=float(value),
            params=params,
            method="dr",
            alpha_star=float(alpha_star),
            levels=[(float(a), float(h)) for a, h in zip(levels, hausdorff)],
        )
