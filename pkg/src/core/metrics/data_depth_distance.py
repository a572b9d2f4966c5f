"""Data-depth distance DD_p: L^p distance between two halfspace depth fields.

The integral over R^d is truncated to a box and estimated by Monte Carlo:
(Vol(box) * mean |D_X(z) - D_Y(z)|^p)^(1/p) over uniform points z in the box.
"""

import logging
import math
from typing import Optional

import numpy as np

from src.core.config import DEFAULT_BOX_INFLATION, DEFAULT_CHUNK_ELEMENTS, DEFAULT_MC_POINTS
from src.core.depth.depth_estimator import DepthEstimator
from src.core.depth.halfspace_depth import HalfspaceDepth
from src.core.errors import DimensionMismatchError, UnsupportedDepthNotionError
from src.core.generators.direction_generator import DirectionGenerator
from src.core.types import (
    DirectionSet,
    DistanceResult,
    IntegrationBox,
    MetricParams,
    PointCloud,
    as_cloud,
    check_same_dimension,
)
from src.core.utilities.projection_utility import ProjectionUtility
from src.core.utilities.seed_utility import STREAM_MC_POINTS, stream

logger = logging.getLogger(__name__)


class DataDepthDistance:
    """Monte-Carlo approximation of the data-depth distance (halfspace depth only)."""

    def __init__(self, chunk_elements: int = DEFAULT_CHUNK_ELEMENTS):
        self.chunk_elements = chunk_elements
        self._directions = DirectionGenerator()
        self._projection = ProjectionUtility()
        self._halfspace = HalfspaceDepth()

    def default_box(self, X: PointCloud, Y: PointCloud, mc_points: int = DEFAULT_MC_POINTS,
                    inflation: float = DEFAULT_BOX_INFLATION) -> IntegrationBox:
        """Bounding box of X and Y, widened by ``inflation`` times its width on every side."""
        both = np.vstack([as_cloud(X, "X"), as_cloud(Y, "Y")])
        lower = both.min(axis=0)
        upper = both.max(axis=0)
        width = upper - lower
        # flat coordinates get a unit-width box
        margin = np.where(width > 0, inflation * width, 0.5)
        return IntegrationBox(lower - margin, upper + margin, mc_points)

    def dd_distance(self, X: PointCloud, Y: PointCloud, params: MetricParams,
                    box: Optional[IntegrationBox] = None,
                    directions: Optional[DirectionSet] = None) -> DistanceResult:
        """
        Approximate DD_p(X, Y) over an integration box.

        Args:
            X: (n, d) sample of the first distribution
            Y: (m, d) sample of the second distribution
            params (MetricParams): p, K, seed; depth notion must be halfspace
            box (IntegrationBox): Integration domain (default: inflated bounding box)
            directions (DirectionSet): Optional explicit directions

        Returns:
            DistanceResult (levels are empty; alpha_star is reported for reference)

        Raises:
            UnsupportedDepthNotionError: If the depth notion is not halfspace
            DimensionMismatchError: If samples, box or directions differ in dimension
        """
        if params.depth_notion != "halfspace":
            raise UnsupportedDepthNotionError(
                "The data-depth distance needs out-of-sample depths, available for the halfspace depth only"
            )
        X = as_cloud(X, "X")
        Y = as_cloud(Y, "Y")
        d = check_same_dimension(X, Y)
        box = box if box is not None else self.default_box(X, Y)
        if box.d != d:
            raise DimensionMismatchError(f"Integration box has dimension {box.d}, samples have {d}")
        dirs = directions if directions is not None else self._directions.sample_directions(d, params.K, params.seed)
        if dirs.d != d:
            raise DimensionMismatchError(f"Directions have dimension {dirs.d}, samples have {d}")

        estimator = DepthEstimator("halfspace", self.chunk_elements)
        alpha_star = min(estimator.estimate(X, dirs).max_depth, estimator.estimate(Y, dirs).max_depth)

        M_x = self._projection.project(X, dirs)
        M_y = self._projection.project(Y, dirs)
        sorted_x = self._halfspace.sorted_projections(M_x)
        sorted_y = self._halfspace.sorted_projections(M_y)

        rng = stream(params.seed, STREAM_MC_POINTS)
        batch = max(1, self.chunk_elements // dirs.K)
        logger.debug("DD: n=%d, m=%d, d=%d, K=%d, mc_points=%d, batch=%d",
                     X.shape[0], Y.shape[0], d, dirs.K, box.mc_points, batch)

        partial_sums = []
        for start in range(0, box.mc_points, batch):
            size = min(batch, box.mc_points - start)
            Z = rng.uniform(box.lower, box.upper, size=(size, d))
            Z_projections = dirs.directions @ Z.T
            gap = np.abs(
                self._halfspace.halfspace_depths_at(Z_projections, M_x, sorted_x)
                - self._halfspace.halfspace_depths_at(Z_projections, M_y, sorted_y)
            )
            partial_sums.append(math.fsum(gap ** params.p))

        mean = math.fsum(partial_sums) / box.mc_points
        value = (box.volume * mean) ** (1.0 / params.p)
        return DistanceResult(value=float(value), params=params, method="dd", alpha_star=float(alpha_star))
