"""Chunked depth estimation over blocks of directions.

Projections of a large sample on many directions do not fit in memory at
once, so directions are processed in blocks bounded by ``chunk_elements``.
Depths are minima over directions, so the per-block results combine with an
element-wise minimum and the outcome does not depend on the block layout or
on the number of worker threads.
"""

import logging
from typing import List, Tuple

import numpy as np

from src.core.config import DEFAULT_CHUNK_ELEMENTS, DEPTH_NOTIONS
from src.core.depth.halfspace_depth import HalfspaceDepth
from src.core.depth.projection_depth import ProjectionDepth
from src.core.errors import ParameterError, UnsupportedDepthNotionError
from src.core.types import DepthParams, DepthProfile, DirectionSet, PointCloud, ProjectionMatrix
from src.core.utilities.parallel_utility import ordered_map
from src.core.utilities.projection_utility import ProjectionUtility

logger = logging.getLogger(__name__)


def direction_blocks(K: int, n: int, chunk_elements: int) -> List[Tuple[int, int]]:
    """Split K directions into ``(start, stop)`` blocks of at most chunk_elements / n rows."""
    rows = max(1, chunk_elements // max(n, 1))
    return [(start, min(start + rows, K)) for start in range(0, K, rows)]


class DepthEstimator:
    """Depth of every sample point for a chosen notion and direction set."""

    def __init__(self, notion: str = "halfspace",
                 chunk_elements: int = DEFAULT_CHUNK_ELEMENTS,
                 workers: int = 1):
        if notion not in DEPTH_NOTIONS:
            raise UnsupportedDepthNotionError(
                f"Unknown depth notion: {notion}. Supported: {', '.join(DEPTH_NOTIONS)}"
            )
        if chunk_elements < 1:
            raise ParameterError("chunk_elements must be positive")
        self.notion = notion
        self.chunk_elements = chunk_elements
        self.workers = workers
        self._projection = ProjectionUtility()
        self._halfspace = HalfspaceDepth()
        self._projection_depth = ProjectionDepth()

    @classmethod
    def from_params(cls, params: DepthParams,
                    chunk_elements: int = DEFAULT_CHUNK_ELEMENTS,
                    workers: int = 1) -> "DepthEstimator":
        """Estimator for the notion named in ``params``."""
        return cls(params.notion, chunk_elements, workers)

    def depths(self, M: ProjectionMatrix) -> DepthProfile:
        """Depths from an already computed projection matrix."""
        if self.notion == "halfspace":
            return self._halfspace.halfspace_depths(M)
        return self._projection_depth.projection_depths(M)

    def estimate(self, points: PointCloud, dirs: DirectionSet) -> DepthProfile:
        """
        Depth of every point of ``points`` using the directions of ``dirs``.

        Args:
            points: (n, d) sample
            dirs (DirectionSet): K directions in R^d

        Returns:
            DepthProfile combining all direction blocks
        """
        n = points.shape[0]
        blocks = direction_blocks(dirs.K, n, self.chunk_elements)
        logger.debug("Estimating %s depth: n=%d, K=%d, blocks=%d", self.notion, n, dirs.K, len(blocks))

        def block_depth(block):
            start, stop = block
            M = self._projection.project(points, dirs.subset(start, stop))
            return self.depths(M).values

        values = np.minimum.reduce(ordered_map(block_depth, blocks, self.workers))
        return DepthProfile(values, self.notion, dirs.K)

    def estimate_with_projections(self, points: PointCloud,
                                  dirs: DirectionSet) -> Tuple[DepthProfile, ProjectionMatrix]:
        """Depths together with the full projection matrix (for moderate n * K)."""
        M = self._projection.project(points, dirs)
        return self.depths(M), M
