"""Projection Utility for support functions of sample-based convex regions.

Projections are stored direction-major (K x n) so per-direction scans are
contiguous. The Hausdorff distance between two convex bodies equals the
sup-norm gap of their support functions; over a finite direction set this is
the max over k of |hA[k] - hB[k]|.
"""

import numpy as np

from src.core.errors import DimensionMismatchError, EmptyRegionError, ParameterError
from src.core.types import DirectionSet, PointCloud, ProjectionMatrix, SupportVector, as_cloud


class ProjectionUtility:
    """Utility for projections, support values and direction-wise Hausdorff distances."""

    def __init__(self):
        """Initialize the Projection Utility."""
        pass

    def project(self, points: PointCloud, dirs: DirectionSet) -> ProjectionMatrix:
        """
        Project a point cloud onto every direction of a set.

        Args:
            points: (n, d) point cloud
            dirs (DirectionSet): K directions in R^d

        Returns:
            ProjectionMatrix with values[k, i] = <u_k, X_i>

        Raises:
            DimensionMismatchError: If points and directions differ in dimension
        """
        cloud = as_cloud(points)
        if cloud.shape[1] != dirs.d:
            raise DimensionMismatchError(
                f"Points have dimension {cloud.shape[1]} but directions have dimension {dirs.d}"
            )
        return ProjectionMatrix(dirs.directions @ cloud.T, dirs)

    def support_values(self, M: ProjectionMatrix, region, level: float = None) -> SupportVector:
        """
        Approximate support function of the hull of ``region`` on every direction.

        Args:
            M (ProjectionMatrix): Projections of the whole sample
            region: Integer indices (or a boolean mask of length n) selecting points
            level (float): Depth level the region belongs to, recorded on the result

        Returns:
            SupportVector with h[k] = max over i in region of M[k, i]

        Raises:
            EmptyRegionError: If the region selects no point
            ParameterError: If an index is out of range
        """
        index = np.asarray(region)
        if index.dtype == bool:
            if index.shape != (M.n,):
                raise ParameterError(f"Region mask must have length {M.n}")
            index = np.flatnonzero(index)
        index = index.astype(np.intp, copy=False).ravel()

        if index.size == 0:
            raise EmptyRegionError("Cannot evaluate a support function over an empty region")
        if index.min() < 0 or index.max() >= M.n:
            raise ParameterError(f"Region indices must lie in [0, {M.n})")

        return SupportVector(M.values[:, index].max(axis=1), level)

    def hausdorff_approx(self, hA: SupportVector, hB: SupportVector) -> float:
        """
        Hausdorff distance between two regions from their support values.

        Raises:
            DimensionMismatchError: If the vectors have different lengths
        """
        if hA.K != hB.K:
            raise DimensionMismatchError(f"Support vectors differ in length: {hA.K} != {hB.K}")
        return float(np.max(np.abs(hA.h - hB.h)))
