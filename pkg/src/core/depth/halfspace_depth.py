"""Random-projection approximation of the Tukey halfspace depth.

On each direction the univariate depth of a value is the smaller of the
number of projections at or below it and the number at or above it; the
multivariate estimate is the minimum over directions, divided by n. Counting
both sides is equivalent to also evaluating every antipodal direction.
"""

import numpy as np

from src.core.errors import DimensionMismatchError
from src.core.types import DepthProfile, ProjectionMatrix


def two_sided_counts(values: np.ndarray) -> np.ndarray:
    """Per row, ``min(#{j: v_j <= v_i}, #{j: v_j >= v_i})`` for every entry.

    Tied values share the larger count on each side (weak ranks).
    """
    rows, n = values.shape
    order = np.argsort(values, axis=1, kind="stable")
    ordered = np.take_along_axis(values, order, axis=1)

    starts = np.ones((rows, n), dtype=bool)
    starts[:, 1:] = ordered[:, 1:] != ordered[:, :-1]
    ends = np.ones((rows, n), dtype=bool)
    ends[:, :-1] = starts[:, 1:]

    position = np.arange(n)
    # first/last sorted position of each entry's tie group
    first = np.maximum.accumulate(np.where(starts, position, 0), axis=1)
    last = np.minimum.accumulate(np.where(ends, position, n - 1)[:, ::-1], axis=1)[:, ::-1]

    sorted_counts = np.minimum(last + 1, n - first)
    counts = np.empty_like(sorted_counts)
    np.put_along_axis(counts, order, sorted_counts, axis=1)
    return counts


class HalfspaceDepth:
    """Halfspace depth of sample points and of out-of-sample query points."""

    def __init__(self):
        """Initialize the Halfspace Depth approximation."""
        pass

    def halfspace_depths(self, M: ProjectionMatrix) -> DepthProfile:
        """
        Approximate halfspace depth of every sample point.

        Args:
            M (ProjectionMatrix): K x n projections of the sample

        Returns:
            DepthProfile with values in [1/n, 1]
        """
        counts = two_sided_counts(M.values).min(axis=0)
        return DepthProfile(counts / M.n, "halfspace", M.K)

    def sorted_projections(self, M: ProjectionMatrix) -> np.ndarray:
        """Row-sorted copy of the projections, reusable across query batches."""
        return np.sort(M.values, axis=1)

    def halfspace_depths_at(self, Z_projections: np.ndarray, M: ProjectionMatrix,
                            presorted: np.ndarray = None) -> np.ndarray:
        """
        Approximate halfspace depth of many query points.

        Args:
            Z_projections: K x m projections of the query points on the directions of M
            M (ProjectionMatrix): K x n projections of the sample
            presorted: Optional output of ``sorted_projections(M)``

        Returns:
            Length-m array of depths in [0, 1]
        """
        Z = np.asarray(Z_projections, dtype=np.float64)
        if Z.ndim == 1:
            Z = Z[:, None]
        if Z.shape[0] != M.K:
            raise DimensionMismatchError(f"Query projections have {Z.shape[0]} directions, expected {M.K}")

        ordered = self.sorted_projections(M) if presorted is None else presorted
        n = M.n
        best = np.full(Z.shape[1], n, dtype=np.int64)
        for k in range(M.K):
            below = np.searchsorted(ordered[k], Z[k], side="right")
            above = n - np.searchsorted(ordered[k], Z[k], side="left")
            np.minimum(best, np.minimum(below, above), out=best)
        return best / n

    def halfspace_depth_at(self, z_projections: np.ndarray, M: ProjectionMatrix) -> float:
        """Approximate halfspace depth of a single query point (0 outside the sample's hull)."""
        z = np.asarray(z_projections, dtype=np.float64).reshape(-1)
        return float(self.halfspace_depths_at(z[:, None], M)[0])
