"""Exact empirical halfspace depth in one and two dimensions.

These are test oracles for the random-projection estimates.
"""

import numpy as np

from src.core.errors import DimensionMismatchError, ParameterError
from src.core.types import PointCloud, as_cloud


class ExactDepth:
    """Exact Tukey depth for low-dimensional samples."""

    # Oracle scale for the O(n^2) planar enumeration.
    MAX_PLANAR_SAMPLE = 500

    def __init__(self):
        """Initialize the exact depth oracle."""
        pass

    def halfspace_depths_1d(self, z, sample) -> np.ndarray:
        """
        Exact depth min(F(z), 1 - F(z-)) of each query value w.r.t. a 1-D sample.

        Args:
            z: Query values
            sample: 1-D sample values

        Returns:
            Array of depths, one per query value
        """
        values = np.sort(np.asarray(sample, dtype=np.float64).ravel())
        if values.size == 0:
            raise ParameterError("Sample cannot be empty")
        queries = np.asarray(z, dtype=np.float64)
        below = np.searchsorted(values, queries, side="right")
        above = values.size - np.searchsorted(values, queries, side="left")
        return np.minimum(below, above) / values.size

    def exact_halfspace_depth_2d(self, point, sample: PointCloud) -> float:
        """
        Exact empirical Tukey depth of a planar point.

        The count of sample points in a closed halfplane bounded by a line
        through ``point`` only changes when the line passes through a sample
        point, so it suffices to evaluate one normal inside every arc between
        consecutive critical normals.

        Args:
            point: Query point in R^2
            sample: (n, 2) sample

        Returns:
            Smallest closed-halfplane count through the point, divided by n

        Raises:
            DimensionMismatchError: If the sample or the point is not planar
        """
        cloud = as_cloud(sample, "sample")
        z = np.asarray(point, dtype=np.float64).ravel()
        if cloud.shape[1] != 2 or z.shape != (2,):
            raise DimensionMismatchError("Exact halfspace depth is only available in dimension 2")
        if cloud.shape[0] > self.MAX_PLANAR_SAMPLE:
            raise ParameterError(f"Sample too large for the exact oracle (n <= {self.MAX_PLANAR_SAMPLE})")

        n = cloud.shape[0]
        offsets = cloud - z
        at_point = np.all(offsets == 0, axis=1)
        others = offsets[~at_point]
        if others.shape[0] == 0:
            return 1.0

        angles = np.arctan2(others[:, 1], others[:, 0])
        critical = np.unique(np.mod(np.concatenate([angles + np.pi / 2, angles - np.pi / 2]), 2 * np.pi))
        following = np.append(critical[1:], critical[0] + 2 * np.pi)
        middles = (critical + following) / 2
        normals = np.column_stack([np.cos(middles), np.sin(middles)])

        counts = (others @ normals.T >= 0).sum(axis=0)
        return float((counts.min() + at_point.sum()) / n)

    def exact_halfspace_depths_2d(self, sample: PointCloud) -> np.ndarray:
        """Exact Tukey depth of every point of a planar sample."""
        cloud = as_cloud(sample, "sample")
        return np.array([self.exact_halfspace_depth_2d(x, cloud) for x in cloud])
