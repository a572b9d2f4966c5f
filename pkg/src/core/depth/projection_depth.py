"""Random-projection approximation of the projection depth.

Outlyingness on a direction is |m - median| / MAD. Depth is
1 / (1 + worst outlyingness over directions). A direction whose MAD is zero
contributes outlyingness 0 for points at the median and +inf elsewhere.
"""

import logging

import numpy as np
from scipy import stats

from src.core.types import DepthProfile, ProjectionMatrix

logger = logging.getLogger(__name__)


class ProjectionDepth:
    """Projection depth of sample points from their projections."""

    def __init__(self):
        """Initialize the Projection Depth approximation."""
        pass

    def outlyingness(self, M: ProjectionMatrix) -> np.ndarray:
        """K x n matrix of standardized absolute deviations V[k, i]."""
        values = M.values
        median = np.median(values, axis=1, keepdims=True)
        deviation = np.abs(values - median)
        mad = stats.median_abs_deviation(values, axis=1)[:, None]

        degenerate = mad[:, 0] == 0
        if degenerate.any():
            logger.warning("%d direction(s) have zero MAD", int(degenerate.sum()))

        with np.errstate(divide="ignore", invalid="ignore"):
            scaled = deviation / mad
        return np.where(mad > 0, scaled, np.where(deviation == 0, 0.0, np.inf))

    def projection_depths(self, M: ProjectionMatrix) -> DepthProfile:
        """
        Approximate projection depth of every sample point.

        Args:
            M (ProjectionMatrix): K x n projections of the sample

        Returns:
            DepthProfile with D_i = 1 / (1 + max_k V[k, i])
        """
        worst = self.outlyingness(M).max(axis=0)
        return DepthProfile(1.0 / (1.0 + worst), "projection", M.K)
