"""Single entry point mapping a method id to a distance computation."""

from typing import Optional

from src.core.config import DEFAULT_CHUNK_ELEMENTS
from src.core.errors import DimensionMismatchError, ParameterError
from src.core.metrics.data_depth_distance import DataDepthDistance
from src.core.metrics.depth_region_distance import DepthRegionDistance
from src.core.metrics.wasserstein_distance import WassersteinDistance
from src.core.types import DistanceResult, IntegrationBox, MetricParams, PointCloud, as_cloud

METHODS = ("dr", "dd", "sw", "maxsw", "w1d")


class DistanceDispatcher:
    """Dispatch ``dr``, ``dd``, ``sw``, ``maxsw`` and ``w1d`` to their implementations."""

    def __init__(self, chunk_elements: int = DEFAULT_CHUNK_ELEMENTS, workers: int = 1):
        self._dr = DepthRegionDistance(chunk_elements, workers)
        self._dd = DataDepthDistance(chunk_elements)
        self._wasserstein = WassersteinDistance(chunk_elements)

    def compute(self, method: str, X: PointCloud, Y: PointCloud, params: MetricParams,
                box: Optional[IntegrationBox] = None) -> DistanceResult:
        """Compute distance ``method`` between X and Y."""
        if method not in METHODS:
            raise ParameterError(f"Unknown method: {method}. Supported: {', '.join(METHODS)}")

        if method == "dr":
            return self._dr.dr_distance(X, Y, params)
        if method == "dd":
            return self._dd.dd_distance(X, Y, params, box)
        if method in ("sw", "maxsw"):
            value = self._wasserstein.sliced_wasserstein(
                X, Y, params.p, params.K, params.seed, mode="max" if method == "maxsw" else "mean"
            )
            return DistanceResult(value=value, params=params, method=method)

        X = as_cloud(X, "X")
        Y = as_cloud(Y, "Y")
        if X.shape[1] != 1 or Y.shape[1] != 1:
            raise DimensionMismatchError("w1d needs one-dimensional samples")
        value = self._wasserstein.wasserstein_1d(X[:, 0], Y[:, 0], params.p)
        return DistanceResult(value=value, params=params, method=method)
