"""Closed forms of the depth-based distances for one-dimensional samples.

In 1-D the halfspace depth region at level alpha of an empirical sample is
the interval between its lower alpha-quantile and its upper alpha-quantile,
and the Hausdorff distance between two intervals is the larger of the gaps
between their endpoints. All integrands here are step functions, so the
integrals are evaluated exactly over the merged steps.
"""

import math
from typing import Optional

import numpy as np

from src.core.depth.exact_depth import ExactDepth
from src.core.errors import ParameterError


def _sorted_sample(values, name: str) -> np.ndarray:
    sample = np.sort(np.asarray(values, dtype=np.float64).ravel())
    if sample.size == 0:
        raise ParameterError(f"{name} cannot be empty")
    return sample


def region_endpoints(sample: np.ndarray, alphas: np.ndarray):
    """Endpoints of the empirical depth region {depth >= alpha} of a sorted 1-D sample."""
    n = sample.size
    rank = np.clip(np.ceil(alphas * n).astype(np.intp), 1, n)
    return sample[rank - 1], sample[n - rank]


class ClosedForms:
    """Exact 1-D oracles for DR_{p,eps} and DD_p."""

    def __init__(self):
        """Initialize the closed-form oracles."""
        self._exact = ExactDepth()

    def dr_1d_closed_form(self, x, y, p: float = 2.0, epsilon: float = 0.0,
                          nodes: Optional[int] = None) -> float:
        """
        DR_{p,eps} between two 1-D empirical samples.

        Integrates max(|upper gap|, |lower gap|)^p over alpha in [eps, 1/2],
        normalized by (1/2 - eps), and takes the 1/p power.

        Args:
            x: First sample
            y: Second sample
            p (float): Order, >= 1
            epsilon (float): Trimming level in [0, 1/2)
            nodes (int): If given, use a midpoint grid with this many nodes
                instead of exact integration over the steps

        Returns:
            The distance value
        """
        if p < 1:
            raise ParameterError(f"p must be >= 1, got {p}")
        if not (0 <= epsilon < 0.5):
            raise ParameterError(f"epsilon must lie in [0, 1/2), got {epsilon}")
        xs = _sorted_sample(x, "x")
        ys = _sorted_sample(y, "y")

        if nodes is None:
            edges = np.union1d(np.arange(xs.size + 1) / xs.size, np.arange(ys.size + 1) / ys.size)
            edges = np.union1d(edges[(edges > epsilon) & (edges < 0.5)], [epsilon, 0.5])
            alphas = (edges[:-1] + edges[1:]) / 2
            weights = np.diff(edges)
        else:
            if nodes < 1:
                raise ParameterError("nodes must be positive")
            weights = np.full(nodes, (0.5 - epsilon) / nodes)
            alphas = epsilon + (np.arange(nodes) + 0.5) * weights

        low_x, high_x = region_endpoints(xs, alphas)
        low_y, high_y = region_endpoints(ys, alphas)
        gap = np.maximum(np.abs(high_x - high_y), np.abs(low_x - low_y))
        integral = math.fsum(weights * gap ** p)
        return (integral / (0.5 - epsilon)) ** (1.0 / p)

    def dd_1d_exact(self, x, y, p: float = 1.0) -> float:
        """
        DD_p between two 1-D empirical samples, integrated exactly over R.

        Both depth fields are constant between consecutive sample values and
        vanish outside the samples' range.
        """
        if p < 1:
            raise ParameterError(f"p must be >= 1, got {p}")
        xs = _sorted_sample(x, "x")
        ys = _sorted_sample(y, "y")
        knots = np.union1d(xs, ys)
        if knots.size < 2:
            return 0.0
        middles = (knots[:-1] + knots[1:]) / 2
        gap = np.abs(self._exact.halfspace_depths_1d(middles, xs) - self._exact.halfspace_depths_1d(middles, ys))
        return math.fsum(np.diff(knots) * gap ** p) ** (1.0 / p)
