"""Direction Generator for sampling unit vectors on the sphere.

Directions are normalized standard Gaussian vectors, which are uniform on
S^{d-1} in every dimension. A seed fully determines the set, and the first
K1 directions of a K2-direction draw coincide with a K1-direction draw.
"""

import logging

import numpy as np

from src.core.errors import ParameterError
from src.core.types import DirectionSet
from src.core.utilities.seed_utility import STREAM_DIRECTIONS, stream

logger = logging.getLogger(__name__)


class DirectionGenerator:
    """Generator for seed-reproducible direction sets."""

    # Zero-norm draws are redrawn; this bounds the retries.
    MAX_REDRAWS = 100

    def __init__(self):
        """Initialize the Direction Generator."""
        pass

    def sample_directions(self, d: int, K: int, seed: int) -> DirectionSet:
        """
        Sample K directions uniformly on the unit sphere of R^d.

        Args:
            d (int): Dimension (>= 1)
            K (int): Number of directions (>= 1)
            seed (int): Seed; identical (d, K, seed) give identical vectors

        Returns:
            DirectionSet with a (K, d) array of unit vectors

        Raises:
            ParameterError: If d or K is not positive
        """
        if d < 1:
            raise ParameterError(f"Dimension d must be at least 1, got {d}")
        if K < 1:
            raise ParameterError(f"Number of directions K must be at least 1, got {K}")

        rng = stream(seed, STREAM_DIRECTIONS)
        gaussian = rng.standard_normal((K, d))
        norms = np.linalg.norm(gaussian, axis=1)

        for _ in range(self.MAX_REDRAWS):
            degenerate = norms == 0.0
            if not degenerate.any():
                break
            logger.debug("Redrawing %d zero-norm direction(s)", int(degenerate.sum()))
            gaussian[degenerate] = rng.standard_normal((int(degenerate.sum()), d))
            norms[degenerate] = np.linalg.norm(gaussian[degenerate], axis=1)
        else:
            raise RuntimeError(f"Failed to draw non-zero directions after {self.MAX_REDRAWS} attempts")

        return DirectionSet(gaussian / norms[:, None], seed)
