"""Synthetic Generator for pairs of point clouds.

Every generator is a pure function of its arguments: the seed fixes both
clouds. The second cloud of a pair is drawn from an independent sub-stream of
the same seed.
"""

import math
from typing import Tuple

import numpy as np
from sklearn.datasets import make_circles

from src.core.errors import ParameterError
from src.core.types import GeneratorSpec, PointCloud, Shift
from src.core.utilities.seed_utility import STREAM_SECOND_CLOUD, derive_seed, stream

CloudPair = Tuple[PointCloud, PointCloud]


class SyntheticGenerator:
    """Generator for the Gaussian, fragmented-hypercube, circles and Student-t settings."""

    def __init__(self):
        """Initialize the Synthetic Generator."""
        pass

    @staticmethod
    def fragment_map(points: np.ndarray) -> np.ndarray:
        """T(x) = x + 2 sign(x), element-wise, with sign(0) = 0."""
        points = np.asarray(points, dtype=np.float64)
        return points + 2.0 * np.sign(points)

    def gen_gaussian_pair(self, spec: GeneratorSpec) -> CloudPair:
        """
        X ~ N(0, I_d), Y ~ N(shift * 1_d, I_d), n points each.

        Args:
            spec (GeneratorSpec): family must be gaussian_pair

        Returns:
            Tuple (X, Y) of (n, d) arrays
        """
        if spec.family != "gaussian_pair":
            raise ParameterError(f"Expected a gaussian_pair spec, got {spec.family}")
        X = stream(spec.seed, 0).standard_normal((spec.n, spec.d))
        Y = stream(spec.seed, STREAM_SECOND_CLOUD).standard_normal((spec.n, spec.d)) + spec.shift_vector()
        return X, Y

    def gen_fragmented_hypercube(self, n: int, seed: int) -> CloudPair:
        """
        Uniform source on [-1, 1]^2 and the image of an independent draw under T.

        Every coordinate of the target lies in [-3, -2] U {0} U [2, 3].
        """
        if n < 1:
            raise ParameterError("n must be at least 1")
        X = stream(seed, 0).uniform(-1.0, 1.0, (n, 2))
        Y = self.fragment_map(stream(seed, STREAM_SECOND_CLOUD).uniform(-1.0, 1.0, (n, 2)))
        return X, Y

    def gen_circles(self, n: int, noise: float = 0.2, factor: float = 0.8, seed: int = 0) -> CloudPair:
        """
        Points on the unit circle and on the circle of radius ``factor``.

        Args:
            n (int): Points per circle
            noise (float): Standard deviation of the isotropic Gaussian noise
            factor (float): Inner radius, in (0, 1)
            seed (int): Random seed

        Returns:
            Tuple (outer, inner) of (n, 2) arrays
        """
        if n < 1:
            raise ParameterError("n must be at least 1")
        if noise < 0:
            raise ParameterError("noise must be non-negative")
        if not (0 < factor < 1):
            raise ParameterError("factor must lie in (0, 1)")
        points, labels = make_circles(
            n_samples=(n, n),
            shuffle=True,
            noise=noise,
            random_state=derive_seed(seed, 0),
            factor=factor,
        )
        return points[labels == 0], points[labels == 1]

    def gen_student_pair(self, d: int, n: int, dof: float, shift: Shift = 7.0, seed: int = 0) -> CloudPair:
        """
        Coordinate-wise i.i.d. Student-t(dof) clouds, the second one shifted by shift * 1_d.

        ``dof = inf`` gives standard Gaussian coordinates.
        """
        if d < 1 or n < 1:
            raise ParameterError("d and n must be at least 1")
        if not dof >= 1:
            raise ParameterError(f"dof must be >= 1 (or inf), got {dof}")

        def draw(rng: np.random.Generator) -> np.ndarray:
            if math.isinf(dof):
                return rng.standard_normal((n, d))
            return rng.standard_t(dof, (n, d))

        X = draw(stream(seed, 0))
        Y = draw(stream(seed, STREAM_SECOND_CLOUD)) + np.asarray(shift, dtype=np.float64)
        return X, Y

    def generate(self, spec: GeneratorSpec) -> CloudPair:
        """Generate the pair described by ``spec``."""
        if spec.family == "gaussian_pair":
            return self.gen_gaussian_pair(spec)
        if spec.family == "fragmented_hypercube":
            return self.gen_fragmented_hypercube(spec.n, spec.seed)
        if spec.family == "circles":
            return self.gen_circles(spec.n, spec.noise, spec.factor, spec.seed)
        return self.gen_student_pair(spec.d, spec.n, spec.dof, spec.shift_vector(), spec.seed)
