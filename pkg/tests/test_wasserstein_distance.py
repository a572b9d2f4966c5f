import pytest
import sys
import os
import numpy as np
import ot
from scipy import stats

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.core.errors import DimensionMismatchError, ParameterError
from src.core.generators.direction_generator import DirectionGenerator
from src.core.metrics.wasserstein_distance import WassersteinDistance


class TestWassersteinDistance:

    def setup_method(self):
        """Setup for each test method."""
        self.distance = WassersteinDistance()
        self.directions = DirectionGenerator()

    def test_wasserstein_1d_translation(self):
        """Test {0, 1} vs {1, 2} gives 1."""
        assert self.distance.wasserstein_1d([0.0, 1.0], [1.0, 2.0], p=1) == pytest.approx(1.0)

    def test_wasserstein_1d_identical(self):
        """Test identical samples give 0 regardless of order."""
        x = np.random.default_rng(0).standard_normal(20)
        assert self.distance.wasserstein_1d(x, x[::-1], p=2) == 0.0

    def test_wasserstein_1d_matches_scipy(self):
        """Test p = 1 against the cdf-area formula for unequal sizes."""
        rng = np.random.default_rng(1)
        for _ in range(20):
            x = rng.standard_normal(int(rng.integers(3, 50)))
            y = rng.exponential(size=int(rng.integers(3, 50)))
            assert self.distance.wasserstein_1d(x, y, p=1) == pytest.approx(stats.wasserstein_distance(x, y))

    def test_wasserstein_1d_unequal_sizes_consistent(self):
        """Test duplicating every point of a sample leaves W_p unchanged."""
        rng = np.random.default_rng(2)
        x = rng.standard_normal(15)
        y = rng.standard_normal(15) + 0.5
        assert self.distance.wasserstein_1d(np.repeat(x, 2), y, p=2) == pytest.approx(
            self.distance.wasserstein_1d(x, y, p=2))

    def test_sliced_matches_pot_projections(self):
        """Test both slicing modes against POT on the same projection directions."""
        rng = np.random.default_rng(8)
        X = rng.standard_normal((30, 3))
        Y = rng.standard_normal((45, 3)) * 1.5 + 0.5
        dirs = self.directions.sample_directions(3, 40, 2)
        projections = dirs.directions.T
        expected_mean = ot.sliced_wasserstein_distance(X, Y, p=2, projections=projections)
        expected_max = ot.max_sliced_wasserstein_distance(X, Y, p=2, projections=projections)
        assert self.distance.sliced_wasserstein(X, Y, p=2, directions=dirs) == pytest.approx(expected_mean)
        assert self.distance.sliced_wasserstein(X, Y, p=2, mode="max", directions=dirs) == pytest.approx(expected_max)

    def test_sliced_identical(self):
        """Test SW(X, X) is zero in both modes."""
        X = np.random.default_rng(3).standard_normal((30, 3))
        assert self.distance.sliced_wasserstein(X, X, K=50) == 0.0
        assert self.distance.sliced_wasserstein(X, X, K=50, mode="max") == 0.0

    def test_sliced_one_dimension(self):
        """Test in 1-D the sliced distance equals W_p."""
        rng = np.random.default_rng(4)
        x = rng.standard_normal((25, 1))
        y = rng.standard_normal((35, 1)) * 2
        expected = self.distance.wasserstein_1d(x[:, 0], y[:, 0], p=2)
        assert self.distance.sliced_wasserstein(x, y, p=2, K=7) == pytest.approx(expected)
        assert self.distance.sliced_wasserstein(x, y, p=2, K=7, mode="max") == pytest.approx(expected)

    def test_sliced_max_dominates_mean(self):
        """Test max-sliced is at least sliced on shared directions."""
        rng = np.random.default_rng(5)
        X = rng.standard_normal((40, 4))
        Y = rng.standard_normal((50, 4)) + 1
        dirs = self.directions.sample_directions(4, 60, 0)
        mean = self.distance.sliced_wasserstein(X, Y, directions=dirs)
        top = self.distance.sliced_wasserstein(X, Y, mode="max", directions=dirs)
        assert top >= mean

    def test_sliced_matches_per_direction(self):
        """Test the blocked computation against a loop over directions."""
        rng = np.random.default_rng(6)
        X = rng.standard_normal((20, 3))
        Y = rng.standard_normal((33, 3))
        dirs = self.directions.sample_directions(3, 15, 1)
        powers = [self.distance.wasserstein_1d(X @ u, Y @ u, p=2) ** 2 for u in dirs.directions]
        small = WassersteinDistance(chunk_elements=66)
        assert small.sliced_wasserstein(X, Y, p=2, directions=dirs) == pytest.approx(np.mean(powers) ** 0.5)

    def test_sliced_deterministic(self):
        """Test the same seed gives the same value."""
        rng = np.random.default_rng(7)
        X = rng.standard_normal((20, 2))
        Y = rng.standard_normal((20, 2)) + 2
        assert self.distance.sliced_wasserstein(X, Y, K=30, seed=4) == self.distance.sliced_wasserstein(X, Y, K=30, seed=4)

    def test_invalid_arguments(self):
        """Test bad orders, modes, dimensions and empty samples."""
        X = np.zeros((3, 2))
        with pytest.raises(ParameterError):
            self.distance.wasserstein_1d([0.0], [1.0], p=0.5)
        with pytest.raises(ParameterError):
            self.distance.wasserstein_1d([], [1.0])
        with pytest.raises(ParameterError):
            self.distance.sliced_wasserstein(X, X, mode="median")
        with pytest.raises(DimensionMismatchError):
            self.distance.sliced_wasserstein(X, np.zeros((3, 3)))
