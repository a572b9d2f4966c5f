import pytest
import sys
import os
import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.core.depth.projection_depth import ProjectionDepth
from src.core.generators.direction_generator import DirectionGenerator
from src.core.types import ProjectionMatrix
from src.core.utilities.projection_utility import ProjectionUtility


class TestProjectionDepth:

    def setup_method(self):
        """Setup for each test method."""
        self.depth = ProjectionDepth()
        self.projection = ProjectionUtility()
        self.directions = DirectionGenerator()

    def test_projection_depths_1d(self):
        """Test {0, 1, 2}: median 1, MAD 1."""
        dirs = self.directions.sample_directions(1, 4, 0)
        M = self.projection.project(np.array([[0.0], [1.0], [2.0]]), dirs)
        profile = self.depth.projection_depths(M)
        assert np.allclose(profile.values, [0.5, 1.0, 0.5])
        assert profile.notion == "projection"

    def test_projection_depths_identical_points(self):
        """Test identical points all have depth 1."""
        M = ProjectionMatrix(np.full((5, 4), 2.5))
        assert np.array_equal(self.depth.projection_depths(M).values, np.ones(4))

    def test_projection_depths_degenerate_mad(self):
        """Test a zero-MAD direction sends off-median points to depth 0."""
        M = ProjectionMatrix(np.array([[1.0, 1.0, 1.0, 4.0]]))
        assert np.array_equal(self.depth.projection_depths(M).values, [1.0, 1.0, 1.0, 0.0])

    def test_projection_depths_even_median(self):
        """Test the even-length median is the midpoint of the central values."""
        M = ProjectionMatrix(np.array([[0.0, 1.0, 3.0, 4.0]]))
        # median 2, deviations (2, 1, 1, 2), MAD 1.5
        assert np.allclose(self.depth.projection_depths(M).values, [1 / (1 + 2 / 1.5), 0.6, 0.6, 1 / (1 + 2 / 1.5)])

    def test_projection_depths_range_and_monotone(self):
        """Test depths lie in (0, 1] and decrease with distance from the median."""
        values = np.array([[0.0, 1.0, 2.0, 5.0, 9.0]])
        profile = self.depth.projection_depths(ProjectionMatrix(values))
        assert np.all((profile.values > 0) & (profile.values <= 1))
        order = np.argsort(np.abs(values[0] - np.median(values[0])))
        assert np.all(np.diff(profile.values[order]) <= 0)

    def test_projection_depths_worst_direction(self):
        """Test the minimum over directions equals 1 / (1 + max outlyingness)."""
        X = np.random.default_rng(0).standard_normal((25, 3))
        M = self.projection.project(X, self.directions.sample_directions(3, 60, 1))
        V = self.depth.outlyingness(M)
        assert np.allclose(self.depth.projection_depths(M).values, (1.0 / (1.0 + V)).min(axis=0))
