import pytest
import sys
import os
import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.core.errors import DegenerateBoxError, DimensionMismatchError, UnsupportedDepthNotionError
from src.core.metrics.closed_forms import ClosedForms
from src.core.metrics.data_depth_distance import DataDepthDistance
from src.core.types import IntegrationBox, MetricParams


class TestDataDepthDistance:

    def setup_method(self):
        """Setup for each test method."""
        self.distance = DataDepthDistance()
        rng = np.random.default_rng(0)
        self.X = rng.standard_normal((40, 2))
        self.Y = rng.standard_normal((30, 2)) + 1.0
        self.params = MetricParams(p=1, K=100, seed=2)

    def test_identical_clouds(self):
        """Test DD(X, X) is zero."""
        box = self.distance.default_box(self.X, self.X, mc_points=5000)
        assert self.distance.dd_distance(self.X, self.X, self.params, box).value == 0.0

    def test_symmetry_and_determinism(self):
        """Test swapping the clouds or repeating the call leaves the value unchanged."""
        box = self.distance.default_box(self.X, self.Y, mc_points=5000)
        forward = self.distance.dd_distance(self.X, self.Y, self.params, box)
        backward = self.distance.dd_distance(self.Y, self.X, self.params, box)
        again = self.distance.dd_distance(self.X, self.Y, self.params, box)
        assert forward.value == backward.value == again.value
        assert forward.value > 0
        assert forward.method == "dd"

    def test_one_dimensional_exact(self):
        """Test the Monte-Carlo estimate against exact 1-D integration."""
        X = np.arange(10.0)
        Y = X + 5
        box = IntegrationBox([-5.0], [20.0], mc_points=1_000_000)
        estimate = self.distance.dd_distance(X, Y, MetricParams(p=1, K=4, seed=0), box).value
        exact = ClosedForms().dd_1d_exact(X, Y, p=1)
        assert estimate == pytest.approx(exact, rel=0.01)

    def test_scaling(self):
        """Test scaling clouds and box by a scales the p=1 value by a."""
        X = np.random.default_rng(1).standard_normal(20)
        Y = X * 2 + 1
        params = MetricParams(p=1, K=4, seed=3)
        base = self.distance.dd_distance(X, Y, params, IntegrationBox([-8.0], [10.0], 20_000)).value
        scaled = self.distance.dd_distance(3 * X, 3 * Y, params, IntegrationBox([-24.0], [30.0], 20_000)).value
        assert scaled == pytest.approx(3 * base, rel=1e-3)

    def test_chunking_does_not_change_value(self):
        """Test the batch size of Monte-Carlo points does not matter."""
        box = self.distance.default_box(self.X, self.Y, mc_points=3000)
        reference = self.distance.dd_distance(self.X, self.Y, self.params, box).value
        small = DataDepthDistance(chunk_elements=100 * 7).dd_distance(self.X, self.Y, self.params, box).value
        assert small == pytest.approx(reference, rel=1e-12)

    def test_default_box(self):
        """Test the bounding box is widened by 10% per side."""
        X = np.array([[0.0, 1.0], [1.0, 1.0]])
        Y = np.array([[2.0, 1.0]])
        box = self.distance.default_box(X, Y, mc_points=10)
        assert np.allclose(box.lower, [-0.2, 0.5])
        assert np.allclose(box.upper, [2.2, 1.5])
        assert box.volume == pytest.approx(2.4)

    def test_projection_depth_rejected(self):
        """Test only the halfspace depth is supported."""
        with pytest.raises(UnsupportedDepthNotionError):
            self.distance.dd_distance(self.X, self.Y, MetricParams(depth_notion="projection"))

    def test_box_dimension_mismatch(self):
        """Test a box of the wrong dimension is rejected."""
        with pytest.raises(DimensionMismatchError):
            self.distance.dd_distance(self.X, self.Y, self.params, IntegrationBox([0.0], [1.0], 10))

    def test_degenerate_box(self):
        """Test a box without volume is rejected."""
        with pytest.raises(DegenerateBoxError):
            IntegrationBox([0.0, 0.0], [1.0, 0.0], 10)
