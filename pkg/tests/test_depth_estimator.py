import pytest
import sys
import os
import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.core.depth.depth_estimator import DepthEstimator, direction_blocks
from src.core.errors import ParameterError, UnsupportedDepthNotionError
from src.core.generators.direction_generator import DirectionGenerator
from src.core.types import DepthParams, MetricParams


class TestDepthEstimator:

    def setup_method(self):
        """Setup for each test method."""
        self.directions = DirectionGenerator()
        self.X = np.random.default_rng(0).standard_normal((50, 3))
        self.dirs = self.directions.sample_directions(3, 97, 5)

    def test_direction_blocks_cover(self):
        """Test blocks partition the directions in order."""
        blocks = direction_blocks(10, 4, 12)
        assert blocks == [(0, 3), (3, 6), (6, 9), (9, 10)]

    def test_direction_blocks_minimum_one_row(self):
        """Test a tiny budget still yields one direction per block."""
        assert direction_blocks(3, 100, 1) == [(0, 1), (1, 2), (2, 3)]

    @pytest.mark.parametrize("notion", ["halfspace", "projection"])
    def test_chunking_does_not_change_depths(self, notion):
        """Test blocked and unblocked estimates are identical."""
        whole = DepthEstimator(notion, chunk_elements=1 << 30).estimate(self.X, self.dirs)
        blocked = DepthEstimator(notion, chunk_elements=50 * 7).estimate(self.X, self.dirs)
        assert np.array_equal(whole.values, blocked.values)

    def test_threads_do_not_change_depths(self):
        """Test worker threads give the same result as a single thread."""
        serial = DepthEstimator("halfspace", chunk_elements=500).estimate(self.X, self.dirs)
        parallel = DepthEstimator("halfspace", chunk_elements=500, workers=4).estimate(self.X, self.dirs)
        assert np.array_equal(serial.values, parallel.values)

    def test_estimate_with_projections(self):
        """Test the projection matrix is returned alongside the depths."""
        profile, M = DepthEstimator("halfspace").estimate_with_projections(self.X, self.dirs)
        assert M.values.shape == (97, 50)
        assert profile.n == 50
        assert profile.K == 97

    def test_unknown_notion(self):
        """Test an unknown notion is rejected."""
        with pytest.raises(UnsupportedDepthNotionError):
            DepthEstimator("zonoid")

    def test_invalid_chunk(self):
        """Test a non-positive chunk budget is rejected."""
        with pytest.raises(ParameterError):
            DepthEstimator("halfspace", chunk_elements=0)

    def test_from_metric_params(self):
        """Test an estimator built from distance parameters uses their notion."""
        params = MetricParams(depth_notion="projection", K=97, seed=5).depth_params()
        assert params == DepthParams("projection", 97, 5)
        estimator = DepthEstimator.from_params(params, chunk_elements=300, workers=2)
        assert estimator.notion == "projection"
        expected = DepthEstimator("projection").estimate(self.X, self.dirs)
        assert np.array_equal(estimator.estimate(self.X, self.dirs).values, expected.values)

    def test_depth_params_validation(self):
        """Test depth parameters reject unknown notions and empty direction sets."""
        with pytest.raises(ParameterError):
            DepthParams(notion="zonoid")
        with pytest.raises(ParameterError):
            DepthParams(K=0)
