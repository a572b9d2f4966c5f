import pytest
import sys
import os
import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.core.errors import NonFiniteValueError, ParameterError, ParseError, RaggedRowError
from src.core.utilities.cloud_io_utility import MAGIC, CloudIOUtility


class TestCloudIOUtility:

    def setup_method(self):
        """Setup for each test method."""
        self.utility = CloudIOUtility()

    def _write(self, tmp_path, text, name="cloud.csv"):
        path = tmp_path / name
        path.write_text(text)
        return path

    def test_load_csv(self, tmp_path):
        """Test a two-line CSV."""
        cloud = self.utility.load_cloud(self._write(tmp_path, "0,1\n2,3"))
        assert cloud.tolist() == [[0.0, 1.0], [2.0, 3.0]]

    def test_load_csv_header(self, tmp_path):
        """Test a header line is skipped."""
        cloud = self.utility.load_cloud(self._write(tmp_path, "x,y\n0,1\n2,3\n"))
        assert cloud.shape == (2, 2)

    def test_load_partly_numeric_first_line(self, tmp_path):
        """Test a first line with a number in it is data, not a header."""
        with pytest.raises(ParseError) as info:
            self.utility.load_cloud(self._write(tmp_path, "0,abc\n2,3\n"))
        assert info.value.line == 1
        assert info.value.column == 2
        cloud = self.utility.load_cloud(self._write(tmp_path, "x1,x2\n2,3\n", "named.csv"))
        assert cloud.tolist() == [[2.0, 3.0]]

    def test_load_empty(self, tmp_path):
        """Test an empty file raises ParseError."""
        with pytest.raises(ParseError):
            self.utility.load_cloud(self._write(tmp_path, ""))

    def test_load_missing(self, tmp_path):
        """Test a missing file raises ParseError."""
        with pytest.raises(ParseError):
            self.utility.load_cloud(tmp_path / "absent.csv")

    def test_load_bad_number(self, tmp_path):
        """Test the location of an invalid entry is reported."""
        with pytest.raises(ParseError) as info:
            self.utility.load_cloud(self._write(tmp_path, "0,1\n2,x\n"))
        assert info.value.line == 2
        assert info.value.column == 2
        assert "line 2, column 2" in str(info.value)

    def test_load_non_finite(self, tmp_path):
        """Test NaN and infinite entries are rejected."""
        with pytest.raises(NonFiniteValueError):
            self.utility.load_cloud(self._write(tmp_path, "0,1\nnan,3\n"))
        with pytest.raises(NonFiniteValueError):
            self.utility.load_cloud(self._write(tmp_path, "0,inf\n", "inf.csv"))

    def test_load_ragged(self, tmp_path):
        """Test rows of different lengths are rejected."""
        with pytest.raises(RaggedRowError) as info:
            self.utility.load_cloud(self._write(tmp_path, "0,1\n2,3,4\n"))
        assert info.value.line == 2

    def test_binary_round_trip(self, tmp_path):
        """Test binary files reproduce values bit-exactly."""
        cloud = np.random.default_rng(0).standard_normal((17, 4))
        path = self.utility.save_cloud(cloud, tmp_path / "cloud.bin", "binary-f64")
        assert path.read_bytes()[:4] == MAGIC
        assert self.utility.detect_format(path) == "binary-f64"
        assert np.array_equal(self.utility.load_cloud(path), cloud)

    def test_csv_round_trip(self, tmp_path):
        """Test 17 significant digits reproduce doubles exactly."""
        cloud = np.random.default_rng(1).standard_normal((9, 3)) * 1e3
        path = self.utility.save_cloud(cloud, tmp_path / "cloud.csv", header=["a", "b", "c"])
        assert path.read_text().splitlines()[0] == "a,b,c"
        assert np.array_equal(self.utility.load_cloud(path), cloud)

    def test_binary_truncated(self, tmp_path):
        """Test a binary file shorter than its header declares."""
        path = tmp_path / "short.bin"
        self.utility.save_cloud(np.ones((3, 2)), path, "binary-f64")
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(ParseError):
            self.utility.load_cloud(path)

    def test_unknown_format(self, tmp_path):
        """Test unknown formats are rejected."""
        with pytest.raises(ParameterError):
            self.utility.save_cloud(np.ones((2, 2)), tmp_path / "x.parquet", "parquet")
        with pytest.raises(ParameterError):
            self.utility.load_cloud(self._write(tmp_path, "0,1\n"), "parquet")
