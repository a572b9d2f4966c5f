import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.core.bench.invariant_suite import InvariantSuite


class TestInvariantSuite:

    def setup_method(self):
        """Setup for each test method."""
        self.suite = InvariantSuite(seed=0)

    def test_all_checks_pass(self):
        """Test every check passes on the default seed."""
        results = self.suite.run()
        assert len(results) == len(self.suite.checks())
        assert all(r.passed for r in results), [r for r in results if not r.passed]

    def test_check_names_in_order(self):
        """Test results follow the order of the check list."""
        names = [name for name, _ in self.suite.checks()]
        assert [r.name for r in self.suite.run()] == names

    def test_raising_check_counts_as_failed(self, monkeypatch):
        """Test a check raising any exception is recorded as a failure."""
        def broken():
            raise RuntimeError("lost precision")
        monkeypatch.setattr(self.suite, "check_dd_identity", broken)
        results = {r.name: r for r in self.suite.run()}
        assert not results["dd_identity"].passed
        assert results["dd_identity"].detail == "RuntimeError: lost precision"
        assert results["closed_form_1d"].passed
