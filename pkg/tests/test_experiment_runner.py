import pytest
import sys
import os
import math
from dataclasses import replace

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from src.core.bench.experiment_config import (
    HEAVY_TAIL_BASELINE,
    ExperimentConfig,
    MethodSpec,
    default_config,
)
from src.core.bench.experiment_runner import ExperimentRunner, relative_error
from src.core.errors import ConfigError, DegenerateBaselineError
from src.core.types import ContaminationSpec, GeneratorSpec, MetricParams


def dr_method(epsilon=0.2):
    return MethodSpec("dr", MetricParams(epsilon=epsilon, K=50, n_alpha=5))


class TestExperimentRunner:

    def setup_method(self):
        """Setup for each test method."""
        self.runner = ExperimentRunner(record_timing=False)
        self.approx = ExperimentConfig(
            experiment="approx_quality",
            methods=(dr_method(0.0), MethodSpec("maxsw", MetricParams(K=50))),
            generator=GeneratorSpec("gaussian_pair", d=2, n=100, shift=7.0),
            repetitions=2,
            base_seed=3,
            dims=(2,),
            direction_counts=(50,),
            n_alphas=(5,),
        )
        self.robustness = ExperimentConfig(
            experiment="robustness_outliers",
            methods=(dr_method(0.2), MethodSpec("sw", MetricParams(K=50))),
            generator=GeneratorSpec("gaussian_pair", d=2, n=60, shift=10.0),
            contamination=ContaminationSpec("uniform_box", box_lower=-10.0, box_upper=20.0),
            fractions=(0.0, 0.1),
            repetitions=3,
            base_seed=5,
        )

    def test_relative_error(self):
        """Test the relative error of a contaminated value."""
        assert relative_error(12.0, 10.0) == pytest.approx(0.2)
        assert relative_error(10.0, 10.0) == 0.0
        assert relative_error(8.0, 10.0) == pytest.approx(0.2)

    def test_relative_error_degenerate(self):
        """Test a zero baseline is rejected."""
        with pytest.raises(DegenerateBaselineError):
            relative_error(1.0, 0.0)

    def test_approx_quality(self):
        """Test rows of the approximation-quality study."""
        rows = self.runner.run(self.approx)
        assert [row.method for row in rows] == ["dr_eps0", "maxsw"]
        for row in rows:
            assert row.baseline == "norm_of_mean_shift"
            assert row.repetitions == 2
            assert row.K == 50
            assert row.seconds_per_eval == 0.0
            assert 0.0 <= row.mean_relative_error < 0.5

    def test_reproducible(self):
        """Test identical configurations give identical rows."""
        assert self.runner.run(self.approx) == self.runner.run(self.approx)

    def test_thread_independent(self):
        """Test rows do not depend on the number of workers."""
        threaded = ExperimentRunner(workers=3, record_timing=False)
        assert threaded.run(self.robustness) == self.runner.run(self.robustness)

    def test_robustness_outliers(self):
        """Test a zero fraction leaves every distance unchanged."""
        rows = self.runner.run(self.robustness)
        assert len(rows) == 4
        assert [(row.fraction, row.method) for row in rows] == [
            (0.0, "dr_eps0.2"), (0.0, "sw"), (0.1, "dr_eps0.2"), (0.1, "sw")]
        for row in rows[:2]:
            assert row.mean_relative_error == 0.0
            assert row.std_relative_error == 0.0
        for row in rows[2:]:
            assert row.mean_relative_error > 0.0
            assert row.baseline == "clean_pair"

    def test_heavy_tails(self):
        """Test the heavy-tail rows and their Gaussian baseline."""
        config = ExperimentConfig(
            experiment="heavy_tails",
            methods=(dr_method(0.2), MethodSpec("sw", MetricParams(K=20))),
            generator=GeneratorSpec("student_pair", d=3, n=80, shift=7.0),
            repetitions=2,
            direction_counts=(20,),
            dofs=(1.0, math.inf),
        )
        rows = self.runner.run(config)
        assert [(row.dof, row.method) for row in rows] == [
            (1.0, "dr_eps0.2"), (1.0, "sw"), (math.inf, "dr_eps0.2"), (math.inf, "sw")]
        for row in rows:
            assert row.baseline == HEAVY_TAIL_BASELINE
            assert row.K == 20
            assert math.isfinite(row.mean_relative_error)
            assert row.mean_relative_error >= 0.0
        # Cauchy samples move SW far more than a fresh Gaussian draw
        assert rows[1].mean_relative_error > rows[3].mean_relative_error

    def test_timing(self):
        """Test timing rows carry medians and growth ratios."""
        config = ExperimentConfig(
            experiment="timing",
            methods=(MethodSpec("dr", MetricParams(epsilon=0.2, K=20, n_alpha=5)),),
            generator=GeneratorSpec("gaussian_pair", d=2, n=50, shift=1.0),
            repetitions=1,
            sample_sizes=(50, 100),
        )
        rows = self.runner.run(config)
        assert [row.n for row in rows] == [50, 100]
        assert rows[0].growth_ratio is None
        assert rows[1].growth_ratio > 0
        assert all(row.median_seconds > 0 for row in rows)

    def test_failing_method(self):
        """Test a failing method yields NaN and a note instead of aborting."""
        config = replace(self.approx, methods=(MethodSpec("w1d"), MethodSpec("maxsw", MetricParams(K=50))))
        rows = self.runner.run(config)
        assert math.isnan(rows[0].mean_relative_error)
        assert rows[0].note.startswith("DimensionMismatchError")
        assert math.isfinite(rows[1].mean_relative_error)

    def test_wrong_experiment(self):
        """Test each study checks the configuration it receives."""
        with pytest.raises(ConfigError):
            self.runner.run_timing(default_config("approx"))
        with pytest.raises(ConfigError):
            self.runner.run_approx_quality(replace(self.approx, generator=GeneratorSpec("circles")))
