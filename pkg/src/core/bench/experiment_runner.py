"""Experiment Runner for the approximation-quality, robustness, heavy-tail and timing studies.

Every repetition is an independent task whose seeds derive from
(base seed, cell, repetition, stream), so rows are reproducible bit-exactly
and do not depend on how many worker threads run the repetitions.
"""

import logging
import math
import time
from dataclasses import replace
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.core.bench.experiment_config import (
    HEAVY_TAIL_BASELINE,
    BenchRow,
    ExperimentConfig,
    MethodSpec,
    TimingRow,
    describe,
)
from src.core.config import DEFAULT_CHUNK_ELEMENTS
from src.core.errors import ConfigError, DegenerateBaselineError
from src.core.generators.contamination_generator import ContaminationGenerator
from src.core.generators.synthetic_generator import SyntheticGenerator
from src.core.metrics.distance_dispatcher import DistanceDispatcher
from src.core.types import MetricParams, PointCloud
from src.core.utilities.parallel_utility import ordered_map
from src.core.utilities.seed_utility import derive_seed

logger = logging.getLogger(__name__)

# Seed streams of one repetition.
SEED_DATA = 0
SEED_CONTAMINATION = 1
SEED_BASELINE = 2
SEED_METHOD = 10

# (relative error, seconds, failure message)
Outcome = Tuple[float, float, Optional[str]]


def relative_error(contaminated_value: float, clean_value: float) -> float:
    """
    |contaminated - clean| / clean.

    Raises:
        DegenerateBaselineError: If clean_value is not positive
    """
    if not clean_value > 0:
        raise DegenerateBaselineError(f"Relative error needs a positive baseline, got {clean_value}")
    return abs(contaminated_value - clean_value) / clean_value


class ExperimentRunner:
    """Runs an ExperimentConfig and aggregates repetitions into rows."""

    def __init__(self, workers: int = 1, chunk_elements: int = DEFAULT_CHUNK_ELEMENTS,
                 record_timing: bool = True):
        self.workers = workers
        self.record_timing = record_timing
        # repetitions run in parallel, each distance single-threaded
        self._dispatcher = DistanceDispatcher(chunk_elements, workers=1)
        self._synthetic = SyntheticGenerator()
        self._contamination = ContaminationGenerator()

    def _evaluate(self, spec: MethodSpec, X: PointCloud, Y: PointCloud,
                  params: MetricParams) -> Tuple[float, float]:
        start = time.perf_counter()
        value = self._dispatcher.compute(spec.method, X, Y, params).value
        return value, time.perf_counter() - start

    def _row(self, config: ExperimentConfig, spec: MethodSpec, outcomes: Sequence[Outcome],
             d: int, params: MetricParams, **extra) -> BenchRow:
        failures = [message for _, _, message in outcomes if message is not None]
        row = BenchRow(
            experiment=config.experiment,
            method=spec.label,
            d=d,
            K=params.K,
            n_alpha=params.n_alpha,
            epsilon=params.epsilon,
            repetitions=len(outcomes),
            **extra,
        )
        if failures:
            logger.warning("%s failed in %d of %d repetition(s): %s",
                           spec.label, len(failures), len(outcomes), failures[0])
            row.mean_relative_error = math.nan
            row.std_relative_error = math.nan
            row.note = failures[0]
            return row
        errors = np.array([error for error, _, _ in outcomes])
        row.mean_relative_error = float(np.mean(errors))
        row.std_relative_error = float(np.std(errors, ddof=1)) if errors.size > 1 else 0.0
        if self.record_timing:
            row.seconds_per_eval = float(np.median([seconds for _, seconds, _ in outcomes]))
        return row

    def _compare(self, spec: MethodSpec, params: MetricParams, pair: Tuple[PointCloud, PointCloud],
                 baseline: float) -> Outcome:
        try:
            value, seconds = self._evaluate(spec, pair[0], pair[1], params)
            return relative_error(value, baseline), seconds, None
        except ValueError as e:
            return math.nan, 0.0, f"{type(e).__name__}: {e}"

    def _method_params(self, config: ExperimentConfig, spec: MethodSpec, index: int,
                       *keys: int, **overrides) -> MetricParams:
        seed = derive_seed(config.base_seed, *keys, SEED_METHOD + index)
        return replace(spec.params, seed=seed, **overrides)

    def run_approx_quality(self, config: ExperimentConfig) -> List[BenchRow]:
        """
        Relative error of every method against the exact distance between two translated Gaussians.

        For identity covariances the true value is the norm of the mean shift, for
        DR_{2,0} and max-sliced W alike.
        """
        if config.experiment != "approx_quality":
            raise ConfigError(f"Expected an approx_quality configuration, got {config.experiment}")
        if config.generator.family != "gaussian_pair":
            raise ConfigError("The approximation-quality study needs the gaussian_pair generator")

        dims = config.dims or (config.generator.d,)
        direction_counts = config.direction_counts or tuple(sorted({m.params.K for m in config.methods}))
        n_alphas = config.n_alphas or tuple(sorted({m.params.n_alpha for m in config.methods}))

        rows = []
        for cell, (d, K, n_alpha) in enumerate(product(dims, direction_counts, n_alphas)):
            generator = replace(config.generator, d=d)
            target = float(np.linalg.norm(generator.shift_vector()))
            if not target > 0:
                raise DegenerateBaselineError("The Gaussian shift must be non-zero")
            logger.info("approx_quality cell %d: d=%d, K=%d, n_alpha=%d", cell, d, K, n_alpha)

            def repetition(rep: int) -> List[Outcome]:
                pair = self._synthetic.generate(
                    replace(generator, seed=derive_seed(config.base_seed, cell, rep, SEED_DATA)))
                return [
                    self._compare(spec, self._method_params(config, spec, i, cell, rep, K=K, n_alpha=n_alpha),
                                  pair, target)
                    for i, spec in enumerate(config.methods)
                ]

            results = ordered_map(repetition, range(config.repetitions), self.workers)
            for i, spec in enumerate(config.methods):
                params = replace(spec.params, K=K, n_alpha=n_alpha)
                rows.append(self._row(config, spec, [r[i] for r in results], d, params,
                                      baseline="norm_of_mean_shift"))
        return rows

    def run_robustness_outliers(self, config: ExperimentConfig) -> List[BenchRow]:
        """
        Relative change of every distance when a fraction of the points is replaced by outliers.

        Clean and contaminated distances of one repetition share the data and
        the direction seed, so a zero fraction yields a zero error.
        """
        if config.experiment != "robustness_outliers":
            raise ConfigError(f"Expected a robustness_outliers configuration, got {config.experiment}")
        d = config.generator.d if config.generator.family in ("gaussian_pair", "student_pair") else 2
        logger.info("robustness_outliers: fractions=%s", list(config.fractions))

        def repetition(rep: int) -> List[List[Outcome]]:
            X, Y = self._synthetic.generate(
                replace(config.generator, seed=derive_seed(config.base_seed, rep, SEED_DATA)))
            contamination_seed = derive_seed(config.base_seed, rep, SEED_CONTAMINATION)
            all_params = [self._method_params(config, spec, i, rep) for i, spec in enumerate(config.methods)]

            clean = []
            for spec, params in zip(config.methods, all_params):
                try:
                    clean.append((self._evaluate(spec, X, Y, params)[0], None))
                except ValueError as e:
                    clean.append((math.nan, f"{type(e).__name__}: {e}"))

            by_fraction = []
            for fraction in config.fractions:
                contamination = replace(config.contamination, fraction=fraction, seed=contamination_seed)
                pair = self._contamination.contaminate_pair(X, Y, contamination, config.contaminate_both)
                outcomes = []
                for spec, params, (clean_value, failure) in zip(config.methods, all_params, clean):
                    if failure is not None:
                        outcomes.append((math.nan, 0.0, failure))
                    else:
                        outcomes.append(self._compare(spec, params, pair, clean_value))
                by_fraction.append(outcomes)
            return by_fraction

        results = ordered_map(repetition, range(config.repetitions), self.workers)
        rows = []
        for f, fraction in enumerate(config.fractions):
            for i, spec in enumerate(config.methods):
                rows.append(self._row(config, spec, [r[f][i] for r in results], d, spec.params,
                                      fraction=fraction, baseline="clean_pair"))
        return rows

    def run_heavy_tails(self, config: ExperimentConfig) -> List[BenchRow]:
        """
        Relative error of every distance on Student-t pairs against the Gaussian pair.

        The baseline is the distance between an independent Gaussian (dof = inf)
        pair with the same shift, drawn in every repetition.
        """
        if config.experiment != "heavy_tails":
            raise ConfigError(f"Expected a heavy_tails configuration, got {config.experiment}")
        generator = config.generator
        shift = generator.shift_vector()
        dofs = config.dofs or (generator.dof,)
        direction_counts = config.direction_counts or tuple(sorted({m.params.K for m in config.methods}))
        logger.info("heavy_tails: dofs=%s, K=%s", list(dofs), list(direction_counts))

        def repetition(rep: int) -> List[List[List[Outcome]]]:
            baseline_pair = self._synthetic.gen_student_pair(
                generator.d, generator.n, math.inf, shift,
                derive_seed(config.base_seed, rep, SEED_BASELINE))
            heavy_pairs = [
                self._synthetic.gen_student_pair(
                    generator.d, generator.n, dof, shift,
                    derive_seed(config.base_seed, rep, SEED_DATA, j))
                for j, dof in enumerate(dofs)
            ]
            by_count = []
            for c, K in enumerate(direction_counts):
                per_dof = [[] for _ in dofs]
                for i, spec in enumerate(config.methods):
                    params = self._method_params(config, spec, i, rep, c, K=K)
                    try:
                        baseline = self._evaluate(spec, *baseline_pair, params)[0]
                    except ValueError as e:
                        for outcomes in per_dof:
                            outcomes.append((math.nan, 0.0, f"{type(e).__name__}: {e}"))
                        continue
                    for j, pair in enumerate(heavy_pairs):
                        per_dof[j].append(self._compare(spec, params, pair, baseline))
                by_count.append(per_dof)
            return by_count

        results = ordered_map(repetition, range(config.repetitions), self.workers)
        rows = []
        for j, dof in enumerate(dofs):
            for c, K in enumerate(direction_counts):
                for i, spec in enumerate(config.methods):
                    rows.append(self._row(config, spec, [r[c][j][i] for r in results], generator.d,
                                          replace(spec.params, K=K), dof=dof, baseline=HEAVY_TAIL_BASELINE))
        return rows

    def run_timing(self, config: ExperimentConfig) -> List[TimingRow]:
        """
        Median wall-clock time of every method for growing sample sizes.

        Each size is timed ``timing_repeats`` times; ``growth_ratio`` is the
        median of one size over the median of the previous size.
        """
        if config.experiment != "timing":
            raise ConfigError(f"Expected a timing configuration, got {config.experiment}")
        sizes = config.sample_sizes or (config.generator.n,)
        rows = []
        for i, spec in enumerate(config.methods):
            previous = None
            for cell, n in enumerate(sizes):
                X, Y = self._synthetic.generate(
                    replace(config.generator, n=n, seed=derive_seed(config.base_seed, cell, SEED_DATA)))
                params = self._method_params(config, spec, i, cell)
                seconds = [self._evaluate(spec, X, Y, params)[1] for _ in range(config.timing_repeats)]
                median = float(np.median(seconds))
                logger.info("timing %s: n=%d, median=%.4fs", spec.label, n, median)
                rows.append(TimingRow(
                    method=spec.label,
                    n=n,
                    d=X.shape[1],
                    K=params.K,
                    n_alpha=params.n_alpha,
                    median_seconds=median,
                    growth_ratio=median / previous if previous else None,
                ))
                previous = median
        return rows

    def run(self, config: ExperimentConfig) -> list:
        """Run the experiment named by ``config``."""
        for line in describe(config):
            logger.info(line)
        if config.experiment == "approx_quality":
            return self.run_approx_quality(config)
        if config.experiment == "robustness_outliers":
            return self.run_robustness_outliers(config)
        if config.experiment == "heavy_tails":
            return self.run_heavy_tails(config)
        return self.run_timing(config)
