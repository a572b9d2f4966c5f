"""Fast seeded invariant checks run by ``selftest``.

Each check returns a ``CheckResult``; a check that raises counts as failed
with the exception message as detail.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from src.core.depth.depth_estimator import DepthEstimator
from src.core.depth.exact_depth import ExactDepth
from src.core.generators.direction_generator import DirectionGenerator
from src.core.metrics.closed_forms import ClosedForms
from src.core.metrics.data_depth_distance import DataDepthDistance
from src.core.metrics.depth_region_distance import DepthRegionDistance
from src.core.metrics.wasserstein_distance import WassersteinDistance
from src.core.types import DirectionSet, MetricParams
from src.core.utilities.projection_utility import ProjectionUtility
from src.core.utilities.seed_utility import stream

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


class InvariantSuite:
    """Collection of invariant checks over small seeded inputs."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._directions = DirectionGenerator()
        self._projection = ProjectionUtility()
        self._exact = ExactDepth()
        self._closed = ClosedForms()
        self._dr = DepthRegionDistance()
        self._dd = DataDepthDistance()
        self._wasserstein = WassersteinDistance()

    def _rng(self, key: int) -> np.random.Generator:
        return stream(self.seed, 100 + key)

    def check_direction_norms(self) -> Tuple[bool, str]:
        dirs = self._directions.sample_directions(7, 500, self.seed)
        error = float(np.max(np.abs(np.linalg.norm(dirs.directions, axis=1) - 1.0)))
        return error <= 1e-12, f"max norm error {error:.3g}"

    def check_projection_oracle(self) -> Tuple[bool, str]:
        X = self._rng(1).standard_normal((30, 4))
        dirs = self._directions.sample_directions(4, 25, self.seed)
        M = self._projection.project(X, dirs).values
        expected = np.array([[sum(u[j] * x[j] for j in range(4)) for x in X] for u in dirs.directions])
        error = float(np.max(np.abs(M - expected)))
        return error <= 1e-12, f"max deviation {error:.3g}"

    def check_support_monotone(self) -> Tuple[bool, str]:
        X = self._rng(2).standard_normal((40, 3))
        M = self._projection.project(X, self._directions.sample_directions(3, 50, self.seed))
        smaller = self._projection.support_values(M, np.arange(10)).h
        larger = self._projection.support_values(M, np.arange(25)).h
        return bool(np.all(smaller <= larger)), "support of a subset never exceeds the superset"

    def check_depth_over_approximation(self) -> Tuple[bool, str]:
        rng = self._rng(3)
        estimator = DepthEstimator("halfspace")
        worst = np.inf
        for trial in range(20):
            X = rng.standard_normal((int(rng.integers(3, 16)), 2))
            dirs = self._directions.sample_directions(2, 2000, self.seed + trial)
            gap = estimator.estimate(X, dirs).values - self._exact.exact_halfspace_depths_2d(X)
            worst = min(worst, float(gap.min()))
        return worst >= -TOLERANCE, f"smallest estimate minus exact depth {worst:.3g}"

    def check_dr_identity_symmetry(self) -> Tuple[bool, str]:
        rng = self._rng(4)
        X = rng.standard_normal((60, 3))
        Y = rng.standard_normal((80, 3)) + 1.0
        params = MetricParams(p=2, epsilon=0.05, n_alpha=15, K=200, seed=self.seed)
        self_distance = self._dr.dr_distance(X, X, params).value
        forward = self._dr.dr_distance(X, Y, params).value
        backward = self._dr.dr_distance(Y, X, params).value
        return self_distance == 0.0 and forward == backward, \
            f"DR(X,X)={self_distance:.3g}, DR(X,Y)-DR(Y,X)={forward - backward:.3g}"

    def check_dr_triangle(self) -> Tuple[bool, str]:
        rng = self._rng(5)
        X, Y, Z = (rng.standard_normal((50, 2)) + shift for shift in (0.0, 1.0, 2.5))
        params = MetricParams(p=2, epsilon=0.05, n_alpha=20, K=300, seed=self.seed,
                              alpha_mode="grid", alpha_upper=0.3)
        dirs = self._directions.sample_directions(2, params.K, self.seed)
        xy = self._dr.dr_distance(X, Y, params, dirs).value
        yz = self._dr.dr_distance(Y, Z, params, dirs).value
        xz = self._dr.dr_distance(X, Z, params, dirs).value
        return xz <= xy + yz + TOLERANCE, f"{xz:.6g} <= {xy:.6g} + {yz:.6g}"

    def check_dr_isometry(self) -> Tuple[bool, str]:
        rng = self._rng(6)
        X = rng.standard_normal((40, 3))
        Y = rng.standard_normal((40, 3)) + 0.5
        R, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        b = rng.standard_normal(3)
        params = MetricParams(p=2, epsilon=0.1, n_alpha=10, K=100, seed=self.seed)
        dirs = self._directions.sample_directions(3, params.K, self.seed)
        moved = DirectionSet(dirs.directions @ R.T)
        original = self._dr.dr_distance(X, Y, params, dirs).value
        transformed = self._dr.dr_distance(X @ R.T + b, Y @ R.T + b, params, moved).value
        gap = abs(original - transformed)
        return gap <= TOLERANCE, f"difference {gap:.3g}"

    def check_closed_form_1d(self) -> Tuple[bool, str]:
        dr = self._closed.dr_1d_closed_form([0.0, 2.0], [1.0, 3.0], p=1, epsilon=0.0)
        w = self._wasserstein.wasserstein_1d([0.0, 2.0], [1.0, 3.0], p=1)
        return abs(dr - 1.0) <= TOLERANCE and abs(w - 1.0) <= TOLERANCE, f"DR={dr:.6g}, W1={w:.6g}"

    def check_ordering_1d(self) -> Tuple[bool, str]:
        rng = self._rng(7)
        for trial in range(25):
            x = rng.standard_normal(int(rng.integers(5, 60)))
            y = rng.standard_normal(int(rng.integers(5, 60))) * 2.0 + 0.5
            dd = self._closed.dd_1d_exact(x, y, p=1)
            w = self._wasserstein.wasserstein_1d(x, y, p=1)
            dr = self._closed.dr_1d_closed_form(x, y, p=1, epsilon=0.0)
            if not (dd <= w + TOLERANCE and w <= dr + TOLERANCE):
                return False, f"trial {trial}: DD={dd:.6g}, W={w:.6g}, DR={dr:.6g}"
        return True, "DD_1 <= W_1 <= DR_1 on 25 random pairs"

    def check_dd_identity(self) -> Tuple[bool, str]:
        X = self._rng(8).standard_normal((40, 2))
        params = MetricParams(p=1, K=50, seed=self.seed)
        value = self._dd.dd_distance(X, X, params, self._dd.default_box(X, X, mc_points=2000)).value
        return value == 0.0, f"DD(X,X)={value:.3g}"

    def checks(self) -> List[Tuple[str, Callable[[], Tuple[bool, str]]]]:
        return [
            ("direction_norms", self.check_direction_norms),
            ("projection_oracle", self.check_projection_oracle),
            ("support_monotone", self.check_support_monotone),
            ("depth_over_approximation", self.check_depth_over_approximation),
            ("dr_identity_symmetry", self.check_dr_identity_symmetry),
            ("dr_triangle", self.check_dr_triangle),
            ("dr_isometry", self.check_dr_isometry),
            ("closed_form_1d", self.check_closed_form_1d),
            ("ordering_1d", self.check_ordering_1d),
            ("dd_identity", self.check_dd_identity),
        ]

    def run(self) -> List[CheckResult]:
        """Run every check in order."""
        results = []
        for name, check in self.checks():
            try:
                passed, detail = check()
            except Exception as e:
                passed, detail = False, f"{type(e).__name__}: {e}"
            logger.debug("%s: %s (%s)", name, "ok" if passed else "FAILED", detail)
            results.append(CheckResult(name, bool(passed), detail))
        return results
