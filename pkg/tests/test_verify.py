import cmath

import numpy as np
import pytest

from susypiv import (
    AllPointsExcluded,
    EvaluationFailed,
    Grid,
    SingularPoint,
    TransformParams,
    fd_derivative,
    residual_report,
    seed_eval,
    seed_u,
    threshold_for,
)
from susypiv.verify import BENCHMARK_PARAMS, THRESHOLDS

SET_1 = BENCHMARK_PARAMS[0]


class TestFdDerivative:
    def test_polynomial_second_derivative_is_exact(self):
        got = fd_derivative(lambda t: t * t, 1.7, order=2, h=0.1)
        assert abs(got - 2.0) <= 1e-9

    def test_imaginary_exponential_first_derivative(self):
        got = fd_derivative(lambda t: cmath.exp(1j * t), 0.0, order=1, h=1e-3)
        assert abs(got - 1j) <= 1e-10

    def test_seed_derivative_cross_check(self):
        ev = seed_eval(SET_1, 1.0)
        got = fd_derivative(lambda t: seed_u(SET_1, t), 1.0, order=1)
        assert abs(got - ev.u_prime) <= 1e-7 * abs(ev.u_prime)

    def test_rejects_bad_order_and_step(self):
        with pytest.raises(ValueError):
            fd_derivative(lambda t: t, 0.0, order=3)
        with pytest.raises(ValueError):
            fd_derivative(lambda t: t, 0.0, order=1, h=0.0)

    def test_singular_stencil_point_fails(self):
        def f(t):
            raise SingularPoint("nope")

        with pytest.raises(EvaluationFailed):
            fd_derivative(f, 0.0, order=1)

    def test_non_finite_stencil_point_fails(self):
        with pytest.raises(EvaluationFailed):
            fd_derivative(lambda t: float("nan"), 0.0, order=1, h=1e-4)


class TestResidualReport:
    def test_determinism(self, coarse_grid):
        a = residual_report("riccati", SET_1, coarse_grid)
        b = residual_report("riccati", SET_1, coarse_grid)
        assert a == b

    def test_monotone_refinement(self, coarse_grid):
        # In the truncation-dominated regime halving h must not lose accuracy
        # by more than a factor two on a smooth parameter set.
        big = residual_report("schrodinger", SET_1, coarse_grid, h=1e-2)
        small = residual_report("schrodinger", SET_1, coarse_grid, h=5e-3)
        assert small.max_relative <= 2.0 * big.max_relative

    def test_statistics_ordering(self, coarse_grid):
        report = residual_report("schrodinger", SET_1, coarse_grid)
        assert report.max_relative >= report.mean_relative >= 0.0

    def test_excluded_points_lie_on_grid(self):
        grid = Grid(-5.0, 5.0, 0.01)
        params = TransformParams(epsilon=1.0, lam=5.0, kappa=0.0)
        report = residual_report("annihilation", params, grid)
        points = set(float(v) for v in grid.points())
        assert set(report.excluded_points) <= points

    def test_all_points_excluded_for_degenerate_family_one(self, coarse_grid):
        # eps = -1, lam = kappa = 0 makes (beta' - 1) u vanish identically.
        with pytest.raises(AllPointsExcluded):
            residual_report("piv_family_1", TransformParams(epsilon=-1.0), coarse_grid)

    def test_eigen_requires_level(self, coarse_grid):
        with pytest.raises(ValueError):
            residual_report("eigen", SET_1, coarse_grid)
        with pytest.raises(ValueError):
            residual_report("eigen", SET_1, coarse_grid, n=11)

    def test_unknown_kind_rejected(self, coarse_grid):
        with pytest.raises(ValueError):
            residual_report("banana", SET_1, coarse_grid)

    def test_real_node_annihilation_excludes_straddled_points(self):
        # Real eps with a node: the wide outer stencils would cross the pole
        # of 1/u; those points must be reported as excluded, not failed.
        grid = Grid(-5.0, 5.0, 0.01)
        params = TransformParams(epsilon=1.0, lam=5.0, kappa=0.0)
        report = residual_report("annihilation", params, grid)
        assert len(report.excluded_points) > 0
        assert report.max_relative <= THRESHOLDS["annihilation"]

    def test_kind_label_carries_level(self, coarse_grid):
        report = residual_report("eigen", SET_1, coarse_grid, n=2)
        assert report.kind == "eigen(2)"


def test_threshold_lookup():
    assert threshold_for("eigen(3)") == THRESHOLDS["eigen"]
    assert threshold_for("piv_family_2") == 1e-8
    with pytest.raises(KeyError):
        threshold_for("nonsense")


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(1.0, -1.0, 0.1)
    with pytest.raises(ValueError):
        Grid(-1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        Grid(0.0, 1e6, 1e-9)
    grid = Grid(-1.0, 1.0, 0.5)
    np.testing.assert_array_equal(grid.points(), [-1.0, -0.5, 0.0, 0.5, 1.0])
