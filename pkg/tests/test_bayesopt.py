"""
Tests for the search space, GP-UCB and the baseline searches.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from app.core.errors import ObjectiveError, SearchSpaceError
from app.functions import bayesopt
from app.functions.bayesopt import (
    Dimension,
    SearchSpace,
    TuneConfig,
    decode,
    encode,
    epsilon_greedy,
    grid_bayes_search,
    grid_search,
    optimize,
    posterior_curve,
    propose_next,
    ucb,
)
from app.functions.gaussian_process import default_kernel_config, fit
from app.functions.sine import SineParams
from app.services.objective import SineObjective


def unit_box(*names: str) -> SearchSpace:
    return SearchSpace(
        dims=tuple(Dimension(name=n, kind="continuous", low=0.0, high=1.0) for n in names)
    )


def t_only_space() -> SearchSpace:
    return SearchSpace(
        dims=(Dimension(name="t", kind="continuous", low=0.0, high=20.0, exclusive_low=True),)
    )


class TestUcb:
    @pytest.mark.parametrize(
        "mean, sd, beta, expected", [(1.0, 0.5, 2.0, 2.0), (0.0, 1.0, 3.0, 3.0), (0.7, 5.0, 0.0, 0.7)]
    )
    def test_values(self, mean, sd, beta, expected):
        assert ucb(mean, sd, beta) == expected

    def test_elementwise(self):
        mean = np.array([0.0, 1.0, -2.0])
        sd = np.array([1.0, 0.0, 0.5])
        np.testing.assert_array_equal(ucb(mean, sd, 2.0), [2.0, 1.0, -1.0])


class TestEncodeDecode:
    def test_t_midpoint(self):
        space = SearchSpace.sine_default()
        assert encode(space, (10.0, 1, 0))[0] == 0.5
        assert decode(space, (0.5, 0.0, 0.0))[0] == 10.0

    def test_g_endpoints(self):
        space = SearchSpace.sine_default()
        assert decode(space, (0.5, 0.0, 0.0))[1] == 1
        assert decode(space, (0.5, 1.0, 0.0))[1] == 128

    def test_k_tie_rounds_up(self):
        space = SearchSpace.sine_default()
        u = 128.5 / 256.0
        assert decode(space, (0.5, 0.5, u))[2] == 129

    def test_integer_decode_returns_int(self):
        point = decode(SearchSpace.sine_default(), (0.3, 0.3, 0.3))
        assert isinstance(point[1], int) and isinstance(point[2], int)
        assert isinstance(point[0], float)

    def test_exclusive_low_never_decodes_to_low(self):
        space = t_only_space()
        (t,) = decode(space, (0.0,))
        assert t > 0.0
        assert t == math.nextafter(0.0, 1.0)

    def test_out_of_range_values(self):
        space = SearchSpace.sine_default()
        with pytest.raises(SearchSpaceError):
            encode(space, (0.0, 1, 0))
        with pytest.raises(SearchSpaceError):
            encode(space, (1.0, 0, 0))
        with pytest.raises(SearchSpaceError):
            encode(space, (1.0, 1.5, 0))
        with pytest.raises(SearchSpaceError):
            encode(space, (1.0, 1))

    def test_decode_clamps(self):
        space = SearchSpace.sine_default()
        assert decode(space, (1.5, -0.2, 2.0)) == (20.0, 1, 256)

    def test_random_vectors_decode_inside_bounds(self):
        space = SearchSpace.sine_default()
        rng = np.random.default_rng(11)
        for vector in rng.uniform(-0.5, 1.5, size=(2000, space.size)):
            t, g, k = decode(space, vector)
            assert 0.0 < t <= 20.0
            assert isinstance(g, int) and 1 <= g <= 128
            assert isinstance(k, int) and 0 <= k <= 256

    def test_round_trip_on_integers(self):
        space = SearchSpace.sine_default()
        for g in (1, 2, 64, 127, 128):
            for k in (0, 1, 100, 256):
                assert decode(space, encode(space, (5.0, g, k)))[1:] == (g, k)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"name": "x", "kind": "continuous", "low": 1.0, "high": 1.0},
            {"name": "x", "kind": "continuous", "low": 0.0, "high": math.inf},
            {"name": "x", "kind": "integer", "low": 0.5, "high": 3},
            {"name": "x", "kind": "integer", "low": 0, "high": 3, "exclusive_low": True},
            {"name": "x", "kind": "ordinal", "low": 0, "high": 3},
        ],
    )
    def test_invalid_dimension(self, kwargs):
        with pytest.raises(ValidationError):
            Dimension(**kwargs)

    def test_duplicate_names(self):
        dim = Dimension(name="x", kind="continuous", low=0.0, high=1.0)
        with pytest.raises(ValidationError):
            SearchSpace(dims=(dim, dim))


class TestGrid:
    def test_identity_on_three_points(self):
        space = unit_box("x")
        run = grid_search(lambda p: p[0], space, 3)
        assert [obs.point for obs in run.history] == [(0.0,), (0.5,), (1.0,)]
        assert run.incumbent.point == (1.0,)
        assert run.incumbent.value == 1.0

    def test_integer_steps_deduplicate(self):
        space = SearchSpace(dims=(Dimension(name="n", kind="integer", low=1, high=3),))
        run = grid_search(lambda p: float(p[0]), space, 5)
        assert [obs.point for obs in run.history] == [(1,), (2,), (3,)]

    def test_three_dims_count_and_order(self):
        space = unit_box("a", "b", "c")
        run = grid_search(lambda p: 0.0, space, 10)
        assert run.evaluations == 1000
        # row-major: last dimension varies fastest
        assert run.history[1].point[:2] == run.history[0].point[:2]

    def test_first_found_wins_ties(self):
        space = unit_box("x")
        run = grid_search(lambda p: 1.0, space, 4)
        assert run.incumbent.iteration == 0
        assert [obs.is_incumbent for obs in run.history] == [True, False, False, False]

    def test_exclusive_low_grid_skips_zero(self):
        assert t_only_space().dims[0].grid(20) == [float(v) for v in range(1, 21)]

    def test_step_count_mismatch(self):
        with pytest.raises(SearchSpaceError):
            grid_search(lambda p: 0.0, unit_box("a", "b"), [3])


class TestEpsilonGreedy:
    def test_single_evaluation(self):
        run = epsilon_greedy(lambda p: 0.0, unit_box("x"), 0.5, 1, 0.1, np.random.default_rng(0))
        assert run.evaluations == 1

    def test_pure_random_search_uses_whole_box(self):
        run = epsilon_greedy(lambda p: -p[0], unit_box("x"), 1.0, 200, 0.01, np.random.default_rng(1))
        xs = [obs.point[0] for obs in run.history]
        assert min(xs) < 0.1 and max(xs) > 0.9

    def test_greedy_climbs_to_optimum(self):
        target = np.array([0.3, 0.7])

        def objective(point):
            return -float(np.sum((np.asarray(point) - target) ** 2))

        hits = 0
        for seed in range(20):
            run = epsilon_greedy(objective, unit_box("x", "y"), 0.0, 200, 0.1, np.random.default_rng(seed))
            if np.linalg.norm(np.asarray(run.incumbent.point) - target) <= 0.1:
                hits += 1
        assert hits >= 16

    def test_same_seed_same_history(self):
        runs = [
            epsilon_greedy(lambda p: -abs(p[0] - 0.2), unit_box("x"), 0.2, 30, 0.05, np.random.default_rng(4))
            for _ in range(2)
        ]
        assert [o.point for o in runs[0].history] == [o.point for o in runs[1].history]

    @pytest.mark.parametrize("epsilon, n, radius", [(-0.1, 5, 0.1), (1.5, 5, 0.1), (0.5, 0, 0.1), (0.5, 5, 0.0)])
    def test_invalid_settings(self, epsilon, n, radius):
        with pytest.raises(ValueError):
            epsilon_greedy(lambda p: 0.0, unit_box("x"), epsilon, n, radius, np.random.default_rng(0))


class TestProposeNext:
    def test_explores_far_from_single_point(self):
        space = unit_box("x", "y")
        X = np.array([[0.5, 0.5]])
        model = fit(default_kernel_config(2, [1.0]), X, [1.0])
        far = 0
        for seed in range(40):
            proposal = propose_next(model, space, 100.0, np.random.default_rng(seed))
            if np.linalg.norm(proposal - X[0]) > 0.25:
                far += 1
        assert far >= 38

    def test_pure_exploitation_finds_best_mean(self):
        space = unit_box("x")
        X = np.linspace(0.0, 1.0, 11)[:, None]
        y = -((X[:, 0] - 0.5) ** 2)
        model = fit(default_kernel_config(1, y), X, y)
        proposal = propose_next(model, space, 0.0, np.random.default_rng(0))
        assert abs(proposal[0] - 0.5) < 0.05

    def test_single_candidate(self):
        space = unit_box("x", "y")
        model = fit(default_kernel_config(2, [0.0]), np.array([[0.1, 0.1]]), [0.0])
        proposal = propose_next(model, space, 2.0, np.random.default_rng(0), candidate_count=1)
        assert proposal.shape == (2,)
        assert np.all((proposal >= 0.0) & (proposal <= 1.0))


class TestOptimize:
    def test_evaluation_count_is_exact(self):
        calls = []

        def objective(point):
            calls.append(point)
            return -(point[0] - 0.5) ** 2

        run = optimize(objective, unit_box("x"), TuneConfig(n_random_starts=2, n_iterations=5, seed=1))
        assert run.evaluations == 7 == len(calls)
        assert [obs.iteration for obs in run.history] == list(range(7))

    @pytest.mark.parametrize(
        "iterations, fraction, expected",
        [(3, 0.1, 0), (10, 0.1, 1), (20, 0.1, 2), (25, 0.1, 2), (30, 0.1, 3), (7, 1.0, 7), (25, 0.0, 0)],
    )
    def test_exploit_iterations(self, iterations, fraction, expected):
        config = TuneConfig(n_iterations=iterations, exploit_fraction=fraction)
        assert config.exploit_iterations == expected

    def test_trailing_iterations_use_posterior_mean(self, monkeypatch):
        betas = []
        real_propose = bayesopt.propose_next

        def recording(model, space, beta, rng, candidate_count=1000):
            betas.append(beta)
            return real_propose(model, space, beta, rng, candidate_count)

        monkeypatch.setattr(bayesopt, "propose_next", recording)
        optimize(
            lambda p: -(p[0] - 0.5) ** 2,
            unit_box("x"),
            TuneConfig(n_random_starts=2, n_iterations=20, beta=2.0, seed=3),
        )
        assert betas == [2.0] * 18 + [0.0] * 2

    def test_zero_iterations_is_random_search(self):
        run = optimize(lambda p: p[0], unit_box("x"), TuneConfig(n_random_starts=1, n_iterations=0))
        assert run.evaluations == 1
        assert run.history[0].is_incumbent

    def test_constant_objective(self):
        run = optimize(lambda p: 3.0, unit_box("x", "y"), TuneConfig(n_random_starts=2, n_iterations=4))
        assert run.incumbent.value == 3.0
        assert run.incumbent.iteration == 0

    def test_incumbent_flags_mark_strict_improvements(self):
        run = optimize(lambda p: p[0], unit_box("x"), TuneConfig(n_random_starts=3, n_iterations=5, seed=9))
        best = -math.inf
        for obs in run.history:
            assert obs.is_incumbent == (obs.value > best)
            best = max(best, obs.value)
        assert run.incumbent_trace()[-1] == run.incumbent.value
        assert run.best_point() == {"x": run.incumbent.point[0]}

    def test_seed_reproducibility(self):
        config = TuneConfig(n_random_starts=2, n_iterations=4, seed=42)
        first = optimize(lambda p: -(p[0] - 0.3) ** 2, unit_box("x"), config)
        second = optimize(lambda p: -(p[0] - 0.3) ** 2, unit_box("x"), config)
        assert [o.point for o in first.history] == [o.point for o in second.history]

    def test_objective_failure_names_point(self):
        def broken(point):
            raise RuntimeError("boom")

        with pytest.raises(ObjectiveError) as err:
            optimize(broken, unit_box("x"), TuneConfig())
        assert len(err.value.point) == 1
        assert "boom" in str(err.value)

    def test_one_dim_quadratic(self):
        hits = 0
        for seed in range(50):
            run = optimize(
                lambda p: -(p[0] - 0.5) ** 2,
                unit_box("x"),
                TuneConfig(n_random_starts=2, n_iterations=20, seed=seed),
            )
            if abs(run.incumbent.point[0] - 0.5) <= 0.05:
                hits += 1
        assert hits >= 45

    @pytest.mark.slow
    def test_two_dim_quadratic(self):
        hits = 0
        for seed in range(50):
            run = optimize(
                lambda p: -(p[0] - 0.5) ** 2 - (p[1] - 0.3) ** 2,
                unit_box("x", "y"),
                TuneConfig(n_random_starts=3, n_iterations=25, seed=seed),
            )
            if np.hypot(run.incumbent.point[0] - 0.5, run.incumbent.point[1] - 0.3) <= 0.05:
                hits += 1
        assert hits >= 45

    @pytest.mark.slow
    def test_rising_tolerance_curve_is_climbed(self, ramp_corpus):
        space = t_only_space()
        hits = 0
        with SineObjective(ramp_corpus, space, pinned={"g": 1, "k": 1}) as objective:
            for seed in range(50):
                run = optimize(objective, space, TuneConfig(n_random_starts=2, n_iterations=3, seed=seed))
                if run.incumbent.point[0] >= 15.0:
                    hits += 1
        assert hits >= 40


class TestGridBayes:
    def test_cells_and_budget(self, ramp_corpus):
        space = SearchSpace(
            dims=(
                Dimension(name="t", kind="continuous", low=0.0, high=20.0, exclusive_low=True),
                Dimension(name="g", kind="integer", low=1, high=3),
                Dimension(name="k", kind="integer", low=0, high=1),
            )
        )
        config = TuneConfig(n_random_starts=2, n_iterations=1, seed=5)
        with SineObjective(ramp_corpus, space) as objective:
            run = grid_bayes_search(objective, space, [3, 2], config)

        assert run.method == "grid-mixed"
        assert len(run.extra["cell_runs"]) == 6
        assert run.evaluations == 6 * 3
        fixed = [cell for cell, _ in run.extra["cell_runs"]]
        assert fixed[0] == {"g": 1, "k": 0}
        assert fixed[-1] == {"g": 3, "k": 1}
        # k = 0 cells select nothing
        assert all(obs.value == 0.0 for obs in run.history if obs.point[2] == 0)

    def test_needs_continuous_dim(self):
        space = SearchSpace(dims=(Dimension(name="g", kind="integer", low=1, high=3),))
        with pytest.raises(SearchSpaceError):
            grid_bayes_search(lambda p: 0.0, space, 3, TuneConfig())


class TestPosteriorCurve:
    def test_curve_shape(self):
        run = optimize(lambda p: -(p[0] - 0.4) ** 2, unit_box("x"), TuneConfig(n_iterations=4))
        curve = posterior_curve(run, TuneConfig(), points=50)
        assert len(curve) == 50
        assert curve[0].value == 0.0 and curve[-1].value == 1.0
        for point in curve:
            assert point.sd >= 0.0
            assert point.ucb == pytest.approx(point.mean + 2.0 * point.sd)

    def test_requires_one_continuous_dim(self):
        run = optimize(lambda p: 0.0, unit_box("x", "y"), TuneConfig(n_iterations=0))
        with pytest.raises(SearchSpaceError):
            posterior_curve(run, TuneConfig())


class TestSineObjective:
    def test_pinned_values_fill_the_point(self, ramp_corpus):
        with SineObjective(ramp_corpus, t_only_space(), pinned={"g": 1, "k": 1}) as objective:
            assert objective.params_for((15.0,)) == SineParams(t=15.0, g=1, k=1)
            assert objective((15.0,)) == pytest.approx(1.25)
            assert objective.calls == 1

    def test_unpinned_parameter(self, ramp_corpus):
        with pytest.raises(ValueError):
            SineObjective(ramp_corpus, t_only_space(), pinned={"g": 1})

    def test_unknown_dimension(self, ramp_corpus):
        with pytest.raises(ValueError):
            SineObjective(ramp_corpus, unit_box("x"), pinned={"t": 1.0, "g": 1, "k": 1})
