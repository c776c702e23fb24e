"""
Tests for the selection score and proofs-found rate.
"""

import numpy as np
import pytest

from app.functions.corpus_generator import generate_corpus
from app.functions.corpus_parser import parse_corpus
from app.functions.metrics import aggregate_score, evaluate_selection, proofs_found, score_conjecture
from app.functions.sine import SineParams

from .conftest import random_corpus


class TestScoreConjecture:
    def test_exact_recommendation(self):
        assert score_conjecture({"a", "b"}, {"a", "b"}) == pytest.approx(1.5, abs=1e-12)

    def test_empty_recommendation_scores_zero(self):
        assert score_conjecture({"a", "b"}, set()) == 0.0

    def test_oversized_recommendation(self):
        assert score_conjecture({"a"}, {"a", "b", "c"}) == pytest.approx(1.125, abs=1e-12)

    def test_no_hits(self):
        assert score_conjecture({"a"}, {"b"}) == 0.0

    def test_required_must_be_non_empty(self):
        with pytest.raises(ValueError):
            score_conjecture(set(), {"a"})

    def test_irrelevant_premise_strictly_lowers_score(self):
        rng = np.random.default_rng(17)
        universe = [f"p{i}" for i in range(30)]
        for _ in range(1000):
            required = set(rng.choice(universe, size=int(rng.integers(1, 8)), replace=False))
            hits = set(rng.choice(sorted(required), size=int(rng.integers(1, len(required) + 1)), replace=False))
            extra = set(rng.choice(universe, size=int(rng.integers(0, 6)), replace=False))
            recommended = hits | extra
            spare = sorted(set(universe) - required - recommended)
            if not spare:
                continue
            before = score_conjecture(required, recommended)
            after = score_conjecture(required, recommended | {spare[0]})
            assert after < before


class TestAggregate:
    def test_three_fact_corpus(self, three_fact_corpus):
        params = SineParams(t=1.0, g=1, k=1)
        assert aggregate_score(three_fact_corpus, params) == pytest.approx(1.5)
        assert proofs_found(three_fact_corpus, params) == 1.0

    def test_sum_with_a_zero_term(self):
        corpus = parse_corpus("F p1: f, a\nF p2: g, a\nF p3: h, f\nC c1: a ; p1\nC c2: zz ; p3\n")
        report = evaluate_selection(corpus, SineParams(t=1.0, g=1, k=1))
        assert [row.score for row in report.per_conjecture] == pytest.approx([1.5, 0.0])
        assert report.total == pytest.approx(1.5)
        assert report.proofs_found_fraction == 0.5

    def test_all_empty_recommendations(self, three_fact_corpus):
        params = SineParams(t=1.0, g=1, k=0)
        report = evaluate_selection(three_fact_corpus, params)
        assert report.total == 0.0
        assert report.proofs_found_fraction == 0.0
        assert report.mean_recommended == 0.0

    def test_report_rows(self, ramp_corpus):
        report = evaluate_selection(ramp_corpus, SineParams(t=10.0, g=1, k=1))
        (row,) = report.per_conjecture
        assert row.conjecture == "goal"
        assert row.recommended_facts == ("r0", "r1", "r2")
        assert row.intersection == 3
        assert not row.proved
        assert row.score == pytest.approx(0.75 + 3 / 8)

    @pytest.mark.parametrize(
        "t, expected",
        [(1.0, 0.0), (3.0, 0.75), (6.0, 1.0), (10.0, 1.125), (15.0, 1.25), (20.0, 1.25)],
    )
    def test_ramp_score_rises_with_t(self, ramp_corpus, t, expected):
        assert aggregate_score(ramp_corpus, SineParams(t=t, g=1, k=1)) == pytest.approx(expected)

    def test_threads_do_not_change_result(self):
        from app.functions.corpus_generator import generate_corpus

        corpus = generate_corpus(80, 30, 40, seed=3)
        params = SineParams(t=2.5, g=2, k=3)
        single = evaluate_selection(corpus, params, threads=1)
        pooled = evaluate_selection(corpus, params, threads=4)
        assert single == pooled

    def test_empty_corpus_rejected(self):
        corpus = parse_corpus("F p1: a\n")
        with pytest.raises(ValueError):
            evaluate_selection(corpus, SineParams(t=1.0, g=1, k=1))


class TestProofsFoundMonotone:
    def test_never_drops_as_depth_grows_on_random_corpora(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            corpus = random_corpus(rng)
            t = float(rng.uniform(0.5, 20.0))
            g = int(rng.integers(1, 9))
            rates = [proofs_found(corpus, SineParams(t=t, g=g, k=k)) for k in range(6)]
            assert rates == sorted(rates)

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_never_drops_as_depth_grows_on_generated_corpora(self, seed):
        corpus = generate_corpus(60, 25, 30, seed=seed)
        rates = [proofs_found(corpus, SineParams(t=1.5, g=2, k=k)) for k in range(8)]
        assert rates == sorted(rates)
        assert rates[0] == 0.0
