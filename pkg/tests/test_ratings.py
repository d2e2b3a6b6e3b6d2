"""Rating algebra, form averaging, rankings, versatility and concordance."""

import math

import numpy as np
import pytest

from pitchrank.features import ContractError, PerformanceVector
from pitchrank.learning import UndefinedMetricError, WeightVector
from pitchrank.ratings import (
    ConcordanceReport,
    ExpertPair,
    MatchRating,
    RatingConfig,
    RatingSeries,
    adjusted_rating,
    alpha_sweep_correlation,
    build_role_rankings,
    concordance,
    ewma_update,
    rate_performance,
    rating_bounds,
    rating_stats,
    versatility,
)


def normalized_vector(values, player_id=1, match_id=2, goals=0):
    return PerformanceVector(
        player_id=player_id,
        match_id=match_id,
        values=np.asarray(values, dtype=float),
        goals_scored=goals,
        catalog_hash="h",
        normalized=True,
    )


def weight_vector(weights, intercept=0.0):
    return WeightVector(
        weights=np.asarray(weights, dtype=float),
        intercept=intercept,
        catalog_hash="h",
    )


class TestRatingAlgebra:
    def test_bounds_hand_case(self):
        lo, hi = rating_bounds(weight_vector([2.0, -1.0, 3.0]))
        assert (lo, hi) == (-1.0, 5.0)

    def test_all_zero_weights_rejected(self):
        with pytest.raises(ContractError):
            rating_bounds(weight_vector([0.0, 0.0]))

    def test_rate_hand_case(self):
        # score = 2*1 + (-1)*0 + 3*0.5 = 3.5; bounds (-1, 5); r = 4.5/6.
        w = weight_vector([2.0, -1.0, 3.0])
        r = rate_performance(normalized_vector([1.0, 0.0, 0.5]), w)
        assert r == pytest.approx(0.75, abs=1e-12)

    def test_extremes(self):
        w = weight_vector([2.0, -1.0, 3.0])
        best = rate_performance(normalized_vector([1.0, 0.0, 1.0]), w)
        worst = rate_performance(normalized_vector([0.0, 1.0, 0.0]), w)
        assert best == 1.0
        assert worst == 0.0

    def test_random_bounds_and_monotonicity(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            d = int(rng.integers(2, 12))
            w = weight_vector(rng.normal(size=d))
            if np.all(w.weights == 0):
                continue
            v = rng.random(d)
            r = rate_performance(normalized_vector(v), w)
            assert 0.0 <= r <= 1.0
            # Raising a positively weighted feature never lowers the rating.
            pos = np.flatnonzero(w.weights > 0)
            if len(pos):
                j = int(pos[0])
                bumped = v.copy()
                bumped[j] = min(1.0, bumped[j] + 0.2)
                r2 = rate_performance(normalized_vector(bumped), w)
                assert r2 >= r - 1e-12

    def test_raw_vector_rejected(self):
        raw = PerformanceVector(player_id=1, match_id=2, values=np.ones(2),
                                goals_scored=0, catalog_hash="h")
        with pytest.raises(ContractError):
            rate_performance(raw, weight_vector([1.0, 1.0]))

    def test_intercept_is_ignored(self):
        v = normalized_vector([0.5, 0.5])
        a = rate_performance(v, weight_vector([1.0, -1.0], intercept=0.0))
        b = rate_performance(v, weight_vector([1.0, -1.0], intercept=55.0))
        assert a == b


class TestAdjustedRating:
    def test_alpha_endpoints(self):
        assert adjusted_rating(0.4, 2, 5, alpha=0.0) == 0.4
        assert adjusted_rating(0.4, 2, 5, alpha=1.0) == pytest.approx(0.4)
        assert adjusted_rating(0.9, 2, 5, alpha=1.0) == pytest.approx(0.4)

    def test_convex_blend(self):
        r, goals, mx = 0.2, 3, 4
        for alpha in (0.0, 0.25, 0.5, 0.75, 1.0):
            out = adjusted_rating(r, goals, mx, alpha)
            assert out == pytest.approx(alpha * 0.75 + (1 - alpha) * 0.2, abs=1e-12)
            assert min(r, goals / mx) <= out <= max(r, goals / mx)

    def test_contract_errors(self):
        with pytest.raises(ContractError):
            adjusted_rating(0.5, 1, 0, alpha=0.5)
        with pytest.raises(ContractError):
            adjusted_rating(0.5, 6, 5, alpha=0.5)
        with pytest.raises(ContractError):
            adjusted_rating(1.5, 1, 5, alpha=0.5)
        with pytest.raises(ContractError):
            adjusted_rating(0.5, 1, 5, alpha=1.5)


class TestEwma:
    def test_hand_arithmetic(self):
        beta = 0.1
        e = ewma_update(None, 0.5, beta)
        assert e == 0.5
        e = ewma_update(e, 0.7, beta)
        assert e == pytest.approx(0.52, abs=1e-12)
        e = ewma_update(e, 0.3, beta)
        assert e == pytest.approx(0.498, abs=1e-12)

    def test_beta_one_tracks_last_value(self):
        e = None
        for v in (0.2, 0.9, 0.6):
            e = ewma_update(e, v, 1.0)
        assert e == 0.6

    def test_beta_zero_keeps_first_value(self):
        e = None
        for v in (0.2, 0.9, 0.6):
            e = ewma_update(e, v, 0.0)
        assert e == 0.2

    def test_constant_sequence_fixed_point(self):
        e = None
        for _ in range(50):
            e = ewma_update(e, 0.37, 0.1)
        assert e == pytest.approx(0.37, abs=1e-9)

    def test_contract_errors(self):
        with pytest.raises(ContractError):
            ewma_update(None, 1.2, 0.1)
        with pytest.raises(ContractError):
            ewma_update(None, 0.5, 1.2)


class TestRatingSeries:
    def test_running_ewma_matches_manual(self):
        s = RatingSeries(player_id=1, beta=0.1)
        values = [(10, 0.5, 0.4), (20, 0.7, 0.6), (30, 0.3, 0.2)]
        er = ers = None
        for mid, r, rs in values:
            s.update(mid, r, rs)
            er = ewma_update(er, r, 0.1)
            ers = ewma_update(ers, rs, 0.1)
        assert s.match_count == 3
        assert s.ewma_r == pytest.approx(er, abs=1e-15)
        assert s.ewma_r_star == pytest.approx(ers, abs=1e-15)
        assert s.match_ids == [10, 20, 30]

    def test_out_of_order_match_rejected(self):
        s = RatingSeries(player_id=1, beta=0.1)
        s.update(10, 0.5, 0.5)
        with pytest.raises(ContractError):
            s.update(10, 0.6, 0.6)
        with pytest.raises(ContractError):
            s.update(5, 0.6, 0.6)


def series_with(pid, ratings, beta=0.1):
    s = RatingSeries(player_id=pid, beta=beta)
    for i, r in enumerate(ratings):
        s.update(i + 1, r, r)
    return s


class TestRoleRankings:
    def test_ordering_eligibility_and_ties(self):
        config = RatingConfig(min_matches=2)
        series = {
            1: series_with(1, [0.9, 0.9]),     # form 0.9
            2: series_with(2, [0.5, 0.5]),     # form 0.5
            3: series_with(3, [0.9, 0.9]),     # form 0.9, tie with player 1
            4: series_with(4, [1.0]),          # ineligible, one match
        }
        player_roles = {1: frozenset({0}), 2: frozenset({0}), 3: frozenset({0}),
                        4: frozenset({0}), 5: frozenset({1})}
        rankings = build_role_rankings(series, player_roles, k=2, config=config)
        assert [pid for pid, _ in rankings[0].entries] == [1, 3, 2]
        assert rankings[0].position(2) == 3
        assert rankings[0].position(4) is None
        assert rankings[1].entries == ()

    def test_multi_role_player_appears_in_each(self):
        config = RatingConfig(min_matches=1)
        series = {1: series_with(1, [0.8])}
        rankings = build_role_rankings(series, {1: frozenset({0, 2})}, k=3,
                                       config=config)
        assert rankings[0].entries == ((1, 0.8),)
        assert rankings[1].entries == ()
        assert rankings[2].entries == ((1, 0.8),)

    def test_adjusted_switch(self):
        config = RatingConfig(min_matches=1)
        s = RatingSeries(player_id=1, beta=0.1)
        s.update(1, 0.2, 0.9)
        rankings = build_role_rankings({1: s}, {1: frozenset({0})}, k=1,
                                       config=config, use_adjusted=True)
        assert rankings[0].entries == ((1, 0.9),)


class TestVersatility:
    def test_single_role_is_zero(self):
        v = versatility(1, [frozenset({3})] * 12, k=8)
        assert v.value == 0.0
        assert v.role_shares[3] == 1.0

    def test_uniform_over_all_roles_is_one(self):
        sets = [frozenset({r}) for r in range(8)]
        v = versatility(1, sets, k=8)
        assert v.value == pytest.approx(1.0, abs=1e-12)

    def test_two_even_roles(self):
        sets = [frozenset({0}), frozenset({1})] * 6
        v = versatility(1, sets, k=8)
        assert v.value == pytest.approx(math.log(2) / math.log(8), abs=1e-12)

    def test_hybrid_split_mass(self):
        # One match, hybrid over two roles: same shares as two single-role
        # matches split between them.
        v = versatility(1, [frozenset({0, 1})], k=4)
        assert v.role_shares == (0.5, 0.5, 0.0, 0.0)
        assert v.value == pytest.approx(math.log(2) / math.log(4), abs=1e-12)

    def test_no_negative_zero(self):
        v = versatility(1, [frozenset({0})], k=8)
        assert math.copysign(1.0, v.value) == 1.0

    def test_contract_errors(self):
        with pytest.raises(ContractError):
            versatility(1, [], k=8)
        with pytest.raises(ContractError):
            versatility(1, [frozenset({0})], k=1)
        with pytest.raises(ContractError):
            versatility(1, [frozenset()], k=8)
        with pytest.raises(ContractError):
            versatility(1, [frozenset({9})], k=8)


def rating(pid, mid, r):
    return MatchRating(player_id=pid, match_id=mid, r=r, r_star=r, goals=0,
                       roles=frozenset({0}), primary_role=0)


class TestRatingStats:
    def test_hand_case(self):
        # Nine zeros and a one: mean 0.1, std 0.3, threshold 0.7.
        ratings = [rating(pid, 1, 0.0) for pid in range(9)]
        ratings.append(rating(5, 2, 1.0))
        st = rating_stats(ratings)
        assert st.mean == pytest.approx(0.1, abs=1e-12)
        assert st.std == pytest.approx(0.3, abs=1e-12)
        assert st.excellence_threshold == pytest.approx(0.7, abs=1e-12)
        assert st.n_ratings == 10
        assert st.share_excellent == pytest.approx(0.1)
        assert st.share_within_2std == pytest.approx(0.9)
        assert st.excellent_by_player == {5: 1}

    def test_correlation_none_when_degenerate(self):
        st = rating_stats([rating(1, 1, 0.2), rating(2, 1, 0.4)])
        assert st.mean_std_correlation is None

    def test_correlation_present(self):
        ratings = (
            [rating(1, m, v) for m, v in enumerate([0.1, 0.3], 1)]
            + [rating(2, m, v) for m, v in enumerate([0.5, 0.9], 1)]
            + [rating(3, m, v) for m, v in enumerate([0.2, 0.2], 1)]
        )
        st = rating_stats(ratings)
        assert st.mean_std_correlation is not None
        assert -1.0 <= st.mean_std_correlation <= 1.0

    def test_too_few(self):
        with pytest.raises(ContractError):
            rating_stats([rating(1, 1, 0.5)])


class TestAlphaSweep:
    def test_alpha_zero_is_perfect_correlation(self):
        per_player = {
            1: [(0.2, 0.0), (0.6, 0.5)],
            2: [(0.8, 1.0), (0.4, 0.0)],
            3: [(0.5, 0.2), (0.5, 0.4)],
        }
        out = alpha_sweep_correlation(per_player, (0.0, 0.5), beta=0.1)
        assert out[0.0] == pytest.approx(1.0, abs=1e-12)
        assert out[0.5] is not None

    def test_needs_two_players(self):
        with pytest.raises(ContractError):
            alpha_sweep_correlation({1: [(0.5, 0.0)]}, (0.0,), beta=0.1)


class TestConcordance:
    def test_hand_scenario(self):
        rank_of = {1: 1, 2: 5, 3: 12, 4: 30, 5: 7, 6: 7}
        pairs = [
            # Engine prefers 1 (rank 1 vs 5); majority says first -> agree.
            ExpertPair(1, 2, ("first", "first", "second")),
            # Unanimous second, engine picks first -> disagree.
            ExpertPair(1, 2, ("second", "second", "second")),
            # Reversed order: engine prefers the second player -> agree.
            ExpertPair(2, 1, ("second", "second", "first")),
            # Distance 11 bucket, unanimous agree.
            ExpertPair(1, 3, ("first", "first", "first")),
            # Distance 29 bucket, 2 firsts + 1 equal -> majority agree.
            ExpertPair(1, 4, ("first", "equal", "first")),
            # Discarded: all equal, and a 1/1/1 split.
            ExpertPair(1, 2, ("equal", "equal", "equal")),
            ExpertPair(1, 2, ("first", "second", "equal")),
            # Skipped: unranked player, then equal ranks.
            ExpertPair(1, 99, ("first", "first", "second")),
            ExpertPair(5, 6, ("first", "first", "first")),
        ]
        report = concordance(pairs, rank_of)
        assert report.n_evaluated == 5
        assert report.n_discarded == 2
        assert report.n_unranked == 2
        assert report.majority == pytest.approx(4 / 5)
        assert report.unanimous == pytest.approx(1 / 2)
        assert report.by_distance["1-10"] == (pytest.approx(2 / 3), 3)
        assert report.by_distance["11-20"] == (1.0, 1)
        assert report.by_distance["21+"] == (1.0, 1)

    def test_empty_bucket_is_none(self):
        report = concordance(
            [ExpertPair(1, 2, ("first", "first", "first"))], {1: 1, 2: 3}
        )
        assert report.by_distance["1-10"] == (1.0, 1)
        assert report.by_distance["11-20"] == (None, 0)
        assert report.by_distance["21+"] == (None, 0)

    def test_all_discarded_is_undefined(self):
        with pytest.raises(UndefinedMetricError):
            concordance(
                [ExpertPair(1, 2, ("equal", "equal", "equal"))], {1: 1, 2: 2}
            )

    def test_bad_label_rejected(self):
        with pytest.raises(ContractError):
            ExpertPair(1, 2, ("first", "best", "second"))

    def test_no_pairs_rejected(self):
        with pytest.raises(ContractError):
            concordance([], {})
