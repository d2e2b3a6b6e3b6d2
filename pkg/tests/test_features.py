"""Feature catalog and extraction against a brute-force counting oracle."""

import numpy as np
import pytest

from pitchrank.events import TAG_NAME_TO_ID, parse_event
from pitchrank.features import (
    CATALOG_FEATURE_NAMES,
    CatalogMismatchError,
    ContractError,
    aggregate_team,
    apply_normalization,
    build_feature_catalog,
    extract_raw_performance,
    fit_normalization,
)

GROUP_SIZES = {
    "duel": 8,
    "foul": 18,
    "free kick": 11,
    "others on the ball": 11,
    "pass": 26,
    "shot": 2,
}


class TestCatalog:
    def test_exactly_76_features(self):
        assert len(CATALOG_FEATURE_NAMES) == 76
        assert len(set(CATALOG_FEATURE_NAMES)) == 76

    def test_group_sizes(self):
        catalog = build_feature_catalog()
        groups = {}
        for name in catalog.names:
            groups[name.split("-", 1)[0]] = groups.get(name.split("-", 1)[0], 0) + 1
        assert groups == GROUP_SIZES

    def test_lexicographic_order(self):
        assert list(CATALOG_FEATURE_NAMES) == sorted(CATALOG_FEATURE_NAMES)

    def test_hash_is_stable_and_name_sensitive(self):
        a = build_feature_catalog()
        b = build_feature_catalog()
        assert a.catalog_hash == b.catalog_hash
        assert len(a.catalog_hash) == 64

    def test_every_descriptor_tag_is_registered(self):
        catalog = build_feature_catalog()
        for d in catalog.descriptors:
            assert d.tag in TAG_NAME_TO_ID

    def test_position_lookup(self):
        catalog = build_feature_catalog()
        for i, name in enumerate(catalog.names):
            assert catalog.position(name) == i


def synth_events(rng, n, player_id=1, match_id=10, team_id=5):
    """Random wire events drawn across the catalog; returns parsed events."""
    catalog = build_feature_catalog()
    type_names = {
        "duel": "Duel",
        "foul": "Foul",
        "free kick": "Free kick",
        "touch": "Others on the ball",
        "pass": "Pass",
        "shot": "Shot",
    }
    out = []
    for i in range(n):
        d = catalog.descriptors[rng.integers(0, len(catalog.descriptors))]
        out.append(
            parse_event(
                {
                    "id": i,
                    "eventName": type_names[d.event_type.value],
                    "subEventName": d.subtype[:1].upper() + d.subtype[1:],
                    "subEventId": 0,
                    "eventSec": float(rng.uniform(0, 2880)),
                    "playerId": player_id,
                    "matchId": match_id,
                    "teamId": team_id,
                    "positions": [
                        {"x": float(rng.uniform(0, 100)), "y": float(rng.uniform(0, 100))}
                    ],
                    "tags": [{"id": TAG_NAME_TO_ID[d.tag]}],
                }
            )
        )
    return out


class TestExtraction:
    def test_counts_match_brute_force_oracle(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(0)
        for trial in range(10):
            events = synth_events(rng, int(rng.integers(1, 120)))
            vec = extract_raw_performance(events, catalog)
            # Oracle: for every descriptor, count matching events one by one.
            from pitchrank.events import event_has_tag

            expected = np.zeros(len(catalog))
            for i, d in enumerate(catalog.descriptors):
                for ev in events:
                    if (
                        ev.event_type is d.event_type
                        and ev.subtype == d.subtype
                        and event_has_tag(ev, d.tag)
                    ):
                        expected[i] += 1
            assert np.array_equal(vec.values, expected), f"trial {trial}"

    def test_order_invariance(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(1)
        events = synth_events(rng, 60)
        vec_a = extract_raw_performance(events, catalog)
        shuffled = list(events)
        rng.shuffle(shuffled)
        vec_b = extract_raw_performance(shuffled, catalog)
        assert np.array_equal(vec_a.values, vec_b.values)

    def test_one_event_with_two_catalog_tags_counts_twice(self):
        catalog = build_feature_catalog()
        ev = parse_event(
            {
                "id": 1,
                "eventName": "Pass",
                "subEventName": "Simple pass",
                "subEventId": 85,
                "eventSec": 1.0,
                "playerId": 1,
                "matchId": 10,
                "teamId": 5,
                "positions": [{"x": 50, "y": 50}],
                "tags": [{"id": TAG_NAME_TO_ID["accurate"]}, {"id": TAG_NAME_TO_ID["assist"]}],
            }
        )
        vec = extract_raw_performance([ev], catalog)
        assert vec.values[catalog.position("pass-simple pass-accurate")] == 1
        assert vec.values[catalog.position("pass-simple pass-assist")] == 1
        assert vec.values.sum() == 2

    def test_goals_counted_from_goal_tag(self):
        catalog = build_feature_catalog()
        ev = parse_event(
            {
                "id": 1,
                "eventName": "Shot",
                "subEventName": "Shot",
                "subEventId": 100,
                "eventSec": 1.0,
                "playerId": 1,
                "matchId": 10,
                "teamId": 5,
                "positions": [{"x": 90, "y": 50}],
                "tags": [{"id": 1801}, {"id": 101}],
            }
        )
        vec = extract_raw_performance([ev], catalog)
        assert vec.goals_scored == 1
        assert vec.values[catalog.position("shot-shot-accurate")] == 1

    def test_mixed_players_rejected(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(2)
        events = synth_events(rng, 5, player_id=1) + synth_events(rng, 5, player_id=2)
        with pytest.raises(ContractError):
            extract_raw_performance(events, catalog)

    def test_empty_slice_needs_explicit_ids(self):
        catalog = build_feature_catalog()
        with pytest.raises(ContractError):
            extract_raw_performance([], catalog)
        vec = extract_raw_performance([], catalog, player_id=1, match_id=2)
        assert vec.values.sum() == 0


class TestNormalization:
    def test_min_max_and_clip(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(3)
        vectors = [
            extract_raw_performance(synth_events(rng, 80, match_id=m), catalog)
            for m in range(6)
        ]
        params = fit_normalization(vectors)
        for vec in vectors:
            out = apply_normalization(vec, params)
            assert out.normalized
            assert np.all(out.values >= 0) and np.all(out.values <= 1)
        # A vector above the fitted max must clip to 1.
        big = vectors[0]
        spiked = type(big)(
            player_id=big.player_id,
            match_id=big.match_id,
            values=big.values + 1000.0,
            goals_scored=big.goals_scored,
            catalog_hash=big.catalog_hash,
        )
        clipped = apply_normalization(spiked, params)
        assert np.all(clipped.values <= 1.0)

    def test_constant_feature_maps_to_zero(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(4)
        vectors = [
            extract_raw_performance(synth_events(rng, 50, match_id=m), catalog)
            for m in range(4)
        ]
        # Force one feature constant across the corpus.
        idx = 7
        for v in vectors:
            v.values[idx] = 3.0
        params = fit_normalization(vectors)
        outs = [apply_normalization(v, params) for v in vectors]
        assert all(o.values[idx] == 0.0 for o in outs)

    def test_max_goals_recorded(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(5)
        vectors = [
            extract_raw_performance(synth_events(rng, 30, match_id=m), catalog)
            for m in range(3)
        ]
        object.__setattr__(vectors[1], "goals_scored", 4)
        params = fit_normalization(vectors)
        assert params.max_goals == 4

    def test_normalizing_twice_rejected(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(6)
        vectors = [
            extract_raw_performance(synth_events(rng, 30, match_id=m), catalog)
            for m in range(3)
        ]
        params = fit_normalization(vectors)
        out = apply_normalization(vectors[0], params)
        with pytest.raises(ContractError):
            apply_normalization(out, params)
        with pytest.raises(ContractError):
            fit_normalization([out])


class TestTeamAggregation:
    def test_sum_of_raw_counts(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(7)
        vectors = [
            extract_raw_performance(
                synth_events(rng, 40, player_id=pid, match_id=9), catalog
            )
            for pid in (1, 2, 3)
        ]
        team = aggregate_team(vectors, outcome=1, team_id=55)
        assert np.array_equal(team.values, sum(v.values for v in vectors))
        assert team.outcome == 1
        assert team.roster == (1, 2, 3)

    def test_mixed_matches_rejected(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(8)
        a = extract_raw_performance(synth_events(rng, 10, match_id=1), catalog)
        b = extract_raw_performance(synth_events(rng, 10, match_id=2), catalog)
        with pytest.raises(ContractError):
            aggregate_team([a, b], outcome=0, team_id=1)

    def test_normalized_vectors_rejected(self):
        catalog = build_feature_catalog()
        rng = np.random.default_rng(9)
        vectors = [
            extract_raw_performance(synth_events(rng, 30, match_id=m), catalog)
            for m in range(3)
        ]
        params = fit_normalization(vectors)
        normed = apply_normalization(vectors[0], params)
        with pytest.raises(ContractError):
            aggregate_team([normed], outcome=1, team_id=1)
