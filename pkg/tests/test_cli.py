"""Drive every CLI verb in-process against one shared demo workspace."""

import contextlib
import csv
import io
import json

import pytest

from pitchrank.cli import main
from pitchrank.pipeline import (
    Snapshot,
    bundle_digest,
    load_bundle,
    load_snapshot,
    run_online_update,
    save_snapshot,
    snapshot_digest,
)


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """Demo artifacts: raw corpus files plus store/bundle/snapshot."""
    out = tmp_path_factory.mktemp("cli-workspace")
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = main(
            ["demo", "--out", str(out), "--seed", "3", "--matches", "40",
             "--min-matches", "3"]
        )
    assert rc == 0
    return out


def run_cli(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = main(list(argv))
    return rc, buf.getvalue()


class TestDemo:
    def test_artifacts_exist(self, workspace):
        for name in ("events.json", "matches.json", "players.json",
                     "store.json", "bundle.json", "snapshot.json"):
            assert (workspace / name).exists()

    def test_matches_library_fixtures(self, workspace, small_bundle, small_snapshot):
        """Same seed and config through the CLI and the library agree exactly."""
        assert bundle_digest(load_bundle(workspace / "bundle.json")) == bundle_digest(
            small_bundle
        )
        assert snapshot_digest(
            load_snapshot(workspace / "snapshot.json")
        ) == snapshot_digest(small_snapshot)


class TestIngest:
    def test_reingest_round_trip(self, workspace, tmp_path):
        out = tmp_path / "store2.json"
        rc, text = run_cli(
            "ingest",
            "--events", str(workspace / "events.json"),
            "--matches", str(workspace / "matches.json"),
            "--players", str(workspace / "players.json"),
            "--out", str(out),
        )
        assert rc == 0
        assert "ingested" in text
        from pitchrank.events import load_store

        assert len(load_store(out)) == len(load_store(workspace / "store.json"))


class TestFeatures:
    def test_jsonl_output(self, workspace, tmp_path):
        out = tmp_path / "features.jsonl"
        params = tmp_path / "norm.json"
        rc, text = run_cli(
            "features", "--store", str(workspace / "store.json"),
            "--out", str(out), "--normalized", "--params", str(params),
        )
        assert rc == 0
        rows = [json.loads(line) for line in out.read_text().splitlines()]
        assert rows
        assert all(len(row["values"]) == 76 for row in rows)
        assert all(row["normalized"] for row in rows)
        assert all(0.0 <= v <= 1.0 for row in rows for v in row["values"])
        norm = json.loads(params.read_text())
        assert len(norm["min"]) == 76 and len(norm["max"]) == 76
        assert norm["maxGoals"] >= 1

    def test_raw_counts_are_integers(self, workspace, tmp_path):
        out = tmp_path / "features-raw.jsonl"
        rc, _ = run_cli(
            "features", "--store", str(workspace / "store.json"), "--out", str(out)
        )
        assert rc == 0
        rows = [json.loads(line) for line in out.read_text().splitlines()]
        assert all(v == int(v) for row in rows for v in row["values"])


class TestTrain:
    def test_with_config_file(self, workspace, tmp_path):
        conf = tmp_path / "engine.conf"
        conf.write_text(
            "seed = 3\nmin_matches = 3\ncost_grid = 0.1,1.0\nfolds = 3\n"
        )
        out = tmp_path / "bundle2.json"
        rc, text = run_cli(
            "train", "--store", str(workspace / "store.json"),
            "--config", str(conf), "--out", str(out),
        )
        assert rc == 0
        assert "holdout auc" in text
        bundle = load_bundle(out)
        assert bundle.config.folds == 3
        assert bundle.config.cost_grid == (0.1, 1.0)

    def test_scoped_by_competition(self, workspace, tmp_path):
        rc, text = run_cli(
            "train", "--store", str(workspace / "store.json"),
            "--out", str(tmp_path / "b.json"), "--scoped", "competition",
        )
        assert rc == 0
        assert "scoped by competition" in text
        assert "nrmse vs global" in text

    def test_scoped_by_role(self, workspace, tmp_path):
        rc, text = run_cli(
            "train", "--store", str(workspace / "store.json"),
            "--out", str(tmp_path / "b.json"), "--scoped", "role",
        )
        assert rc == 0
        assert "scoped by role" in text
        assert "nrmse vs global" in text


class TestNrmseAndRoles:
    def test_nrmse_self_is_zero(self, workspace):
        rc, text = run_cli(
            "nrmse", "--bundle", str(workspace / "bundle.json"),
            "--other", str(workspace / "bundle.json"),
        )
        assert rc == 0
        assert "nrmse = 0.000000" in text

    def test_roles_listing(self, workspace, small_bundle):
        rc, text = run_cli("roles", "--bundle", str(workspace / "bundle.json"))
        assert rc == 0
        assert f"k = {small_bundle.role_model.k}" in text
        assert text.count("role ") == small_bundle.role_model.k
        assert " *" in text  # the selected k is marked in the sweep


class TestRate:
    def test_batch_and_csv(self, workspace, tmp_path, small_snapshot):
        out = tmp_path / "snap.json"
        ratings = tmp_path / "ratings.csv"
        rc, text = run_cli(
            "rate", "--store", str(workspace / "store.json"),
            "--bundle", str(workspace / "bundle.json"),
            "--out", str(out), "--ratings-csv", str(ratings),
        )
        assert rc == 0
        assert snapshot_digest(load_snapshot(out)) == snapshot_digest(small_snapshot)
        with open(ratings) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["player_id", "match_id", "r", "r_star", "goals",
                           "primary_role", "roles"]
        assert len(rows) - 1 == len(small_snapshot.all_ratings())
        assert all(0.0 <= float(row[2]) <= 1.0 for row in rows[1:])

    def test_incremental_update(self, workspace, tmp_path, small_store,
                                small_bundle, small_snapshot):
        mids = small_store.match_ids()
        partial = Snapshot()
        for mid in mids[:-1]:
            partial = run_online_update(small_store, small_bundle, partial, mid)
        partial_path = tmp_path / "partial.json"
        save_snapshot(partial, partial_path)
        out = tmp_path / "updated.json"
        rc, text = run_cli(
            "rate", "--store", str(workspace / "store.json"),
            "--bundle", str(workspace / "bundle.json"),
            "--update", str(mids[-1]), "--snapshot", str(partial_path),
            "--out", str(out),
        )
        assert rc == 0
        assert f"folded match {mids[-1]}" in text
        assert snapshot_digest(load_snapshot(out)) == snapshot_digest(small_snapshot)


class TestRank:
    def test_listing_and_csv(self, workspace, tmp_path, small_snapshot):
        out = tmp_path / "ranking.csv"
        rc, text = run_cli(
            "rank", "--snapshot", str(workspace / "snapshot.json"),
            "--role", "0", "--limit", "5", "--csv", str(out),
        )
        assert rc == 0
        assert "role 0" in text
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["role", "rank", "player_id", "name", "rating"]
        assert len(rows) - 1 == len(small_snapshot.rankings[0].entries)
        values = [float(r[4]) for r in rows[1:]]
        assert values == sorted(values, reverse=True)

    def test_unknown_role_fails(self, workspace):
        rc, _ = run_cli(
            "rank", "--snapshot", str(workspace / "snapshot.json"), "--role", "99"
        )
        assert rc == 1


class TestSearch:
    def test_zone_query(self, workspace):
        rc, text = run_cli(
            "search", "--snapshot", str(workspace / "snapshot.json"),
            "--bundle", str(workspace / "bundle.json"),
            "--zones", "0,1,10,11", "--top", "5",
        )
        assert rc == 0
        assert "query zones [0, 1, 10, 11]" in text

    def test_out_of_range_zone_fails(self, workspace):
        rc, _ = run_cli(
            "search", "--snapshot", str(workspace / "snapshot.json"),
            "--bundle", str(workspace / "bundle.json"), "--zones", "100",
        )
        assert rc == 1


class TestVersatility:
    def test_single_player(self, workspace, small_snapshot):
        pid = next(iter(small_snapshot.player_roles))
        rc, text = run_cli(
            "versatility", "--snapshot", str(workspace / "snapshot.json"),
            "--bundle", str(workspace / "bundle.json"), "--player", str(pid),
        )
        assert rc == 0
        assert "v = " in text

    def test_leaderboard(self, workspace):
        rc, text = run_cli(
            "versatility", "--snapshot", str(workspace / "snapshot.json"),
            "--bundle", str(workspace / "bundle.json"), "--limit", "3",
        )
        assert rc == 0
        assert "most versatile" in text

    def test_unknown_player_fails(self, workspace):
        rc, _ = run_cli(
            "versatility", "--snapshot", str(workspace / "snapshot.json"),
            "--bundle", str(workspace / "bundle.json"), "--player", "999999999",
        )
        assert rc == 1


class TestStats:
    def test_both_sections(self, workspace):
        rc, text = run_cli(
            "stats", "--store", str(workspace / "store.json"),
            "--snapshot", str(workspace / "snapshot.json"),
        )
        assert rc == 0
        assert "corpus:" in text
        assert "ratings:" in text
        assert "excellence threshold" in text

    def test_no_inputs_fails(self):
        rc, _ = run_cli("stats")
        assert rc == 1


class TestConcordance:
    def test_pairs_file(self, workspace, tmp_path, small_snapshot):
        entries = small_snapshot.rankings[0].entries
        assert len(entries) >= 2
        best, worst = entries[0][0], entries[-1][0]
        pairs = tmp_path / "pairs.csv"
        pairs.write_text(
            "player_a,player_b,label1,label2,label3\n"
            f"{best},{worst},first,first,first\n"
            f"{worst},{best},second,second,equal\n"
            f"{best},{worst},equal,equal,equal\n"
        )
        rc, text = run_cli(
            "concordance", "--snapshot", str(workspace / "snapshot.json"),
            "--role", "0", "--pairs", str(pairs),
        )
        assert rc == 0
        assert "2 pairs evaluated, 1 discarded" in text
        assert "majority concordance:  1.0000" in text

    def test_unknown_role_fails(self, workspace, tmp_path):
        pairs = tmp_path / "pairs.csv"
        pairs.write_text("1,2,first,first,first\n")
        rc, _ = run_cli(
            "concordance", "--snapshot", str(workspace / "snapshot.json"),
            "--role", "42", "--pairs", str(pairs),
        )
        assert rc == 1
