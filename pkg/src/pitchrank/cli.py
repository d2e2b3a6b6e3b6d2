"""Command line interface: one verb per pipeline stage.

Artifacts flow between verbs as files: a store (ingested corpus), a bundle
(learned model) and a snapshot (ratings state).  Every verb prints a short
human-readable summary to stdout; machine-readable output goes to files.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .events import EventStore, corpus_stats, load_corpus, load_store, save_store
from .learning import compute_nrmse, train_scoped_weights
from .pipeline import (
    PipelineConfig,
    build_snapshot,
    bundle_digest,
    load_bundle,
    load_snapshot,
    run_learning_phase,
    run_online_update,
    save_bundle,
    save_snapshot,
    snapshot_digest,
    snapshot_versatility,
)
from .ratings import ExpertPair, concordance
from .retrieval import zone_vector_from_counts

__all__ = ["main"]


def _load_store_arg(path: str) -> EventStore:
    return load_store(path)


def _player_names(store: EventStore | None) -> dict[int, str]:
    if store is None:
        return {}
    return {pid: p.name for pid, p in store.players.items()}


def _cmd_ingest(args: argparse.Namespace) -> int:
    store = load_corpus(
        args.events,
        args.matches,
        args.players,
        args.competitions,
        keep_goalkeepers=args.keep_goalkeepers,
        strict=args.strict,
    )
    save_store(store, args.out)
    print(
        f"ingested {len(store.events)} events, {len(store.matches)} matches, "
        f"{len(store.players)} players -> {args.out}"
    )
    for reason, count in sorted(store.warnings.items()):
        print(f"  dropped/{reason}: {count}")
    return 0


def _cmd_features(args: argparse.Namespace) -> int:
    from .features import (
        apply_normalization,
        build_feature_catalog,
        extract_raw_performance,
        fit_normalization,
    )

    store = _load_store_arg(args.store)
    catalog = build_feature_catalog()
    raw = {
        key: extract_raw_performance(evs, catalog)
        for key, evs in store.player_match_slices()
    }
    norm = fit_normalization(list(raw.values())) if args.normalized else None
    with open(args.out, "w") as fh:
        for (pid, mid), vec in sorted(raw.items()):
            out = apply_normalization(vec, norm) if norm else vec
            fh.write(
                json.dumps(
                    {
                        "playerId": pid,
                        "matchId": mid,
                        "goals": vec.goals_scored,
                        "normalized": bool(norm),
                        "values": out.values.tolist(),
                    }
                )
                + "\n"
            )
    print(f"wrote {len(raw)} performance vectors -> {args.out}")
    if norm and args.params:
        Path(args.params).write_text(
            json.dumps(
                {
                    "min": norm.minimum.tolist(),
                    "max": norm.maximum.tolist(),
                    "maxGoals": norm.max_goals,
                    "catalogHash": norm.catalog_hash,
                }
            )
        )
        print(f"wrote normalization params -> {args.params}")
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    store = _load_store_arg(args.store)
    config = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    bundle = run_learning_phase(store, config)
    save_bundle(bundle, args.out)
    rep = bundle.training_report
    rm = bundle.role_model
    print(f"bundle -> {args.out}")
    print(f"  digest        {bundle_digest(bundle)[:16]}")
    print(f"  holdout auc   {rep.auc:.4f}")
    print(f"  f1 / accuracy {rep.f1:.4f} / {rep.accuracy:.4f}")
    print(f"  cost          {rep.selected_cost}")
    print(f"  roles         k={rm.k} silhouette={rm.silhouette:.4f}")
    if args.scoped:
        if args.scoped == "role":
            examples = _role_tagged_examples(store, bundle)
        else:
            examples = _training_examples(store, bundle)
        result = train_scoped_weights(
            examples,
            args.scoped,
            config.train_config(),
            catalog_hash=bundle.catalog.catalog_hash,
        )
        print(f"  scoped by {args.scoped}:")
        for key, (wv, scoped_report) in sorted(result.vectors.items()):
            nrmse = compute_nrmse(bundle.weights.weights, wv.weights)
            print(f"    {key}: nrmse vs global = {nrmse:.4f}  "
                  f"auc = {scoped_report.auc:.4f}")
        for key, reason in sorted(result.skipped.items()):
            print(f"    {key}: skipped ({reason})")
    return 0


def _training_examples(store: EventStore, bundle):
    from .features import aggregate_team, extract_raw_performance
    from .learning import build_training_set

    raw = {
        key: extract_raw_performance(evs, bundle.catalog)
        for key, evs in store.player_match_slices()
    }
    team_perfs = []
    for match in store.matches.values():
        team_of = {ev.player_id: ev.team_id for ev in match.events}
        rosters: dict[int, list] = {}
        for pid, team in team_of.items():
            vec = raw.get((pid, match.match_id))
            if vec is not None:
                rosters.setdefault(team, []).append(vec)
        for team_id, vectors in rosters.items():
            team_perfs.append(aggregate_team(vectors, match.outcomes[team_id], team_id))
    return build_training_set(store, team_perfs)


def _role_tagged_examples(store: EventStore, bundle):
    """Per-role team performances: each role's sub-roster, summed and scaled.

    A (match, team, role) group sums the raw vectors of that team's players
    whose primary role for the match is the given one; features are min-max
    scaled within each role's example set.
    """
    from .features import extract_raw_performance
    from .learning import TrainingExample
    from .roles import compute_center, soft_assign_many

    config = bundle.config
    raw = {
        key: extract_raw_performance(evs, bundle.catalog)
        for key, evs in store.player_match_slices()
    }
    keys, points = [], []
    for (pid, mid), evs in store.player_match_slices():
        if len(evs) >= config.min_role_events:
            center = compute_center(evs)
            keys.append((pid, mid))
            points.append([center.x, center.y])
    primaries, _ = soft_assign_many(
        np.array(points), bundle.role_model, config.delta_s
    )
    role_of = {key: int(p) for key, p in zip(keys, primaries)}

    rows = []
    for match in store.matches.values():
        team_of = {ev.player_id: ev.team_id for ev in match.events}
        buckets: dict[tuple[int, int], list[np.ndarray]] = {}
        for pid, team in team_of.items():
            role = role_of.get((pid, match.match_id))
            vec = raw.get((pid, match.match_id))
            if role is None or vec is None:
                continue
            buckets.setdefault((role, team), []).append(vec.values)
        for (role, team), values in buckets.items():
            rows.append(
                (role, match.match_id, team, np.sum(values, axis=0),
                 match.outcomes[team], match.competition_id)
            )

    examples = []
    for role in sorted({row[0] for row in rows}):
        group = [row for row in rows if row[0] == role]
        stacked = np.stack([g[3] for g in group])
        lo = stacked.min(axis=0)
        span = stacked.max(axis=0) - lo
        safe = np.where(span > 0, span, 1.0)
        scaled_all = np.where(span > 0, (stacked - lo) / safe, 0.0)
        for (r, mid, team, _values, label, comp), scaled in zip(group, scaled_all):
            examples.append(
                TrainingExample(
                    features=scaled,
                    label=label,
                    match_id=mid,
                    team_id=team,
                    competition_id=comp,
                    role=r,
                )
            )
    return examples


def _cmd_nrmse(args: argparse.Namespace) -> int:
    a = load_bundle(args.bundle)
    b = load_bundle(args.other)
    print(f"nrmse = {compute_nrmse(a.weights.weights, b.weights.weights):.6f}")
    return 0


def _cmd_roles(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    rm = bundle.role_model
    print(f"k = {rm.k}  silhouette = {rm.silhouette:.4f}  fit points = {rm.n_fit_points}")
    print("k sweep:")
    for k, score in sorted(rm.k_sweep.items()):
        marker = " *" if k == rm.k else ""
        print(f"  k={k:<3d} silhouette={score:.4f}{marker}")
    print("centroids (x, y):")
    for i, (x, y) in enumerate(rm.centroids):
        print(f"  role {i}: ({x:.2f}, {y:.2f})")
    return 0


def _cmd_rate(args: argparse.Namespace) -> int:
    store = _load_store_arg(args.store)
    bundle = load_bundle(args.bundle)
    if args.update is not None:
        snapshot = load_snapshot(args.snapshot)
        snapshot = run_online_update(store, bundle, snapshot, args.update)
        print(f"folded match {args.update} into snapshot")
    else:
        snapshot = build_snapshot(store, bundle)
        print(f"built snapshot from {len(snapshot.processed)} matches")
    save_snapshot(snapshot, args.out)
    print(f"snapshot -> {args.out}  digest {snapshot_digest(snapshot)[:16]}")
    if args.ratings_csv:
        with open(args.ratings_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["player_id", "match_id", "r", "r_star", "goals", "primary_role", "roles"]
            )
            for rating in sorted(
                snapshot.all_ratings(), key=lambda m: (m.match_id, m.player_id)
            ):
                writer.writerow(
                    [
                        rating.player_id,
                        rating.match_id,
                        f"{rating.r:.6f}",
                        f"{rating.r_star:.6f}",
                        rating.goals,
                        "" if rating.primary_role is None else rating.primary_role,
                        " ".join(str(r) for r in sorted(rating.roles)),
                    ]
                )
        print(f"ratings -> {args.ratings_csv}")
    return 0


def _cmd_rank(args: argparse.Namespace) -> int:
    snapshot = load_snapshot(args.snapshot)
    names = _player_names(load_store(args.store) if args.store else None)
    ranking = snapshot.rankings.get(args.role)
    if ranking is None:
        print(f"role {args.role} does not exist", file=sys.stderr)
        return 1
    rows = ranking.entries[: args.limit]
    print(f"role {args.role} ({len(ranking.entries)} eligible, showing {len(rows)}):")
    for i, (pid, value) in enumerate(rows):
        print(f"  {i + 1:>3d}. {names.get(pid, f'player {pid}'):<24s} {value:.4f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["role", "rank", "player_id", "name", "rating"])
            for i, (pid, value) in enumerate(ranking.entries):
                writer.writerow(
                    [args.role, i + 1, pid, names.get(pid, f"player {pid}"), f"{value:.6f}"]
                )
        print(f"full ranking -> {args.csv}")
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    from .retrieval import search

    snapshot = load_snapshot(args.snapshot)
    bundle = load_bundle(args.bundle)
    names = _player_names(load_store(args.store) if args.store else None)
    tess = bundle.config.tessellation()
    zones = [int(z) for z in args.zones.split(",") if z.strip()]
    bad = [z for z in zones if z < 0 or z >= tess.n_zones]
    if bad:
        print(f"zone indices out of range: {bad}", file=sys.stderr)
        return 1
    query = np.zeros(tess.n_zones)
    query[zones] = 1.0
    form = snapshot.eligible_form(bundle.config.min_matches)
    vectors = {}
    for pid in form:
        counts = snapshot.zone_counts.get(pid)
        if counts is not None and counts.sum() > 0:
            vectors[pid] = zone_vector_from_counts(pid, counts, tess)
    if not vectors:
        print(
            f"no players with at least {bundle.config.min_matches} rated matches yet"
        )
        return 0
    result = search(query, vectors, form, top_k=args.top)
    print(f"query zones {zones} over {len(vectors)} eligible players:")
    for e in result.entries:
        print(
            f"  {names.get(e.player_id, f'player {e.player_id}'):<24s} "
            f"z={e.z:.4f} s={e.s:.4f} rbar={e.rating:.4f}"
        )
    return 0


def _cmd_versatility(args: argparse.Namespace) -> int:
    snapshot = load_snapshot(args.snapshot)
    bundle = load_bundle(args.bundle)
    names = _player_names(load_store(args.store) if args.store else None)
    if args.player is not None:
        v = snapshot_versatility(snapshot, bundle, args.player)
        if v is None:
            print(f"player {args.player} has no role history", file=sys.stderr)
            return 1
        print(f"{names.get(args.player, f'player {args.player}')}: v = {v.value:.4f}")
        for role, share in enumerate(v.role_shares):
            if share > 0:
                print(f"  role {role}: {share:.3f}")
        return 0
    scores = []
    for pid in snapshot.series:
        v = snapshot_versatility(snapshot, bundle, pid)
        if v is not None:
            scores.append((v.value, pid))
    scores.sort(reverse=True)
    rows = scores[: args.limit]
    print(f"most versatile ({len(scores)} players with role history):")
    for value, pid in rows:
        print(f"  {names.get(pid, f'player {pid}'):<24s} {value:.4f}")
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    if args.store:
        store = _load_store_arg(args.store)
        st = corpus_stats(store)
        print(f"corpus: {st.n_events} events, {st.n_matches} matches, {st.n_players} players")
        print(
            f"  events/match        mean={st.events_per_match.mean:.1f} "
            f"sd={st.events_per_match.std:.1f} "
            f"min={st.events_per_match.min:.0f} max={st.events_per_match.max:.0f}"
        )
        print(
            f"  events/player-match mean={st.events_per_player_match.mean:.1f} "
            f"sd={st.events_per_player_match.std:.1f}"
        )
        print(
            f"  inter-event gap (s) mean={st.inter_event_seconds.mean:.2f} "
            f"sd={st.inter_event_seconds.std:.2f}"
        )
        print("  event type shares:")
        for name, share in sorted(st.event_type_frequencies.items(), key=lambda t: -t[1]):
            print(f"    {name:<20s} {share:.4f}")
    if args.snapshot:
        snapshot = load_snapshot(args.snapshot)
        st = snapshot.stats()
        print(f"ratings: n={st.n_ratings} mean={st.mean:.4f} std={st.std:.4f}")
        print(f"  excellence threshold (mean + 2 sd): {st.excellence_threshold:.4f}")
        print(f"  share above threshold: {st.share_excellent:.4f}")
        print(f"  share within 2 sd:     {st.share_within_2std:.4f}")
    if not args.store and not args.snapshot:
        print("nothing to report: pass --store and/or --snapshot", file=sys.stderr)
        return 1
    return 0


def _read_expert_pairs(path: str) -> list[ExpertPair]:
    pairs = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip() == "player_a":
                continue
            a, b, l1, l2, l3 = (cell.strip() for cell in row[:5])
            pairs.append(ExpertPair(int(a), int(b), (l1, l2, l3)))
    return pairs


def _cmd_concordance(args: argparse.Namespace) -> int:
    snapshot = load_snapshot(args.snapshot)
    ranking = snapshot.rankings.get(args.role)
    if ranking is None:
        print(f"role {args.role} does not exist", file=sys.stderr)
        return 1
    pairs = _read_expert_pairs(args.pairs)
    rank_of = {pid: i + 1 for i, (pid, _) in enumerate(ranking.entries)}
    report = concordance(pairs, rank_of)
    print(f"{report.n_evaluated} pairs evaluated, {report.n_discarded} discarded, "
          f"{report.n_unranked} unranked")
    print(f"majority concordance:  {report.majority:.4f}")
    if report.unanimous is not None:
        print(f"unanimous concordance: {report.unanimous:.4f}")
    print("by rank distance:")
    for bucket, (rate, n) in report.by_distance.items():
        shown = "n/a" if rate is None else f"{rate:.4f}"
        print(f"  {bucket:<6s} {shown} ({n} pairs)")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .api import serve_api

    bundle = load_bundle(args.bundle)
    snapshot = load_snapshot(args.snapshot)
    names = _player_names(load_store(args.store) if args.store else None)
    print(f"serving on http://{args.host}:{args.port}")
    serve_api(
        bundle,
        snapshot,
        names,
        host=args.host,
        port=args.port,
        static_dir=args.static,
    )
    return 0


def _cmd_demo(args: argparse.Namespace) -> int:
    from .events import build_store
    from .synth import SynthConfig, make_corpus, write_corpus

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(f"generating a small synthetic corpus in {out} ...")
    corpus = make_corpus(SynthConfig(seed=args.seed, n_matches=args.matches))
    paths = write_corpus(corpus, out)
    store = build_store(corpus.events, corpus.matches, corpus.players)
    save_store(store, out / "store.json")
    config = PipelineConfig(min_matches=args.min_matches)
    print("learning (weights + roles) ...")
    bundle = run_learning_phase(store, config)
    save_bundle(bundle, out / "bundle.json")
    print("rating all matches ...")
    snapshot = build_snapshot(store, bundle)
    save_snapshot(snapshot, out / "snapshot.json")
    rep = bundle.training_report
    print(f"done. auc={rep.auc:.3f} k={bundle.role_model.k} "
          f"players rated={len(snapshot.series)}")
    print("files:")
    for name, p in {**paths, "store": out / "store.json",
                    "bundle": out / "bundle.json",
                    "snapshot": out / "snapshot.json"}.items():
        print(f"  {name}: {p}")
    print(f"next: pitchrank serve --bundle {out/'bundle.json'} "
          f"--snapshot {out/'snapshot.json'} --store {out/'store.json'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pitchrank",
        description="rate, rank and retrieve soccer players from event streams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and index a raw corpus")
    p.add_argument("--events", required=True)
    p.add_argument("--matches", required=True)
    p.add_argument("--players", required=True)
    p.add_argument("--competitions")
    p.add_argument("--strict", action="store_true",
                   help="fail on any bad record instead of dropping it")
    p.add_argument("--keep-goalkeepers", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("features", help="extract per player-match feature vectors")
    p.add_argument("--store", required=True)
    p.add_argument("--out", required=True, help="JSONL output path")
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--params", help="where to write normalization parameters")
    p.set_defaults(func=_cmd_features)

    p = sub.add_parser("train", help="run the full learning phase")
    p.add_argument("--store", required=True)
    p.add_argument("--config", help="flat key = value configuration file")
    p.add_argument("--scoped", choices=["competition", "role"],
                   help="also train per-scope weights and report nrmse vs global")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("nrmse", help="compare two bundles' weight vectors")
    p.add_argument("--bundle", required=True)
    p.add_argument("--other", required=True)
    p.set_defaults(func=_cmd_nrmse)

    p = sub.add_parser("roles", help="inspect a bundle's role model")
    p.add_argument("--bundle", required=True)
    p.set_defaults(func=_cmd_roles)

    p = sub.add_parser("rate", help="build or update a rating snapshot")
    p.add_argument("--store", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--update", type=int, metavar="MATCH_ID",
                   help="fold one match into an existing snapshot")
    p.add_argument("--snapshot", help="existing snapshot (required with --update)")
    p.add_argument("--ratings-csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_rate)

    p = sub.add_parser("rank", help="show a role's ranking")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--role", type=int, required=True)
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("--store", help="store file, used for player names")
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("search", help="find players active in given pitch zones")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--zones", required=True,
                   help="comma-separated zone indices, row-major from the defending corner")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--store")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("versatility", help="entropy of a player's role mix")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--player", type=int)
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("--store")
    p.set_defaults(func=_cmd_versatility)

    p = sub.add_parser("stats", help="corpus and rating distribution statistics")
    p.add_argument("--store")
    p.add_argument("--snapshot")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("concordance", help="agreement with expert pair judgments")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--role", type=int, required=True)
    p.add_argument("--pairs", required=True,
                   help="CSV of player_a,player_b,label1,label2,label3")
    p.set_defaults(func=_cmd_concordance)

    p = sub.add_parser("serve", help="serve the HTTP API")
    p.add_argument("--bundle", required=True)
    p.add_argument("--snapshot", required=True)
    p.add_argument("--store")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", help="directory of static UI files to mount at /")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("demo", help="generate a synthetic corpus and run the chain")
    p.add_argument("--out", default="demo-artifacts")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--matches", type=int, default=60)
    p.add_argument("--min-matches", type=int, default=3,
                   help="ranking eligibility threshold for the small demo corpus")
    p.set_defaults(func=_cmd_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
