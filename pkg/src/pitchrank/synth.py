"""Synthetic corpus generation with planted ground truth.

The generator plants a known weight vector over the feature catalog and
derives match outcomes from it, so learning can be validated end to end:

1. per team-match, each catalog feature gets a Poisson count whose rate is
   modulated by a per-match dominance draw (pushing one team's
   positive-weight features up and the other's down) plus idiosyncratic
   noise, which keeps the features individually informative;
2. team counts are min-max normalized exactly the way the learner will do
   it, latent scores are the planted weights dotted with those features,
   and the score gap (plus noise, minus a draw margin) decides the winner;
3. counts are materialized as wire-format event records, with goals tagged
   onto accurate shots consistently with the decided scoreline.

Player event positions scatter around per-player home spots drawn from a
fixed set of role archetypes, so centers of performance form clusters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .events import TAG_NAME_TO_ID
from .features import CATALOG_FEATURE_NAMES, build_feature_catalog
from .ratings import ExpertPair

__all__ = [
    "SynthConfig",
    "SynthCorpus",
    "ROLE_ARCHETYPES",
    "base_team_rates",
    "make_corpus",
    "write_corpus",
    "make_blob_centers",
    "make_expert_pairs",
    "make_zone_population",
]

# Home spots for the eight positional archetypes, in pitch coordinates with
# the attack running left to right.  Pairwise distances stay above 24 units.
ROLE_ARCHETYPES: tuple[tuple[float, float], ...] = (
    (25.0, 30.0),
    (25.0, 70.0),
    (45.0, 15.0),
    (45.0, 50.0),
    (45.0, 85.0),
    (70.0, 30.0),
    (70.0, 70.0),
    (88.0, 50.0),
)

# Which archetype each of the 12 outfield roster slots leans toward.
_SLOT_ARCHETYPES = (0, 0, 1, 1, 2, 3, 3, 4, 5, 6, 6, 7)

# Team-level expected counts per match for each descriptor group, keyed by
# (type label, subtype) with per-tag values.  Rough soccer proportions:
# simple passes dominate, cards are rare (but floored so that every feature
# actually varies and stays learnable).
_BASE_RATES: dict[tuple[str, str], dict[str, float]] = {
    ("duel", "air duel"): {"accurate": 3.0, "not accurate": 3.0},
    ("duel", "ground attacking duel"): {"accurate": 3.5, "not accurate": 3.5},
    ("duel", "ground defending duel"): {"accurate": 3.5, "not accurate": 3.5},
    ("duel", "ground loose ball duel"): {"accurate": 2.5, "not accurate": 2.5},
    ("foul", "hand foul"): {"red card": 0.8, "second yellow card": 0.8, "yellow card": 1.0},
    ("foul", "late card foul"): {"yellow card": 1.0},
    ("foul", "normal foul"): {"red card": 0.8, "second yellow card": 0.9, "yellow card": 1.8},
    ("foul", "out of game foul"): {"red card": 0.8, "second yellow card": 0.8, "yellow card": 1.0},
    ("foul", "protest foul"): {"red card": 0.8, "second yellow card": 0.8, "yellow card": 1.0},
    ("foul", "simulation foul"): {"second yellow card": 0.8, "yellow card": 1.0},
    ("foul", "violent foul"): {"red card": 0.8, "second yellow card": 0.8, "yellow card": 1.0},
    ("free kick", "corner free kick"): {"accurate": 2.5, "not accurate": 1.5},
    ("free kick", "cross free kick"): {"accurate": 1.4, "not accurate": 1.0},
    ("free kick", "normal free kick"): {"accurate": 6.0, "not accurate": 1.5},
    ("free kick", "penalty free kick"): {"not accurate": 0.8},
    ("free kick", "shot free kick"): {"accurate": 0.9, "not accurate": 1.1},
    ("free kick", "throw in free kick"): {"accurate": 5.0, "not accurate": 1.2},
    ("others on the ball", "accelleration"): {"accurate": 2.0, "not accurate": 1.0},
    ("others on the ball", "clearance"): {"accurate": 3.0, "not accurate": 1.2},
    ("others on the ball", "touch"): {
        "assist": 0.8,
        "counter attack": 1.2,
        "dangerous ball lost": 2.0,
        "feint": 1.0,
        "interception": 3.0,
        "missed ball": 1.0,
        "opportunity": 0.9,
    },
    ("pass", "cross pass"): {"accurate": 3.0, "assist": 0.8, "key pass": 1.0, "not accurate": 2.5},
    ("pass", "hand pass"): {"accurate": 1.5, "not accurate": 0.8},
    ("pass", "head pass"): {"accurate": 3.5, "assist": 0.8, "key pass": 0.8, "not accurate": 1.8},
    ("pass", "high pass"): {"accurate": 5.0, "assist": 0.8, "key pass": 0.8, "not accurate": 2.2},
    ("pass", "launch pass"): {"accurate": 2.0, "assist": 0.8, "key pass": 0.8, "not accurate": 1.4},
    ("pass", "simple pass"): {"accurate": 38.0, "assist": 0.9, "key pass": 1.2, "not accurate": 5.0},
    ("pass", "smart pass"): {"accurate": 1.6, "assist": 0.8, "key pass": 1.0, "not accurate": 1.5},
    ("shot", "shot"): {"accurate": 6.0, "not accurate": 5.5},
}

_SUBTYPE_IDS = {
    name: i + 10
    for i, name in enumerate(sorted({n.rsplit("-", 1)[0] for n in CATALOG_FEATURE_NAMES}))
}


def base_team_rates() -> np.ndarray:
    """Expected team-level count per match for every catalog feature."""
    catalog = build_feature_catalog()
    type_labels = {
        "duel": "duel",
        "foul": "foul",
        "free kick": "free kick",
        "touch": "others on the ball",
        "pass": "pass",
        "shot": "shot",
    }
    rates = np.empty(len(catalog))
    for i, d in enumerate(catalog.descriptors):
        group = _BASE_RATES[(type_labels[d.event_type.value], d.subtype)]
        rates[i] = group[d.tag]
    return rates


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 7
    n_matches: int = 500
    teams_per_competition: int = 10
    n_competitions: int = 2
    outfield_roster: int = 12
    active_outfield: int = 10
    # Dominance coupling between the latent match swing and feature rates,
    # idiosyncratic per-feature noise, outcome noise (relative to the latent
    # score-gap spread) and the target share of drawn matches.
    dominance: float = 0.05
    idiosyncratic: float = 0.45
    outcome_noise: float = 0.1
    draw_rate: float = 0.25
    rate_floor: float = 4.0
    gain_cap: float = 0.8
    home_jitter: float = 2.0
    event_scatter: float = 7.0
    goalkeeper_events: int = 6
    # Players per team that alternate between two pitch homes across
    # matches; they give role hybrids and versatility something to find.
    versatile_per_team: int = 2
    season_id: int = 2024


@dataclass
class SynthCorpus:
    """Generated wire records plus every piece of planted ground truth."""

    events: list[dict]
    matches: list[dict]
    players: list[dict]
    w_star: np.ndarray
    team_counts: np.ndarray  # (2 * n_matches, 76) in match order, home first
    team_rows: list[tuple[int, int]]  # (match_id, team_id) per row
    latent_scores: np.ndarray
    outcomes: dict[int, dict[int, int]]
    player_homes: dict[int, tuple[float, float]]
    player_archetypes: dict[int, int]
    player_alt_archetypes: dict[int, int]
    config: SynthConfig = field(repr=False, default=None)  # type: ignore[assignment]


def _normalize_columns(counts: np.ndarray) -> np.ndarray:
    lo = counts.min(axis=0)
    span = counts.max(axis=0) - lo
    safe = np.where(span > 0, span, 1.0)
    x = (counts - lo) / safe
    return np.where(span > 0, x, 0.0)


def make_corpus(config: SynthConfig | None = None) -> SynthCorpus:
    """Generate a full synthetic corpus with planted outcome weights."""
    cfg = config or SynthConfig()
    rng = np.random.default_rng(cfg.seed)
    catalog = build_feature_catalog()
    n_feat = len(catalog)
    rates = base_team_rates()
    w_star = rng.normal(0.0, 1.0, n_feat)

    n_teams = cfg.teams_per_competition * cfg.n_competitions
    team_ids = [100 + t for t in range(n_teams)]
    competition_of = {
        100 + t: 1 + t // cfg.teams_per_competition for t in range(n_teams)
    }

    # Rosters: slot 0 is the goalkeeper, slots 1..outfield_roster are outfield.
    players: list[dict] = []
    player_homes: dict[int, tuple[float, float]] = {}
    player_archetypes: dict[int, int] = {}
    player_alt_archetypes: dict[int, int] = {}
    alt_homes: dict[int, tuple[float, float]] = {}
    roster: dict[int, list[int]] = {}
    gk_of: dict[int, int] = {}
    for team in team_ids:
        ids = []
        for slot in range(cfg.outfield_roster + 1):
            pid = 10000 + (team - 100) * 100 + slot
            is_gk = slot == 0
            players.append(
                {
                    "playerId": pid,
                    "shortName": f"player-{pid}",
                    "role": {"code2": "GK" if is_gk else "FP"},
                    "currentTeamId": team,
                }
            )
            if is_gk:
                gk_of[team] = pid
                player_homes[pid] = (6.0, 50.0)
                player_archetypes[pid] = -1
            else:
                arch = _SLOT_ARCHETYPES[(slot - 1) % len(_SLOT_ARCHETYPES)]
                cx, cy = ROLE_ARCHETYPES[arch]
                home = (
                    float(np.clip(cx + rng.normal(0, cfg.home_jitter), 1, 99)),
                    float(np.clip(cy + rng.normal(0, cfg.home_jitter), 1, 99)),
                )
                player_homes[pid] = home
                player_archetypes[pid] = arch
                # The last few outfield slots alternate between two homes.
                if cfg.outfield_roster - slot < cfg.versatile_per_team:
                    alt = int(rng.integers(0, len(ROLE_ARCHETYPES)))
                    if alt == arch:
                        alt = (alt + 3) % len(ROLE_ARCHETYPES)
                    ax, ay = ROLE_ARCHETYPES[alt]
                    alt_homes[pid] = (
                        float(np.clip(ax + rng.normal(0, cfg.home_jitter), 1, 99)),
                        float(np.clip(ay + rng.normal(0, cfg.home_jitter), 1, 99)),
                    )
                    player_alt_archetypes[pid] = alt
                ids.append(pid)
        roster[team] = ids

    # Fixture list: random same-competition pairings, home side first.
    fixtures: list[tuple[int, int, int]] = []  # (match_id, home, away)
    per_comp = [
        [t for t in team_ids if competition_of[t] == c + 1] for c in range(cfg.n_competitions)
    ]
    for i in range(cfg.n_matches):
        comp_teams = per_comp[i % cfg.n_competitions]
        home, away = rng.choice(comp_teams, size=2, replace=False)
        fixtures.append((1000 + i, int(home), int(away)))

    # Stage 1: per-team-match feature counts with planted structure.  One
    # match-level swing lifts the stronger side's rates and depresses the
    # other side's.  A calibration pass without the swing measures each
    # feature's count spread so the swing gain can be set per feature: the
    # response in min-max normalized units then tracks the planted weight in
    # both sign and relative size, which is what makes the weights learnable
    # back out of the corpus.
    n_rows = 2 * cfg.n_matches
    floored = np.maximum(rates, cfg.rate_floor)
    dominance = np.clip(rng.normal(0.0, 1.0, cfg.n_matches), -2.0, 2.0)
    eta = rng.normal(0.0, cfg.idiosyncratic, (n_rows, n_feat))
    base_log = np.log(floored)[None, :]
    calib = rng.poisson(np.exp(base_log + eta)).astype(float)
    spread = calib.max(axis=0) - calib.min(axis=0)
    spread = np.where(spread > 0, spread, 1.0)
    means = np.maximum(calib.mean(axis=0), 1e-9)
    w_unit = w_star / float(np.abs(w_star).mean())
    gain = np.clip(cfg.dominance * w_unit * spread / means, -cfg.gain_cap, cfg.gain_cap)
    swing = np.repeat(dominance, 2)[:, None] * np.tile([1.0, -1.0], cfg.n_matches)[:, None]
    log_rate = base_log + swing * gain[None, :] + eta
    team_counts = rng.poisson(np.exp(log_rate)).astype(float)

    # Stage 2: outcomes from the planted linear model on normalized counts.
    X = _normalize_columns(team_counts)
    latent = X @ w_star
    gaps = latent[0::2] - latent[1::2]
    noise = rng.normal(0.0, cfg.outcome_noise * float(gaps.std()), cfg.n_matches)
    noisy = gaps + noise
    margin = float(np.quantile(np.abs(noisy), cfg.draw_rate))

    shot_acc_idx = catalog.position("shot-shot-accurate")
    outcomes: dict[int, dict[int, int]] = {}
    scores: dict[int, dict[int, int]] = {}
    extra_shots: dict[tuple[int, int], int] = {}
    for i, (match_id, home, away) in enumerate(fixtures):
        acc_home = int(team_counts[2 * i, shot_acc_idx])
        acc_away = int(team_counts[2 * i + 1, shot_acc_idx])
        if noisy[i] > margin:
            won, lost = home, away
            g_w = 1 + int(rng.poisson(0.9))
            if acc_home < g_w:
                extra_shots[(match_id, home)] = g_w - acc_home
            g_l = min(int(rng.poisson(0.8)), g_w - 1, acc_away)
            scores[match_id] = {won: g_w, lost: max(g_l, 0)}
            outcomes[match_id] = {won: 1, lost: 0}
        elif noisy[i] < -margin:
            won, lost = away, home
            g_w = 1 + int(rng.poisson(0.9))
            if acc_away < g_w:
                extra_shots[(match_id, away)] = g_w - acc_away
            g_l = min(int(rng.poisson(0.8)), g_w - 1, acc_home)
            scores[match_id] = {won: g_w, lost: max(g_l, 0)}
            outcomes[match_id] = {won: 1, lost: 0}
        else:
            g = min(int(rng.poisson(0.85)), acc_home, acc_away)
            scores[match_id] = {home: g, away: g}
            outcomes[match_id] = {home: 0, away: 0}

    # Stage 3: materialize events.
    events: list[dict] = []
    matches: list[dict] = []
    team_rows: list[tuple[int, int]] = []
    tag_ids = [TAG_NAME_TO_ID[d.tag] for d in catalog.descriptors]
    type_names = {
        "duel": "Duel",
        "foul": "Foul",
        "free kick": "Free kick",
        "touch": "Others on the ball",
        "pass": "Pass",
        "shot": "Shot",
    }
    event_id = 500_000
    for i, (match_id, home, away) in enumerate(fixtures):
        match_events: list[dict] = []
        for side, team in ((0, home), (1, away)):
            row = 2 * i + side
            team_rows.append((match_id, team))
            counts = team_counts[row].astype(int).copy()
            counts[shot_acc_idx] += extra_shots.get((match_id, team), 0)
            team_counts[row, shot_acc_idx] = counts[shot_acc_idx]

            active = rng.choice(roster[team], size=cfg.active_outfield, replace=False)
            involvement = rng.dirichlet(np.full(cfg.active_outfield, 2.0))
            match_home = {}
            for raw_pid in active:
                pid = int(raw_pid)
                alt = alt_homes.get(pid)
                use_alt = alt is not None and rng.random() < 0.5
                match_home[pid] = alt if use_alt else player_homes[pid]
            accurate_shot_events: list[dict] = []
            for f in range(n_feat):
                c = counts[f]
                if c == 0:
                    continue
                d = catalog.descriptors[f]
                owners = rng.choice(cfg.active_outfield, size=c, p=involvement)
                for owner in owners:
                    pid = int(active[owner])
                    hx, hy = match_home[pid]
                    x = float(np.clip(hx + rng.normal(0, cfg.event_scatter), 0, 100))
                    y = float(np.clip(hy + rng.normal(0, cfg.event_scatter), 0, 100))
                    record = {
                        "id": 0,  # assigned after sorting
                        "eventName": type_names[d.event_type.value],
                        "subEventName": d.subtype[:1].upper() + d.subtype[1:],
                        "subEventId": _SUBTYPE_IDS[f"{type_names[d.event_type.value].lower()}-{d.subtype}"],
                        "eventSec": float(rng.uniform(0.0, 2880.0)),
                        "matchPeriod": "1H" if rng.random() < 0.5 else "2H",
                        "playerId": pid,
                        "matchId": match_id,
                        "teamId": team,
                        "positions": [{"x": round(x, 2), "y": round(y, 2)}],
                        "tags": [{"id": tag_ids[f]}],
                    }
                    match_events.append(record)
                    if f == shot_acc_idx:
                        accurate_shot_events.append(record)

            # Tag the decided number of goals onto accurate shots.
            n_goals = scores[match_id][team]
            if n_goals > 0:
                chosen = rng.choice(len(accurate_shot_events), size=n_goals, replace=False)
                for j in chosen:
                    accurate_shot_events[j]["tags"].append({"id": TAG_NAME_TO_ID["goal"]})

            # A few goalkeeper events; excluded on ingest by default.
            gk = gk_of[team]
            for _ in range(cfg.goalkeeper_events):
                match_events.append(
                    {
                        "id": 0,
                        "eventName": "Pass",
                        "subEventName": "Simple pass",
                        "subEventId": _SUBTYPE_IDS["pass-simple pass"],
                        "eventSec": float(rng.uniform(0.0, 2880.0)),
                        "matchPeriod": "1H" if rng.random() < 0.5 else "2H",
                        "playerId": gk,
                        "matchId": match_id,
                        "teamId": team,
                        "positions": [
                            {
                                "x": round(float(np.clip(6 + rng.normal(0, 4), 0, 100)), 2),
                                "y": round(float(np.clip(50 + rng.normal(0, 12), 0, 100)), 2),
                            }
                        ],
                        "tags": [{"id": TAG_NAME_TO_ID["accurate"]}],
                    }
                )

        match_events.sort(key=lambda r: (r["matchPeriod"], r["eventSec"]))
        for rec in match_events:
            rec["id"] = event_id
            event_id += 1
        events.extend(match_events)

        matches.append(
            {
                "matchId": match_id,
                "competitionId": competition_of[home],
                "seasonId": cfg.season_id,
                "teamsData": {
                    str(home): {"side": "home", "score": scores[match_id][home]},
                    str(away): {"side": "away", "score": scores[match_id][away]},
                },
            }
        )

    return SynthCorpus(
        events=events,
        matches=matches,
        players=players,
        w_star=w_star,
        team_counts=team_counts,
        team_rows=team_rows,
        latent_scores=latent,
        outcomes=outcomes,
        player_homes=player_homes,
        player_archetypes=player_archetypes,
        player_alt_archetypes=player_alt_archetypes,
        config=cfg,
    )


def write_corpus(corpus: SynthCorpus, out_dir) -> dict[str, str]:
    """Write the corpus as events/matches/players JSON files; returns paths."""
    import json
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    for name, records in (
        ("events", corpus.events),
        ("matches", corpus.matches),
        ("players", corpus.players),
    ):
        path = out / f"{name}.json"
        path.write_text(json.dumps(records))
        paths[name] = str(path)
    return paths


def make_blob_centers(
    seed: int = 0,
    points_per_blob: int = 1000,
    sigma: float = 4.0,
    centers: tuple[tuple[float, float], ...] = ROLE_ARCHETYPES,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Isotropic Gaussian blobs on the pitch; returns (points, labels, centers)."""
    rng = np.random.default_rng(seed)
    arr = np.asarray(centers, dtype=float)
    points = []
    labels = []
    for j, c in enumerate(arr):
        pts = c + rng.normal(0.0, sigma, (points_per_blob, 2))
        points.append(np.clip(pts, 0.0, 100.0))
        labels.append(np.full(points_per_blob, j))
    return np.vstack(points), np.concatenate(labels), arr


def make_expert_pairs(
    seed: int = 0,
    n_players: int = 220,
    pairs_per_bucket: int = 90,
    expert_noise: float = 0.05,
    equal_band: float = 0.02,
) -> tuple[list[ExpertPair], dict[int, int], np.ndarray]:
    """Noisy expert judgments over players with evenly spaced true strengths.

    Returns (pairs, rank_of, strengths); the engine ranking to validate is
    simply the true strength order, so closer ranks mean genuinely harder
    comparisons.
    """
    rng = np.random.default_rng(seed)
    strengths = np.linspace(1.0, 0.0, n_players)
    rank_of = {pid: pid + 1 for pid in range(n_players)}  # rank 1 is best

    buckets = ((1, 10), (11, 20), (21, min(60, n_players - 1)))
    pairs: list[ExpertPair] = []
    for lo, hi in buckets:
        for _ in range(pairs_per_bucket):
            d = int(rng.integers(lo, hi + 1))
            a = int(rng.integers(0, n_players - d))
            b = a + d
            labels = []
            for _ in range(3):
                perceived = strengths[a] - strengths[b] + rng.normal(0.0, expert_noise)
                if abs(perceived) <= equal_band:
                    labels.append("equal")
                elif perceived > 0:
                    labels.append("first")
                else:
                    labels.append("second")
            pairs.append(ExpertPair(player_a=a, player_b=b, labels=tuple(labels)))
    return pairs, rank_of, strengths


def make_zone_population(
    seed: int = 0, n_players: int = 500, rows: int = 10, cols: int = 10
) -> tuple[dict[int, np.ndarray], dict[int, float]]:
    """Random zone-count vectors and form ratings for retrieval tests."""
    rng = np.random.default_rng(seed)
    counts = {}
    form = {}
    n_zones = rows * cols
    for pid in range(n_players):
        hot = rng.integers(2, 9)
        zones = rng.choice(n_zones, size=hot, replace=False)
        vec = np.zeros(n_zones)
        vec[zones] = rng.integers(1, 60, size=hot).astype(float)
        counts[pid] = vec
        form[pid] = float(rng.uniform(0.05, 0.95))
    return counts, form
