"""Player ratings, rating series, rankings and their summary statistics.

The single-match rating is an affine map of the weighted feature sum onto
[0, 1]: with L the sum of negative weights and U the sum of positive ones,
a normalized vector x rates as (w.x - L) / (U - L).  A goal-aware variant
blends in the player's goals, and a per-player exponentially weighted
moving average tracks form across a season.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .features import CatalogMismatchError, ContractError, PerformanceVector
from .learning import UndefinedMetricError, WeightVector

__all__ = [
    "RatingConfig",
    "MatchRating",
    "RatingSeries",
    "RoleRanking",
    "RatingStats",
    "VersatilityScore",
    "ConcordanceReport",
    "ExpertPair",
    "rating_bounds",
    "rate_performance",
    "adjusted_rating",
    "ewma_update",
    "build_role_rankings",
    "versatility",
    "rating_stats",
    "alpha_sweep_correlation",
    "concordance",
]


@dataclass(frozen=True)
class RatingConfig:
    """Rating knobs: goal blend alpha, EWMA beta, eligibility thresholds."""

    alpha: float = 0.0
    beta: float = 0.1
    min_matches: int = 10
    x_pct: float = 40.0
    delta_s: float = 0.1

    def __post_init__(self) -> None:
        if not 0 <= self.alpha <= 1:
            raise ContractError(f"alpha must be in [0, 1], got {self.alpha}")
        if not 0 <= self.beta <= 1:
            raise ContractError(f"beta must be in [0, 1], got {self.beta}")
        if self.min_matches < 1:
            raise ContractError("min_matches must be at least 1")


def rating_bounds(weights: WeightVector) -> tuple[float, float]:
    """Lower/upper bounds of the weighted sum over the unit cube.

    L sums the negative weights (all such features at 1, the rest at 0),
    U sums the positive ones; together they bracket every possible score.
    """
    w = weights.weights
    lower = float(np.minimum(w, 0.0).sum())
    upper = float(np.maximum(w, 0.0).sum())
    if upper <= lower:
        raise ContractError("weights are all zero; rating bounds collapse")
    return lower, upper


def rate_performance(vector: PerformanceVector, weights: WeightVector) -> float:
    """Rate one normalized performance vector in [0, 1]."""
    if not vector.normalized:
        raise ContractError("rate_performance needs a normalized vector")
    if weights.catalog_hash and vector.catalog_hash != weights.catalog_hash:
        raise CatalogMismatchError("vector and weights were built on different catalogs")
    lower, upper = rating_bounds(weights)
    score = float(vector.values @ weights.weights)
    r = (score - lower) / (upper - lower)
    return min(max(r, 0.0), 1.0)


def adjusted_rating(r: float, goals: int, max_goals: int, alpha: float) -> float:
    """Blend the rating with normalized goals: alpha*goals/max + (1-alpha)*r."""
    if not 0 <= alpha <= 1:
        raise ContractError(f"alpha must be in [0, 1], got {alpha}")
    if max_goals < 1:
        raise ContractError(f"max_goals must be at least 1, got {max_goals}")
    if not 0 <= goals <= max_goals:
        raise ContractError(f"goals {goals} outside [0, {max_goals}]")
    if not 0 <= r <= 1:
        raise ContractError(f"rating {r} outside [0, 1]")
    return alpha * (goals / max_goals) + (1 - alpha) * r


def ewma_update(previous: float | None, value: float, beta: float) -> float:
    """One exponentially-weighted step; the first observation seeds the average."""
    if not 0 <= beta <= 1:
        raise ContractError(f"beta must be in [0, 1], got {beta}")
    if not 0 <= value <= 1:
        raise ContractError(f"rating {value} outside [0, 1]")
    if previous is None:
        return value
    return beta * value + (1 - beta) * previous


@dataclass(frozen=True)
class MatchRating:
    player_id: int
    match_id: int
    r: float
    r_star: float
    goals: int
    roles: frozenset[int]
    primary_role: int | None


@dataclass
class RatingSeries:
    """Chronological per-player ratings with running EWMA values."""

    player_id: int
    beta: float
    match_ids: list[int] = field(default_factory=list)
    r_values: list[float] = field(default_factory=list)
    r_star_values: list[float] = field(default_factory=list)
    ewma_r: float | None = None
    ewma_r_star: float | None = None

    def update(self, match_id: int, r: float, r_star: float) -> None:
        if self.match_ids and match_id <= self.match_ids[-1]:
            raise ContractError(
                f"player {self.player_id}: match {match_id} is not after {self.match_ids[-1]}"
            )
        self.match_ids.append(match_id)
        self.r_values.append(r)
        self.r_star_values.append(r_star)
        self.ewma_r = ewma_update(self.ewma_r, r, self.beta)
        self.ewma_r_star = ewma_update(self.ewma_r_star, r_star, self.beta)

    @property
    def match_count(self) -> int:
        return len(self.match_ids)


@dataclass(frozen=True)
class RoleRanking:
    """Eligible players of one role, best form first."""

    role: int
    entries: tuple[tuple[int, float], ...]  # (player_id, ewma rating) pairs
    min_matches: int
    x_pct: float

    def position(self, player_id: int) -> int | None:
        for i, (pid, _) in enumerate(self.entries):
            if pid == player_id:
                return i + 1
        return None


def build_role_rankings(
    series: dict[int, RatingSeries],
    player_roles: dict[int, frozenset[int]],
    k: int,
    config: RatingConfig,
    *,
    use_adjusted: bool = False,
) -> dict[int, RoleRanking]:
    """Rank every role's eligible players by their EWMA rating.

    Eligibility needs ``min_matches`` rated matches.  Ties break on
    ascending player id so rankings are reproducible.
    """
    rankings: dict[int, RoleRanking] = {}
    for role in range(k):
        rows = []
        for pid, roles in player_roles.items():
            if role not in roles:
                continue
            s = series.get(pid)
            if s is None or s.match_count < config.min_matches:
                continue
            value = s.ewma_r_star if use_adjusted else s.ewma_r
            assert value is not None
            rows.append((pid, float(value)))
        rows.sort(key=lambda t: (-t[1], t[0]))
        rankings[role] = RoleRanking(
            role=role, entries=tuple(rows), min_matches=config.min_matches, x_pct=config.x_pct
        )
    return rankings


@dataclass(frozen=True)
class VersatilityScore:
    player_id: int
    value: float
    role_shares: tuple[float, ...]
    n_matches: int


def versatility(
    player_id: int, match_role_sets: list[frozenset[int]], k: int
) -> VersatilityScore:
    """Normalized entropy of a player's role distribution across matches.

    A hybrid match splits its unit mass equally among its roles, so the
    shares always sum to one.  Single-role careers score 0; spreading
    uniformly over all k roles scores 1.
    """
    if not match_role_sets:
        raise ContractError("versatility needs at least one match")
    if k < 2:
        raise ContractError("versatility needs k >= 2 roles")
    shares = np.zeros(k)
    for roles in match_role_sets:
        if not roles:
            raise ContractError("encountered a match with an empty role set")
        if any(r < 0 or r >= k for r in roles):
            raise ContractError(f"role outside [0, {k}): {sorted(roles)}")
        for role in roles:
            shares[role] += 1.0 / len(roles)
    shares /= len(match_role_sets)
    nonzero = shares[shares > 0]
    entropy = float(-(nonzero * np.log(nonzero)).sum()) + 0.0
    return VersatilityScore(
        player_id=player_id,
        value=entropy / math.log(k) + 0.0,
        role_shares=tuple(float(v) for v in shares),
        n_matches=len(match_role_sets),
    )


@dataclass(frozen=True)
class RatingStats:
    """Population statistics of single-match ratings."""

    mean: float
    std: float
    excellence_threshold: float  # mean + 2 std
    n_ratings: int
    share_excellent: float
    share_within_2std: float
    excellent_by_player: dict[int, int]
    mean_std_correlation: float | None


def rating_stats(ratings: list[MatchRating]) -> RatingStats:
    """Distribution summary plus per-player excellence counts.

    The correlation pairs each player's mean rating with their (population)
    rating spread; it is None when degenerate (fewer than 2 players with
    2+ matches, or zero variance on either side).
    """
    if len(ratings) < 2:
        raise ContractError("rating statistics need at least 2 ratings")
    values = np.array([mr.r for mr in ratings])
    mean = float(values.mean())
    std = float(values.std())
    threshold = mean + 2 * std
    lo, hi = mean - 2 * std, mean + 2 * std

    per_player: dict[int, list[float]] = {}
    for mr in ratings:
        per_player.setdefault(mr.player_id, []).append(mr.r)
    excellent = {
        pid: int(sum(1 for v in vals if v > threshold)) for pid, vals in per_player.items()
    }
    excellent = {pid: c for pid, c in excellent.items() if c > 0}

    eligible = {pid: vals for pid, vals in per_player.items() if len(vals) >= 2}
    corr: float | None = None
    if len(eligible) >= 2:
        means = np.array([np.mean(v) for v in eligible.values()])
        spreads = np.array([np.std(v) for v in eligible.values()])
        if means.std() > 0 and spreads.std() > 0:
            corr = float(np.corrcoef(means, spreads)[0, 1])

    return RatingStats(
        mean=mean,
        std=std,
        excellence_threshold=threshold,
        n_ratings=len(ratings),
        share_excellent=float((values > threshold).mean()),
        share_within_2std=float(((values >= lo) & (values <= hi)).mean()),
        excellent_by_player=excellent,
        mean_std_correlation=corr,
    )


def alpha_sweep_correlation(
    per_player: dict[int, list[tuple[float, float]]],
    alphas: tuple[float, ...],
    beta: float,
    *,
    min_matches: int = 1,
) -> dict[float, float | None]:
    """Correlation between goal-blind and goal-blended form, per alpha.

    ``per_player`` maps player id to a chronological list of
    (rating, normalized goals) pairs.  For each alpha the goal-blended
    ratings are re-averaged with the same beta and the Pearson correlation
    against the alpha=0 form is reported; degenerate cases yield None.
    """
    baseline: dict[int, float] = {}
    for pid, rows in per_player.items():
        if len(rows) < min_matches:
            continue
        ewma: float | None = None
        for r, _ in rows:
            ewma = ewma_update(ewma, r, beta)
        assert ewma is not None
        baseline[pid] = ewma
    if len(baseline) < 2:
        raise ContractError("alpha sweep needs at least 2 eligible players")

    out: dict[float, float | None] = {}
    base = np.array([baseline[pid] for pid in sorted(baseline)])
    for alpha in alphas:
        if not 0 <= alpha <= 1:
            raise ContractError(f"alpha must be in [0, 1], got {alpha}")
        blended = []
        for pid in sorted(baseline):
            ewma = None
            for r, ng in per_player[pid]:
                blended_r = alpha * ng + (1 - alpha) * r
                ewma = ewma_update(ewma, blended_r, beta)
            blended.append(ewma)
        arr = np.array(blended)
        if base.std() == 0 or arr.std() == 0:
            out[alpha] = None
        else:
            out[alpha] = float(np.corrcoef(base, arr)[0, 1])
    return out


@dataclass(frozen=True)
class ExpertPair:
    """One player pair with three independent expert judgments.

    Each label is "first", "second" or "equal", naming which of (a, b) the
    expert thought played better.
    """

    player_a: int
    player_b: int
    labels: tuple[str, str, str]

    def __post_init__(self) -> None:
        for lab in self.labels:
            if lab not in ("first", "second", "equal"):
                raise ContractError(f"unknown expert label {lab!r}")


@dataclass(frozen=True)
class ConcordanceReport:
    majority: float
    unanimous: float | None
    by_distance: dict[str, tuple[float | None, int]]
    n_evaluated: int
    n_discarded: int
    n_unranked: int


_DISTANCE_BUCKETS = (("1-10", 1, 10), ("11-20", 11, 20), ("21+", 21, None))


def concordance(
    pairs: list[ExpertPair], rank_of: dict[int, int]
) -> ConcordanceReport:
    """Agreement between the engine's ranking and expert pair judgments.

    The engine always prefers the better-ranked player.  Pairs where all
    three experts said "equal", or where the two non-equal votes disagree,
    are discarded; pairs with an unranked player are skipped and counted.
    Majority concordance needs at least two experts on the engine's side;
    unanimous concordance is measured over unanimous pairs only.
    """
    if not pairs:
        raise ContractError("no expert pairs given")

    n_discarded = 0
    n_unranked = 0
    agree_majority = 0
    unan_total = 0
    unan_agree = 0
    bucket_hits: dict[str, list[int]] = {name: [0, 0] for name, _, _ in _DISTANCE_BUCKETS}

    evaluated = 0
    for pair in pairs:
        votes = {"first": 0, "second": 0, "equal": 0}
        for lab in pair.labels:
            votes[lab] += 1
        if votes["equal"] == 3 or (votes["first"] == 1 and votes["second"] == 1):
            n_discarded += 1
            continue
        rank_a = rank_of.get(pair.player_a)
        rank_b = rank_of.get(pair.player_b)
        if rank_a is None or rank_b is None or rank_a == rank_b:
            n_unranked += 1
            continue
        evaluated += 1
        engine_pick = "first" if rank_a < rank_b else "second"
        agrees = votes[engine_pick] >= 2
        agree_majority += int(agrees)

        if votes["first"] == 3 or votes["second"] == 3:
            unan_total += 1
            unan_agree += int(agrees)

        distance = abs(rank_a - rank_b)
        for name, lo, hi in _DISTANCE_BUCKETS:
            if distance >= lo and (hi is None or distance <= hi):
                bucket_hits[name][0] += int(agrees)
                bucket_hits[name][1] += 1
                break

    if evaluated == 0:
        raise UndefinedMetricError("every pair was discarded or unranked")

    by_distance = {
        name: ((hits / total if total else None), total)
        for name, (hits, total) in bucket_hits.items()
    }
    return ConcordanceReport(
        majority=agree_majority / evaluated,
        unanimous=(unan_agree / unan_total) if unan_total else None,
        by_distance=by_distance,
        n_evaluated=evaluated,
        n_discarded=n_discarded,
        n_unranked=n_unranked,
    )
