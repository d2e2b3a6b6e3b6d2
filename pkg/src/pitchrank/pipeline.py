"""Offline learning phase, online match updates and artifact persistence.

The learning phase turns a corpus into a :class:`ModelBundle` (catalog,
normalization, weights, role model).  The online phase folds matches into a
:class:`Snapshot` one at a time; a batch builder exists as an independently
coded path that must agree with the incremental one.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

import numpy as np

from .events import EventStore
from .features import (
    CatalogMismatchError,
    ContractError,
    FeatureCatalog,
    NormalizationParams,
    PerformanceVector,
    aggregate_team,
    apply_normalization,
    build_feature_catalog,
    extract_raw_performance,
    fit_normalization,
)
from .learning import (
    EvalReport,
    TrainConfig,
    TrainingExample,
    WeightVector,
    build_training_set,
    train_weights,
)
from .ratings import (
    MatchRating,
    RatingConfig,
    RatingSeries,
    RatingStats,
    RoleRanking,
    adjusted_rating,
    build_role_rankings,
    rate_performance,
    rating_stats,
    versatility,
)
from .retrieval import ZoneTessellation
from .roles import (
    CenterOfPerformance,
    RoleAssignment,
    RoleConfig,
    RoleModel,
    compute_center,
    fit_roles,
    soft_assign_many,
)

__all__ = [
    "PipelineConfig",
    "ModelBundle",
    "Snapshot",
    "PipelineError",
    "LearningPhaseError",
    "DuplicateMatchError",
    "ConfigError",
    "run_learning_phase",
    "build_snapshot",
    "run_online_update",
    "snapshot_versatility",
    "save_bundle",
    "load_bundle",
    "save_snapshot",
    "load_snapshot",
    "bundle_digest",
    "snapshot_digest",
]


class PipelineError(Exception):
    """Base error for pipeline orchestration."""


class LearningPhaseError(PipelineError):
    """A learning stage failed; carries the stage name and the cause."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"learning phase failed at stage {stage!r}: {cause}")
        self.stage = stage
        self.cause = cause


class DuplicateMatchError(PipelineError):
    """The match was already folded into the snapshot."""


class ConfigError(PipelineError):
    """Bad configuration file or value."""


@dataclass(frozen=True)
class PipelineConfig:
    """Every tunable in one flat, file-loadable record."""

    seed: int = 0
    alpha: float = 0.0
    beta: float = 0.1
    delta_s: float = 0.1
    x_pct: float = 40.0
    min_matches: int = 10
    min_role_events: int = 3
    k_min: int = 2
    k_max: int = 20
    restarts: int = 10
    cost_grid: tuple[float, ...] = (0.01, 0.1, 1.0, 10.0, 100.0)
    folds: int = 5
    holdout: float = 0.2
    grid_rows: int = 10
    grid_cols: int = 10
    keep_goalkeepers: bool = False
    silhouette_cap: int = 4000
    sample_cap_per_cluster: int = 10000

    def __post_init__(self) -> None:
        # Delegate range checks to the component configs they feed.
        self.rating_config()
        self.role_config()
        self.train_config()
        if self.min_role_events < 1:
            raise ConfigError("min_role_events must be at least 1")
        if self.grid_rows < 1 or self.grid_cols < 1:
            raise ConfigError("grid dimensions must be positive")

    def rating_config(self) -> RatingConfig:
        try:
            return RatingConfig(
                alpha=self.alpha,
                beta=self.beta,
                min_matches=self.min_matches,
                x_pct=self.x_pct,
                delta_s=self.delta_s,
            )
        except ContractError as exc:
            raise ConfigError(str(exc)) from exc

    def role_config(self) -> RoleConfig:
        try:
            return RoleConfig(
                k_min=self.k_min,
                k_max=self.k_max,
                restarts=self.restarts,
                seed=self.seed,
                silhouette_cap=self.silhouette_cap,
                sample_cap_per_cluster=self.sample_cap_per_cluster,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def train_config(self) -> TrainConfig:
        try:
            return TrainConfig(
                cost_grid=self.cost_grid,
                folds=self.folds,
                holdout=self.holdout,
                seed=self.seed,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def tessellation(self) -> ZoneTessellation:
        return ZoneTessellation(rows=self.grid_rows, cols=self.grid_cols)

    def to_file(self, path: str | Path) -> None:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = ",".join(repr(v) for v in value)
            lines.append(f"{f.name} = {value}")
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        """Parse a flat key = value file; unknown keys are an error."""
        known = {f.name: f for f in fields(cls)}
        values: dict[str, Any] = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
            key, _, text = line.partition("=")
            key, text = key.strip(), text.strip()
            if key not in known:
                raise ConfigError(f"line {lineno}: unknown configuration key {key!r}")
            values[key] = _parse_config_value(known[key].type, text, key)
        try:
            return cls(**values)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc


def _parse_config_value(type_name: str, text: str, key: str) -> Any:
    try:
        if type_name == "int":
            return int(text)
        if type_name == "float":
            return float(text)
        if type_name == "bool":
            if text.lower() in ("true", "1", "yes"):
                return True
            if text.lower() in ("false", "0", "no"):
                return False
            raise ValueError(f"not a boolean: {text!r}")
        if type_name.startswith("tuple"):
            return tuple(float(part) for part in text.split(",") if part.strip())
        return text
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {exc}") from exc


@dataclass(frozen=True)
class ModelBundle:
    """Everything the online phase needs, learned once offline."""

    catalog: FeatureCatalog
    normalization: NormalizationParams
    weights: WeightVector
    role_model: RoleModel
    config: PipelineConfig
    training_report: EvalReport

    def __post_init__(self) -> None:
        if self.normalization.catalog_hash != self.catalog.catalog_hash:
            raise CatalogMismatchError("normalization was fitted on a different catalog")
        if self.weights.catalog_hash != self.catalog.catalog_hash:
            raise CatalogMismatchError("weights were trained on a different catalog")

    @property
    def max_goals(self) -> int:
        return max(1, self.normalization.max_goals)


def _norm_vectors_for_match(
    store: EventStore, bundle: ModelBundle, match_id: int
) -> dict[int, PerformanceVector]:
    match = store.matches[match_id]
    by_player: dict[int, list] = {}
    for ev in match.events:
        by_player.setdefault(ev.player_id, []).append(ev)
    out = {}
    for pid, evs in by_player.items():
        raw = extract_raw_performance(evs, bundle.catalog)
        out[pid] = apply_normalization(raw, bundle.normalization)
    return out


def run_learning_phase(
    store: EventStore, config: PipelineConfig | None = None
) -> ModelBundle:
    """Corpus in, model bundle out: catalog, normalization, weights, roles."""
    config = config or PipelineConfig()
    if not store.events:
        raise LearningPhaseError("ingest", ContractError("the store holds no events"))

    catalog = build_feature_catalog()

    try:
        raw_vectors: dict[tuple[int, int], PerformanceVector] = {
            key: extract_raw_performance(evs, catalog)
            for key, evs in store.player_match_slices()
        }
    except ContractError as exc:
        raise LearningPhaseError("feature-extraction", exc) from exc

    try:
        normalization = fit_normalization(list(raw_vectors.values()))
    except ContractError as exc:
        raise LearningPhaseError("normalization", exc) from exc

    try:
        team_perfs = []
        for match in store.matches.values():
            team_of = {ev.player_id: ev.team_id for ev in match.events}
            rosters: dict[int, list[PerformanceVector]] = {}
            for pid, team in team_of.items():
                vec = raw_vectors.get((pid, match.match_id))
                if vec is not None:
                    rosters.setdefault(team, []).append(vec)
            for team_id, vectors in rosters.items():
                team_perfs.append(
                    aggregate_team(vectors, match.outcomes[team_id], team_id)
                )
        examples = build_training_set(store, team_perfs)
        weights, report = train_weights(
            examples, config.train_config(), catalog_hash=catalog.catalog_hash
        )
    except (ContractError, ValueError) as exc:
        raise LearningPhaseError("learning", exc) from exc

    try:
        centers = [
            compute_center(evs)
            for _, evs in store.player_match_slices()
            if len(evs) >= config.min_role_events
        ]
        points = np.array([[c.x, c.y] for c in centers])
        role_model = fit_roles(points, config.role_config())
    except (ContractError, ValueError) as exc:
        raise LearningPhaseError("role-detection", exc) from exc

    return ModelBundle(
        catalog=catalog,
        normalization=normalization,
        weights=weights,
        role_model=role_model,
        config=config,
        training_report=report,
    )


@dataclass
class Snapshot:
    """Rolling state of the online phase.

    Holds per-player rating series, per-match role assignments, zone counts
    and the current rankings.  Updates never mutate an existing snapshot;
    they return a new one sharing unchanged pieces.
    """

    processed: tuple[int, ...] = ()
    series: dict[int, RatingSeries] = field(default_factory=dict)
    match_roles: dict[int, dict[int, RoleAssignment]] = field(default_factory=dict)
    match_goals: dict[int, dict[int, int]] = field(default_factory=dict)
    zone_counts: dict[int, np.ndarray] = field(default_factory=dict)
    player_roles: dict[int, frozenset[int]] = field(default_factory=dict)
    rankings: dict[int, RoleRanking] = field(default_factory=dict)

    def eligible_form(self, min_matches: int) -> dict[int, float]:
        out = {}
        for pid, s in self.series.items():
            if s.match_count >= min_matches and s.ewma_r is not None:
                out[pid] = float(s.ewma_r)
        return out

    def all_ratings(self) -> list[MatchRating]:
        ratings = []
        for pid, s in self.series.items():
            for mid, r, r_star in zip(s.match_ids, s.r_values, s.r_star_values):
                assignment = self.match_roles.get(mid, {}).get(pid)
                ratings.append(
                    MatchRating(
                        player_id=pid,
                        match_id=mid,
                        r=r,
                        r_star=r_star,
                        goals=self.match_goals.get(mid, {}).get(pid, 0),
                        roles=assignment.roles if assignment else frozenset(),
                        primary_role=assignment.primary if assignment else None,
                    )
                )
        return ratings

    def stats(self) -> RatingStats:
        return rating_stats(self.all_ratings())

    def role_history(self, player_id: int) -> list[frozenset[int]]:
        history = []
        for mid in self.processed:
            assignment = self.match_roles.get(mid, {}).get(player_id)
            if assignment is not None:
                history.append(assignment.roles)
        return history


def _assignments_of(snapshot: Snapshot, player_id: int) -> list[RoleAssignment]:
    out = []
    for mid in snapshot.processed:
        a = snapshot.match_roles.get(mid, {}).get(player_id)
        if a is not None:
            out.append(a)
    return out


def _player_role_set(
    snapshot: Snapshot, player_id: int, x_pct: float
) -> frozenset[int]:
    assignments = _assignments_of(snapshot, player_id)
    if not assignments:
        return frozenset()
    from .roles import assign_player_roles

    return assign_player_roles(assignments, x_pct)


def _match_update_parts(
    store: EventStore, bundle: ModelBundle, match_id: int
) -> tuple[dict[int, float], dict[int, int], dict[int, RoleAssignment], dict[int, np.ndarray]]:
    """Per-player r, goals, role assignment and zone counts for one match."""
    config = bundle.config
    match = store.matches[match_id]
    vectors = _norm_vectors_for_match(store, bundle, match_id)

    r_of: dict[int, float] = {
        pid: rate_performance(vec, bundle.weights) for pid, vec in vectors.items()
    }

    goals_of: dict[int, int] = {}
    for (pid, _team), n in match.player_goals.items():
        goals_of[pid] = goals_of.get(pid, 0) + n

    tess = config.tessellation()
    zones: dict[int, np.ndarray] = {}
    centers: list[CenterOfPerformance] = []
    for pid in vectors:
        evs = store.player_match_events(pid, match_id)
        xs = np.array([ev.position[0] for ev in evs])
        ys = np.array([ev.position[1] for ev in evs])
        zones[pid] = np.bincount(
            tess.zone_indices(xs, ys), minlength=tess.n_zones
        ).astype(float)
        if len(evs) >= config.min_role_events:
            centers.append(compute_center(evs))

    assignments: dict[int, RoleAssignment] = {}
    if centers:
        pts = np.array([[c.x, c.y] for c in centers])
        primaries, sils = soft_assign_many(pts, bundle.role_model, config.delta_s)
        for c, primary, row in zip(centers, primaries, sils):
            hybrids = frozenset(
                int(j)
                for j in range(bundle.role_model.k)
                if j != primary and row[j] <= config.delta_s
            )
            assignments[c.player_id] = RoleAssignment(
                player_id=c.player_id,
                match_id=match_id,
                primary=int(primary),
                hybrids=hybrids,
                silhouettes=tuple(float(v) for v in row),
                delta_s=config.delta_s,
            )
    return r_of, goals_of, assignments, zones


def run_online_update(
    store: EventStore, bundle: ModelBundle, snapshot: Snapshot, match_id: int
) -> Snapshot:
    """Fold one new match into the snapshot; returns a new snapshot.

    Only the participating players' series, role sets and affected role
    rankings are rebuilt.  Processing the same match twice is an error.
    """
    if match_id in snapshot.processed:
        raise DuplicateMatchError(f"match {match_id} is already in the snapshot")
    if match_id not in store.matches:
        raise PipelineError(f"match {match_id} is not in the store")
    config = bundle.config

    r_of, goals_of, assignments, zones = _match_update_parts(store, bundle, match_id)

    new_series = dict(snapshot.series)
    new_zone_counts = dict(snapshot.zone_counts)
    max_goals = bundle.max_goals
    for pid, r in r_of.items():
        goals = min(goals_of.get(pid, 0), max_goals)
        r_star = adjusted_rating(r, goals, max_goals, config.alpha)
        prev = snapshot.series.get(pid)
        s = (
            RatingSeries(
                player_id=pid,
                beta=config.beta,
                match_ids=list(prev.match_ids),
                r_values=list(prev.r_values),
                r_star_values=list(prev.r_star_values),
                ewma_r=prev.ewma_r,
                ewma_r_star=prev.ewma_r_star,
            )
            if prev is not None
            else RatingSeries(player_id=pid, beta=config.beta)
        )
        s.update(match_id, r, r_star)
        new_series[pid] = s
        base = snapshot.zone_counts.get(pid)
        new_zone_counts[pid] = zones[pid] + (base if base is not None else 0.0)

    new_match_roles = dict(snapshot.match_roles)
    new_match_roles[match_id] = assignments
    new_match_goals = dict(snapshot.match_goals)
    new_match_goals[match_id] = dict(goals_of)

    updated = Snapshot(
        processed=snapshot.processed + (match_id,),
        series=new_series,
        match_roles=new_match_roles,
        match_goals=new_match_goals,
        zone_counts=new_zone_counts,
        player_roles=dict(snapshot.player_roles),
        rankings=dict(snapshot.rankings),
    )

    affected_roles: set[int] = set()
    for pid in r_of:
        before = snapshot.player_roles.get(pid, frozenset())
        after = _player_role_set(updated, pid, config.x_pct)
        if after:
            updated.player_roles[pid] = after
        else:
            updated.player_roles.pop(pid, None)
        affected_roles |= before | after

    if affected_roles:
        fresh = build_role_rankings(
            updated.series,
            updated.player_roles,
            bundle.role_model.k,
            config.rating_config(),
        )
        for role in affected_roles:
            updated.rankings[role] = fresh[role]
    for role in range(bundle.role_model.k):
        updated.rankings.setdefault(
            role,
            RoleRanking(
                role=role,
                entries=(),
                min_matches=config.min_matches,
                x_pct=config.x_pct,
            ),
        )
    return updated


def build_snapshot(store: EventStore, bundle: ModelBundle) -> Snapshot:
    """Batch path: process every match chronologically in bulk.

    Independently coded from :func:`run_online_update`; the two must agree
    on every number, which the test suite checks.
    """
    config = bundle.config
    order = store.match_ids()

    # Bulk per-match parts, then one sequential EWMA pass per player.
    parts = {mid: _match_update_parts(store, bundle, mid) for mid in order}

    series: dict[int, RatingSeries] = {}
    zone_counts: dict[int, np.ndarray] = {}
    match_roles: dict[int, dict[int, RoleAssignment]] = {}
    match_goals: dict[int, dict[int, int]] = {}
    max_goals = bundle.max_goals
    for mid in order:
        r_of, goals_of, assignments, zones = parts[mid]
        match_roles[mid] = assignments
        match_goals[mid] = dict(goals_of)
        for pid, r in r_of.items():
            goals = min(goals_of.get(pid, 0), max_goals)
            r_star = adjusted_rating(r, goals, max_goals, config.alpha)
            s = series.get(pid)
            if s is None:
                s = RatingSeries(player_id=pid, beta=config.beta)
                series[pid] = s
            s.update(mid, r, r_star)
            if pid in zone_counts:
                zone_counts[pid] = zone_counts[pid] + zones[pid]
            else:
                zone_counts[pid] = zones[pid]

    snapshot = Snapshot(
        processed=tuple(order),
        series=series,
        match_roles=match_roles,
        match_goals=match_goals,
        zone_counts=zone_counts,
    )
    for pid in series:
        role_set = _player_role_set(snapshot, pid, config.x_pct)
        if role_set:
            snapshot.player_roles[pid] = role_set
    snapshot.rankings.update(
        build_role_rankings(
            snapshot.series,
            snapshot.player_roles,
            bundle.role_model.k,
            config.rating_config(),
        )
    )
    return snapshot


def snapshot_versatility(snapshot: Snapshot, bundle: ModelBundle, player_id: int):
    """Versatility of one player from their per-match role history."""
    history = snapshot.role_history(player_id)
    if not history:
        return None
    return versatility(player_id, history, bundle.role_model.k)


# ---------------------------------------------------------------------------
# Persistence


_BUNDLE_VERSION = 1
_SNAPSHOT_VERSION = 1


def _canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _config_payload(config: PipelineConfig) -> dict[str, Any]:
    out = {}
    for f in fields(config):
        value = getattr(config, f.name)
        out[f.name] = list(value) if isinstance(value, tuple) else value
    return out


def bundle_payload(bundle: ModelBundle) -> dict[str, Any]:
    rm = bundle.role_model
    return {
        "version": _BUNDLE_VERSION,
        "kind": "model-bundle",
        "catalog": {
            "names": list(bundle.catalog.names),
            "hash": bundle.catalog.catalog_hash,
        },
        "normalization": {
            "min": bundle.normalization.minimum.tolist(),
            "max": bundle.normalization.maximum.tolist(),
            "maxGoals": bundle.normalization.max_goals,
        },
        "weights": {
            "values": bundle.weights.weights.tolist(),
            "intercept": bundle.weights.intercept,
            "scope": bundle.weights.scope,
            "cost": bundle.weights.cost,
            "dualityGap": bundle.weights.duality_gap,
        },
        "roleModel": {
            "k": rm.k,
            "centroids": rm.centroids.tolist(),
            "silhouette": rm.silhouette,
            "kSweep": {str(k): v for k, v in rm.k_sweep.items()},
            "samplePoints": rm.sample_points.tolist(),
            "sampleLabels": rm.sample_labels.tolist(),
            "seed": rm.seed,
            "nFitPoints": rm.n_fit_points,
        },
        "config": _config_payload(bundle.config),
        "trainingReport": {
            "auc": bundle.training_report.auc,
            "f1": bundle.training_report.f1,
            "accuracy": bundle.training_report.accuracy,
            "nExamples": bundle.training_report.n_examples,
            "positiveRate": bundle.training_report.positive_rate,
            "cvAucByCost": {str(k): v for k, v in bundle.training_report.cv_auc_by_cost.items()},
            "selectedCost": bundle.training_report.selected_cost,
        },
    }


def bundle_digest(bundle: ModelBundle) -> str:
    return hashlib.sha256(_canonical_json(bundle_payload(bundle)).encode()).hexdigest()


def save_bundle(bundle: ModelBundle, path: str | Path) -> None:
    Path(path).write_text(json.dumps(bundle_payload(bundle)))


def load_bundle(path: str | Path) -> ModelBundle:
    payload = json.loads(Path(path).read_text())
    if payload.get("version") != _BUNDLE_VERSION or payload.get("kind") != "model-bundle":
        raise PipelineError(f"not a model bundle file: {path}")
    catalog = build_feature_catalog()
    if payload["catalog"]["hash"] != catalog.catalog_hash:
        raise CatalogMismatchError(
            "bundle was built against a different feature catalog"
        )
    cfg_payload = dict(payload["config"])
    if "cost_grid" in cfg_payload:
        cfg_payload["cost_grid"] = tuple(cfg_payload["cost_grid"])
    config = PipelineConfig(**cfg_payload)
    norm = NormalizationParams(
        minimum=np.array(payload["normalization"]["min"], dtype=float),
        maximum=np.array(payload["normalization"]["max"], dtype=float),
        max_goals=int(payload["normalization"]["maxGoals"]),
        catalog_hash=payload["catalog"]["hash"],
    )
    weights = WeightVector(
        weights=np.array(payload["weights"]["values"], dtype=float),
        intercept=float(payload["weights"]["intercept"]),
        catalog_hash=payload["catalog"]["hash"],
        scope=payload["weights"]["scope"],
        cost=float(payload["weights"]["cost"]),
        duality_gap=float(payload["weights"]["dualityGap"]),
    )
    rm_payload = payload["roleModel"]
    role_model = RoleModel(
        k=int(rm_payload["k"]),
        centroids=np.array(rm_payload["centroids"], dtype=float),
        silhouette=float(rm_payload["silhouette"]),
        k_sweep={int(k): float(v) for k, v in rm_payload["kSweep"].items()},
        sample_points=np.array(rm_payload["samplePoints"], dtype=float),
        sample_labels=np.array(rm_payload["sampleLabels"], dtype=int),
        seed=int(rm_payload["seed"]),
        n_fit_points=int(rm_payload["nFitPoints"]),
        config=config.role_config(),
    )
    tr = payload["trainingReport"]
    report = EvalReport(
        auc=tr["auc"],
        f1=tr["f1"],
        accuracy=tr["accuracy"],
        n_examples=tr["nExamples"],
        positive_rate=tr["positiveRate"],
        cv_auc_by_cost={float(k): v for k, v in tr["cvAucByCost"].items()},
        selected_cost=tr["selectedCost"],
    )
    return ModelBundle(
        catalog=catalog,
        normalization=norm,
        weights=weights,
        role_model=role_model,
        config=config,
        training_report=report,
    )


def snapshot_payload(snapshot: Snapshot) -> dict[str, Any]:
    return {
        "version": _SNAPSHOT_VERSION,
        "kind": "snapshot",
        "processed": list(snapshot.processed),
        "series": {
            str(pid): {
                "beta": s.beta,
                "matchIds": list(s.match_ids),
                "r": list(s.r_values),
                "rStar": list(s.r_star_values),
                "ewmaR": s.ewma_r,
                "ewmaRStar": s.ewma_r_star,
            }
            for pid, s in sorted(snapshot.series.items())
        },
        "matchRoles": {
            str(mid): {
                str(pid): {
                    "primary": a.primary,
                    "hybrids": sorted(a.hybrids),
                    "silhouettes": list(a.silhouettes),
                    "deltaS": a.delta_s,
                }
                for pid, a in sorted(assignments.items())
            }
            for mid, assignments in sorted(snapshot.match_roles.items())
        },
        "matchGoals": {
            str(mid): {str(pid): g for pid, g in sorted(goals.items())}
            for mid, goals in sorted(snapshot.match_goals.items())
        },
        "zoneCounts": {
            str(pid): counts.tolist() for pid, counts in sorted(snapshot.zone_counts.items())
        },
        "playerRoles": {
            str(pid): sorted(roles) for pid, roles in sorted(snapshot.player_roles.items())
        },
        "rankings": {
            str(role): {
                "entries": [[pid, value] for pid, value in r.entries],
                "minMatches": r.min_matches,
                "xPct": r.x_pct,
            }
            for role, r in sorted(snapshot.rankings.items())
        },
    }


def snapshot_digest(snapshot: Snapshot) -> str:
    return hashlib.sha256(_canonical_json(snapshot_payload(snapshot)).encode()).hexdigest()


def save_snapshot(snapshot: Snapshot, path: str | Path) -> None:
    Path(path).write_text(json.dumps(snapshot_payload(snapshot)))


def load_snapshot(path: str | Path) -> Snapshot:
    payload = json.loads(Path(path).read_text())
    if payload.get("version") != _SNAPSHOT_VERSION or payload.get("kind") != "snapshot":
        raise PipelineError(f"not a snapshot file: {path}")
    series = {}
    for pid_text, s in payload["series"].items():
        series[int(pid_text)] = RatingSeries(
            player_id=int(pid_text),
            beta=float(s["beta"]),
            match_ids=[int(m) for m in s["matchIds"]],
            r_values=[float(v) for v in s["r"]],
            r_star_values=[float(v) for v in s["rStar"]],
            ewma_r=s["ewmaR"],
            ewma_r_star=s["ewmaRStar"],
        )
    match_roles = {}
    for mid_text, assignments in payload["matchRoles"].items():
        mid = int(mid_text)
        match_roles[mid] = {
            int(pid_text): RoleAssignment(
                player_id=int(pid_text),
                match_id=mid,
                primary=int(a["primary"]),
                hybrids=frozenset(int(h) for h in a["hybrids"]),
                silhouettes=tuple(float(v) for v in a["silhouettes"]),
                delta_s=float(a["deltaS"]),
            )
            for pid_text, a in assignments.items()
        }
    rankings = {
        int(role_text): RoleRanking(
            role=int(role_text),
            entries=tuple((int(pid), float(v)) for pid, v in r["entries"]),
            min_matches=int(r["minMatches"]),
            x_pct=float(r["xPct"]),
        )
        for role_text, r in payload["rankings"].items()
    }
    return Snapshot(
        processed=tuple(int(m) for m in payload["processed"]),
        series=series,
        match_roles=match_roles,
        match_goals={
            int(mid): {int(pid): int(g) for pid, g in goals.items()}
            for mid, goals in payload["matchGoals"].items()
        },
        zone_counts={
            int(pid): np.array(counts, dtype=float)
            for pid, counts in payload["zoneCounts"].items()
        },
        player_roles={
            int(pid): frozenset(int(r) for r in roles)
            for pid, roles in payload["playerRoles"].items()
        },
        rankings=rankings,
    )
