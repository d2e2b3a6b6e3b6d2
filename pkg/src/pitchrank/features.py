"""Per-player-per-match feature extraction over the fixed 76-descriptor catalog.

Each descriptor is an (event type, subtype, tag) triple; a performance vector
counts how many of a player's events in one match match each descriptor.
An event carrying several catalog tags counts once per matching descriptor.
Goals are deliberately kept out of the catalog and tracked separately.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace

import numpy as np

from .events import Event, EventType, ValidationError, canonical_subtype, event_has_tag

__all__ = [
    "FeatureDescriptor",
    "FeatureCatalog",
    "PerformanceVector",
    "TeamPerformance",
    "NormalizationParams",
    "CatalogMismatchError",
    "ContractError",
    "build_feature_catalog",
    "extract_raw_performance",
    "fit_normalization",
    "apply_normalization",
    "aggregate_team",
    "CATALOG_FEATURE_NAMES",
]

_TYPE_LABELS = {
    EventType.DUEL: "duel",
    EventType.FOUL: "foul",
    EventType.FREE_KICK: "free kick",
    EventType.TOUCH: "others on the ball",
    EventType.PASS: "pass",
    EventType.SHOT: "shot",
}
_LABEL_TO_TYPE = {v: k for k, v in _TYPE_LABELS.items()}

# The full catalog, written out explicitly because the tag combinations are
# irregular (penalties only ever count when missed, simulation never draws a
# straight red, plain touches carry outcome tags instead of accuracy, and so
# on).  Order is canonical: grouped by type, then subtype, then tag.
CATALOG_FEATURE_NAMES: tuple[str, ...] = (
    "duel-air duel-accurate",
    "duel-air duel-not accurate",
    "duel-ground attacking duel-accurate",
    "duel-ground attacking duel-not accurate",
    "duel-ground defending duel-accurate",
    "duel-ground defending duel-not accurate",
    "duel-ground loose ball duel-accurate",
    "duel-ground loose ball duel-not accurate",
    "foul-hand foul-red card",
    "foul-hand foul-second yellow card",
    "foul-hand foul-yellow card",
    "foul-late card foul-yellow card",
    "foul-normal foul-red card",
    "foul-normal foul-second yellow card",
    "foul-normal foul-yellow card",
    "foul-out of game foul-red card",
    "foul-out of game foul-second yellow card",
    "foul-out of game foul-yellow card",
    "foul-protest foul-red card",
    "foul-protest foul-second yellow card",
    "foul-protest foul-yellow card",
    "foul-simulation foul-second yellow card",
    "foul-simulation foul-yellow card",
    "foul-violent foul-red card",
    "foul-violent foul-second yellow card",
    "foul-violent foul-yellow card",
    "free kick-corner free kick-accurate",
    "free kick-corner free kick-not accurate",
    "free kick-cross free kick-accurate",
    "free kick-cross free kick-not accurate",
    "free kick-normal free kick-accurate",
    "free kick-normal free kick-not accurate",
    "free kick-penalty free kick-not accurate",
    "free kick-shot free kick-accurate",
    "free kick-shot free kick-not accurate",
    "free kick-throw in free kick-accurate",
    "free kick-throw in free kick-not accurate",
    "others on the ball-accelleration-accurate",
    "others on the ball-accelleration-not accurate",
    "others on the ball-clearance-accurate",
    "others on the ball-clearance-not accurate",
    "others on the ball-touch-assist",
    "others on the ball-touch-counter attack",
    "others on the ball-touch-dangerous ball lost",
    "others on the ball-touch-feint",
    "others on the ball-touch-interception",
    "others on the ball-touch-missed ball",
    "others on the ball-touch-opportunity",
    "pass-cross pass-accurate",
    "pass-cross pass-assist",
    "pass-cross pass-key pass",
    "pass-cross pass-not accurate",
    "pass-hand pass-accurate",
    "pass-hand pass-not accurate",
    "pass-head pass-accurate",
    "pass-head pass-assist",
    "pass-head pass-key pass",
    "pass-head pass-not accurate",
    "pass-high pass-accurate",
    "pass-high pass-assist",
    "pass-high pass-key pass",
    "pass-high pass-not accurate",
    "pass-launch pass-accurate",
    "pass-launch pass-assist",
    "pass-launch pass-key pass",
    "pass-launch pass-not accurate",
    "pass-simple pass-accurate",
    "pass-simple pass-assist",
    "pass-simple pass-key pass",
    "pass-simple pass-not accurate",
    "pass-smart pass-accurate",
    "pass-smart pass-assist",
    "pass-smart pass-key pass",
    "pass-smart pass-not accurate",
    "shot-shot-accurate",
    "shot-shot-not accurate",
)


class ContractError(ValueError):
    """An operation was handed arguments that break its contract."""


class CatalogMismatchError(ContractError):
    """Artifacts built against different feature catalogs were mixed."""


@dataclass(frozen=True, slots=True)
class FeatureDescriptor:
    """One countable (event type, subtype, tag) combination."""

    name: str
    event_type: EventType
    subtype: str
    tag: str


def _parse_descriptor(name: str) -> FeatureDescriptor:
    for label, etype in _LABEL_TO_TYPE.items():
        if name.startswith(label + "-"):
            rest = name[len(label) + 1 :]
            subtype, tag = rest.split("-", 1)
            return FeatureDescriptor(name=name, event_type=etype, subtype=subtype, tag=tag)
    raise ValueError(f"unparseable feature name {name!r}")


@dataclass(frozen=True)
class FeatureCatalog:
    """Ordered, immutable list of descriptors plus a content hash.

    The hash identifies the catalog inside every downstream artifact so that
    vectors, weights and models can refuse to mix across catalog versions.
    """

    descriptors: tuple[FeatureDescriptor, ...]
    catalog_hash: str
    _index: dict[tuple[EventType, str], tuple[tuple[str, int], ...]] = field(repr=False, default=())

    def __len__(self) -> int:
        return len(self.descriptors)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.descriptors)

    def position(self, name: str) -> int:
        for i, d in enumerate(self.descriptors):
            if d.name == name:
                return i
        raise KeyError(name)


def build_feature_catalog() -> FeatureCatalog:
    """Build the canonical 76-descriptor catalog."""
    descriptors = tuple(_parse_descriptor(name) for name in CATALOG_FEATURE_NAMES)
    digest = hashlib.sha256("\n".join(CATALOG_FEATURE_NAMES).encode()).hexdigest()
    index: dict[tuple[EventType, str], list[tuple[str, int]]] = {}
    for i, d in enumerate(descriptors):
        index.setdefault((d.event_type, d.subtype), []).append((d.tag, i))
    frozen = {k: tuple(v) for k, v in index.items()}
    return FeatureCatalog(descriptors=descriptors, catalog_hash=digest, _index=frozen)


@dataclass(frozen=True)
class PerformanceVector:
    """Feature counts for one (player, match) slice.

    ``values`` holds raw counts until normalization, then reals in [0, 1].
    ``goals_scored`` counts goal-tagged events and never enters ``values``.
    """

    player_id: int
    match_id: int
    values: np.ndarray
    goals_scored: int
    catalog_hash: str
    normalized: bool = False


@dataclass(frozen=True)
class TeamPerformance:
    """Roster-summed raw counts for one (team, match) with its outcome label."""

    team_id: int
    match_id: int
    values: np.ndarray
    outcome: int
    roster: tuple[int, ...]
    catalog_hash: str


def extract_raw_performance(
    events: tuple[Event, ...] | list[Event],
    catalog: FeatureCatalog,
    *,
    player_id: int | None = None,
    match_id: int | None = None,
) -> PerformanceVector:
    """Count catalog descriptor matches over one player-match event slice.

    The slice must be homogeneous: one player, one match.  An empty slice is
    allowed only when both ids are given explicitly.
    """
    if not events:
        if player_id is None or match_id is None:
            raise ContractError("empty slice needs explicit player_id and match_id")
        return PerformanceVector(
            player_id=player_id,
            match_id=match_id,
            values=np.zeros(len(catalog)),
            goals_scored=0,
            catalog_hash=catalog.catalog_hash,
        )

    players = {ev.player_id for ev in events}
    matches = {ev.match_id for ev in events}
    if len(players) != 1 or len(matches) != 1:
        raise ContractError(
            f"mixed slice: players {sorted(players)}, matches {sorted(matches)}"
        )
    pid, mid = players.pop(), matches.pop()
    if player_id is not None and player_id != pid:
        raise ContractError(f"slice belongs to player {pid}, not {player_id}")
    if match_id is not None and match_id != mid:
        raise ContractError(f"slice belongs to match {mid}, not {match_id}")

    values = np.zeros(len(catalog))
    goals = 0
    for ev in events:
        for tag, idx in catalog._index.get((ev.event_type, ev.subtype), ()):
            if event_has_tag(ev, tag):
                values[idx] += 1
        if event_has_tag(ev, "goal"):
            goals += 1
    return PerformanceVector(
        player_id=pid,
        match_id=mid,
        values=values,
        goals_scored=goals,
        catalog_hash=catalog.catalog_hash,
    )


@dataclass(frozen=True)
class NormalizationParams:
    """Per-feature min/max fitted on a corpus, plus the corpus goal maximum."""

    minimum: np.ndarray
    maximum: np.ndarray
    max_goals: int
    catalog_hash: str

    def __post_init__(self) -> None:
        if self.minimum.shape != self.maximum.shape:
            raise ContractError("min/max shape mismatch")
        if np.any(self.maximum < self.minimum):
            raise ContractError("normalization requires max >= min featurewise")


def fit_normalization(vectors: list[PerformanceVector]) -> NormalizationParams:
    """Fit featurewise min/max (and the goal maximum) over raw vectors."""
    if not vectors:
        raise ContractError("cannot fit normalization on an empty corpus")
    hashes = {v.catalog_hash for v in vectors}
    if len(hashes) != 1:
        raise CatalogMismatchError(f"vectors span several catalogs: {sorted(hashes)}")
    if any(v.normalized for v in vectors):
        raise ContractError("normalization must be fitted on raw counts")
    stacked = np.stack([v.values for v in vectors])
    return NormalizationParams(
        minimum=stacked.min(axis=0),
        maximum=stacked.max(axis=0),
        max_goals=max(v.goals_scored for v in vectors),
        catalog_hash=hashes.pop(),
    )


def apply_normalization(
    vector: PerformanceVector, params: NormalizationParams
) -> PerformanceVector:
    """Min-max scale a raw vector into [0, 1].

    Constant features map to 0; values outside the fitted range clip to the
    unit interval so unseen extremes cannot push ratings out of bounds.
    """
    if vector.catalog_hash != params.catalog_hash:
        raise CatalogMismatchError("vector and normalization catalog hashes differ")
    if vector.normalized:
        raise ContractError("vector is already normalized")
    span = params.maximum - params.minimum
    safe = np.where(span > 0, span, 1.0)
    scaled = (vector.values - params.minimum) / safe
    scaled = np.where(span > 0, scaled, 0.0)
    return replace(vector, values=np.clip(scaled, 0.0, 1.0), normalized=True)


def aggregate_team(
    vectors: list[PerformanceVector], outcome: int, team_id: int
) -> TeamPerformance:
    """Sum a roster's raw vectors into one team-match performance.

    Aggregation happens on raw counts; scaling for the learning step is
    fitted later at team level, where the ranges actually live.
    """
    if not vectors:
        raise ContractError("cannot aggregate an empty roster")
    if outcome not in (0, 1):
        raise ContractError(f"outcome must be 0 or 1, got {outcome!r}")
    hashes = {v.catalog_hash for v in vectors}
    if len(hashes) != 1:
        raise CatalogMismatchError("roster vectors span several catalogs")
    if any(v.normalized for v in vectors):
        raise ContractError("team aggregation wants raw counts, not normalized vectors")
    matches = {v.match_id for v in vectors}
    if len(matches) != 1:
        raise ContractError(f"roster vectors span matches {sorted(matches)}")
    return TeamPerformance(
        team_id=team_id,
        match_id=matches.pop(),
        values=np.stack([v.values for v in vectors]).sum(axis=0),
        outcome=outcome,
        roster=tuple(sorted(v.player_id for v in vectors)),
        catalog_hash=hashes.pop(),
    )
