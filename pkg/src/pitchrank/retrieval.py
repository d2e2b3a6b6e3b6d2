"""Zone-based player retrieval.

The pitch is cut into a rows x cols grid; a player's zone vector is the
share of their events falling in each cell.  A query is a non-negative
weighting over cells; a player scores the dot product of their zone vector
with the query, and ranks by that relevance times their current form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .events import Event
from .features import ContractError

__all__ = [
    "ZoneTessellation",
    "PlayerZoneVector",
    "SearchEntry",
    "SearchResult",
    "build_player_zone_vector",
    "zone_vector_from_counts",
    "score_query",
    "search",
]


@dataclass(frozen=True)
class ZoneTessellation:
    """Uniform grid over the [0, 100] x [0, 100] pitch.

    Cells are half-open on their lower edges with the far pitch boundary
    closed, so every legal coordinate, (100, 100) included, lands in
    exactly one of the rows*cols zones.  Zone index is row-major:
    row * cols + col, with x selecting the column.
    """

    rows: int = 10
    cols: int = 10

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ContractError("tessellation needs at least one row and column")

    @property
    def n_zones(self) -> int:
        return self.rows * self.cols

    def zone_index(self, x: float, y: float) -> int:
        if not (0 <= x <= 100 and 0 <= y <= 100):
            raise ContractError(f"position ({x}, {y}) outside the pitch")
        col = min(int(x * self.cols / 100.0), self.cols - 1)
        row = min(int(y * self.rows / 100.0), self.rows - 1)
        return row * self.cols + col

    def zone_indices(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        cols = np.minimum((xs * self.cols / 100.0).astype(int), self.cols - 1)
        rows = np.minimum((ys * self.rows / 100.0).astype(int), self.rows - 1)
        return rows * self.cols + cols


@dataclass(frozen=True)
class PlayerZoneVector:
    """A player's event distribution over the grid; shares sum to 1."""

    player_id: int
    counts: np.ndarray
    shares: np.ndarray
    rows: int
    cols: int


def zone_vector_from_counts(
    player_id: int, counts: np.ndarray, tess: ZoneTessellation
) -> PlayerZoneVector:
    counts = np.asarray(counts, dtype=float)
    if counts.shape != (tess.n_zones,):
        raise ContractError(f"expected {tess.n_zones} zone counts, got {counts.shape}")
    if np.any(counts < 0):
        raise ContractError("zone counts cannot be negative")
    total = counts.sum()
    if total <= 0:
        raise ContractError(f"player {player_id} has no events to build a zone vector from")
    return PlayerZoneVector(
        player_id=player_id,
        counts=counts,
        shares=counts / total,
        rows=tess.rows,
        cols=tess.cols,
    )


def build_player_zone_vector(
    player_id: int, events: list[Event] | tuple[Event, ...], tess: ZoneTessellation
) -> PlayerZoneVector:
    """Histogram a player's event positions over the grid."""
    if not events:
        raise ContractError(f"player {player_id} has no events")
    for ev in events:
        if ev.player_id != player_id:
            raise ContractError(f"event {ev.event_id} belongs to player {ev.player_id}")
    xs = np.array([ev.position[0] for ev in events])
    ys = np.array([ev.position[1] for ev in events])
    counts = np.bincount(tess.zone_indices(xs, ys), minlength=tess.n_zones).astype(float)
    return zone_vector_from_counts(player_id, counts, tess)


def _validate_query(query: np.ndarray, n_zones: int) -> np.ndarray:
    query = np.asarray(query, dtype=float)
    if query.shape != (n_zones,):
        raise ContractError(f"query must have {n_zones} weights, got {query.shape}")
    if np.any(query < 0):
        raise ContractError("query weights cannot be negative")
    if not np.any(query > 0):
        raise ContractError("query selects no zones")
    return query


def score_query(vector: PlayerZoneVector, query: np.ndarray) -> float:
    """Relevance of one player to a query: plain dot product."""
    query = _validate_query(query, vector.shares.shape[0])
    return float(vector.shares @ query)


@dataclass(frozen=True)
class SearchEntry:
    player_id: int
    z: float  # relevance times form
    s: float  # relevance
    rating: float  # current form (EWMA)


@dataclass(frozen=True)
class SearchResult:
    entries: tuple[SearchEntry, ...]
    query: np.ndarray
    top_k: int


def search(
    query: np.ndarray,
    zone_vectors: dict[int, PlayerZoneVector],
    form: dict[int, float],
    top_k: int,
) -> SearchResult:
    """Full-scan retrieval: score every player with a form value, sort, cut.

    Ordering is by descending combined score with ascending player id as
    the tie break.  Players without a form rating are not eligible.
    """
    if top_k < 1:
        raise ContractError(f"top_k must be positive, got {top_k}")
    if not zone_vectors:
        raise ContractError("no zone vectors to search")
    n_zones = next(iter(zone_vectors.values())).shares.shape[0]
    query = _validate_query(query, n_zones)

    eligible = sorted(pid for pid in zone_vectors if pid in form)
    if not eligible:
        raise ContractError("no player has both a zone vector and a form rating")
    shares = np.stack([zone_vectors[pid].shares for pid in eligible])
    s = shares @ query
    ratings = np.array([form[pid] for pid in eligible])
    z = s * ratings
    order = np.lexsort((np.array(eligible), -z))
    entries = tuple(
        SearchEntry(
            player_id=eligible[i], z=float(z[i]), s=float(s[i]), rating=float(ratings[i])
        )
        for i in order[: min(top_k, len(eligible))]
    )
    return SearchResult(entries=entries, query=query, top_k=top_k)
