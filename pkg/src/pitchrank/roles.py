"""Role discovery from centers of performance.

A player's center of performance in a match is the mean pitch position of
their events.  Clustering all centers with k-means (k chosen by mean
silhouette over a sweep) yields the role model; per-match assignments are
soft: next to the nearest-centroid role, every cluster whose silhouette
penalty is within ``delta_s`` of it also counts, producing hybrid roles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .events import Event
from .features import ContractError

__all__ = [
    "CenterOfPerformance",
    "RoleModel",
    "RoleAssignment",
    "RoleConfig",
    "UndefinedSilhouetteError",
    "compute_center",
    "kmeans",
    "silhouette_score",
    "fit_roles",
    "soft_assign",
    "soft_assign_many",
    "assign_player_roles",
]


class UndefinedSilhouetteError(ValueError):
    """Silhouette is undefined (fewer than 2 clusters, or singletons only)."""


@dataclass(frozen=True, slots=True)
class CenterOfPerformance:
    """Mean event position of one player in one match."""

    player_id: int
    match_id: int
    x: float
    y: float
    event_count: int

    @property
    def point(self) -> tuple[float, float]:
        return (self.x, self.y)


def compute_center(events: tuple[Event, ...] | list[Event]) -> CenterOfPerformance:
    """Average the positions of a homogeneous player-match event slice."""
    if not events:
        raise ContractError("cannot compute a center over zero events")
    players = {ev.player_id for ev in events}
    matches = {ev.match_id for ev in events}
    if len(players) != 1 or len(matches) != 1:
        raise ContractError(
            f"mixed slice: players {sorted(players)}, matches {sorted(matches)}"
        )
    xs = np.array([ev.position[0] for ev in events], dtype=float)
    ys = np.array([ev.position[1] for ev in events], dtype=float)
    return CenterOfPerformance(
        player_id=players.pop(),
        match_id=matches.pop(),
        x=float(xs.mean()),
        y=float(ys.mean()),
        event_count=len(events),
    )


def _kmeans_once(
    points: np.ndarray, k: int, rng: np.random.Generator, max_iter: int, tol: float
) -> tuple[np.ndarray, np.ndarray, float]:
    n = len(points)
    # Spread seeding: each next centroid is drawn with probability
    # proportional to squared distance from the ones already chosen.
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[rng.integers(n)]
    d2 = ((points - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0:
            centroids[j] = points[rng.integers(n)]
        else:
            centroids[j] = points[rng.choice(n, p=d2 / total)]
        d2 = np.minimum(d2, ((points - centroids[j]) ** 2).sum(axis=1))

    labels = np.zeros(n, dtype=int)
    for _ in range(max_iter):
        dists = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        labels = dists.argmin(axis=1)
        new_centroids = centroids.copy()
        for j in range(k):
            members = points[labels == j]
            if len(members):
                new_centroids[j] = members.mean(axis=0)
            else:
                # Re-seed an empty cluster on the point farthest from its centroid.
                worst = dists[np.arange(n), labels].argmax()
                new_centroids[j] = points[worst]
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if shift < tol:
            break
    dists = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    labels = dists.argmin(axis=1)
    inertia = float(dists[np.arange(n), labels].sum())
    return labels, centroids, inertia


def kmeans(
    points: np.ndarray,
    k: int,
    *,
    restarts: int = 10,
    seed: int | tuple[int, ...] = 0,
    max_iter: int = 300,
    tol: float = 1e-6,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Best-of-``restarts`` k-means; returns (labels, centroids, inertia).

    Deterministic for a fixed seed.  Clusters come out relabeled in
    lexicographic centroid order so downstream role indices are stable.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ContractError("points must be a 2-d array")
    if len(np.unique(points, axis=0)) < k:
        raise ContractError(f"k={k} needs at least k distinct points")
    rng = np.random.default_rng(seed)
    best: tuple[np.ndarray, np.ndarray, float] | None = None
    for _ in range(restarts):
        labels, centroids, inertia = _kmeans_once(points, k, rng, max_iter, tol)
        if best is None or inertia < best[2]:
            best = (labels, centroids, inertia)
    labels, centroids, inertia = best  # type: ignore[misc]
    order = np.lexsort((centroids[:, 1], centroids[:, 0]))
    relabel = np.empty(k, dtype=int)
    relabel[order] = np.arange(k)
    return relabel[labels], centroids[order], inertia


def _pairwise_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Exact coordinate differences, chunked so the 3-d intermediate stays
    # small.  The matmul trick would be faster but loses the last digits to
    # cancellation, and silhouette values are checked to 1e-10.
    out = np.empty((len(a), len(b)))
    chunk = max(1, 4_000_000 // max(len(b), 1))
    for start in range(0, len(a), chunk):
        block = a[start : start + chunk]
        d2 = ((block[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
        out[start : start + chunk] = np.sqrt(np.maximum(d2, 0.0))
    return out


def _silhouette_from_distances(dists: np.ndarray, labels: np.ndarray) -> float:
    k = labels.max() + 1
    n = len(labels)
    onehot = np.zeros((n, k))
    onehot[np.arange(n), labels] = 1.0
    counts = onehot.sum(axis=0)
    if (counts > 0).sum() < 2:
        raise UndefinedSilhouetteError("silhouette needs at least 2 non-empty clusters")
    if counts.max() <= 1:
        raise UndefinedSilhouetteError("all clusters are singletons; silhouette undefined")
    sums = dists @ onehot  # (n, k) total distance to each cluster
    own = counts[labels]
    s = np.zeros(n)
    multi = own > 1
    a = np.zeros(n)
    a[multi] = sums[np.arange(n), labels][multi] / (own[multi] - 1)
    other = sums / np.where(counts > 0, counts, np.inf)
    other[np.arange(n), labels] = np.inf
    other[:, counts == 0] = np.inf
    b = other.min(axis=1)
    denom = np.maximum(a, b)
    with np.errstate(invalid="ignore"):
        ratio = (b - a) / denom
    s[multi] = np.nan_to_num(ratio, nan=0.0)[multi]
    # Points alone in their cluster contribute 0 by convention.
    return float(s.mean())


def silhouette_score(points: np.ndarray, labels: np.ndarray) -> float:
    """Mean silhouette over all points, Euclidean distances."""
    points = np.asarray(points, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if len(points) != len(labels):
        raise ContractError("points and labels length mismatch")
    return _silhouette_from_distances(_pairwise_distances(points, points), labels)


@dataclass(frozen=True)
class RoleConfig:
    k_min: int = 2
    k_max: int = 20
    restarts: int = 10
    seed: int = 0
    max_iter: int = 300
    tol: float = 1e-6
    # Above this many points, silhouette for the k sweep is evaluated on a
    # seeded subsample (pairwise distances grow quadratically).
    silhouette_cap: int = 4000
    # At most this many fitting points are retained per cluster for soft
    # assignment distances.
    sample_cap_per_cluster: int = 10000

    def __post_init__(self) -> None:
        if self.k_min < 2 or self.k_max < self.k_min:
            raise ValueError("need 2 <= k_min <= k_max")
        if self.restarts < 1:
            raise ValueError("need at least one restart")


@dataclass(frozen=True)
class RoleModel:
    """Fitted clustering over centers of performance.

    Keeps (a capped sample of) the fitting points and their labels, because
    soft assignment measures mean distances to cluster members, not just to
    centroids.
    """

    k: int
    centroids: np.ndarray
    silhouette: float
    k_sweep: dict[int, float]
    sample_points: np.ndarray
    sample_labels: np.ndarray
    seed: int
    n_fit_points: int
    config: RoleConfig

    def cluster_sizes(self) -> np.ndarray:
        return np.bincount(self.sample_labels, minlength=self.k)


def _silhouette_subsample(n: int, cap: int, seed: int) -> np.ndarray:
    if n <= cap:
        return np.arange(n)
    rng = np.random.default_rng([seed, n, cap])
    return np.sort(rng.choice(n, size=cap, replace=False))


def fit_roles(points: np.ndarray, config: RoleConfig | None = None) -> RoleModel:
    """Sweep k over the configured range and keep the best silhouette.

    Ties in the sweep resolve to the smaller k.  The returned model carries
    the (possibly capped) fitting sample used for soft assignment.
    """
    config = config or RoleConfig()
    points = np.asarray(points, dtype=float)
    if len(np.unique(points, axis=0)) < config.k_max:
        raise ContractError(
            f"k sweep up to {config.k_max} needs at least that many distinct centers"
        )

    sil_idx = _silhouette_subsample(len(points), config.silhouette_cap, config.seed)
    sil_dists = _pairwise_distances(points[sil_idx], points[sil_idx])

    sweep: dict[int, float] = {}
    fits: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for k in range(config.k_min, config.k_max + 1):
        labels, centroids, _ = kmeans(
            points,
            k,
            restarts=config.restarts,
            seed=(config.seed, k),
            max_iter=config.max_iter,
            tol=config.tol,
        )
        sweep[k] = _silhouette_from_distances(sil_dists, labels[sil_idx])
        fits[k] = (labels, centroids)

    best_k = min(sweep, key=lambda k: (-sweep[k], k))
    labels, centroids = fits[best_k]

    keep = np.zeros(len(points), dtype=bool)
    rng = np.random.default_rng([config.seed, 7])
    for j in range(best_k):
        members = np.flatnonzero(labels == j)
        if len(members) > config.sample_cap_per_cluster:
            members = rng.choice(members, size=config.sample_cap_per_cluster, replace=False)
        keep[members] = True
    sample = np.flatnonzero(keep)

    return RoleModel(
        k=best_k,
        centroids=centroids,
        silhouette=sweep[best_k],
        k_sweep=sweep,
        sample_points=points[sample].copy(),
        sample_labels=labels[sample].copy(),
        seed=config.seed,
        n_fit_points=len(points),
        config=config,
    )


@dataclass(frozen=True)
class RoleAssignment:
    """Soft role assignment of one center of performance.

    ``primary`` is the nearest-centroid cluster; ``hybrids`` are the other
    clusters whose silhouette penalty is within the threshold.  ``roles``
    is their union, the set a match actually counts toward.
    """

    player_id: int
    match_id: int
    primary: int
    hybrids: frozenset[int]
    silhouettes: tuple[float, ...]
    delta_s: float

    @property
    def roles(self) -> frozenset[int]:
        return self.hybrids | {self.primary}

    @property
    def is_hybrid(self) -> bool:
        return bool(self.hybrids)


def soft_assign_many(
    points: np.ndarray,
    model: RoleModel,
    delta_s: float = 0.1,
    *,
    chunk: int = 1024,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized soft assignment.

    Returns (primary labels, silhouette matrix).  Column j of the matrix is
    the silhouette penalty of switching each point to cluster j; the primary
    column is zero by construction.
    """
    if not 0 <= delta_s <= 1:
        raise ContractError(f"delta_s must be in [0, 1], got {delta_s}")
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != model.centroids.shape[1]:
        raise ContractError("points do not match the model dimensionality")

    counts = model.cluster_sizes().astype(float)
    onehot = np.zeros((len(model.sample_labels), model.k))
    onehot[np.arange(len(model.sample_labels)), model.sample_labels] = 1.0

    primaries = np.empty(len(points), dtype=int)
    sils = np.empty((len(points), model.k))
    for start in range(0, len(points), chunk):
        block = points[start : start + chunk]
        cd = _pairwise_distances(block, model.centroids)
        primary = cd.argmin(axis=1)
        dbar = (_pairwise_distances(block, model.sample_points) @ onehot) / np.where(
            counts > 0, counts, np.inf
        )
        own = dbar[np.arange(len(block)), primary]
        with np.errstate(invalid="ignore"):
            s = (dbar - own[:, None]) / np.maximum(dbar, own[:, None])
        s[np.arange(len(block)), primary] = 0.0
        s = np.nan_to_num(s, nan=0.0)
        primaries[start : start + chunk] = primary
        sils[start : start + chunk] = s
    return primaries, sils


def soft_assign(
    center: CenterOfPerformance, model: RoleModel, delta_s: float = 0.1
) -> RoleAssignment:
    """Assign one center to its primary role plus any hybrid roles."""
    point = np.array([[center.x, center.y]])
    primaries, sils = soft_assign_many(point, model, delta_s)
    primary = int(primaries[0])
    row = sils[0]
    hybrids = frozenset(
        int(j) for j in range(model.k) if j != primary and row[j] <= delta_s
    )
    return RoleAssignment(
        player_id=center.player_id,
        match_id=center.match_id,
        primary=primary,
        hybrids=hybrids,
        silhouettes=tuple(float(v) for v in row),
        delta_s=delta_s,
    )


def assign_player_roles(
    assignments: list[RoleAssignment], x_pct: float = 40.0
) -> frozenset[int]:
    """Aggregate per-match assignments into a player's role set.

    A role belongs to the set when the share of matches counting toward it
    (primary or hybrid) reaches ``x_pct`` percent.
    """
    if not assignments:
        raise ContractError("no per-match assignments given")
    if not 0 < x_pct <= 100:
        raise ContractError(f"x_pct must be in (0, 100], got {x_pct}")
    players = {a.player_id for a in assignments}
    if len(players) != 1:
        raise ContractError(f"assignments span several players: {sorted(players)}")
    total = len(assignments)
    tally: dict[int, int] = {}
    for a in assignments:
        for role in a.roles:
            tally[role] = tally.get(role, 0) + 1
    return frozenset(r for r, c in tally.items() if c / total >= x_pct / 100.0)
