"""Learning match-outcome weights for the feature catalog.

A linear SVM separates winning from non-winning team-match performances;
the separating direction, feature by feature, is the weight vector used to
rate individual players.  Cost selection runs a seeded k-fold cross
validation over a fixed grid, maximizing mean AUC.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .events import EventStore
from .features import CatalogMismatchError, ContractError, TeamPerformance
from .svm import train_linear_svm

__all__ = [
    "TrainConfig",
    "TrainingExample",
    "WeightVector",
    "EvalReport",
    "DegenerateLabelsError",
    "UndefinedMetricError",
    "ScopedTrainResult",
    "build_training_set",
    "train_weights",
    "evaluate_classifier",
    "roc_auc",
    "compute_nrmse",
    "train_scoped_weights",
]


class DegenerateLabelsError(ValueError):
    """Training or evaluation set does not contain both classes."""


class UndefinedMetricError(ValueError):
    """A metric is undefined for the given inputs."""


@dataclass(frozen=True)
class TrainConfig:
    """Knobs for weight learning.

    ``holdout`` is the fraction reserved for the final evaluation;
    ``folds``-fold cross validation on the remainder picks the cost from
    ``cost_grid`` by mean AUC (ties resolve to the smaller cost).
    """

    cost_grid: tuple[float, ...] = (0.01, 0.1, 1.0, 10.0, 100.0)
    folds: int = 5
    holdout: float = 0.2
    seed: int = 0
    tol: float = 1e-6
    cv_tol: float = 1e-5
    max_epochs: int = 4000

    def __post_init__(self) -> None:
        if not 0 < self.holdout < 1:
            raise ValueError(f"holdout fraction must be in (0, 1), got {self.holdout}")
        if self.folds < 2:
            raise ValueError("cross validation needs at least 2 folds")
        if not self.cost_grid or any(c <= 0 for c in self.cost_grid):
            raise ValueError("cost grid must be non-empty and positive")


@dataclass(frozen=True)
class TrainingExample:
    """One team-match performance with its victory label."""

    features: np.ndarray
    label: int
    match_id: int
    team_id: int
    competition_id: int
    role: int | None = None


@dataclass(frozen=True)
class WeightVector:
    """Learned per-feature weights.

    ``weights`` aligns with the catalog order; the intercept is kept apart
    and never participates in player rating.  ``scope`` records what slice
    of the corpus the vector was trained on ("all", a competition id or a
    role id rendered as text).
    """

    weights: np.ndarray
    intercept: float
    catalog_hash: str
    scope: str = "all"
    cost: float = 1.0
    duality_gap: float = 0.0


@dataclass(frozen=True)
class EvalReport:
    auc: float
    f1: float
    accuracy: float
    n_examples: int
    positive_rate: float
    cv_auc_by_cost: dict[float, float] = field(default_factory=dict)
    selected_cost: float | None = None


def build_training_set(
    store: EventStore, team_performances: list[TeamPerformance]
) -> list[TrainingExample]:
    """Turn raw team-match performances into labeled, normalized examples.

    Features are min-max scaled at team level over the given performances
    (team count ranges have nothing to do with single-player ranges).  Every
    match must contribute exactly two teams.
    """
    if not team_performances:
        raise ContractError("no team performances given")
    hashes = {tp.catalog_hash for tp in team_performances}
    if len(hashes) != 1:
        raise CatalogMismatchError("team performances span several catalogs")

    per_match: dict[int, list[TeamPerformance]] = {}
    for tp in team_performances:
        per_match.setdefault(tp.match_id, []).append(tp)
    bad = {m: len(tps) for m, tps in per_match.items() if len(tps) != 2}
    if bad:
        raise ContractError(f"matches without exactly two team performances: {bad}")

    stacked = np.stack([tp.values for tp in team_performances])
    lo = stacked.min(axis=0)
    span = stacked.max(axis=0) - lo
    safe = np.where(span > 0, span, 1.0)

    examples = []
    for tp, row in zip(team_performances, stacked):
        scaled = np.where(span > 0, (row - lo) / safe, 0.0)
        match = store.matches.get(tp.match_id)
        if match is None:
            raise ContractError(f"match {tp.match_id} missing from the store")
        examples.append(
            TrainingExample(
                features=scaled,
                label=tp.outcome,
                match_id=tp.match_id,
                team_id=tp.team_id,
                competition_id=match.competition_id,
            )
        )
    return examples


def roc_auc(scores: np.ndarray, labels: np.ndarray) -> float:
    """Area under the ROC curve via the rank statistic; ties count half."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    pos = int((labels == 1).sum())
    neg = int(labels.size - pos)
    if pos == 0 or neg == 0:
        raise UndefinedMetricError("AUC needs both classes present")
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(labels.size, dtype=float)
    sorted_scores = scores[order]
    i = 0
    while i < labels.size:
        j = i
        while j + 1 < labels.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0  # average 1-based rank
        i = j + 1
    rank_sum = float(ranks[labels == 1].sum())
    return (rank_sum - pos * (pos + 1) / 2.0) / (pos * neg)


def _scores(examples: list[TrainingExample], weights: WeightVector) -> np.ndarray:
    X = np.stack([ex.features for ex in examples])
    return X @ weights.weights + weights.intercept


def evaluate_classifier(weights: WeightVector, examples: list[TrainingExample]) -> EvalReport:
    """AUC, F1 (positive class) and accuracy at the zero-score threshold."""
    if not examples:
        raise ContractError("nothing to evaluate")
    labels = np.array([ex.label for ex in examples])
    scores = _scores(examples, weights)
    auc = roc_auc(scores, labels)
    predicted = (scores > 0).astype(int)
    tp = int(((predicted == 1) & (labels == 1)).sum())
    fp = int(((predicted == 1) & (labels == 0)).sum())
    fn = int(((predicted == 0) & (labels == 1)).sum())
    f1 = 2 * tp / (2 * tp + fp + fn) if (2 * tp + fp + fn) > 0 else 0.0
    return EvalReport(
        auc=auc,
        f1=f1,
        accuracy=float((predicted == labels).mean()),
        n_examples=len(examples),
        positive_rate=float(labels.mean()),
    )


def _fit(
    X: np.ndarray, y: np.ndarray, cost: float, config: TrainConfig, tol: float
) -> tuple[np.ndarray, float, float]:
    result = train_linear_svm(
        X, y, cost, seed=config.seed, tol=tol, max_epochs=config.max_epochs
    )
    return result.weights, result.intercept, result.duality_gap


def train_weights(
    examples: list[TrainingExample],
    config: TrainConfig | None = None,
    *,
    catalog_hash: str | None = None,
    scope: str = "all",
) -> tuple[WeightVector, EvalReport]:
    """Select a cost by cross validation, train, and evaluate on a holdout.

    The split and the folds are seeded and deterministic.  Raises
    DegenerateLabelsError when any split ends up single-class.
    """
    config = config or TrainConfig()
    if len(examples) < 10:
        raise ContractError(f"need at least 10 examples, got {len(examples)}")
    labels = np.array([ex.label for ex in examples])
    if len(set(labels.tolist())) < 2:
        raise DegenerateLabelsError("training set contains a single class")

    X = np.stack([ex.features for ex in examples])
    y = np.where(labels == 1, 1.0, -1.0)

    rng = np.random.default_rng(config.seed)
    order = rng.permutation(len(examples))
    n_holdout = max(1, int(round(config.holdout * len(examples))))
    holdout_idx = order[:n_holdout]
    train_idx = order[n_holdout:]
    for name, idx in (("holdout", holdout_idx), ("training", train_idx)):
        if len(set(labels[idx].tolist())) < 2:
            raise DegenerateLabelsError(f"{name} split contains a single class")

    fold_of = np.arange(len(train_idx)) % config.folds
    cv_auc: dict[float, float] = {}
    for cost in config.cost_grid:
        fold_scores = []
        for f in range(config.folds):
            fit_rows = train_idx[fold_of != f]
            val_rows = train_idx[fold_of == f]
            if len(set(labels[val_rows].tolist())) < 2 or len(set(labels[fit_rows].tolist())) < 2:
                raise DegenerateLabelsError(f"fold {f} contains a single class")
            w, b, _ = _fit(X[fit_rows], y[fit_rows], cost, config, config.cv_tol)
            fold_scores.append(roc_auc(X[val_rows] @ w + b, labels[val_rows]))
        cv_auc[cost] = float(np.mean(fold_scores))

    best_cost = max(config.cost_grid, key=lambda c: (cv_auc[c], -c))
    w, b, gap = _fit(X[train_idx], y[train_idx], best_cost, config, config.tol)
    weights = WeightVector(
        weights=w,
        intercept=b,
        catalog_hash=catalog_hash or "",
        scope=scope,
        cost=best_cost,
        duality_gap=gap,
    )

    holdout_examples = [examples[i] for i in holdout_idx]
    report = evaluate_classifier(weights, holdout_examples)
    return weights, EvalReport(
        auc=report.auc,
        f1=report.f1,
        accuracy=report.accuracy,
        n_examples=report.n_examples,
        positive_rate=report.positive_rate,
        cv_auc_by_cost=cv_auc,
        selected_cost=best_cost,
    )


def compute_nrmse(base: np.ndarray, other: np.ndarray) -> float:
    """Root mean squared difference, normalized by the base vector's range."""
    base = np.asarray(base, dtype=float)
    other = np.asarray(other, dtype=float)
    if base.shape != other.shape:
        raise ContractError(f"weight shapes differ: {base.shape} vs {other.shape}")
    spread = float(base.max() - base.min())
    if spread == 0:
        raise UndefinedMetricError("base weights are constant; NRMSE undefined")
    return float(np.sqrt(np.mean((base - other) ** 2)) / spread)


@dataclass(frozen=True)
class ScopedTrainResult:
    """Per-scope weight vectors plus the groups that could not be trained."""

    vectors: dict[str, tuple[WeightVector, EvalReport]]
    skipped: dict[str, str]


def train_scoped_weights(
    examples: list[TrainingExample],
    scope: str,
    config: TrainConfig | None = None,
    *,
    catalog_hash: str | None = None,
) -> ScopedTrainResult:
    """Train one weight vector per scope group.

    ``scope`` is "all" (one group), "competition" (grouped by competition id)
    or "role" (grouped by the examples' role field).  Groups too small or
    single-class are skipped with the reason recorded, not raised.
    """
    if scope == "all":
        groups: dict[str, list[TrainingExample]] = {"all": list(examples)}
    elif scope == "competition":
        groups = {}
        for ex in examples:
            groups.setdefault(str(ex.competition_id), []).append(ex)
    elif scope == "role":
        groups = {}
        for ex in examples:
            if ex.role is None:
                raise ContractError("role-scoped training needs role-tagged examples")
            groups.setdefault(str(ex.role), []).append(ex)
    else:
        raise ContractError(f"unknown scope {scope!r}")

    vectors: dict[str, tuple[WeightVector, EvalReport]] = {}
    skipped: dict[str, str] = {}
    for label in sorted(groups):
        try:
            vectors[label] = train_weights(
                groups[label], config, catalog_hash=catalog_hash, scope=label
            )
        except (DegenerateLabelsError, ContractError) as exc:
            skipped[label] = str(exc)
    return ScopedTrainResult(vectors=vectors, skipped=skipped)
