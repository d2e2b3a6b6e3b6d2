"""Rate, rank and retrieve soccer players from match event streams.

The package covers the whole chain: ingest raw event logs, count a fixed
catalog of performance features per player-match, learn feature weights
from match outcomes with a linear classifier, discover positional roles by
clustering centers of performance, turn weighted features into bounded
ratings with exponential smoothing, rank players inside each role, and
search for players by where on the pitch they act.
"""

from .events import (
    EmptyCorpusError,
    Event,
    EventStore,
    EventType,
    IngestError,
    MatchRecord,
    MissingPositionError,
    ParseError,
    Period,
    PlayerRecord,
    SchemaError,
    ValidationError,
    build_store,
    corpus_stats,
    event_to_record,
    load_corpus,
    load_store,
    parse_event,
    save_store,
)
from .features import (
    CATALOG_FEATURE_NAMES,
    CatalogMismatchError,
    ContractError,
    FeatureCatalog,
    NormalizationParams,
    PerformanceVector,
    TeamPerformance,
    aggregate_team,
    apply_normalization,
    build_feature_catalog,
    extract_raw_performance,
    fit_normalization,
)
from .learning import (
    DegenerateLabelsError,
    EvalReport,
    ScopedTrainResult,
    TrainConfig,
    TrainingExample,
    UndefinedMetricError,
    WeightVector,
    build_training_set,
    compute_nrmse,
    evaluate_classifier,
    roc_auc,
    train_scoped_weights,
    train_weights,
)
from .pipeline import (
    ConfigError,
    DuplicateMatchError,
    LearningPhaseError,
    ModelBundle,
    PipelineConfig,
    PipelineError,
    Snapshot,
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
from .ratings import (
    ConcordanceReport,
    ExpertPair,
    MatchRating,
    RatingConfig,
    RatingSeries,
    RatingStats,
    RoleRanking,
    VersatilityScore,
    adjusted_rating,
    alpha_sweep_correlation,
    build_role_rankings,
    concordance,
    ewma_update,
    rate_performance,
    rating_bounds,
    rating_stats,
    versatility,
)
from .retrieval import (
    PlayerZoneVector,
    SearchEntry,
    SearchResult,
    ZoneTessellation,
    build_player_zone_vector,
    score_query,
    search,
    zone_vector_from_counts,
)
from .roles import (
    CenterOfPerformance,
    RoleAssignment,
    RoleConfig,
    RoleModel,
    UndefinedSilhouetteError,
    assign_player_roles,
    compute_center,
    fit_roles,
    kmeans,
    silhouette_score,
    soft_assign,
    soft_assign_many,
)
from .svm import ConvergenceError, LinearSVMResult, train_linear_svm

__version__ = "0.1.0"
