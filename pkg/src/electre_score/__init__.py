"""Outranking-based score-range assignment for multi-criteria decision aiding."""

from .model import (
    AllZeroWeightsError,
    Criterion,
    CuttingLevel,
    Direction,
    PerformanceTable,
    ReferenceSet,
    ReferenceStructure,
    ThresholdMode,
    ThresholdSpec,
    ValidationReport,
    normalize_weights,
    validate_model,
)
from .credibility import (
    CredibilityMatrix,
    DerivedRelation,
    PerCriterionRelation,
    advantage,
    concordance,
    credibility,
    crisp_outranks,
    derived_relation,
    discordance,
    dominates,
    per_criterion_relation,
    threshold_at,
)
from .refsets import (
    ActionSetRelation,
    SeparabilityReport,
    SetClassification,
    check_comparability,
    check_separability,
    classify_action_vs_set,
    validate_basic_assumptions,
)
from .scoring import (
    BasicAssumptionsViolatedError,
    DeckOfCards,
    NoLowerBoundError,
    NoUpperBoundError,
    ScoreRange,
    ScoringResult,
    deck_of_cards_scores,
    lower_bound,
    score_ranges,
    upper_bound,
)

__version__ = "0.1.0"
