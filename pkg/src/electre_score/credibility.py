"""Pairwise engine: per-criterion relations, concordance, discordance,
credibility, the crisp cut, derived relations, and dominance.

Every function here is pure and works on direction-adjusted differences
("advantage"), so minimized criteria need no data preprocessing. The
discordance band is ``d = 1`` strictly below the veto margin and the
credibility discount applies to criteria whose discordance exceeds the
concordance index; both follow the standard pseudo-criterion reading.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .model import (
    Criterion,
    Direction,
    ThresholdMode,
    ThresholdSpec,
    check_cutting_level,
    normalize_weights,
)


class NegativeThresholdError(ValueError):
    """A variable threshold evaluated to a negative value."""


class InvertedThresholdsError(ValueError):
    """Indifference threshold exceeds preference threshold at the evaluation point."""


class InvalidVetoError(ValueError):
    """Veto threshold does not exceed the preference threshold."""


class DegenerateIntervalError(ValueError):
    """A pair fell in the weak-preference zone while p = q makes it empty."""


class PerCriterionRelation(enum.Enum):
    STRICT_PREF_A = "strict_pref_a"
    WEAK_PREF_A = "weak_pref_a"
    INDIFFERENT = "indifferent"
    WEAK_PREF_B = "weak_pref_b"
    STRICT_PREF_B = "strict_pref_b"


class DerivedRelation(enum.Enum):
    A_PREFERRED = "a_preferred"
    B_PREFERRED = "b_preferred"
    INDIFFERENT = "indifferent"
    INCOMPARABLE = "incomparable"


def advantage(criterion: Criterion, ga: float, gb: float) -> float:
    """Direction-adjusted difference; positive means the first performer is better."""
    if criterion.direction is Direction.MAX:
        return ga - gb
    return gb - ga


def threshold_at(spec: ThresholdSpec, criterion: Criterion, ga: float, gb: float) -> float:
    """Evaluate a threshold for the ordered pair (ga, gb).

    Direct thresholds attach to the worse performance of the pair under
    the criterion's direction, inverse thresholds to the better one.
    """
    if spec.mode is ThresholdMode.CONSTANT:
        value = spec.intercept
    else:
        if criterion.direction is Direction.MAX:
            worse, better = min(ga, gb), max(ga, gb)
        else:
            worse, better = max(ga, gb), min(ga, gb)
        base = worse if spec.mode is ThresholdMode.DIRECT else better
        value = spec.intercept + spec.slope * base
    if value < 0:
        raise NegativeThresholdError(
            f"criterion {criterion.name}: threshold {value} < 0 for pair ({ga}, {gb})"
        )
    return value


def per_criterion_relation(
    criterion: Criterion, ga: float, gb: float, tol: float = 0.0
) -> PerCriterionRelation:
    """Classify the ordered pair on one criterion under the pseudo-criterion model.

    ``tol`` is an optional absolute slack on the classification boundaries
    for noisy inputs; the default keeps comparisons exact.
    """
    q = threshold_at(criterion.indifference, criterion, ga, gb)
    p = threshold_at(criterion.preference, criterion, ga, gb)
    if q > p:
        raise InvertedThresholdsError(
            f"criterion {criterion.name}: q={q} > p={p} for pair ({ga}, {gb})"
        )
    delta = advantage(criterion, ga, gb)
    if delta > p + tol:
        return PerCriterionRelation.STRICT_PREF_A
    if delta > q + tol:
        return PerCriterionRelation.WEAK_PREF_A
    if delta >= -q - tol:
        return PerCriterionRelation.INDIFFERENT
    if delta >= -p - tol:
        return PerCriterionRelation.WEAK_PREF_B
    return PerCriterionRelation.STRICT_PREF_B


def concordance(
    criteria: Sequence[Criterion],
    pa: Sequence[float],
    pb: Sequence[float],
    tol: float = 0.0,
) -> float:
    """Weighted strength of the coalition supporting "a outranks b".

    Criteria where a is indifferent, weakly or strictly preferred count
    their full normalized weight; criteria where b is weakly preferred
    count a linear fraction of it; strict opposition counts nothing.
    """
    if not any(c.weight > 0 for c in criteria):
        normalize_weights(criteria)  # raises AllZeroWeightsError
    # accumulate raw weights and divide once, so a fully concordant
    # coalition yields exactly 1.0
    numerator = 0.0
    total_weight = 0.0
    for j, crit in enumerate(criteria):
        total_weight += crit.weight
        rel = per_criterion_relation(crit, pa[j], pb[j], tol)
        if rel in (
            PerCriterionRelation.STRICT_PREF_A,
            PerCriterionRelation.WEAK_PREF_A,
            PerCriterionRelation.INDIFFERENT,
        ):
            numerator += crit.weight
        elif rel is PerCriterionRelation.WEAK_PREF_B:
            q = threshold_at(crit.indifference, crit, pa[j], pb[j])
            p = threshold_at(crit.preference, crit, pa[j], pb[j])
            if p == q:
                raise DegenerateIntervalError(
                    f"criterion {crit.name}: weak zone hit while p = q = {p}"
                )
            phi = (advantage(crit, pa[j], pb[j]) + p) / (p - q)
            numerator += phi * crit.weight
    return numerator / total_weight


def discordance(criterion: Criterion, ga: float, gb: float, tol: float = 0.0) -> float:
    """Per-criterion opposition against "a outranks b" (0 without a veto).

    Rises linearly from 0 at the preference margin to 1 at the veto
    margin, and stays 1 beyond it.
    """
    if criterion.veto is None:
        return 0.0
    p = threshold_at(criterion.preference, criterion, ga, gb)
    v = threshold_at(criterion.veto, criterion, ga, gb)
    if v <= p:
        raise InvalidVetoError(
            f"criterion {criterion.name}: veto {v} must exceed preference {p}"
        )
    delta = advantage(criterion, ga, gb)
    if delta >= -p - tol:
        return 0.0
    if delta >= -v - tol:
        return (delta + p) / (p - v)
    return 1.0


def credibility(
    criteria: Sequence[Criterion],
    pa: Sequence[float],
    pb: Sequence[float],
    tol: float = 0.0,
) -> float:
    """Credibility that a outranks b: concordance discounted by strong discordance."""
    c = concordance(criteria, pa, pb, tol)
    sigma = c
    for j, crit in enumerate(criteria):
        d = discordance(crit, pa[j], pb[j], tol)
        if d > c:
            # d <= 1 = c would contradict d > c, so 1 - c > 0 here
            sigma *= (1.0 - d) / (1.0 - c)
    return sigma


def crisp_outranks(sigma: float, lam: float) -> bool:
    """Fuzzy-to-crisp cut: outranking holds iff sigma reaches the cutting level."""
    check_cutting_level(lam)
    return sigma >= lam


def derived_relation(sab: bool, sba: bool) -> DerivedRelation:
    """Combine the two crisp outranking directions into one of four relations."""
    if sab and not sba:
        return DerivedRelation.A_PREFERRED
    if sba and not sab:
        return DerivedRelation.B_PREFERRED
    if sab and sba:
        return DerivedRelation.INDIFFERENT
    return DerivedRelation.INCOMPARABLE


def dominates(
    criteria: Sequence[Criterion], pa: Sequence[float], pb: Sequence[float]
) -> bool:
    """Componentwise at-least-as-good with at least one strict advantage."""
    strict = False
    for j, crit in enumerate(criteria):
        delta = advantage(crit, pa[j], pb[j])
        if delta < 0:
            return False
        if delta > 0:
            strict = True
    return strict


@dataclass(frozen=True)
class CredibilityMatrix:
    """Credibility over every ordered pair of a fixed entity universe."""

    entities: tuple[str, ...]
    sigma: Mapping[tuple[str, str], float]

    @classmethod
    def compute(
        cls,
        criteria: Sequence[Criterion],
        vectors: Mapping[str, Sequence[float]],
        tol: float = 0.0,
    ) -> "CredibilityMatrix":
        entities = tuple(vectors)
        sigma: dict[tuple[str, str], float] = {}
        for a in entities:
            for b in entities:
                sigma[(a, b)] = credibility(criteria, vectors[a], vectors[b], tol)
        return cls(entities, sigma)

    def value(self, a: str, b: str) -> float:
        return self.sigma[(a, b)]

    def outranks(self, a: str, b: str, lam: float) -> bool:
        return crisp_outranks(self.sigma[(a, b)], lam)

    def relation(self, a: str, b: str, lam: float) -> DerivedRelation:
        return derived_relation(self.outranks(a, b, lam), self.outranks(b, a, lam))
