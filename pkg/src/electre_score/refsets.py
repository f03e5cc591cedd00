"""Relations between an action and a scored reference set, plus the
structural checks on a reference collection: basic assumptions,
dominance/preference separability, and comparability.

Set-level relations are derived from the multiset of per-profile derived
relations, so the six relation flags and the single classification can
never disagree. Quantifiers are evaluated exhaustively; reference sets
are small by design.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .credibility import DerivedRelation, credibility, crisp_outranks, dominates
from .model import Criterion, PerformanceTable, ReferenceStructure


class SetClassification(enum.Enum):
    ACTION_PREFERRED = "action_preferred"
    SET_PREFERRED = "set_preferred"
    INDIFFERENT = "indifferent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class ActionSetRelation:
    """Classification of action-vs-set plus the six underlying relation flags."""

    classification: SetClassification
    a_outranks_set: bool        # a is at least as good as the set
    set_outranks_a: bool        # the set is at least as good as a
    a_preferred: bool           # a strictly preferred to the set
    set_preferred: bool         # the set strictly preferred to a
    indifferent: bool
    incomparable: bool


def classify_relations(relations: Iterable[DerivedRelation]) -> ActionSetRelation:
    """Fold per-profile derived relations into the set-level relation.

    The four classifications are exhaustive and mutually exclusive:
    conflicting strict preferences in both directions mean incomparable,
    a one-sided strict preference wins outright, indifference needs at
    least one indifferent profile and no strict preference, and a set
    whose every profile is incomparable is incomparable.
    """
    rels = list(relations)
    if not rels:
        raise ValueError("reference set produced no per-profile relations")
    n_ap = sum(r is DerivedRelation.A_PREFERRED for r in rels)
    n_bp = sum(r is DerivedRelation.B_PREFERRED for r in rels)
    n_ind = sum(r is DerivedRelation.INDIFFERENT for r in rels)

    if n_ap and n_bp:
        classification = SetClassification.INCOMPARABLE
    elif n_ap:
        classification = SetClassification.ACTION_PREFERRED
    elif n_bp:
        classification = SetClassification.SET_PREFERRED
    elif n_ind:
        classification = SetClassification.INDIFFERENT
    else:
        classification = SetClassification.INCOMPARABLE

    return ActionSetRelation(
        classification=classification,
        a_outranks_set=(n_bp == 0 and (n_ap + n_ind) > 0),
        set_outranks_a=(n_ap == 0 and (n_bp + n_ind) > 0),
        a_preferred=(n_bp == 0 and n_ap > 0),
        set_preferred=(n_ap == 0 and n_bp > 0),
        indifferent=(n_ap == 0 and n_bp == 0 and n_ind > 0),
        incomparable=((n_ap > 0 and n_bp > 0) or (n_ap + n_bp + n_ind == 0)),
    )


def _pair_relation(
    criteria: Sequence[Criterion],
    pa: Sequence[float],
    pb: Sequence[float],
    lam: float,
    tol: float = 0.0,
) -> DerivedRelation:
    sab = crisp_outranks(credibility(criteria, pa, pb, tol), lam)
    sba = crisp_outranks(credibility(criteria, pb, pa, tol), lam)
    if sab and not sba:
        return DerivedRelation.A_PREFERRED
    if sba and not sab:
        return DerivedRelation.B_PREFERRED
    if sab and sba:
        return DerivedRelation.INDIFFERENT
    return DerivedRelation.INCOMPARABLE


def classify_action_vs_set(
    action: Sequence[float],
    profiles: Sequence[Sequence[float]],
    criteria: Sequence[Criterion],
    lam: float,
    tol: float = 0.0,
) -> ActionSetRelation:
    """Relate one action performance vector to one set of limiting profiles."""
    rels = [_pair_relation(criteria, action, prof, lam, tol) for prof in profiles]
    return classify_relations(rels)


def classify_action_vs_levels(
    action: Sequence[float],
    refs: ReferenceStructure,
    criteria: Sequence[Criterion],
    lam: float,
    tol: float = 0.0,
) -> list[ActionSetRelation]:
    """Relation of one action to every reference level, bottom to top."""
    return [
        classify_action_vs_set(action, ref.profiles, criteria, lam, tol)
        for ref in refs.sets
    ]


def validate_basic_assumptions(
    refs: ReferenceStructure,
    criteria: Sequence[Criterion],
    lam: float,
    tol: float = 0.0,
) -> list[str]:
    """Check the two structural requirements on a reference collection.

    (i) within a set no profile is strictly preferred to another;
    (ii) no profile of a lower-scored set is strictly preferred to a
    profile of a higher-scored set. Returns one message per violation.
    """
    violations: list[str] = []
    names = refs.profile_names()
    for k, ref in enumerate(refs.sets):
        for p in range(len(ref.profiles)):
            for q in range(p + 1, len(ref.profiles)):
                rel = _pair_relation(criteria, ref.profiles[p], ref.profiles[q], lam, tol)
                if rel is DerivedRelation.A_PREFERRED:
                    violations.append(
                        f"within-set preference: {names[k][p]} > {names[k][q]}"
                    )
                elif rel is DerivedRelation.B_PREFERRED:
                    violations.append(
                        f"within-set preference: {names[k][q]} > {names[k][p]}"
                    )
    for lo in range(len(refs.sets)):
        for hi in range(lo + 1, len(refs.sets)):
            for p, plo in enumerate(refs.sets[lo].profiles):
                for q, phi in enumerate(refs.sets[hi].profiles):
                    rel = _pair_relation(criteria, plo, phi, lam, tol)
                    if rel is DerivedRelation.A_PREFERRED:
                        violations.append(
                            f"lower-set profile preferred to higher-set profile: "
                            f"{names[lo][p]} > {names[hi][q]}"
                        )
    return violations


@dataclass(frozen=True)
class LevelPairFlags:
    """Separability flags for one ordered level pair (lower, higher)."""

    strong_dominance: bool
    soft_dominance_primal: bool
    soft_dominance_dual: bool
    strong_preference: bool
    soft_preference_primal: bool
    soft_preference_dual: bool


@dataclass(frozen=True)
class SeparabilityReport:
    """Separability flags per ordered level pair plus their conjunctions."""

    # keyed by (lower level index, higher level index), 0-based
    pairs: Mapping[tuple[int, int], LevelPairFlags]

    def _all(self, attr: str) -> bool:
        return all(getattr(f, attr) for f in self.pairs.values())

    @property
    def all_strong_dominance(self) -> bool:
        return self._all("strong_dominance")

    @property
    def all_soft_dominance_primal(self) -> bool:
        return self._all("soft_dominance_primal")

    @property
    def all_soft_dominance_dual(self) -> bool:
        return self._all("soft_dominance_dual")

    @property
    def all_strong_preference(self) -> bool:
        return self._all("strong_preference")

    @property
    def all_soft_preference_primal(self) -> bool:
        return self._all("soft_preference_primal")

    @property
    def all_soft_preference_dual(self) -> bool:
        return self._all("soft_preference_dual")

    @property
    def soft_dominance(self) -> bool:
        """Both soft dominance conditions over every level pair."""
        return self.all_soft_dominance_primal and self.all_soft_dominance_dual

    @property
    def soft_preference(self) -> bool:
        return self.all_soft_preference_primal and self.all_soft_preference_dual


def check_separability(
    refs: ReferenceStructure,
    criteria: Sequence[Criterion],
    lam: float,
    tol: float = 0.0,
) -> SeparabilityReport:
    """Exhaustively evaluate the dominance and preference separability flags."""
    pairs: dict[tuple[int, int], LevelPairFlags] = {}
    for lo in range(len(refs.sets)):
        for hi in range(lo + 1, len(refs.sets)):
            low_profiles = refs.sets[lo].profiles
            high_profiles = refs.sets[hi].profiles
            dom = {
                (i, j): dominates(criteria, high, low)
                for i, low in enumerate(low_profiles)
                for j, high in enumerate(high_profiles)
            }
            pref = {
                (i, j): _pair_relation(criteria, high, low, lam, tol)
                is DerivedRelation.A_PREFERRED
                for i, low in enumerate(low_profiles)
                for j, high in enumerate(high_profiles)
            }
            n_low, n_high = len(low_profiles), len(high_profiles)
            pairs[(lo, hi)] = LevelPairFlags(
                strong_dominance=all(dom.values()),
                soft_dominance_primal=all(
                    any(dom[(i, j)] for j in range(n_high)) for i in range(n_low)
                ),
                soft_dominance_dual=all(
                    any(dom[(i, j)] for i in range(n_low)) for j in range(n_high)
                ),
                strong_preference=all(pref.values()),
                soft_preference_primal=all(
                    any(pref[(i, j)] for j in range(n_high)) for i in range(n_low)
                ),
                soft_preference_dual=all(
                    any(pref[(i, j)] for i in range(n_low)) for j in range(n_high)
                ),
            )
    return SeparabilityReport(pairs)


def check_comparability(
    table: PerformanceTable,
    refs: ReferenceStructure,
    criteria: Sequence[Criterion],
    lam: float,
    tol: float = 0.0,
) -> dict[str, bool]:
    """Per action: strictly above the bottom set and strictly below the top set."""
    out: dict[str, bool] = {}
    bottom = refs.sets[0].profiles
    top = refs.sets[-1].profiles
    for action in table.actions:
        vec = table.vector(action)
        above_bottom = classify_action_vs_set(vec, bottom, criteria, lam, tol)
        below_top = classify_action_vs_set(vec, top, criteria, lam, tol)
        out[action] = (
            above_bottom.classification is SetClassification.ACTION_PREFERRED
            and below_top.classification is SetClassification.SET_PREFERRED
        )
    return out
