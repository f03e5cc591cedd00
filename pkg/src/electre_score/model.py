"""Domain types shared by every other module.

All types are frozen dataclasses: once built, a model is safe to share
across threads and across repeated evaluations. Structural checks that
need the whole model (threshold ordering over the observed performance
range, score ordering, table totality) live in :func:`validate_model`,
which reports violations instead of raising so a caller can show all
problems at once.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence


class AllZeroWeightsError(ValueError):
    """Raised when every criterion weight is zero."""


class Direction(enum.Enum):
    MAX = "max"
    MIN = "min"


class ThresholdMode(enum.Enum):
    """How a threshold varies with the compared performances.

    CONSTANT: fixed value (slope must be 0).
    DIRECT:   affine in the worse of the two performances.
    INVERSE:  affine in the better of the two performances.
    """

    CONSTANT = "constant"
    DIRECT = "direct"
    INVERSE = "inverse"


@dataclass(frozen=True)
class ThresholdSpec:
    """Affine threshold ``intercept + slope * g`` on a criterion's scale."""

    intercept: float
    slope: float = 0.0
    mode: ThresholdMode = ThresholdMode.CONSTANT

    def __post_init__(self) -> None:
        if self.mode is ThresholdMode.CONSTANT and self.slope != 0.0:
            raise ValueError("constant threshold requires slope = 0")


@dataclass(frozen=True)
class Criterion:
    """A pseudo-criterion: direction, weight, and discrimination thresholds.

    ``ordinal`` marks coded verbal scales; thresholds on those are meant
    as level differences and validation flags non-integer ones.
    """

    name: str
    direction: Direction
    weight: float
    indifference: ThresholdSpec
    preference: ThresholdSpec
    veto: ThresholdSpec | None = None
    ordinal: bool = False

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise ValueError(f"criterion {self.name!r}: weight must be >= 0")


@dataclass(frozen=True)
class PerformanceTable:
    """Actions x criteria performances, total by construction."""

    actions: tuple[str, ...]
    criteria: tuple[Criterion, ...]
    performances: Mapping[tuple[str, str], float]

    @classmethod
    def from_rows(
        cls,
        criteria: Sequence[Criterion],
        rows: Mapping[str, Sequence[float]],
    ) -> "PerformanceTable":
        """Build a table from per-action performance vectors (criteria order)."""
        perf: dict[tuple[str, str], float] = {}
        for action, values in rows.items():
            if len(values) != len(criteria):
                raise ValueError(
                    f"action {action!r}: expected {len(criteria)} performances, "
                    f"got {len(values)}"
                )
            for crit, value in zip(criteria, values):
                perf[(action, crit.name)] = float(value)
        return cls(tuple(rows), tuple(criteria), perf)

    def value(self, action: str, criterion: str) -> float:
        return self.performances[(action, criterion)]

    def vector(self, action: str) -> tuple[float, ...]:
        return tuple(self.performances[(action, c.name)] for c in self.criteria)


@dataclass(frozen=True)
class ReferenceSet:
    """One scored set of limiting profiles."""

    score: float
    profiles: tuple[tuple[float, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.profiles:
            raise ValueError("reference set must contain at least one profile")
        if self.names and len(self.names) != len(self.profiles):
            raise ValueError("profile name count must match profile count")


@dataclass(frozen=True)
class ReferenceStructure:
    """Strictly increasing scored reference sets of limiting profiles."""

    sets: tuple[ReferenceSet, ...]

    def __post_init__(self) -> None:
        if len(self.sets) < 2:
            raise ValueError("reference structure needs at least two sets")

    @property
    def scores(self) -> tuple[float, ...]:
        return tuple(s.score for s in self.sets)

    def profile_names(self) -> tuple[tuple[str, ...], ...]:
        """Per-level profile names; default is positional (b11, b21, b22, ...)."""
        out = []
        for k, ref in enumerate(self.sets, start=1):
            if ref.names:
                out.append(ref.names)
            else:
                out.append(tuple(f"b{k}{p}" for p in range(1, len(ref.profiles) + 1)))
        return tuple(out)

    def flat_profiles(self) -> list[tuple[str, int, int, tuple[float, ...]]]:
        """(name, level_index, profile_index, vector) for every profile."""
        flat = []
        names = self.profile_names()
        for k, ref in enumerate(self.sets):
            for p, vec in enumerate(ref.profiles):
                flat.append((names[k][p], k, p, vec))
        return flat


@dataclass(frozen=True)
class CuttingLevel:
    """Cutting level turning fuzzy credibility into a crisp relation."""

    value: float

    def __post_init__(self) -> None:
        check_cutting_level(self.value)

    def __float__(self) -> float:
        return self.value


def check_cutting_level(lam: float) -> float:
    if not 0.5 < lam <= 1.0:
        raise ValueError(f"cutting level must lie in ]0.5, 1], got {lam}")
    return lam


def normalize_weights(criteria: Sequence[Criterion] | Sequence[float]) -> list[float]:
    """Scale weights to sum to one.

    Accepts criteria or raw weights. Raises AllZeroWeightsError when the
    total weight is zero.
    """
    weights = [c.weight if isinstance(c, Criterion) else float(c) for c in criteria]
    total = sum(weights)
    if total == 0:
        raise AllZeroWeightsError("all criterion weights are zero")
    return [w / total for w in weights]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of structural validation: hard violations plus advisories."""

    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


def _evaluate_spec(spec: ThresholdSpec, g: float) -> float:
    return spec.intercept + spec.slope * g


def _observed_values(
    table: PerformanceTable | None, refs: ReferenceStructure | None, j: int, name: str
) -> list[float]:
    # tolerant of missing cells / short profiles: totality and arity are
    # reported separately, threshold checks just use what is present
    values: list[float] = []
    if table is not None:
        for a in table.actions:
            if (a, name) in table.performances:
                values.append(table.performances[(a, name)])
    if refs is not None:
        for ref in refs.sets:
            values.extend(vec[j] for vec in ref.profiles if j < len(vec))
    return values


def validate_model(
    table: PerformanceTable | None,
    refs: ReferenceStructure | None,
) -> ValidationReport:
    """Check every structural invariant of the supplied model pieces.

    Returns a report listing all violations; an empty report means the
    model is well formed. Either argument may be omitted to validate the
    pieces separately.
    """
    errors: list[str] = []
    warnings: list[str] = []

    if table is not None:
        names = [c.name for c in table.criteria]
        if len(set(names)) != len(names):
            errors.append("criterion names are not unique")
        if len(set(table.actions)) != len(table.actions):
            errors.append("action identifiers are not unique")
        if not any(c.weight > 0 for c in table.criteria):
            errors.append("no criterion has positive weight")
        for action in table.actions:
            for crit in table.criteria:
                if (action, crit.name) not in table.performances:
                    errors.append(f"missing performance for ({action}, {crit.name})")

    if refs is not None:
        scores = refs.scores
        for lo, hi in zip(scores, scores[1:]):
            if not lo < hi:
                errors.append(
                    f"reference scores not strictly increasing: {lo} !< {hi}"
                )
        if table is not None:
            width = len(table.criteria)
            for name, k, p, vec in refs.flat_profiles():
                if len(vec) != width:
                    errors.append(
                        f"profile {name}: expected {width} values, got {len(vec)}"
                    )
            flat_names = [n for n, _, _, _ in refs.flat_profiles()]
            if len(set(flat_names)) != len(flat_names):
                errors.append("profile names are not unique")
            overlap = set(flat_names) & set(table.actions)
            if overlap:
                errors.append(
                    f"identifiers used both as action and profile: {sorted(overlap)}"
                )

    if table is not None:
        for j, crit in enumerate(table.criteria):
            observed = _observed_values(table, refs, j, crit.name)
            for g in observed:
                q = _evaluate_spec(crit.indifference, g)
                p = _evaluate_spec(crit.preference, g)
                if q < 0:
                    errors.append(
                        f"criterion {crit.name}: indifference threshold {q} < 0 at g={g}"
                    )
                if not q <= p:
                    errors.append(
                        f"criterion {crit.name}: q({g})={q} exceeds p({g})={p}"
                    )
                if crit.veto is not None:
                    v = _evaluate_spec(crit.veto, g)
                    if not p < v:
                        errors.append(
                            f"criterion {crit.name}: veto v({g})={v} must exceed p({g})={p}"
                        )
            if crit.ordinal:
                for label, spec in (
                    ("indifference", crit.indifference),
                    ("preference", crit.preference),
                    ("veto", crit.veto),
                ):
                    if spec is None:
                        continue
                    if spec.mode is not ThresholdMode.CONSTANT or (
                        float(spec.intercept).is_integer() is False
                    ):
                        warnings.append(
                            f"criterion {crit.name}: ordinal scale with non-integer "
                            f"or variable {label} threshold"
                        )

    return ValidationReport(tuple(errors), tuple(warnings))
