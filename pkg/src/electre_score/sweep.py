"""Exact cutting-level sweep.

Crisp relations only change when the cutting level crosses a credibility
value, so the admissible set for any relation target is a union of
left-open right-closed intervals whose endpoints are credibility values
(or the domain bounds 0.5 and 1). The sweep enumerates those elementary
bands and evaluates each at its right endpoint; no sampling is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .credibility import credibility
from .model import Criterion, PerformanceTable, ReferenceStructure



@dataclass(frozen=True)
class LambdaInterval:
    """Maximal band ]lower, upper] of admissible cutting levels."""

    lower: float
    upper: float

    def contains(self, lam: float) -> bool:
        return self.lower < lam <= self.upper

    def midpoint(self) -> float:
        return (self.lower + self.upper) / 2


@dataclass(frozen=True)
class SweepResult:
    intervals: tuple[LambdaInterval, ...]
    breakpoints: tuple[float, ...]
    mismatches_best: tuple[tuple[str, str], ...]  # closest band's failing pairs
    best_band: LambdaInterval | None

    @property
    def feasible(self) -> bool:
        return bool(self.intervals)


def _pair_mark(sigma_ap: float, sigma_pa: float, lam: float) -> str:
    sab = sigma_ap >= lam
    sba = sigma_pa >= lam
    if sab and not sba:
        return "a"
    if sba and not sab:
        return "b"
    return ""


def sweep_lambda(
    table: PerformanceTable,
    refs: ReferenceStructure,
    criteria: Sequence[Criterion],
    target: Mapping[tuple[str, str], str],
    dont_care_blanks: bool = False,
    tol: float = 0.0,
) -> SweepResult:
    """All maximal cutting-level bands reproducing the target exactly.

    ``target`` maps (profile name, action id) to ``"a"`` (action strictly
    preferred), ``"b"`` (profile strictly preferred) or ``""``. A blank
    demands indifference-or-incomparability unless ``dont_care_blanks``
    relaxes it to no constraint.
    """
    profiles = {name: vec for name, _, _, vec in refs.flat_profiles()}
    unknown = [
        key for key in target
        if key[0] not in profiles or key[1] not in table.actions
    ]
    if unknown:
        raise KeyError(f"target refers to unknown pairs: {unknown[:5]}")

    sigma: dict[tuple[str, str], float] = {}
    for (pname, action) in target:
        av = table.vector(action)
        pv = profiles[pname]
        sigma[(action, pname)] = credibility(criteria, av, pv, tol)
        sigma[(pname, action)] = credibility(criteria, pv, av, tol)

    values = sorted({v for v in sigma.values() if 0.5 < v <= 1.0} | {1.0})
    bands: list[tuple[float, float, list[tuple[str, str]]]] = []
    lower = 0.5
    for upper in values:
        lam = upper  # right endpoint lies in the band and represents it
        mismatches = [
            (pname, action)
            for (pname, action), mark in target.items()
            if (mark or not dont_care_blanks)
            and _pair_mark(sigma[(action, pname)], sigma[(pname, action)], lam) != mark
        ]
        bands.append((lower, upper, mismatches))
        lower = upper

    intervals: list[LambdaInterval] = []
    for lower, upper, mismatches in bands:
        if mismatches:
            continue
        if intervals and intervals[-1].upper == lower:
            intervals[-1] = LambdaInterval(intervals[-1].lower, upper)
        else:
            intervals.append(LambdaInterval(lower, upper))

    best = min(bands, key=lambda b: len(b[2]))
    return SweepResult(
        intervals=tuple(intervals),
        breakpoints=tuple(values),
        mismatches_best=tuple(best[2]),
        best_band=LambdaInterval(best[0], best[1]),
    )
