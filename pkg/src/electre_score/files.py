"""File formats: JSON model files, CSV performance tables, CSV relation
targets, and deterministic JSON report writing.

Reports round every real value to six decimals before serialization so
identical inputs produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Mapping

from .model import (
    Criterion,
    Direction,
    PerformanceTable,
    ReferenceSet,
    ReferenceStructure,
    ThresholdMode,
    ThresholdSpec,
)
from .scoring import DeckOfCards, deck_of_cards_scores


class ParseError(ValueError):
    """Unreadable or schema-invalid input file."""


def _threshold_from_json(raw: Any, where: str) -> ThresholdSpec:
    if isinstance(raw, (int, float)):
        return ThresholdSpec(float(raw))
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: threshold must be a number or an object")
    try:
        mode = ThresholdMode(raw.get("mode", "constant"))
    except ValueError as exc:
        raise ParseError(f"{where}: unknown threshold mode {raw.get('mode')!r}") from exc
    try:
        return ThresholdSpec(
            float(raw["intercept"]), float(raw.get("slope", 0.0)), mode
        )
    except KeyError as exc:
        raise ParseError(f"{where}: threshold needs an 'intercept'") from exc
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _criterion_from_json(raw: Any, index: int) -> Criterion:
    if not isinstance(raw, dict):
        raise ParseError(f"criteria[{index}]: expected an object")
    where = f"criteria[{index}]"
    try:
        name = str(raw["name"])
        direction = Direction(raw["direction"])
        weight = float(raw["weight"])
        indifference = _threshold_from_json(raw["indifference"], f"{where}.indifference")
        preference = _threshold_from_json(raw["preference"], f"{where}.preference")
    except KeyError as exc:
        raise ParseError(f"{where}: missing field {exc}") from exc
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    veto = raw.get("veto")
    veto_spec = None if veto is None else _threshold_from_json(veto, f"{where}.veto")
    try:
        return Criterion(
            name, direction, weight, indifference, preference, veto_spec,
            ordinal=bool(raw.get("ordinal", False)),
        )
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from exc


class LoadedModel:
    """Parsed model file: criteria, reference structure, optional extras."""

    def __init__(
        self,
        criteria: tuple[Criterion, ...],
        refs: ReferenceStructure,
        lam: float | None,
        embedded_performances: Mapping[str, tuple[float, ...]] | None,
        warnings: tuple[str, ...],
    ):
        self.criteria = criteria
        self.refs = refs
        self.lam = lam
        self.embedded_performances = embedded_performances
        self.warnings = warnings


def load_model(path: str | Path) -> LoadedModel:
    """Parse a JSON model file into domain objects.

    Reference-set scores may be given per set, or computed from a
    deck-of-cards block; explicit scores win over the deck with a
    warning when both are present and disagree.
    """
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read model file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"model file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("model file must contain a JSON object")

    raw_criteria = raw.get("criteria")
    if not isinstance(raw_criteria, list) or not raw_criteria:
        raise ParseError("model file needs a nonempty 'criteria' array")
    criteria = tuple(_criterion_from_json(c, i) for i, c in enumerate(raw_criteria))

    raw_sets = raw.get("reference_sets")
    if not isinstance(raw_sets, list) or len(raw_sets) < 2:
        raise ParseError("model file needs at least two entries in 'reference_sets'")

    warnings: list[str] = []
    deck_scores = None
    if "deck_of_cards" in raw:
        deck_raw = raw["deck_of_cards"]
        try:
            deck = DeckOfCards(
                tuple(int(e) for e in deck_raw["blank_cards"]),
                tuple(float(x) for x in deck_raw.get("anchors", (0.0, 100.0))),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"deck_of_cards block: {exc}") from exc
        if deck.levels != len(raw_sets):
            raise ParseError(
                f"deck_of_cards implies {deck.levels} levels but "
                f"{len(raw_sets)} reference sets are given"
            )
        deck_scores = deck_of_cards_scores(deck)

    explicit = [s.get("score") if isinstance(s, dict) else None for s in raw_sets]
    have_explicit = all(s is not None for s in explicit)
    if have_explicit and deck_scores is not None:
        if any(abs(float(e) - d) > 1e-9 for e, d in zip(explicit, deck_scores)):
            warnings.append(
                "explicit reference scores differ from the deck-of-cards "
                "computation; explicit scores are used"
            )
        scores = [float(e) for e in explicit]
    elif have_explicit:
        scores = [float(e) for e in explicit]
    elif deck_scores is not None:
        scores = deck_scores
    else:
        raise ParseError(
            "reference sets need 'score' fields or a 'deck_of_cards' block"
        )

    sets = []
    for i, (raw_set, score) in enumerate(zip(raw_sets, scores)):
        if not isinstance(raw_set, dict) or "profiles" not in raw_set:
            raise ParseError(f"reference_sets[{i}]: needs a 'profiles' array")
        profiles = []
        for j, vec in enumerate(raw_set["profiles"]):
            if not isinstance(vec, list) or len(vec) != len(criteria):
                raise ParseError(
                    f"reference_sets[{i}].profiles[{j}]: expected "
                    f"{len(criteria)} values"
                )
            profiles.append(tuple(float(x) for x in vec))
        names = tuple(str(n) for n in raw_set.get("names", ()))
        try:
            sets.append(ReferenceSet(score, tuple(profiles), names))
        except ValueError as exc:
            raise ParseError(f"reference_sets[{i}]: {exc}") from exc
    try:
        refs = ReferenceStructure(tuple(sets))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

    lam = raw.get("lambda")
    if lam is not None:
        lam = float(lam)

    embedded = None
    if "performances" in raw:
        embedded = {}
        for action, vec in raw["performances"].items():
            if not isinstance(vec, list) or len(vec) != len(criteria):
                raise ParseError(
                    f"performances[{action!r}]: expected {len(criteria)} values"
                )
            embedded[str(action)] = tuple(float(x) for x in vec)

    return LoadedModel(criteria, refs, lam, embedded, tuple(warnings))


def load_performances_csv(path: str | Path, criteria) -> PerformanceTable:
    """Read a performance table: header row of criterion names, id first."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ParseError(f"cannot read performance file {path}: {exc}") from exc
    if not rows:
        raise ParseError(f"performance file {path} is empty")
    header = rows[0]
    names = [c.name for c in criteria]
    if header[1:] != names:
        raise ParseError(
            f"performance header {header[1:]} does not match criteria {names}"
        )
    table_rows: dict[str, tuple[float, ...]] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(names) + 1:
            raise ParseError(
                f"{path}:{line_no}: expected {len(names) + 1} cells, got {len(row)}"
            )
        action = row[0].strip()
        try:
            values = tuple(float(cell) for cell in row[1:])
        except ValueError as exc:
            raise ParseError(f"{path}:{line_no}: non-numeric cell ({exc})") from exc
        if action in table_rows:
            raise ParseError(f"{path}:{line_no}: duplicate action {action!r}")
        table_rows[action] = values
    if not table_rows:
        raise ParseError(f"performance file {path} has no action rows")
    return PerformanceTable.from_rows(criteria, table_rows)


def table_from_embedded(criteria, embedded: Mapping[str, tuple[float, ...]]) -> PerformanceTable:
    return PerformanceTable.from_rows(criteria, dict(embedded))


def load_target_csv(path: str | Path) -> dict[tuple[str, str], str]:
    """Read a relation target: rows = profiles, columns = actions.

    Cells: ``a`` (action strictly preferred to the profile), ``b``
    (profile strictly preferred to the action), empty (neither).
    """
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ParseError(f"cannot read target file {path}: {exc}") from exc
    if not rows or len(rows[0]) < 2:
        raise ParseError(f"target file {path} needs a header with action columns")
    actions = [cell.strip() for cell in rows[0][1:]]
    target: dict[tuple[str, str], str] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        profile = row[0].strip()
        cells = [cell.strip().lower() for cell in row[1:]]
        if len(cells) != len(actions):
            raise ParseError(
                f"{path}:{line_no}: expected {len(actions)} cells, got {len(cells)}"
            )
        for action, cell in zip(actions, cells):
            if cell not in ("", "a", "b"):
                raise ParseError(
                    f"{path}:{line_no}: cell must be 'a', 'b' or empty, got {cell!r}"
                )
            target[(profile, action)] = cell
    return target


def round6(value):
    """Recursively round floats to six decimals for deterministic reports."""
    if isinstance(value, float):
        return round(value, 6)
    if isinstance(value, dict):
        return {k: round6(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round6(v) for v in value]
    return value


def write_report(report: dict, output: str | Path | None) -> str:
    text = json.dumps(round6(report), indent=2) + "\n"
    if output is not None:
        Path(output).write_text(text)
    return text
