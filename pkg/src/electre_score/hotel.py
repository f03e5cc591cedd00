"""Bundled demonstration instance: choosing a site for a new hotel.

Five candidate sites scored on investment cost, annual cost (both
minimized, thousands of euros, direct variable thresholds) and three
seven-level verbal criteria coded 1..7 (recruitment, image, access;
constant level-difference thresholds, no vetoes). Seven reference sets
of limiting profiles span the scale; their scores come from a
deck-of-cards elicitation anchored at 0 and 100.

The bundled reference scores are the elicited list shipped with the
instance. Note that the blank-card counts recorded for the same session
do not reproduce that list under the cumulative unit formula (see
``deck_of_cards_scores``); the elicited list is kept authoritative.
"""

from __future__ import annotations

from .model import (
    Criterion,
    Direction,
    PerformanceTable,
    ReferenceSet,
    ReferenceStructure,
    ThresholdMode,
    ThresholdSpec,
)
from .scoring import DeckOfCards

# score list shipped with the instance (authoritative for range demos)
HOTEL_SCORES = (0.0, 25.0, 100.0 / 3.0, 50.0, 175.0 / 3.0, 250.0 / 3.0, 100.0)

# blank cards recorded between consecutive reference sets
HOTEL_DECK = DeckOfCards(blank_cards=(1, 2, 0, 1, 0, 2), anchors=(0.0, 100.0))


def hotel_criteria() -> tuple[Criterion, ...]:
    direct = ThresholdMode.DIRECT
    const = ThresholdMode.CONSTANT
    return (
        Criterion(
            "ICOST", Direction.MIN, 5.0,
            indifference=ThresholdSpec(250.0, 0.03, direct),
            preference=ThresholdSpec(500.0, 0.05, direct),
        ),
        Criterion(
            "ACOST", Direction.MIN, 4.0,
            indifference=ThresholdSpec(50.0, 0.05, direct),
            preference=ThresholdSpec(100.0, 0.07, direct),
        ),
        Criterion(
            "RECRU", Direction.MAX, 3.0,
            indifference=ThresholdSpec(1.0, mode=const),
            preference=ThresholdSpec(2.0, mode=const),
            ordinal=True,
        ),
        Criterion(
            "IMAGE", Direction.MAX, 3.0,
            indifference=ThresholdSpec(1.0, mode=const),
            preference=ThresholdSpec(2.0, mode=const),
            ordinal=True,
        ),
        Criterion(
            "ACCES", Direction.MAX, 3.0,
            indifference=ThresholdSpec(1.0, mode=const),
            preference=ThresholdSpec(2.0, mode=const),
            ordinal=True,
        ),
    )


def hotel_table() -> PerformanceTable:
    return PerformanceTable.from_rows(
        hotel_criteria(),
        {
            "a1": (13000, 3000, 4, 4, 4),
            "a2": (15000, 2500, 6, 2, 7),
            "a3": (10900, 3400, 6, 6, 1),
            "a4": (15500, 3500, 6, 6, 6),
            "a5": (15000, 2600, 6, 1, 2),
        },
    )


def hotel_reference_structure() -> ReferenceStructure:
    profiles = (
        ((18000, 4000, 1, 1, 1),),
        ((17000, 3500, 2, 2, 1), (16500, 3700, 1, 2, 1)),
        ((15350, 3200, 3, 1, 2),),
        ((14250, 2850, 3, 4, 3), (13750, 3150, 4, 3, 3)),
        ((12650, 2650, 4, 4, 5),),
        ((11500, 2100, 5, 6, 5), (11000, 2500, 6, 5, 7)),
        ((10000, 2000, 7, 7, 7),),
    )
    return ReferenceStructure(
        tuple(
            ReferenceSet(score, tuple(tuple(map(float, v)) for v in vecs))
            for score, vecs in zip(HOTEL_SCORES, profiles)
        )
    )


def hotel_target_relations() -> dict[tuple[str, str], str]:
    """Recorded comparison table for the instance, as (profile, action) -> mark.

    Marks: ``"a"`` = action strictly preferred to the profile, ``"b"`` =
    profile strictly preferred to the action, ``""`` = neither.
    """
    action_pref = {
        "b11": ("a1", "a2", "a3", "a4", "a5"),
        "b21": ("a1", "a2", "a3", "a4", "a5"),
        "b22": ("a1", "a2", "a3", "a4", "a5"),
        "b31": ("a1", "a2", "a3", "a4", "a5"),
        "b41": ("a2", "a4", "a5"),
        "b42": ("a2", "a3"),
        "b51": (),
        "b61": (),
        "b62": (),
        "b71": (),
    }
    profile_pref = {
        "b11": (), "b21": (), "b22": (), "b31": (), "b41": (), "b42": (),
        "b51": ("a4", "a5"),
        "b61": ("a1", "a2", "a3", "a4", "a5"),
        "b62": ("a1", "a2", "a3", "a4", "a5"),
        "b71": ("a1", "a2", "a3", "a4", "a5"),
    }
    actions = ("a1", "a2", "a3", "a4", "a5")
    target: dict[tuple[str, str], str] = {}
    for profile in action_pref:
        for action in actions:
            mark = ""
            if action in action_pref[profile]:
                mark = "a"
            elif action in profile_pref[profile]:
                mark = "b"
            target[(profile, action)] = mark
    return target
