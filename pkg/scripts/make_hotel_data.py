"""Regenerate the bundled hotel-instance input files under data/."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from electre_score.hotel import (
    HOTEL_DECK,
    HOTEL_SCORES,
    hotel_criteria,
    hotel_reference_structure,
    hotel_table,
    hotel_target_relations,
)

OUT = Path(__file__).resolve().parent.parent / "data"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    criteria = hotel_criteria()
    table = hotel_table()
    refs = hotel_reference_structure()

    model = {
        "criteria": [
            {
                "name": c.name,
                "direction": c.direction.value,
                "weight": c.weight,
                "indifference": {
                    "intercept": c.indifference.intercept,
                    "slope": c.indifference.slope,
                    "mode": c.indifference.mode.value,
                },
                "preference": {
                    "intercept": c.preference.intercept,
                    "slope": c.preference.slope,
                    "mode": c.preference.mode.value,
                },
                "veto": None,
                "ordinal": c.ordinal,
            }
            for c in criteria
        ],
        "reference_sets": [
            {
                "score": score,
                "profiles": [list(p) for p in ref.profiles],
                "names": list(names),
            }
            for score, ref, names in zip(
                HOTEL_SCORES, refs.sets, refs.profile_names()
            )
        ],
        "deck_of_cards": {
            "blank_cards": list(HOTEL_DECK.blank_cards),
            "anchors": list(HOTEL_DECK.anchors),
        },
    }
    (OUT / "hotel_model.json").write_text(json.dumps(model, indent=2) + "\n")

    with open(OUT / "hotel_performances.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["action"] + [c.name for c in criteria])
        for action in table.actions:
            writer.writerow([action] + [_fmt(v) for v in table.vector(action)])

    target = hotel_target_relations()
    actions = list(table.actions)
    profiles = [name for name, _, _, _ in refs.flat_profiles()]
    with open(OUT / "hotel_target_relations.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["profile"] + actions)
        for profile in profiles:
            writer.writerow([profile] + [target[(profile, a)] for a in actions])

    print(f"wrote hotel inputs under {OUT}")


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else str(v)


if __name__ == "__main__":
    main()
