"""Per-band analysis of the hotel instance.

For every elementary cutting-level band of ]0.5, 1] (delimited by
credibility breakpoints) this prints: how many target-table pairs match,
whether the basic assumptions hold, and the score ranges. It documents
why no single band reproduces the bundled relation target and range list
in full: the target encodes mutually exclusive constraints (see the
mismatch columns).
"""

from __future__ import annotations

from electre_score.credibility import credibility
from electre_score.hotel import (
    HOTEL_SCORES,
    hotel_criteria,
    hotel_reference_structure,
    hotel_table,
    hotel_target_relations,
)
from electre_score.refsets import validate_basic_assumptions
from electre_score.scoring import score_ranges
from electre_score.sweep import sweep_lambda


def main() -> None:
    criteria = hotel_criteria()
    table = hotel_table()
    refs = hotel_reference_structure()
    target = hotel_target_relations()

    result = sweep_lambda(table, refs, criteria, target)
    print(f"breakpoints ({len(result.breakpoints)}):")
    print("  " + ", ".join(f"{b:.9f}" for b in result.breakpoints))
    print(f"exact-match bands: {[ (iv.lower, iv.upper) for iv in result.intervals ]}")
    if result.best_band is not None:
        print(
            f"closest band ]{result.best_band.lower:.9f}, "
            f"{result.best_band.upper:.9f}] misses: {list(result.mismatches_best)}"
        )

    shipped = {
        "a1": (HOTEL_SCORES[2], HOTEL_SCORES[5]),
        "a2": (HOTEL_SCORES[3], HOTEL_SCORES[5]),
        "a3": (HOTEL_SCORES[3], HOTEL_SCORES[5]),
        "a4": (HOTEL_SCORES[2], HOTEL_SCORES[4]),
        "a5": (HOTEL_SCORES[2], HOTEL_SCORES[4]),
    }

    print("\nper-band details (right endpoint used as representative):")
    lower = 0.5
    for upper in result.breakpoints:
        lam = upper
        violations = validate_basic_assumptions(refs, criteria, lam)
        ranges = score_ranges(table, refs, criteria, lam, force=True)
        def matches(r) -> bool:
            return (
                r.defined
                and abs(r.lower - shipped[r.action][0]) < 1e-9
                and abs(r.upper - shipped[r.action][1]) < 1e-9
            )

        agree = sum(1 for r in ranges.ranges if matches(r))
        off = [
            (
                f"{r.action}=]{r.lower:.2f},{r.upper:.2f}["
                if r.defined
                else f"{r.action}=undefined({r.reason})"
            )
            for r in ranges.ranges
            if not matches(r)
        ]
        print(
            f"]{lower:.9f}, {upper:.9f}]  "
            f"assumptions={'ok' if not violations else 'VIOLATED'}  "
            f"ranges {agree}/5" + (f"  off: {', '.join(off)}" if off else "")
        )
        lower = upper

    # the two hard conflicts inside the relation target
    vecs = {a: table.vector(a) for a in table.actions}
    for name, _, _, v in refs.flat_profiles():
        vecs[name] = v
    print("\nconflicting constraints inside the relation target:")
    print(
        "  a4>b41 needs lam <= "
        f"{credibility(criteria, vecs['a4'], vecs['b41']):.9f}; "
        "a5>b41 needs lam > "
        f"{credibility(criteria, vecs['b41'], vecs['a5']):.9f}"
    )
    print(
        "  a5>b31 needs lam > "
        f"{credibility(criteria, vecs['b31'], vecs['a5']):.9f}; "
        "b51>a4 needs lam <= "
        f"{credibility(criteria, vecs['b51'], vecs['a4']):.9f}; "
        "blank (b51,a2) needs lam outside "
        f"]{credibility(criteria, vecs['a2'], vecs['b51']):.9f}, "
        f"{credibility(criteria, vecs['b51'], vecs['a2']):.9f}]"
    )


if __name__ == "__main__":
    main()
