import random

import pytest

from electre_score import properties as props
from electre_score.model import ReferenceSet, ReferenceStructure
from electre_score.properties import (
    DeleteProfile,
    DeleteSet,
    GeneratorConfig,
    InsertProfile,
    InsertSet,
    InvalidEditError,
    apply_edit,
    check_conformity,
    check_propositions,
    check_stability,
    generate_instance,
    make_edits,
    shrink_instance,
)
from electre_score.refsets import check_separability
from electre_score.scoring import lower_bound, upper_bound


class TestGenerator:
    def test_deterministic(self):
        a = generate_instance(42)
        b = generate_instance(42)
        assert a.digest() == b.digest()
        assert a.table.actions == b.table.actions
        assert a.refs.scores == b.refs.scores

    def test_seed_changes_instance(self):
        assert generate_instance(1).digest() != generate_instance(2).digest()

    def test_strong_dominance_construction_has_all_flags(self):
        for seed in range(8):
            inst = generate_instance(seed, GeneratorConfig(
                n_criteria=4, n_levels=4, max_profiles_per_level=3, n_actions=2))
            report = check_separability(inst.refs, inst.criteria, 0.75)
            for pair, flags in report.pairs.items():
                assert flags.strong_dominance, (seed, pair)
                assert flags.soft_preference_primal and flags.soft_preference_dual

    def test_free_mode_flags_can_vary(self):
        seen_false = False
        for seed in range(20):
            inst = generate_instance(seed, GeneratorConfig(
                n_levels=4, strong_dominance=False, n_actions=0))
            report = check_separability(inst.refs, inst.criteria, 0.75)
            if not report.soft_dominance:
                seen_false = True
                break
        assert seen_false

    def test_minimal_sizes(self):
        inst = generate_instance(0, GeneratorConfig(
            n_criteria=1, n_levels=2, max_profiles_per_level=1, n_actions=1))
        assert len(inst.criteria) == 1
        assert len(inst.refs.sets) == 2

    def test_rejects_undersized_config(self):
        with pytest.raises(ValueError):
            GeneratorConfig(n_levels=1)


class TestApplyEdit:
    def test_delete_set_keeps_other_scores(self, hotel):
        out = apply_edit(hotel["refs"], DeleteSet(3))
        assert len(out.sets) == 6
        assert out.scores == tuple(
            s for i, s in enumerate(hotel["refs"].scores) if i != 3
        )
        # original untouched
        assert len(hotel["refs"].sets) == 7

    def test_insert_set_sorts_by_score(self, hotel):
        new = InsertSet(40.0, ((14000.0, 2900.0, 4.0, 4.0, 3.0),))
        out = apply_edit(hotel["refs"], new)
        assert out.scores.index(40.0) == 3

    def test_insert_duplicate_score_rejected(self, hotel):
        with pytest.raises(InvalidEditError):
            apply_edit(hotel["refs"], InsertSet(50.0, ((0.0,) * 5,)))

    def test_delete_profile_keeps_set_nonempty(self, hotel):
        with pytest.raises(InvalidEditError):
            apply_edit(hotel["refs"], DeleteProfile(0, 0))
        out = apply_edit(hotel["refs"], DeleteProfile(1, 0))
        assert len(out.sets[1].profiles) == 1

    def test_delete_set_keeps_two_levels(self):
        refs = ReferenceStructure((
            ReferenceSet(0.0, ((0.0,),)), ReferenceSet(1.0, ((5.0,),)),
        ))
        with pytest.raises(InvalidEditError):
            apply_edit(refs, DeleteSet(0))

    def test_insert_duplicate_profile_content_allowed(self, hotel):
        dup = hotel["refs"].sets[3].profiles[0]
        out = apply_edit(hotel["refs"], InsertProfile(3, dup))
        assert len(out.sets[3].profiles) == 3

    def test_pure_and_repeatable(self, hotel):
        edit = InsertProfile(2, (15000.0, 3100.0, 3.0, 1.0, 2.0))
        once = apply_edit(hotel["refs"], edit)
        twice = apply_edit(hotel["refs"], edit)
        assert once == twice


class TestConformityChecker:
    def test_generated_collection_passes(self):
        inst = generate_instance(3, GeneratorConfig(
            n_criteria=3, n_levels=5, max_profiles_per_level=2, n_actions=0))
        report = check_conformity(inst.refs, inst.criteria, 0.75)
        assert report.hypothesis_met
        assert report.failures == ()
        assert report.trials > 0

    def test_two_level_collection_is_vacuous(self):
        inst = generate_instance(4, GeneratorConfig(n_levels=2, n_actions=0))
        report = check_conformity(inst.refs, inst.criteria, 0.75)
        assert report.trials == 0
        assert report.passed

    def test_hotel_is_gated(self, hotel):
        report = check_conformity(hotel["refs"], hotel["criteria"], 0.65)
        assert not report.hypothesis_met
        assert report.failures == ()  # observations logged, not asserted
        assert any("hypothesis not met" in n for n in report.notes)

    def test_detects_injected_bound_corruption(self, monkeypatch):
        # falsification: corrupt the lower-bound scan and the checker
        # must report failures instead of staying green
        inst = generate_instance(5, GeneratorConfig(
            n_criteria=3, n_levels=4, max_profiles_per_level=1, n_actions=0))
        real = props._scan_lower

        def corrupted(relations, scores, fast):
            value, idx = real(relations, scores, fast)
            return (scores[0], 0) if idx != 0 else (value, idx)

        monkeypatch.setattr(props, "_scan_lower", corrupted)
        report = check_conformity(inst.refs, inst.criteria, 0.75)
        assert report.failures


class TestPropositionChecker:
    def test_generated_collection_passes(self):
        inst = generate_instance(6, GeneratorConfig(
            n_criteria=4, n_levels=4, max_profiles_per_level=2, n_actions=8))
        actions = {a: inst.table.vector(a) for a in inst.table.actions}
        report = check_propositions(inst.refs, inst.criteria, 0.75, actions)
        assert report.hypothesis_met
        assert report.failures == ()

    def test_hotel_is_gated(self, hotel):
        actions = {a: hotel["table"].vector(a) for a in hotel["table"].actions}
        report = check_propositions(hotel["refs"], hotel["criteria"], 0.65, actions)
        assert not report.hypothesis_met

    def test_incomparable_action_skipped(self):
        inst = generate_instance(7, GeneratorConfig(
            n_criteria=2, n_levels=3, max_profiles_per_level=1, n_actions=0))
        # an action dominating every profile has no upper bound
        from electre_score.model import Direction

        top = inst.refs.sets[-1].profiles[0]
        super_action = tuple(
            v + 100.0 * (1 if c.direction is Direction.MAX else -1)
            for v, c in zip(top, inst.criteria)
        )
        report = check_propositions(
            inst.refs, inst.criteria, 0.75, {"super": super_action}
        )
        assert report.skipped >= 1
        assert report.failures == ()


class TestStabilityChecker:
    def test_generated_edits_pass(self):
        inst = generate_instance(8, GeneratorConfig(
            n_criteria=3, n_levels=5, max_profiles_per_level=2, n_actions=6))
        rng = random.Random(8)
        edits = make_edits(inst, rng, count=6)
        actions = {a: inst.table.vector(a) for a in inst.table.actions}
        report = check_stability(inst.refs, inst.criteria, 0.75, edits, actions)
        assert report.failures == ()
        assert report.trials > 0

    def test_delete_set_at_lower_bound_moves_one_level_down(self):
        inst = generate_instance(9, GeneratorConfig(
            n_criteria=3, n_levels=5, max_profiles_per_level=1, n_actions=4))
        crit, refs = inst.criteria, inst.refs
        for action in inst.table.actions:
            vec = inst.table.vector(action)
            try:
                lo, lo_idx = lower_bound(vec, refs, crit, 0.75)
            except Exception:
                continue
            if lo_idx == 0:
                continue
            edited = apply_edit(refs, DeleteSet(lo_idx))
            new_lo, new_idx = lower_bound(vec, edited, crit, 0.75)
            assert new_lo == refs.scores[lo_idx - 1]

    def test_insert_set_below_all_lower_bounds_changes_nothing(self):
        inst = generate_instance(10, GeneratorConfig(
            n_criteria=3, n_levels=4, max_profiles_per_level=1, n_actions=5))
        crit, refs = inst.criteria, inst.refs
        # a set just above the bottom one, dominated by everything above
        bottom, above = refs.sets[0].profiles[0], refs.sets[1].profiles[0]
        mid = tuple((x + y) / 2 for x, y in zip(bottom, above))
        score = (refs.sets[0].score + refs.sets[1].score) / 2
        edited = apply_edit(refs, InsertSet(score, (mid,)))
        for action in inst.table.actions:
            vec = inst.table.vector(action)
            try:
                old = (lower_bound(vec, refs, crit, 0.75),
                       upper_bound(vec, refs, crit, 0.75))
            except Exception:
                continue
            if old[0][0] == refs.scores[0]:
                continue  # the insert sits directly below this bound
            new = (lower_bound(vec, edited, crit, 0.75),
                   upper_bound(vec, edited, crit, 0.75))
            assert (new[0][0], new[1][0]) == (old[0][0], old[1][0])

    def test_incomparable_profile_insert_changes_nothing(self):
        # a profile hugely better on one equal-weight criterion and hugely
        # worse on the other splits credibility 0.5/0.5 against every
        # entity: incomparable at any admissible cutting level
        from electre_score.credibility import credibility
        from electre_score.model import (
            Criterion, Direction, PerformanceTable, ThresholdSpec,
        )
        from electre_score.scoring import score_ranges

        crit = (
            Criterion("g1", Direction.MAX, 1.0, ThresholdSpec(1.0), ThresholdSpec(2.0)),
            Criterion("g2", Direction.MAX, 1.0, ThresholdSpec(1.0), ThresholdSpec(2.0)),
        )
        refs = ReferenceStructure((
            ReferenceSet(0.0, ((0.0, 0.0),)),
            ReferenceSet(50.0, ((10.0, 10.0),)),
            ReferenceSet(100.0, ((20.0, 20.0),)),
        ))
        table = PerformanceTable.from_rows(crit, {"mid": (15.0, 15.0)})
        alien = (1000.0, -1000.0)
        lam = 0.75
        for vec in [(15.0, 15.0), (0.0, 0.0), (10.0, 10.0), (20.0, 20.0)]:
            assert credibility(crit, vec, alien) == 0.5 < lam
            assert credibility(crit, alien, vec) == 0.5 < lam
        edited = apply_edit(refs, InsertProfile(1, alien))
        before = score_ranges(table, refs, crit, lam).by_action()["mid"]
        after = score_ranges(table, edited, crit, lam, force=True).by_action()["mid"]
        assert (before.lower, before.upper) == (after.lower, after.upper)
        assert (before.lower, before.upper) == (50.0, 100.0)

    def test_detects_injected_scan_corruption(self, monkeypatch):
        inst = generate_instance(11, GeneratorConfig(
            n_criteria=3, n_levels=4, max_profiles_per_level=2, n_actions=5))
        rng = random.Random(11)
        edits = make_edits(inst, rng, count=4)
        actions = {a: inst.table.vector(a) for a in inst.table.actions}
        real = props._scan_upper

        def corrupted(relations, scores, fast):
            value, idx = real(relations, scores, fast)
            if idx + 1 < len(scores):
                return scores[idx + 1], idx + 1
            return value, idx

        monkeypatch.setattr(props, "_scan_upper", corrupted)
        report = check_stability(inst.refs, inst.criteria, 0.75, edits, actions)
        assert report.failures

    def test_gated_when_hypothesis_broken(self, hotel):
        actions = {a: hotel["table"].vector(a) for a in hotel["table"].actions}
        report = check_stability(
            hotel["refs"], hotel["criteria"], 0.65, [DeleteSet(3)], actions
        )
        assert not report.hypothesis_met
        assert report.trials == 0


class TestShrinker:
    def test_shrinks_to_minimal_failing_instance(self):
        inst = generate_instance(12, GeneratorConfig(
            n_criteria=5, n_levels=4, max_profiles_per_level=2, n_actions=6))

        # synthetic failure predicate: fails whenever at least two
        # criteria and at least three levels remain
        def still_fails(candidate):
            return len(candidate.criteria) >= 2 and len(candidate.refs.sets) >= 3

        small = shrink_instance(inst, still_fails)
        assert len(small.criteria) == 2
        assert len(small.refs.sets) == 3
        assert len(small.table.actions) == 0

    def test_respects_invariants(self):
        inst = generate_instance(13, GeneratorConfig(
            n_criteria=1, n_levels=2, max_profiles_per_level=1, n_actions=1))
        small = shrink_instance(inst, lambda c: True)
        assert len(small.criteria) == 1
        assert len(small.refs.sets) == 2


class TestSuiteReproducibility:
    def test_same_seed_same_report(self):
        from electre_score.suites import run_conformity_suite, run_stability_suite

        assert run_conformity_suite(10, 77) == run_conformity_suite(10, 77)
        assert run_stability_suite(8, 99) == run_stability_suite(8, 99)

    def test_different_seed_changes_instances(self):
        a = generate_instance(100)
        b = generate_instance(101)
        assert a.digest() != b.digest()


class TestEditFlagPreservation:
    def test_insert_set_between_levels_preserves_held_flags(self, hotel):
        # a profile dominating the level-3 profile and dominated by both
        # level-4 profiles, scored between them
        crit, refs = hotel["criteria"], hotel["refs"]
        from electre_score.credibility import dominates

        new_profile = (15000.0, 3150.0, 3.0, 2.0, 2.0)
        assert dominates(crit, new_profile, refs.sets[2].profiles[0])
        for prof in refs.sets[3].profiles:
            assert dominates(crit, prof, new_profile)
        before = check_separability(refs, crit, 0.65)
        edited = apply_edit(refs, InsertSet(40.0, (new_profile,)))
        after = check_separability(edited, crit, 0.65)
        held = {
            pair for pair, f in before.pairs.items()
            if f.soft_dominance_primal and f.soft_dominance_dual
        }
        # map old level indices to new ones (insert lands at position 3)
        def shift(k):
            return k if k < 3 else k + 1

        for lo, hi in held:
            flags = after.pairs[(shift(lo), shift(hi))]
            assert flags.soft_dominance_primal and flags.soft_dominance_dual


def _single_criterion_chain():
    from electre_score.model import (
        Criterion, Direction, PerformanceTable, ThresholdSpec,
    )

    crit = (Criterion("g", Direction.MAX, 1.0, ThresholdSpec(1.0), ThresholdSpec(2.0)),)
    refs = ReferenceStructure((
        ReferenceSet(10.0, ((0.0,),)),
        ReferenceSet(20.0, ((10.0,),)),
        ReferenceSet(30.0, ((20.0,),)),
        ReferenceSet(40.0, ((30.0,),)),
    ))
    return crit, refs


class TestStabilityHandCases:
    # expectations below are derived by hand from the single-criterion
    # credibilities (full weight beyond p, zero against), not recomputed
    # with the engine

    def test_insert_set_becomes_new_upper_bound(self):
        crit, refs = _single_criterion_chain()
        action = {"a": (15.0,)}
        # a beats 0 and 10 beyond p, loses to 20 and 30: bounds (20, 30).
        # The inserted profile 17 outranks a (17-15 = 2 = p counts fully)
        # while a's fraction back is zero, so the new set is strictly
        # preferred and sits inside the old range: new upper = 25
        edit = InsertSet(25.0, ((17.0,),))
        report = check_stability(refs, crit, 0.75, [edit], action)
        assert report.trials == 1
        assert report.failures == ()
        edited = apply_edit(refs, edit)
        assert lower_bound((15.0,), edited, crit, 0.75) == (20.0, 1)
        assert upper_bound((15.0,), edited, crit, 0.75) == (25.0, 2)

    def test_insert_profile_at_lower_bound_level_pushes_bound_down(self):
        crit, refs = _single_criterion_chain()
        action = {"a": (15.0,)}
        # inserting 17 into the x=20 set: 17 is strictly preferred to a,
        # and the level turns incomparable for a, so the lower bound
        # drops to 10; the upper bound stays 30 because a still beats the
        # existing profile 10 of that set (the move-down condition for
        # the upper bound requires that no such profile remains)
        edit = InsertProfile(1, (17.0,))
        report = check_stability(refs, crit, 0.75, [edit], action)
        assert report.trials == 1
        assert report.failures == ()
        edited = apply_edit(refs, edit)
        assert lower_bound((15.0,), edited, crit, 0.75) == (10.0, 0)
        assert upper_bound((15.0,), edited, crit, 0.75) == (30.0, 2)

    def test_delete_profile_moves_lower_bound_up(self):
        # three criteria, weights (2,1,1), constant q=1, p=2; the x=30
        # set holds P=(20,20,0) and Q=(13,27,3), which are mutually
        # incomparable (each wins half the weight beyond p). For
        # a=(15,15,3): credibility(a,Q)=0.75 and back 0.5, so a beats Q;
        # P beats a (0.75 against 0.25). The level is incomparable, so
        # the bounds are (20, 40). Deleting P leaves only Q, which a
        # beats: the lower bound climbs one level to 30.
        from electre_score.model import (
            Criterion, Direction, PerformanceTable, ThresholdSpec,
        )

        crit = tuple(
            Criterion(f"g{j}", Direction.MAX, w, ThresholdSpec(1.0), ThresholdSpec(2.0))
            for j, w in enumerate((2.0, 1.0, 1.0), start=1)
        )
        refs = ReferenceStructure((
            ReferenceSet(10.0, ((0.0, 0.0, 0.0),)),
            ReferenceSet(20.0, ((10.0, 10.0, 0.0),)),
            ReferenceSet(30.0, ((20.0, 20.0, 0.0), (13.0, 27.0, 3.0))),
            ReferenceSet(40.0, ((30.0, 30.0, 6.0),)),
        ))
        a = (15.0, 15.0, 3.0)
        lam = 0.7
        assert lower_bound(a, refs, crit, lam) == (20.0, 1)
        assert upper_bound(a, refs, crit, lam) == (40.0, 3)

        edit = DeleteProfile(2, 0)
        report = check_stability(refs, crit, lam, [edit], {"a": a})
        assert report.trials == 1
        assert report.failures == ()
        edited = apply_edit(refs, edit)
        assert lower_bound(a, edited, crit, lam) == (30.0, 2)
        assert upper_bound(a, edited, crit, lam) == (40.0, 3)
