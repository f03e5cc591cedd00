import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from electre_score.credibility import (
    CredibilityMatrix,
    DerivedRelation,
    InvalidVetoError,
    InvertedThresholdsError,
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
from electre_score.model import Criterion, Direction, ThresholdMode, ThresholdSpec
from electre_score.properties import GeneratorConfig, generate_instance

from oracle import engine_criterion_to_dict, sigma_oracle


def _crit(direction=Direction.MAX, q=1.0, p=2.0, v=None, weight=1.0, name="g"):
    return Criterion(
        name, direction, weight,
        ThresholdSpec(q), ThresholdSpec(p),
        None if v is None else ThresholdSpec(v),
    )


class TestAdvantage:
    def test_minimization_flips_sign(self):
        crit = _crit(Direction.MIN)
        assert advantage(crit, 13000, 18000) == 5000

    def test_equal_performances(self):
        assert advantage(_crit(), 4.0, 4.0) == 0.0

    def test_maximization_keeps_sign(self):
        assert advantage(_crit(), 4, 1) == 3


class TestThresholdAt:
    def test_direct_uses_worse_performance_under_minimization(self):
        # worse of (13000, 14250) under minimization is 14250:
        # 250 + 0.03 * 14250 = 677.5
        crit = Criterion(
            "ICOST", Direction.MIN, 5.0,
            ThresholdSpec(250.0, 0.03, ThresholdMode.DIRECT),
            ThresholdSpec(500.0, 0.05, ThresholdMode.DIRECT),
        )
        assert threshold_at(crit.indifference, crit, 13000, 14250) == pytest.approx(677.5)
        assert threshold_at(crit.indifference, crit, 14250, 13000) == pytest.approx(677.5)

    def test_inverse_uses_better_performance(self):
        spec = ThresholdSpec(1.0, 0.1, ThresholdMode.INVERSE)
        crit = Criterion("g", Direction.MAX, 1.0, spec, ThresholdSpec(9.0, 0.1, ThresholdMode.INVERSE))
        assert threshold_at(spec, crit, 10.0, 20.0) == pytest.approx(1.0 + 0.1 * 20.0)

    def test_constant(self):
        crit = _crit()
        assert threshold_at(crit.indifference, crit, 123.0, -456.0) == 1.0

    def test_zero_constant_degenerates_to_true_criterion(self):
        crit = _crit(q=0.0, p=0.0)
        assert threshold_at(crit.indifference, crit, 5.0, 7.0) == 0.0
        # any nonzero difference is then a strict preference
        assert per_criterion_relation(crit, 7.0, 5.0) is PerCriterionRelation.STRICT_PREF_A


class TestPerCriterionRelation:
    def test_strict_preference_beyond_p(self):
        # level difference 3 exceeds p = 2
        assert per_criterion_relation(_crit(), 4, 1) is PerCriterionRelation.STRICT_PREF_A

    def test_indifferent_within_q(self):
        assert per_criterion_relation(_crit(), 4, 5) is PerCriterionRelation.INDIFFERENT

    def test_equal_is_indifferent(self):
        assert per_criterion_relation(_crit(), 3.3, 3.3) is PerCriterionRelation.INDIFFERENT

    def test_weak_zones_and_boundaries(self):
        crit = _crit()
        assert per_criterion_relation(crit, 2.0, 0.0) is PerCriterionRelation.WEAK_PREF_A
        assert per_criterion_relation(crit, 0.0, 2.0) is PerCriterionRelation.WEAK_PREF_B
        # delta = q stays indifferent, delta in ]q, p] is weak, beyond p strict
        assert per_criterion_relation(crit, 1.0, 0.0) is PerCriterionRelation.INDIFFERENT
        assert per_criterion_relation(crit, 1.5, 0.0) is PerCriterionRelation.WEAK_PREF_A
        assert per_criterion_relation(crit, 2.5, 0.0) is PerCriterionRelation.STRICT_PREF_A

    def test_inverted_thresholds_raise(self):
        crit = Criterion("g", Direction.MAX, 1.0, ThresholdSpec(3.0), ThresholdSpec(1.0))
        with pytest.raises(InvertedThresholdsError):
            per_criterion_relation(crit, 0.0, 0.0)


class TestConcordance:
    def test_fully_concordant_pair_is_exactly_one(self, hotel, hotel_vectors):
        assert concordance(hotel["criteria"], hotel_vectors["a1"], hotel_vectors["b31"]) == 1.0

    def test_partial_coalition(self, hotel, hotel_vectors):
        # hand evaluation: ICOST strict against (0), ACOST indifferent (4),
        # RECRU indifferent (3), IMAGE strict against (0), ACCES weak
        # against with a zero fraction (0) -> 7/18
        c = concordance(hotel["criteria"], hotel_vectors["b31"], hotel_vectors["a1"])
        assert c == pytest.approx(7 / 18, abs=1e-12)

    def test_self_comparison(self, hotel, hotel_vectors):
        assert concordance(hotel["criteria"], hotel_vectors["a4"], hotel_vectors["a4"]) == 1.0

    def test_weak_opposition_fraction(self):
        # q=1, p=3: delta=-2 sits mid-zone, fraction (delta+p)/(p-q) = 0.5
        crit = [_crit(q=1.0, p=3.0)]
        assert concordance(crit, (0.0,), (2.0,)) == pytest.approx(0.5)


class TestDiscordance:
    def test_no_veto_is_zero(self):
        assert discordance(_crit(), 0.0, 100.0) == 0.0

    def test_band_midpoint(self):
        # p=2, v=4, delta=-3 -> (-3+2)/(2-4) = 0.5
        crit = _crit(p=2.0, v=4.0)
        assert discordance(crit, 0.0, 3.0) == pytest.approx(0.5)

    def test_band_boundaries(self):
        crit = _crit(p=2.0, v=4.0)
        assert discordance(crit, 0.0, 2.0) == 0.0           # delta = -p
        assert discordance(crit, 0.0, 4.0) == pytest.approx(1.0)  # delta = -v
        assert discordance(crit, 0.0, 5.0) == 1.0           # beyond the veto

    def test_invalid_veto(self):
        crit = Criterion("g", Direction.MAX, 1.0, ThresholdSpec(1.0), ThresholdSpec(2.0),
                         ThresholdSpec(2.0))
        with pytest.raises(InvalidVetoError):
            discordance(crit, 0.0, 10.0)


class TestCredibility:
    def test_dominated_profile_gets_full_credibility(self, hotel, hotel_vectors):
        assert credibility(hotel["criteria"], hotel_vectors["a1"], hotel_vectors["b11"]) == 1.0

    def test_no_veto_collapse(self, hotel, hotel_vectors):
        crit = hotel["criteria"]
        pa, pb = hotel_vectors["b31"], hotel_vectors["a1"]
        assert credibility(crit, pa, pb) == concordance(crit, pa, pb)
        assert credibility(crit, pa, pb) == pytest.approx(7 / 18, abs=1e-12)

    def test_full_veto_annihilates(self):
        crits = [
            _crit(weight=3.0, name="g1"),
            _crit(weight=2.0, p=2.0, v=4.0, name="g2"),
        ]
        pa, pb = (10.0, 0.0), (0.0, 10.0)  # g2 difference far beyond the veto
        c = concordance(crits, pa, pb)
        assert c == pytest.approx(0.6)
        assert credibility(crits, pa, pb) == 0.0

    def test_reflexive(self, hotel, hotel_vectors):
        for key in ("a1", "a3", "b41", "b71"):
            assert credibility(hotel["criteria"], hotel_vectors[key], hotel_vectors[key]) == 1.0

    def test_discount_applies_only_above_concordance(self):
        # d = 0.75 > c = 0.6: sigma = c * (1-d)/(1-c)
        crits = [
            _crit(weight=3.0, name="g1"),
            _crit(weight=2.0, p=2.0, v=6.0, name="g2"),
        ]
        pa, pb = (10.0, 0.0), (0.0, 5.0)  # delta_2 = -5: d = (-5+2)/(2-6) = 0.75
        c = concordance(crits, pa, pb)
        assert c == pytest.approx(0.6)
        assert credibility(crits, pa, pb) == pytest.approx(0.6 * 0.25 / 0.4)


class TestCrispAndDerived:
    def test_boundary_inclusive(self):
        assert crisp_outranks(1.0, 1.0)
        assert crisp_outranks(0.75, 0.75)
        assert not crisp_outranks(7 / 18, 0.7)

    def test_rejects_bad_lambda(self):
        with pytest.raises(ValueError):
            crisp_outranks(0.9, 0.5)

    def test_four_cases(self):
        assert derived_relation(True, False) is DerivedRelation.A_PREFERRED
        assert derived_relation(False, True) is DerivedRelation.B_PREFERRED
        assert derived_relation(True, True) is DerivedRelation.INDIFFERENT
        assert derived_relation(False, False) is DerivedRelation.INCOMPARABLE

    def test_hotel_pairs_at_070(self, hotel, hotel_vectors):
        crit = hotel["criteria"]
        matrix = CredibilityMatrix.compute(
            crit, {k: hotel_vectors[k] for k in ("a1", "b31", "b42")}
        )
        assert matrix.relation("a1", "b31", 0.7) is DerivedRelation.A_PREFERRED
        assert matrix.relation("a1", "a1", 0.7) is DerivedRelation.INDIFFERENT
        # sigma(a1,b42) = 1 and sigma(b42,a1) = 103/108, both above 0.7
        assert matrix.value("b42", "a1") == pytest.approx(103 / 108, abs=1e-12)
        assert matrix.relation("a1", "b42", 0.7) is DerivedRelation.INDIFFERENT


class TestDominates:
    def test_componentwise(self, hotel, hotel_vectors):
        crit = hotel["criteria"]
        assert dominates(crit, hotel_vectors["a1"], hotel_vectors["b11"])
        assert not dominates(crit, hotel_vectors["a1"], hotel_vectors["a1"])
        # b31 loses to b21 on IMAGE (1 < 2)
        assert not dominates(crit, hotel_vectors["b31"], hotel_vectors["b21"])

    def test_requires_strict_component(self):
        crit = [_crit(name="g1"), _crit(name="g2")]
        assert not dominates(crit, (1.0, 1.0), (1.0, 1.0))
        assert dominates(crit, (1.0, 2.0), (1.0, 1.0))


class TestOracleAgreement:
    def test_hotel_matrix_matches_reference_implementation(self, hotel, hotel_vectors):
        crit = hotel["criteria"]
        oracle_crit = [engine_criterion_to_dict(c) for c in crit]
        keys = list(hotel_vectors)
        for a in keys:
            for b in keys:
                expected = sigma_oracle(oracle_crit, hotel_vectors[a], hotel_vectors[b])
                got = credibility(crit, hotel_vectors[a], hotel_vectors[b])
                assert got == pytest.approx(expected, abs=1e-12), (a, b)

    @pytest.mark.parametrize("seed", range(12))
    def test_random_instances_match_reference_implementation(self, seed):
        rng = random.Random(seed)
        inst = generate_instance(
            seed,
            GeneratorConfig(
                n_criteria=rng.randint(1, 6),
                n_levels=rng.randint(2, 5),
                max_profiles_per_level=rng.randint(1, 3),
                n_actions=4,
                threshold_mode=rng.choice(("constant", "variable")),
                veto=rng.choice((False, True)),
                strong_dominance=False,
            ),
        )
        oracle_crit = [engine_criterion_to_dict(c) for c in inst.criteria]
        vectors = [inst.table.vector(a) for a in inst.table.actions]
        vectors += [vec for _, _, _, vec in inst.refs.flat_profiles()]
        for _ in range(40):
            pa, pb = rng.choice(vectors), rng.choice(vectors)
            assert credibility(inst.criteria, pa, pb) == pytest.approx(
                sigma_oracle(oracle_crit, pa, pb), abs=1e-10
            )


class TestRangeInvariants:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000), st.booleans())
    def test_sigma_bounded_by_concordance(self, seed, veto):
        inst = generate_instance(
            seed, GeneratorConfig(n_criteria=3, n_levels=3, n_actions=3,
                                  veto=veto, strong_dominance=False)
        )
        rng = random.Random(seed)
        vectors = [inst.table.vector(a) for a in inst.table.actions]
        vectors += [vec for _, _, _, vec in inst.refs.flat_profiles()]
        pa, pb = rng.choice(vectors), rng.choice(vectors)
        c = concordance(inst.criteria, pa, pb)
        sigma = credibility(inst.criteria, pa, pb)
        assert 0.0 <= c <= 1.0
        assert 0.0 <= sigma <= c + 1e-15
        for j, crit in enumerate(inst.criteria):
            assert 0.0 <= discordance(crit, pa[j], pb[j]) <= 1.0
        if not veto:
            assert sigma == c

    @settings(max_examples=40, deadline=None)
    @given(
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.5, max_value=1.0, exclude_min=True),
    )
    def test_derived_relation_partition(self, sab, sba, lam):
        rel = derived_relation(sab >= lam, sba >= lam)
        assert rel in DerivedRelation


class TestThresholdEdgeCases:
    def test_negative_evaluated_threshold_raises(self):
        from electre_score.credibility import NegativeThresholdError

        spec = ThresholdSpec(-10.0, 0.0, ThresholdMode.CONSTANT)
        crit = Criterion("g", Direction.MAX, 1.0, spec, ThresholdSpec(1.0))
        with pytest.raises(NegativeThresholdError):
            threshold_at(spec, crit, 0.0, 0.0)

    def test_equal_thresholds_have_empty_weak_zone(self):
        # p = q leaves no weak zone; boundary pairs classify cleanly and
        # concordance never needs the degenerate fraction
        crit = [_crit(q=1.0, p=1.0)]
        assert per_criterion_relation(crit[0], 0.0, 1.0) is PerCriterionRelation.INDIFFERENT
        assert per_criterion_relation(crit[0], 0.0, 1.5) is PerCriterionRelation.STRICT_PREF_B
        assert concordance(crit, (0.0,), (1.0,)) == 1.0
        assert concordance(crit, (0.0,), (1.5,)) == 0.0
