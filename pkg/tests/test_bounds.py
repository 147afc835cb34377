"""Declared-bound table tests: exact values per (mechanism, variant, n, k),
None where no guarantee is claimed, and the rational over-approximation of
the irrational reverse-proportional constant.
"""

from fractions import Fraction as F

import pytest

from flp import MechanismId, RP_BOUND, Variant, declared_bound


class TestDeclaredValues:
    def test_two_medians_sum_is_optimal(self):
        assert declared_bound(MechanismId.TWO_MEDIANS, Variant.SUM, 4, 2) == 1

    def test_two_medians_max_makes_no_claim(self):
        assert declared_bound(MechanismId.TWO_MEDIANS, Variant.MAX, 4, 2) is None

    def test_median_right_sum(self):
        assert declared_bound(MechanismId.MEDIAN_RIGHT, Variant.SUM, 4, 2) == 1
        assert declared_bound(MechanismId.MEDIAN_RIGHT, Variant.SUM, 3, 2) == F(3, 2)
        assert declared_bound(MechanismId.MEDIAN_RIGHT, Variant.SUM, 9, 2) == F(9, 8)

    def test_median_right_max(self):
        assert declared_bound(MechanismId.MEDIAN_RIGHT, Variant.MAX, 4, 2) == 2
        assert declared_bound(MechanismId.MEDIAN_RIGHT, Variant.MAX, 3, 2) == 3
        assert declared_bound(MechanismId.MEDIAN_RIGHT, Variant.MAX, 5, 2) == F(5, 2)

    def test_median_left_claims_odd_n_only(self):
        assert declared_bound(MechanismId.MEDIAN_LEFT, Variant.SUM, 3, 2) == F(3, 2)
        assert declared_bound(MechanismId.MEDIAN_LEFT, Variant.SUM, 4, 2) is None
        assert declared_bound(MechanismId.MEDIAN_LEFT, Variant.MAX, 5, 2) == F(5, 2)
        assert declared_bound(MechanismId.MEDIAN_LEFT, Variant.MAX, 6, 2) is None

    def test_uniform(self):
        assert declared_bound(MechanismId.UNIFORM, Variant.MAX, 3, 2) == F(8, 4)
        assert declared_bound(MechanismId.UNIFORM, Variant.MAX, 5, 2) == F(14, 8)
        assert declared_bound(MechanismId.UNIFORM, Variant.SUM, 3, 2) is None

    def test_reverse_proportional(self):
        assert (
            declared_bound(MechanismId.REVERSE_PROPORTIONAL, Variant.SUM, 3, 2)
            == RP_BOUND
        )
        assert (
            declared_bound(MechanismId.REVERSE_PROPORTIONAL, Variant.MAX, 3, 2) is None
        )

    def test_median_ball(self):
        assert declared_bound(MechanismId.MEDIAN_BALL, Variant.SUM, 9, 5) == 2
        assert declared_bound(MechanismId.MEDIAN_BALL, Variant.MAX, 9, 5) == 6
        assert declared_bound(MechanismId.MEDIAN_BALL, Variant.MAX, 4, 2) == 3

    def test_auto_sum_follows_parity(self):
        assert declared_bound(MechanismId.AUTO_SUM, Variant.SUM, 4, 2) == 1
        assert declared_bound(MechanismId.AUTO_SUM, Variant.SUM, 5, 2) == RP_BOUND

    def test_baseline(self):
        assert declared_bound(MechanismId.OPT_SUM_BASELINE, Variant.SUM, 3, 2) == 1
        assert declared_bound(MechanismId.OPT_SUM_BASELINE, Variant.MAX, 3, 2) is None

    @pytest.mark.parametrize("mech", list(MechanismId), ids=lambda m: m.value)
    @pytest.mark.parametrize("variant", list(Variant), ids=lambda v: v.value)
    def test_every_claim_is_a_rational_at_least_one(self, mech, variant):
        for n, k in ((2, 2), (3, 2), (6, 4), (9, 5)):
            bound = declared_bound(mech, variant, n, k)
            assert bound is None or (isinstance(bound, F) and bound >= 1)


class TestRpBoundConstant:
    def test_strictly_exceeds_the_irrational_constant(self):
        # RP_BOUND > 10 - 4*sqrt(5)  <=>  (10 - RP_BOUND)^2 < 80,
        # checked without ever leaving rational arithmetic.
        assert 0 < 10 - RP_BOUND
        assert (10 - RP_BOUND) ** 2 < 80

    def test_tight_to_eleven_decimal_places(self):
        slack = F(1, 10**11)
        assert (10 - RP_BOUND + slack) ** 2 > 80

    def test_matches_twelve_digit_decimal(self):
        assert RP_BOUND == F(1_055_728_090_001, 10**12)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
