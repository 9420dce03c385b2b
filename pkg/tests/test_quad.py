"""Quadratic fitting: differences, extension, Newton fits, reindexing."""

import random

import pytest

from rootspiral.quad import (
    ArmSystem,
    Arm,
    DiffProfile,
    NonIntegralError,
    NotQuadraticError,
    QuadPoly,
    coefficient_rules_check,
    decimate,
    differences,
    extend,
    newton_fit,
    shift,
)

A3 = QuadPoly(9, 3, -1)
B3 = QuadPoly(9, 9, -1)
Q3 = QuadPoly(11, -31, 31)
EULER = QuadPoly(1, 1, 41)


class TestDifferences:
    def test_arm_a3(self):
        prof = differences([11, 41, 89, 155, 239])
        assert prof == DiffProfile(first=(30, 48, 66, 84), second=18)

    def test_arm_k5(self):
        prof = differences([13, 49, 107, 187, 289, 413])
        assert prof.first == (36, 58, 80, 102, 124)
        assert prof.second == 22

    def test_minimal_length(self):
        assert differences([1, 2, 4]).second == 1

    def test_non_quadratic(self):
        with pytest.raises(NotQuadraticError) as exc:
            differences([1, 2, 4, 9])
        assert exc.value.index == 3

    def test_too_short(self):
        with pytest.raises(ValueError):
            differences([1, 2])

    def test_profile_reconstructs_sequence(self):
        seq = [13, 49, 107, 187, 289, 413]
        prof = differences(seq)
        rebuilt = [seq[0]]
        for d in prof.first:
            rebuilt.append(rebuilt[-1] + d)
        assert rebuilt == seq


class TestExtend:
    def test_arm_a3(self):
        assert extend([11, 41, 89], 2) == [11, 41, 89, 155, 239]

    def test_arm_b3(self):
        assert extend([17, 53, 107], 3) == [17, 53, 107, 179, 269, 377]

    def test_zeros(self):
        assert extend([0, 0, 0], 5) == [0] * 8

    def test_matches_polynomial(self):
        rng = random.Random(7)
        for _ in range(50):
            p = QuadPoly(rng.randint(-9, 9), rng.randint(-50, 50), rng.randint(-50, 50))
            vals = p.values(1, 3)
            assert extend(vals, 7) == p.values(1, 10)


class TestNewtonFit:
    def test_arm_a3(self):
        assert newton_fit(1, (11, 41, 89)) == A3

    def test_arm_b3(self):
        assert newton_fit(1, (17, 53, 107)) == B3

    def test_euler_polynomial_two_origins(self):
        assert newton_fit(1, (41, 43, 47)) == QuadPoly(1, -1, 41)
        assert newton_fit(0, (41, 43, 47)) == EULER

    def test_half_integer_lead_rejected(self):
        with pytest.raises(NonIntegralError):
            newton_fit(1, (0, 1, 3))

    def test_round_trip_random(self):
        rng = random.Random(20260810)
        for _ in range(300):
            p = QuadPoly(
                rng.randint(-20, 20), rng.randint(-100, 100), rng.randint(-100, 100)
            )
            t0 = rng.randint(-50, 50)
            assert newton_fit(t0, [p(t0), p(t0 + 1), p(t0 + 2)]) == p

    def test_second_difference_is_2a(self):
        rng = random.Random(99)
        for _ in range(100):
            p = QuadPoly(rng.randint(-20, 20), rng.randint(-100, 100), rng.randint(-100, 100))
            assert differences(p.values(1, 10)).second == 2 * p.a


class TestShift:
    def test_arm_a3_second_fit(self):
        assert shift(A3, 1) == QuadPoly(9, 21, 11)

    def test_identity(self):
        assert shift(Q3, 0) == Q3

    def test_arm_q3_second_fit(self):
        assert shift(Q3, 1) == QuadPoly(11, -9, 11)

    def test_composition(self):
        rng = random.Random(3)
        for _ in range(50):
            p = QuadPoly(rng.randint(-9, 9), rng.randint(-50, 50), rng.randint(-50, 50))
            s, t = rng.randint(-10, 10), rng.randint(-10, 10)
            assert shift(shift(p, s), t) == shift(p, s + t)

    def test_pointwise(self):
        q = shift(B3, 5)
        for x in range(-3, 4):
            assert q(x) == B3(x + 5)


class TestDecimate:
    def test_euler_split_first_arm(self):
        assert decimate(EULER, 3, 0) == QuadPoly(9, 3, 41)

    def test_square_arm(self):
        g = decimate(QuadPoly(1, 0, 0), 3, 1)
        assert g == QuadPoly(9, 6, 1)
        assert [g(t) for t in range(4)] == [1, 16, 49, 100]

    def test_identity(self):
        assert decimate(Q3, 1, 0) == Q3

    def test_partition_property(self):
        rng = random.Random(11)
        for _ in range(30):
            p = QuadPoly(rng.randint(-9, 9), rng.randint(-30, 30), rng.randint(-30, 30))
            m, T = rng.randint(1, 5), 12
            union = []
            for r in range(m):
                union.extend(decimate(p, m, r)(t) for t in range(T))
            assert sorted(union) == sorted(p(x) for x in range(m * T))

    def test_bad_residue(self):
        with pytest.raises(ValueError):
            decimate(EULER, 3, 3)


class TestQuadPoly:
    def test_str(self):
        assert str(A3) == "9x^2 + 3x - 1"
        assert str(Q3) == "11x^2 - 31x + 31"

    def test_parse_triple(self):
        assert QuadPoly.parse("9,9,-1") == B3

    def test_parse_compact(self):
        assert QuadPoly.parse("11x^2-31x+31") == Q3
        assert QuadPoly.parse("9x^2 + 3x - 1") == A3
        assert QuadPoly.parse("x^2+x+41") == EULER
        assert QuadPoly.parse("-x^2+3x-7") == QuadPoly(-1, 3, -7)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            QuadPoly.parse("x^3+1")

    def test_exact_evaluation_at_large_x(self):
        x = 2**30
        p = QuadPoly(2**30, 2**30, 2**30)
        assert p(x) == 2**30 * x * x + 2**30 * x + 2**30

    def test_first_difference(self):
        for x in range(-5, 6):
            assert B3.first_difference(x) == B3(x + 1) - B3(x)

    def test_discriminant(self):
        assert Q3.discriminant == -403
        assert QuadPoly(11, -13, 13).discriminant == -403


class TestCoefficientRules:
    @staticmethod
    def _system_from_fits(name, d2, fit1, terms):
        fits = [fit1]
        for _ in range(3):
            fits.append(shift(fits[-1], 1))
        return ArmSystem(
            name=name, d2=d2, rotation="P",
            arms=(Arm(name="X1", fits=tuple(fits), terms=tuple(terms)),),
        )

    def test_fixture_style_system_passes(self):
        sys_ = self._system_from_fits("P18-A", 18, A3, [A3(x) for x in range(1, 7)])
        report = coefficient_rules_check(sys_)
        assert report.ok and report.checked == 1

    def test_n22_system_passes(self):
        sys_ = self._system_from_fits("N22-Q", 22, Q3, [Q3(x) for x in range(1, 7)])
        assert coefficient_rules_check(sys_).ok

    def test_wrong_leading_coefficient_fails_rule_one(self):
        bad = self._system_from_fits("BAD", 20, A3, [A3(x) for x in range(1, 7)])
        report = coefficient_rules_check(bad)
        assert not report.ok
        assert any(f.rule == "a=d2/2" for f in report.failures)

    def test_broken_c_rule_detected(self):
        fits = (A3, shift(A3, 1), QuadPoly(9, 39, 40), shift(A3, 3))
        sys_ = ArmSystem(
            name="P18-X", d2=18, rotation="P",
            arms=(Arm(name="X", fits=fits, terms=tuple(A3(x) for x in range(1, 7))),),
        )
        report = coefficient_rules_check(sys_)
        assert any(f.rule == "c=preceding-term" for f in report.failures)

    def test_rotation_validation(self):
        with pytest.raises(ValueError):
            ArmSystem(name="Z", d2=18, rotation="Q")
