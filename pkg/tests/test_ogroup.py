import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from divring.ogroup import (
    DUAL_LEFT_ORDER,
    RIGHT_ORDER,
    ConjugatedBy,
    GroupDescriptor,
    compare,
    format_element,
    local_order_class,
    order_key,
    parse_element,
    positivity_periodicity_probe,
)
from divring.scalars import QuadImaginary, ZETA3, parse_scaling_constant

from conftest import random_element


class TestMultiplication:
    def test_ts_normal_form(self, kb):
        t, s = kb.parse("t"), kb.parse("s")
        assert t * s == kb.element(1, 1)

    def test_st_flips(self, kb):
        # oracle: from ts = st^-1, right-multiplying by t gives tst = s,
        # hence st = t^-1 s
        t, s = kb.parse("t"), kb.parse("s")
        assert t * s * t == s
        assert s * t == t.inverse() * s
        assert s * t == kb.element(-1, 1)

    def test_ts_squared_cancels(self, kb):
        # oracle: expand via the normal-form law, h = 1 + (-1)^-1 * 1 = 0
        ts = kb.parse("t") * kb.parse("s")
        assert ts * ts == kb.element(0, 2)

    def test_associativity_sampled(self, kb, z3, gauss_group):
        rng = random.Random(5)
        for group in (kb, z3, gauss_group):
            for _ in range(100):
                a, b, c = (random_element(rng, group) for _ in range(3))
                assert (a * b) * c == a * (b * c)


class TestInverse:
    def test_identity(self, kb):
        assert kb.identity().inverse() == kb.identity()

    def test_pure_y(self, kb):
        assert kb.element(1, 0).inverse() == kb.element(-1, 0)

    def test_mixed_checked_by_multiplication(self, kb):
        g = kb.element(1, 1)
        assert g.inverse() == kb.element(1, -1)
        assert g * g.inverse() == kb.identity()
        assert g.inverse() * g == kb.identity()

    def test_normal_form_uniqueness(self, kb, z3):
        rng = random.Random(6)
        for group in (kb, z3):
            for _ in range(100):
                a = random_element(rng, group)
                prod = a * a.inverse()
                assert prod.h.is_zero and prod.n == 0


class TestCompare:
    def test_one_below_t(self, kb):
        assert compare(kb.identity(), kb.parse("t")) == -1

    def test_same_level_uses_y_exponent(self, kb):
        assert compare(kb.parse("t^-1*s"), kb.parse("s")) == -1

    def test_dual_left_order_unfolds(self, kb):
        t = kb.parse("t")
        assert compare(t, kb.identity(), DUAL_LEFT_ORDER) == 1
        assert compare(t.inverse(), kb.identity(), RIGHT_ORDER) == -1

    def test_right_invariance_sampled(self, kb, z3, gauss_group):
        rng = random.Random(7)
        for group in (kb, z3, gauss_group):
            for _ in range(150):
                a, b, g = (random_element(rng, group) for _ in range(3))
                assert compare(a, b) == compare(a * g, b * g)

    def test_positive_cone_closed(self, kb, gauss_group):
        rng = random.Random(8)
        for group in (kb, gauss_group):
            found = 0
            while found < 60:
                a, b = random_element(rng, group), random_element(rng, group)
                if compare(a, group.identity()) == 1 and compare(b, group.identity()) == 1:
                    found += 1
                    assert compare(a * b, group.identity()) == 1

    def test_dual_left_invariance_sampled(self, kb, z3):
        rng = random.Random(9)
        for group in (kb, z3):
            for _ in range(150):
                a, b, g = (random_element(rng, group) for _ in range(3))
                assert compare(a, b, DUAL_LEFT_ORDER) == compare(g * a, g * b, DUAL_LEFT_ORDER)

    def test_conjugated_matches_conjugation(self, kb, z3):
        rng = random.Random(10)
        for group in (kb, z3):
            for _ in range(100):
                a, b, g = (random_element(rng, group) for _ in range(3))
                lhs = compare(a, b, ConjugatedBy(g))
                rhs = compare(g * a * g.inverse(), g * b * g.inverse())
                assert lhs == rhs


@settings(max_examples=80, deadline=None)
@given(hn=st.integers(-4, 4), nn=st.integers(-3, 3),
       hm=st.integers(-4, 4), nm=st.integers(-3, 3),
       hg=st.integers(-4, 4), ng=st.integers(-3, 3))
def test_right_invariance_klein_bottle_property(hn, nn, hm, nm, hg, ng):
    kb = GroupDescriptor(-1)
    a, b, g = kb.element(hn, nn), kb.element(hm, nm), kb.element(hg, ng)
    assert compare(a, b) == compare(a * g, b * g)


class TestLocalOrder:
    def fixture(self):
        z3 = GroupDescriptor(ZETA3)
        s = z3.element(ZETA3 * ZETA3, 0)
        return z3, s

    def test_at_identity(self):
        # Re(w^2) = -1/2 < 0, so s < 1
        z3, s = self.fixture()
        assert local_order_class(z3.identity(), [z3.identity(), s]) == [s, z3.identity()]

    def test_at_x(self):
        # conjugation multiplies the exponent by c^-1 = w^2: s goes to y^w,
        # still on the negative side
        z3, s = self.fixture()
        x = z3.gen_x
        assert x * s * x.inverse() == z3.element(ZETA3, 0)
        assert local_order_class(x, [z3.identity(), s]) == [s, z3.identity()]

    def test_at_x_squared_crosses(self):
        z3, s = self.fixture()
        x2 = z3.gen_x ** 2
        assert x2 * s * x2.inverse() == z3.element(QuadImaginary(1), 0)
        assert local_order_class(x2, [z3.identity(), s]) == [z3.identity(), s]

    def test_rejects_duplicates(self):
        z3, s = self.fixture()
        with pytest.raises(ValueError):
            local_order_class(z3.identity(), [s, s])


class TestPeriodicity:
    def test_klein_bottle_alternates(self, kb):
        # conjugation by x sends t = y to y^((-1)^n), flipping sides, so the
        # class sequence has period 2
        rep = positivity_periodicity_probe(kb, [kb.identity(), kb.parse("t")], 4)
        assert rep.period == 2
        assert rep.class_at(0) != rep.class_at(1)
        assert rep.class_at(0) == rep.class_at(2)

    def test_cube_root_has_period_three(self, z3):
        s = z3.element(ZETA3 * ZETA3, 0)
        rep = positivity_periodicity_probe(z3, [z3.identity(), s], 6)
        assert rep.period == 3

    def test_gauss_has_no_small_period(self, gauss_group):
        rep = positivity_periodicity_probe(
            gauss_group, [gauss_group.identity(), gauss_group.gen_y], 12)
        assert rep.period is None or rep.period > 6


class TestLiterals:
    def test_parse_sugar(self, kb):
        assert kb.parse("ts") == kb.parse("t") * kb.parse("s")
        assert kb.parse("t^2*s") == kb.element(2, 1)
        assert kb.parse("1") == kb.identity()

    def test_parse_general_form(self, z3):
        g = parse_element("y^(1/2+1*w)x^-2", z3)
        # w denotes the cube root basis element for d = 3
        assert g.h == QuadImaginary(Fraction(1, 2)) + ZETA3
        assert g.n == -2

    def test_format_roundtrip(self, kb, z3, gauss_group):
        rng = random.Random(11)
        for group in (kb, z3, gauss_group):
            for _ in range(60):
                g = random_element(rng, group)
                assert parse_element(format_element(g), group) == g

    def test_order_key_dual_consistency(self, kb):
        rng = random.Random(12)
        for _ in range(100):
            a, b = random_element(rng, kb), random_element(rng, kb)
            dual = order_key(a, DUAL_LEFT_ORDER) < order_key(b, DUAL_LEFT_ORDER)
            unfolded = order_key(a.inverse()) > order_key(b.inverse())
            assert dual == unfolded
