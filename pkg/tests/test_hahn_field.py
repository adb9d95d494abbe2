import functools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffrank.chain import (
    All,
    AtOrAbove,
    Concat,
    Equivalent,
    Finite,
    FiniteAt,
    FixZeroPerCopy,
    NonNegRationals,
    NotEquivalent,
    Ordering,
    PerCopy,
    Rationals,
    Scale,
    Singleton,
    Translate,
    at,
    q,
)
from diffrank.errors import (
    HypothesisNotProven,
    NotInPK,
    NotInValuationRing,
    ZeroSeries,
)
from diffrank.hahn_field import (
    ConvexValuation,
    HahnSeries,
    Verdict,
    classify_automorphism,
    coarsening_w_compare,
    expansion_error,
    identity_tower,
    in_P_K,
    inverse_truncated,
    is_sigma_compatible,
    lift_group_automorphism_to_field,
    mult_equivalent,
    residue,
    series_add,
    series_compare,
    series_mul,
    series_neg,
    sigma_compatible_on,
    sigma_equivalent,
    t,
    tower_from_chain_shift,
    tower_from_group_automorphism,
    valuation,
)
from diffrank.hahn_group import HahnGroupElement, coefficient_scale, lift_shift_to_group
from diffrank.sampling import random_series, series_pool

S, F2 = Singleton(), Finite(2)
ONE = HahnSeries.one(S)


def g1(p):
    """Exponent ``p`` in the Hahn group over a point, a copy of Q."""
    return HahnGroupElement.basis(S, FiniteAt(0), p)


def x(p, c=1):
    return t(g1(p), c)


def b2(i, c=1):
    return HahnGroupElement.basis(F2, FiniteAt(i), c)


@st.composite
def series_q(draw):
    terms = draw(st.lists(st.tuples(st.integers(-3, 3), st.integers(-4, 4)), max_size=4))
    return HahnSeries.from_terms(S, [(g1(p), c) for p, c in terms])


class TestArithmetic:
    def test_cancellation(self):
        assert series_add(ONE + x(1), series_neg(x(1))) == ONE

    def test_pointwise(self):
        assert (x(-1, 2) + 3) + (x(-1) - 3) == x(-1, 3)

    def test_zero_identity(self):
        s = x(-2, 3) + 5
        assert s + HahnSeries.zero(S) == s

    def test_geometric_product(self):
        geometric = sum((x(i) for i in range(1, 5)), ONE)
        assert series_mul(ONE - x(1), geometric) == ONE - x(5)

    def test_monomials(self):
        g, h = b2(0, 2), b2(1, -3)
        assert t(g) * t(h) == t(g + h)

    def test_unit(self):
        s = x(-1, 7) + x(Fraction(1, 2))
        assert s * 1 == s and s * ONE == s

    def test_power(self):
        assert (ONE + x(1)) ** 2 == ONE + x(1, 2) + x(2)
        assert (x(-1)) ** 0 == ONE

    @given(series_q(), series_q(), series_q())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == HahnSeries.zero(S)


class TestOrder:
    def test_infinite_beats_constant(self):
        assert series_compare(x(-1), HahnSeries.constant(S, 1000)) is Ordering.GREATER

    def test_negative(self):
        assert series_compare(-x(-1), HahnSeries.zero(S)) is Ordering.LESS

    def test_infinitesimal_tail(self):
        assert series_compare(ONE + x(1), ONE) is Ordering.GREATER

    @given(series_q(), series_q(), series_q())
    def test_compatible(self, a, b, c):
        if a < b:
            assert a + c < b + c
        if a > 0 and b > 0:
            assert a * b > 0


class TestValuation:
    def test_min_support(self):
        assert valuation(x(-2, 3) + 5 + x(1)) == g1(-2)

    def test_constant(self):
        assert valuation(HahnSeries.constant(S, 7)) == g1(0)

    def test_multiplicative(self):
        assert valuation((ONE - x(1)) * x(-3)) == g1(-3)

    @given(series_q(), series_q())
    def test_laws(self, a, b):
        if a and b:
            assert valuation(a * b) == valuation(a) + valuation(b)
            if a + b:
                assert valuation(a + b) >= min(valuation(a), valuation(b))

    def test_zero_has_no_valuation(self):
        with pytest.raises(ZeroSeries):
            HahnSeries.zero(S).valuation()


class TestPK:
    def test_members(self):
        assert in_P_K(x(-1))
        assert not in_P_K(x(1))
        assert not in_P_K(-x(-1))
        assert not in_P_K(HahnSeries.constant(S, 5))


class TestInverse:
    def test_geometric(self):
        s = ONE - x(1)
        r = inverse_truncated(s, 4)
        assert r == ONE + x(1) + x(2) + x(3)
        assert valuation(s * r - 1) == g1(4)

    def test_monomial_exact(self):
        s = x(-2, 5)
        for k in (1, 3, 7):
            assert inverse_truncated(s, k) == x(2, Fraction(1, 5))

    def test_one(self):
        assert inverse_truncated(ONE, 1) == ONE

    def test_zero_rejected(self):
        with pytest.raises(ZeroSeries):
            inverse_truncated(HahnSeries.zero(S), 2)

    @given(series_q(), st.integers(1, 5))
    def test_contract(self, s, k):
        if not s:
            return
        r = inverse_truncated(s, k)
        eps = expansion_error(s)
        err = s * r - 1
        if eps:
            assert err == -((-eps) ** k)
            assert valuation(err) == valuation(eps) * k
        else:
            assert not err


class TestConvexValuation:
    w = ConvexValuation(AtOrAbove(F2, FiniteAt(1)))

    def test_compare_inside_subgroup(self):
        assert coarsening_w_compare(self.w, t(b2(1)), HahnSeries.one(F2)) is Ordering.EQUAL

    def test_compare_outside(self):
        assert coarsening_w_compare(self.w, t(b2(0)), HahnSeries.one(F2)) is Ordering.GREATER

    def test_trivial_segment(self):
        w = ConvexValuation(All(F2))
        assert w.compare(t(b2(0, -5)), t(b2(1, 3))) is Ordering.EQUAL

    def test_residues(self):
        one = HahnSeries.one(F2)
        assert residue(self.w, one * 2 + t(b2(0))) == one * 2
        a = one * 2 + t(b2(1), 3)
        assert residue(self.w, a) == a
        assert residue(self.w, t(b2(0))) == HahnSeries.zero(F2)

    def test_residue_outside_ring(self):
        with pytest.raises(NotInValuationRing):
            residue(self.w, t(b2(0, -1)))

    def test_ring_convex_on_pool(self):
        pool = sorted(series_pool(F2), key=functools.cmp_to_key(lambda a, b: a.compare(b)))
        flags = [self.w.in_ring(a) for a in pool]
        first, last = flags.index(True), len(flags) - 1 - flags[::-1].index(True)
        assert all(flags[first:last + 1])


OMEGA2 = tower_from_chain_shift(Concat(Finite(2), Rationals()), PerCopy(Translate(-1)))
FIXED2 = tower_from_chain_shift(Concat(Finite(2), NonNegRationals()), FixZeroPerCopy(Scale(2)))


class TestAutomorphisms:
    def test_lift_translation(self):
        Q = Rationals()
        sigma = lift_group_automorphism_to_field(lift_shift_to_group(Q, Translate(-1)))
        one0 = HahnGroupElement.basis(Q, q(0))
        assert sigma(t(one0)) == t(HahnGroupElement.basis(Q, q(-1)))

    def test_coefficients_untouched(self):
        Q = Rationals()
        sigma_g = lift_shift_to_group(Q, Translate(-1))
        sigma = lift_group_automorphism_to_field(sigma_g)
        g = HahnGroupElement.basis(Q, q(3), -2)
        assert sigma(HahnSeries.constant(Q, 2) + t(g, 3)) == HahnSeries.constant(Q, 2) + t(sigma_g(g), 3)

    @given(st.integers(0, 10**6))
    def test_field_automorphism(self, seed):
        rng = random.Random(seed)
        chain = OMEGA2.chain
        a, b = random_series(rng, chain), random_series(rng, chain)
        assert OMEGA2(a * b) == OMEGA2(a) * OMEGA2(b)
        assert OMEGA2(a + b) == OMEGA2(a) + OMEGA2(b)
        assert OMEGA2(a).compare(OMEGA2(b)) == a.compare(b)
        assert OMEGA2.sigma_field.inverse()(OMEGA2(a)) == a


class TestCompatibility:
    def test_translation_moves_cut(self):
        w = ConvexValuation(AtOrAbove(OMEGA2.chain, at(1, 0)))
        assert not is_sigma_compatible(w, OMEGA2)
        assert not sigma_compatible_on(w, OMEGA2, series_pool(OMEGA2.chain))

    def test_identity_tower(self):
        tower = identity_tower(Finite(3))
        for i in range(3):
            assert is_sigma_compatible(ConvexValuation(AtOrAbove(Finite(3), FiniteAt(i))), tower)

    def test_fixed_zero_cut(self):
        w = ConvexValuation(AtOrAbove(FIXED2.chain, at(1, 0)))
        assert is_sigma_compatible(w, FIXED2)
        assert sigma_compatible_on(w, FIXED2, series_pool(FIXED2.chain))


class TestClassification:
    def test_identity(self):
        cls = classify_automorphism(identity_tower(Finite(3)))
        assert cls.isometry is Verdict.PROVEN
        assert cls.weak_isometry is Verdict.PROVEN
        assert cls.omega_increasing is Verdict.REFUTED

    def test_omega(self):
        cls = classify_automorphism(OMEGA2)
        assert cls.omega_increasing is Verdict.PROVEN
        assert cls.square_growth is Verdict.PROVEN
        assert cls.isometry is Verdict.REFUTED

    def test_coefficient_scale(self):
        tower = tower_from_group_automorphism(coefficient_scale(F2, 2))
        cls = classify_automorphism(tower)
        assert cls.weak_isometry is Verdict.PROVEN
        assert cls.isometry is Verdict.REFUTED
        g = b2(1, -1)
        assert valuation(tower(t(g))) == g * 2

    def test_json_shape(self):
        out = classify_automorphism(OMEGA2).to_json()
        assert set(out) == {"isometry", "weak_isometry", "omega_increasing", "square_growth", "witnesses"}
        assert out["omega_increasing"] == "proven"


class TestEquivalence:
    def test_mult_squaring(self):
        assert mult_equivalent(x(-1), x(-3)) == Equivalent(2)

    def test_mult_distinct_classes(self):
        assert isinstance(mult_equivalent(t(b2(0, -1)), t(b2(1, -1))), NotEquivalent)

    def test_mult_requires_pk(self):
        with pytest.raises(NotInPK):
            mult_equivalent(x(1), x(-1))

    def test_sigma_across_copies(self):
        chain = OMEGA2.chain
        a = t(HahnGroupElement.basis(chain, at(0, 0), -1))
        b = t(HahnGroupElement.basis(chain, at(1, 0), -1))
        assert isinstance(sigma_equivalent(OMEGA2, a, b), NotEquivalent)

    def test_sigma_within_copy(self):
        chain = OMEGA2.chain
        a = t(HahnGroupElement.basis(chain, at(0, 0), -1))
        b = t(HahnGroupElement.basis(chain, at(0, 5), -1))
        assert sigma_equivalent(OMEGA2, a, b) == Equivalent(5)

    def test_sigma_needs_square_growth(self):
        a = t(HahnGroupElement.basis(FIXED2.chain, at(0, 1), -1))
        with pytest.raises(HypothesisNotProven):
            sigma_equivalent(FIXED2, a, a)
