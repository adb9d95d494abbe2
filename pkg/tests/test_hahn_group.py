import functools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffrank.chain import (
    AtOrAbove,
    Concat,
    Decrement,
    Equivalent,
    Finite,
    FiniteAt,
    FixZeroPerCopy,
    Identity,
    NonNegRationals,
    NotEquivalent,
    Ordering,
    PerCopy,
    Rationals,
    Scale,
    Translate,
    at,
    q,
)
from diffrank.errors import DomainMismatch, NotInvertible, ZeroElement
from diffrank.hahn_group import (
    GroupAutomorphism,
    HahnGroupElement,
    archimedean_equivalent,
    coefficient_scale,
    convex_subgroup_member,
    group_add,
    group_compare,
    group_neg,
    lift_shift_to_group,
    subgroup_generated_value,
    value_vG,
)

F2, F3, F6 = Finite(2), Finite(3), Finite(6)


def e(chain, *pairs):
    return HahnGroupElement.from_terms(chain, [(FiniteAt(i) if isinstance(i, int) else i, c) for i, c in pairs])


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def elements(draw, chain=F3):
    pairs = draw(st.lists(st.tuples(st.integers(0, chain.n - 1), coeffs), max_size=4))
    return e(chain, *pairs)


class TestArithmetic:
    def test_inverse(self):
        assert e(F2, (0, 1)) + e(F2, (0, -1)) == HahnGroupElement.zero(F2)
        assert (e(F2, (0, 1)) + e(F2, (0, -1))).support == []

    def test_pointwise(self):
        got = group_add(e(F2, (0, 1), (1, 2)), e(F2, (1, 3)))
        assert got == e(F2, (0, 1), (1, 5))

    def test_identity(self):
        g = e(F3, (1, Fraction(2, 3)))
        assert g + HahnGroupElement.zero(F3) == g
        assert group_neg(group_neg(g)) == g

    def test_mixed_chains_rejected(self):
        with pytest.raises(DomainMismatch):
            e(F2, (0, 1)) + e(F3, (0, 1))

    def test_unknown_index_rejected(self):
        with pytest.raises(DomainMismatch):
            e(F2, (5, 1))

    @given(elements(), elements(), elements())
    def test_group_laws(self, g, h, k):
        assert (g + h) + k == g + (h + k)
        assert g + h == h + g
        assert g - g == HahnGroupElement.zero(F3)


class TestOrder:
    def test_leading_sign_dominates(self):
        assert group_compare(e(F3, (0, 1), (1, -100)), HahnGroupElement.zero(F3)) is Ordering.GREATER

    def test_zero(self):
        assert group_compare(HahnGroupElement.zero(F3), HahnGroupElement.zero(F3)) is Ordering.EQUAL

    def test_smaller_index_is_larger(self):
        assert group_compare(e(F2, (1, 1)), e(F2, (0, 1))) is Ordering.LESS

    @given(elements(), elements(), elements())
    def test_translation_invariant(self, g, h, k):
        assert g.compare(h) == (g + k).compare(h + k)

    @given(elements(), elements())
    def test_total_and_antisymmetric(self, g, h):
        assert g.compare(h) == -h.compare(g)
        assert (g.compare(h) == 0) == (g == h)


class TestValue:
    def test_min_support(self):
        assert value_vG(e(F6, (2, 1), (5, 2))) == FiniteAt(2)

    def test_negative_coefficient(self):
        assert value_vG(e(F2, (0, -3))) == FiniteAt(0)

    def test_zero_has_no_value(self):
        with pytest.raises(ZeroElement):
            value_vG(HahnGroupElement.zero(F2))

    @given(elements(), elements())
    def test_ultrametric(self, g, h):
        if g and h and g + h:
            lo = min(value_vG(g), value_vG(h), key=lambda x: x.index)
            assert value_vG(g + h).index >= lo.index


class TestArchimedean:
    def test_same_leading_index(self):
        assert archimedean_equivalent(e(F2, (0, 1)), e(F2, (0, 7), (1, 1))) == Equivalent(3)

    def test_different_leading_index(self):
        assert isinstance(archimedean_equivalent(e(F2, (0, 1)), e(F2, (1, 1))), NotEquivalent)

    def test_reflexive(self):
        g = e(F3, (2, -4))
        assert archimedean_equivalent(g, g) == Equivalent(0)

    def test_zero_rejected(self):
        with pytest.raises(ZeroElement):
            archimedean_equivalent(HahnGroupElement.zero(F2), e(F2, (0, 1)))

    @given(elements(), elements())
    def test_matches_leading_index(self, g, h):
        if g and h:
            verdict = archimedean_equivalent(g, h)
            assert isinstance(verdict, Equivalent) == (value_vG(g) == value_vG(h))


class TestAutomorphisms:
    def test_lift_translation(self):
        Q = Rationals()
        sigma = lift_shift_to_group(Q, Translate(-1))
        g = HahnGroupElement.from_terms(Q, [(q(0), 1), (q(1), 1)])
        assert sigma(g) == HahnGroupElement.from_terms(Q, [(q(-1), 1), (q(0), 1)])

    def test_lift_identity(self):
        g = e(F3, (0, 2), (2, -1))
        assert lift_shift_to_group(F3, Identity())(g) == g

    def test_lift_fixzero(self):
        chain = Concat(Finite(2), NonNegRationals())
        sigma = lift_shift_to_group(chain, FixZeroPerCopy(Scale(2)))
        g = HahnGroupElement.from_terms(chain, [(at(0, 0), 1), (at(1, 3), 1)])
        assert sigma(g) == HahnGroupElement.from_terms(chain, [(at(0, 0), 1), (at(1, 6), 1)])

    def test_non_bijective_shift_rejected(self):
        with pytest.raises(NotInvertible):
            lift_shift_to_group(F3, Decrement())

    def test_coefficient_scale(self):
        sigma = coefficient_scale(F2, 2)
        assert sigma(e(F2, (0, 1), (1, 3))) == e(F2, (0, 2), (1, 6))
        assert sigma.inverse()(sigma(e(F2, (1, 5)))) == e(F2, (1, 5))
        assert sigma.kind == "scale"

    def test_scale_must_be_positive(self):
        with pytest.raises(ValueError):
            GroupAutomorphism(F2, Identity(), -1)

    @given(elements(), elements())
    def test_lift_is_order_preserving_homomorphism(self, g, h):
        chain = Concat(Finite(3), Rationals())
        sigma = lift_shift_to_group(chain, PerCopy(Translate(-1)))
        # re-home the elements onto copy indices of the concatenation
        gg = HahnGroupElement.from_terms(chain, [(at(x.index, x.index), c) for x, c in g.terms])
        hh = HahnGroupElement.from_terms(chain, [(at(x.index, x.index), c) for x, c in h.terms])
        assert sigma(gg + hh) == sigma(gg) + sigma(hh)
        assert sigma(gg).compare(sigma(hh)) == gg.compare(hh)


class TestConvexSubgroups:
    def test_membership(self):
        seg = AtOrAbove(F2, FiniteAt(1))
        assert convex_subgroup_member(seg, e(F2, (1, 1)))
        assert not convex_subgroup_member(seg, e(F2, (0, 1)))

    def test_zero_always_member(self):
        for i in range(3):
            assert convex_subgroup_member(AtOrAbove(F3, FiniteAt(i)), HahnGroupElement.zero(F3))

    def test_leading_index_decides(self):
        assert not convex_subgroup_member(AtOrAbove(F2, FiniteAt(1)), e(F2, (0, 1), (1, 5)))

    def test_generated(self):
        assert subgroup_generated_value(e(F3, (1, 1))) == AtOrAbove(F3, FiniteAt(1))
        assert subgroup_generated_value(e(F3, (0, 2))) == AtOrAbove(F3, FiniteAt(0))

    @given(elements(), elements(), st.integers(0, 2))
    def test_convex_and_closed(self, g, h, i):
        seg = AtOrAbove(F3, FiniteAt(i))
        if convex_subgroup_member(seg, g) and convex_subgroup_member(seg, h):
            assert convex_subgroup_member(seg, g + h)
            assert convex_subgroup_member(seg, -g)
            lo, hi = sorted([g, h], key=functools.cmp_to_key(lambda a, b: a.compare(b)))
            mid = lo * Fraction(1, 2) + hi * Fraction(1, 2)
            assert convex_subgroup_member(seg, mid)
