"""Finite-support generalized power series over a Hahn group.

A series ``sum c_g t^g`` has rational coefficients and exponents in the Hahn
group over a chain.  Its natural valuation is the smallest exponent, and the
order is lexicographic.  Inverses are necessarily truncated, with an exact
error term.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .chain import (
    DEFAULT_CAP,
    AtOrAbove,
    AtOrAboveClass,
    All,
    Chain,
    EquivalenceVerdict,
    Equivalent,
    FinalSegmentCut,
    Identity,
    NotEquivalent,
    Ordering,
    Orientation,
    ShiftMap,
    StrictlyAbove,
    Undecided,
    format_rational,
    is_strict_left_shift,
    search_witness,
    shift_equivalent,
    value_key,
)
from .errors import (
    DomainMismatch,
    HypothesisNotProven,
    NotInPK,
    NotInValuationRing,
    UnsupportedShape,
    ZeroSeries,
)
from .hahn_group import (
    GroupAutomorphism,
    HahnGroupElement,
    _compare_terms,
    archimedean_equivalent,
    convex_subgroup_member,
    lift_shift_to_group,
    value_vG,
)

_exponent_key = functools.cmp_to_key(lambda x, y: _compare_terms(x.terms, y.terms))


def _sorted_terms(chain: Chain, acc: dict) -> tuple:
    """Build a sorted term tuple from ``{exponent terms: coefficient}``."""
    kept = [(HahnGroupElement(chain, e), c) for e, c in acc.items() if c != 0]
    kept.sort(key=lambda item: _exponent_key(item[0]))
    return tuple(kept)


def _add_exponents(s: tuple, t: tuple) -> tuple:
    if not s:
        return t
    if not t:
        return s
    acc = dict(s)
    for g, c in t:
        acc[g] = acc.get(g, 0) + c
    return tuple(sorted(((g, c) for g, c in acc.items() if c != 0),
                        key=lambda item: value_key(item[0])))


@dataclass(frozen=True)
class HahnSeries:
    chain: Chain
    terms: tuple

    @classmethod
    def from_terms(cls, chain: Chain, terms: Union[Mapping, Iterable]) -> "HahnSeries":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for g, c in items:
            if not isinstance(g, HahnGroupElement) or g.chain != chain:
                raise DomainMismatch(f"exponent {g} is not in the Hahn group over {chain}")
            acc[g.terms] = acc.get(g.terms, 0) + Fraction(c)
        return cls(chain, _sorted_terms(chain, acc))

    @classmethod
    def monomial(cls, exponent: HahnGroupElement, coefficient=1) -> "HahnSeries":
        return cls.from_terms(exponent.chain, [(exponent, coefficient)])

    @classmethod
    def constant(cls, chain: Chain, value) -> "HahnSeries":
        return cls.from_terms(chain, [(HahnGroupElement.zero(chain), value)])

    @classmethod
    def zero(cls, chain: Chain) -> "HahnSeries":
        return cls(chain, ())

    @classmethod
    def one(cls, chain: Chain) -> "HahnSeries":
        return cls.constant(chain, 1)

    def _coerce(self, other) -> "HahnSeries":
        if isinstance(other, (int, Fraction)):
            return HahnSeries.constant(self.chain, other)
        if not isinstance(other, HahnSeries) or other.chain != self.chain:
            raise DomainMismatch("series live over different groups")
        return other

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def support(self) -> list:
        return [g for g, _ in self.terms]

    def coefficient(self, exponent: HahnGroupElement) -> Fraction:
        for g, c in self.terms:
            if g == exponent:
                return c
        return Fraction(0)

    def __add__(self, other) -> "HahnSeries":
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = {g.terms: c for g, c in self.terms}
        for g, c in other.terms:
            acc[g.terms] = acc.get(g.terms, 0) + c
        return HahnSeries(self.chain, _sorted_terms(self.chain, acc))

    __radd__ = __add__

    def __neg__(self) -> "HahnSeries":
        return HahnSeries(self.chain, tuple((g, -c) for g, c in self.terms))

    def __sub__(self, other) -> "HahnSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "HahnSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "HahnSeries":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                return HahnSeries.zero(self.chain)
            return HahnSeries(self.chain, tuple((g, c * other) for g, c in self.terms))
        other = self._coerce(other)
        acc: dict = {}
        for g, c in self.terms:
            for h, d in other.terms:
                e = _add_exponents(g.terms, h.terms)
                acc[e] = acc.get(e, 0) + c * d
        return HahnSeries(self.chain, _sorted_terms(self.chain, acc))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HahnSeries":
        if n < 0:
            raise ValueError("use inverse_truncated for negative powers")
        result = HahnSeries.one(self.chain)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def compare(self, other) -> Ordering:
        other = self._coerce(other)
        s, t = self.terms, other.terms
        i = j = 0
        while i < len(s) or j < len(t):
            if j == len(t):
                return Ordering.GREATER if s[i][1] > 0 else Ordering.LESS
            if i == len(s):
                return Ordering.LESS if t[j][1] > 0 else Ordering.GREATER
            order = _compare_terms(s[i][0].terms, t[j][0].terms)
            if order < 0:
                return Ordering.GREATER if s[i][1] > 0 else Ordering.LESS
            if order > 0:
                return Ordering.LESS if t[j][1] > 0 else Ordering.GREATER
            if s[i][1] != t[j][1]:
                return Ordering.of(s[i][1], t[j][1])
            i += 1
            j += 1
        return Ordering.EQUAL

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    @property
    def sign(self) -> int:
        if not self.terms:
            return 0
        return 1 if self.terms[0][1] > 0 else -1

    def __abs__(self) -> "HahnSeries":
        return -self if self.sign < 0 else self

    def valuation(self) -> HahnGroupElement:
        if not self.terms:
            raise ZeroSeries("the zero series has no valuation")
        return self.terms[0][0]

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            raise ZeroSeries("the zero series has no leading term")
        return self.terms[0][1]

    def to_json(self) -> list:
        return [[g.to_json(), format_rational(c)] for g, c in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for g, c in self.terms:
            parts.append(format_rational(c) if g.is_zero() else f"{format_rational(c)}*t^({g})")
        return " + ".join(parts)


def t(exponent: HahnGroupElement, coefficient=1) -> HahnSeries:
    """The monomial ``coefficient * t^exponent``."""
    return HahnSeries.monomial(exponent, coefficient)


def series_add(s: HahnSeries, u: HahnSeries) -> HahnSeries:
    return s + u


def series_neg(s: HahnSeries) -> HahnSeries:
    return -s


def series_mul(s: HahnSeries, u: HahnSeries) -> HahnSeries:
    return s * u


def series_compare(s: HahnSeries, u: HahnSeries) -> Ordering:
    return s.compare(u)


def valuation(s: HahnSeries) -> HahnGroupElement:
    return s.valuation()


def in_P_K(s: HahnSeries) -> bool:
    """Positive and infinitely large: ``s > 0`` and ``v(s) < 0``."""
    return s.sign > 0 and s.terms[0][0].sign < 0


def in_natural_ring(s: HahnSeries) -> bool:
    """Membership in the convex hull of the rationals."""
    return not s.terms or s.terms[0][0].sign >= 0


def inverse_truncated(s: HahnSeries, k: int) -> HahnSeries:
    """Truncated inverse ``c^-1 t^-g (1 - e + e^2 - ... + (-e)^(k-1))``.

    With ``s = c t^g (1 + e)`` and ``v(e) > 0`` this satisfies
    ``s * r - 1 == -(-e)**k`` exactly.
    """
    if not s.terms:
        raise ZeroSeries("cannot invert the zero series")
    if k < 1:
        raise ValueError("truncation order must be positive")
    g, c = s.terms[0]
    lead_inv = HahnSeries(s.chain, ((-g, 1 / c),))
    eps = s * lead_inv - 1
    if not eps.terms:
        return lead_inv
    minus_eps = -eps
    total = HahnSeries.one(s.chain)
    power = HahnSeries.one(s.chain)
    for _ in range(k - 1):
        power = power * minus_eps
        total = total + power
    return lead_inv * total


def expansion_error(s: HahnSeries) -> HahnSeries:
    """The ``e`` of ``s = c t^g (1 + e)``."""
    g, c = s.terms[0]
    return s * HahnSeries(s.chain, ((-g, 1 / c),)) - 1


# ---------------------------------------------------------------------------
# Convex valuations


@dataclass(frozen=True)
class ConvexValuation:
    """The coarsening of ``v`` whose value group is ``v(K) / G_w``.

    ``G_w`` consists of the group elements whose archimedean value lies in
    ``segment``.
    """

    segment: FinalSegmentCut

    @property
    def chain(self) -> Chain:
        return self.segment.chain

    def in_value_subgroup(self, g: HahnGroupElement) -> bool:
        return convex_subgroup_member(self.segment, g)

    def _check(self, a: HahnSeries) -> None:
        if a.chain != self.chain:
            raise DomainMismatch("series and valuation live over different chains")

    def in_ring(self, a: HahnSeries) -> bool:
        self._check(a)
        if not a.terms:
            return True
        va = a.terms[0][0]
        return va.sign > 0 or self.in_value_subgroup(va)

    def in_ideal(self, a: HahnSeries) -> bool:
        self._check(a)
        if not a.terms:
            return True
        va = a.terms[0][0]
        return va.sign > 0 and not self.in_value_subgroup(va)

    def is_positive_unit(self, a: HahnSeries) -> bool:
        self._check(a)
        return a.sign > 0 and self.in_value_subgroup(a.terms[0][0])

    def compare(self, a: HahnSeries, b: HahnSeries) -> Ordering:
        """Compare ``w(a)`` and ``w(b)`` as cosets of ``G_w``."""
        if not a.terms or not b.terms:
            raise ZeroSeries("w is compared on nonzero elements")
        d = a.valuation() - b.valuation()
        if self.in_value_subgroup(d):
            return Ordering.EQUAL
        return Ordering.LESS if d.sign < 0 else Ordering.GREATER

    def residue(self, a: HahnSeries) -> HahnSeries:
        """Residue of ``a``, realised as a series with exponents in ``G_w``."""
        if not self.in_ring(a):
            raise NotInValuationRing(f"{a} has negative w-value")
        if self.in_ideal(a):
            return HahnSeries.zero(a.chain)
        return HahnSeries(a.chain, tuple((g, c) for g, c in a.terms if self.in_value_subgroup(g)))


def coarsening_w_compare(w: ConvexValuation, a: HahnSeries, b: HahnSeries) -> Ordering:
    return w.compare(a, b)


def residue(w: ConvexValuation, a: HahnSeries) -> HahnSeries:
    return w.residue(a)


# ---------------------------------------------------------------------------
# Automorphisms


@dataclass(frozen=True)
class FieldAutomorphism:
    """``sum c_g t^g -> sum c_g t^(sigma_G(g))``."""

    group_map: GroupAutomorphism

    @property
    def chain(self) -> Chain:
        return self.group_map.chain

    def __call__(self, s: HahnSeries) -> HahnSeries:
        if s.chain != self.chain:
            raise DomainMismatch("automorphism applied over the wrong chain")
        if self.group_map.is_identity:
            return s
        return HahnSeries(s.chain, tuple((self.group_map(g), c) for g, c in s.terms))

    def inverse(self) -> "FieldAutomorphism":
        return FieldAutomorphism(self.group_map.inverse())

    def iterate(self, s: HahnSeries, n: int) -> HahnSeries:
        for _ in range(n):
            s = self(s)
        return s


def lift_group_automorphism_to_field(sigma_group: GroupAutomorphism) -> FieldAutomorphism:
    sigma_group.inverse()
    return FieldAutomorphism(sigma_group)


@dataclass(frozen=True)
class AutomorphismTower:
    """Compatible automorphisms of the chain, the Hahn group and the Hahn field."""

    chain: Chain
    sigma_chain: ShiftMap
    sigma_group: GroupAutomorphism
    sigma_field: FieldAutomorphism
    construction: str

    def __call__(self, s: HahnSeries) -> HahnSeries:
        return self.sigma_field(s)


def tower_from_chain_shift(chain: Chain, shift: ShiftMap) -> AutomorphismTower:
    sigma_group = lift_shift_to_group(chain, shift)
    tag = "identity" if shift.is_identity else "lifted-from-chain"
    return AutomorphismTower(chain, shift, sigma_group,
                             lift_group_automorphism_to_field(sigma_group), tag)


def tower_from_group_automorphism(sigma_group: GroupAutomorphism) -> AutomorphismTower:
    tag = "identity" if sigma_group.is_identity else "lifted-from-group"
    return AutomorphismTower(sigma_group.chain, sigma_group.shift, sigma_group,
                             lift_group_automorphism_to_field(sigma_group), tag)


def identity_tower(chain: Chain) -> AutomorphismTower:
    return tower_from_chain_shift(chain, Identity())


class Verdict(enum.Enum):
    PROVEN = "proven"
    REFUTED = "refuted"
    UNDECIDED = "undecided"

    def __bool__(self) -> bool:
        return self is Verdict.PROVEN


@dataclass(frozen=True)
class AutomorphismClassification:
    isometry: Verdict
    weak_isometry: Verdict
    omega_increasing: Verdict
    square_growth: Verdict
    witnesses: tuple = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "isometry": self.isometry.value,
            "weak_isometry": self.weak_isometry.value,
            "omega_increasing": self.omega_increasing.value,
            "square_growth": self.square_growth.value,
            "witnesses": [list(w) for w in self.witnesses],
        }


def negative_monomials(chain: Chain) -> list:
    """``t^(-1_x)`` and ``2 t^(-2 * 1_x)`` for each sample point ``x``; all in P_K."""
    pool = []
    for x in chain.samples():
        pool.append(t(HahnGroupElement.basis(chain, x, -1)))
        pool.append(t(HahnGroupElement.basis(chain, x, -2), 2))
    return pool


@functools.lru_cache(maxsize=128)
def classify_automorphism(tower: AutomorphismTower) -> AutomorphismClassification:
    """Isometry, weak isometry, omega-increase and square growth of ``tower``.

    Positive verdicts come from certificates on the chain shift and the group
    automorphism; negative verdicts carry a sampled witness.
    """
    chain, shift, group_map = tower.chain, tower.sigma_chain, tower.sigma_group
    witnesses = []
    try:
        points = chain.samples()
    except UnsupportedShape:
        points = []
    moved = next((x for x in points if shift.apply(x) != x), None)
    raised = next((x for x in points if chain.compare(shift.apply(x), x) >= 0), None)

    if group_map.is_identity:
        isometry = Verdict.PROVEN
    else:
        g = None
        for x in points:
            candidate = HahnGroupElement.basis(chain, x)
            if group_map(candidate) != candidate:
                g = candidate
                break
        if g is not None:
            isometry = Verdict.REFUTED
            witnesses.append(("isometry", f"v(sigma(t^({g}))) = {group_map(g)}"))
        else:
            isometry = Verdict.UNDECIDED

    if shift.is_identity:
        weak = Verdict.PROVEN
    elif moved is not None:
        weak = Verdict.REFUTED
        witnesses.append(("weak_isometry", f"sigma_Gamma({moved}) = {shift.apply(moved)}"))
    else:
        weak = Verdict.UNDECIDED

    if is_strict_left_shift(shift):
        omega = Verdict.PROVEN
    elif raised is not None:
        omega = Verdict.REFUTED
        witnesses.append(("omega_increasing", f"sigma_Gamma({raised}) = {shift.apply(raised)} is not below it"))
    else:
        omega = Verdict.UNDECIDED

    square = _square_growth(tower, witnesses)
    return AutomorphismClassification(isometry, weak, omega, square, tuple(witnesses))


def _square_growth(tower: AutomorphismTower, witnesses: list) -> Verdict:
    group_map = tower.sigma_group
    if is_strict_left_shift(group_map.shift):
        # sigma_G(g) has a strictly smaller leading index than 2g
        return Verdict.PROVEN
    if group_map.shift.is_identity and group_map.scale > 2:
        return Verdict.PROVEN
    try:
        pool = negative_monomials(tower.chain)
    except UnsupportedShape:
        pool = []
    pool += [a + 1 for a in pool[:4]]
    for a in pool:
        if tower(a) < a * a:
            witnesses.append(("square_growth", f"sigma({a}) < ({a})^2"))
            return Verdict.REFUTED
    return Verdict.UNDECIDED


def is_sigma_compatible(w: ConvexValuation, tower: AutomorphismTower) -> bool:
    """Whether ``sigma(R_w) = R_w``, decided as invariance of the final segment."""
    segment, shift = w.segment, tower.sigma_chain
    if segment.chain != tower.chain:
        raise DomainMismatch("valuation and tower live over different chains")
    if isinstance(segment, All) or shift.is_identity:
        return True
    if isinstance(segment, (AtOrAbove, StrictlyAbove)):
        if shift.inverse() is None:
            raise UnsupportedShape(f"{shift} is not an automorphism")
        # an automorphism maps [x, oo) onto [sigma(x), oo)
        return shift.apply(segment.point) == segment.point
    if isinstance(segment, AtOrAboveClass):
        if segment.shift == shift:
            return True
        if segment.shift.is_identity:
            return shift.apply(segment.point) == segment.point
    raise UnsupportedShape(f"no invariance procedure for {segment} under {shift}")


def sigma_compatible_on(w: ConvexValuation, tower: AutomorphismTower, pool: Sequence) -> bool:
    """Sampled check of ``sigma(R_w) <= R_w`` and ``sigma^-1(R_w) <= R_w``."""
    inverse = tower.sigma_field.inverse()
    for a in pool:
        inside = w.in_ring(a)
        if w.in_ring(tower(a)) != inside or w.in_ring(inverse(a)) != inside:
            return False
    return True


# ---------------------------------------------------------------------------
# Equivalences on P_K


@dataclass(frozen=True)
class Squaring:
    """``a -> a^2``; a right shift on P_K."""

    def apply(self, a: HahnSeries) -> HahnSeries:
        return a * a

    def orientation(self, chain=None) -> Orientation:
        return Orientation.RIGHT

    def __str__(self) -> str:
        return "squaring"


class _Power:
    """``base ** exponent`` for positive ``base``, multiplied out only on demand."""

    __slots__ = ("base", "exponent", "_value")

    def __init__(self, base: HahnSeries, exponent: int):
        self.base = base
        self.exponent = exponent
        self._value = None

    def valuation(self) -> HahnGroupElement:
        return self.base.valuation() * self.exponent

    def value(self) -> HahnSeries:
        if self._value is None:
            self._value = self.base ** self.exponent
        return self._value


def _compare_powers(x: _Power, y: _Power) -> Ordering:
    # both positive: the smaller valuation is the larger element
    order = y.valuation().compare(x.valuation())
    if order != Ordering.EQUAL:
        return order
    return x.value().compare(y.value())


def _require_pk(*elements: HahnSeries) -> None:
    for a in elements:
        if not in_P_K(a):
            raise NotInPK(f"{a} is not positive and infinitely large")


def mult_equivalent(a: HahnSeries, b: HahnSeries, cap: int = DEFAULT_CAP) -> EquivalenceVerdict:
    """Multiplicative equivalence on P_K: shift equivalence of squaring."""
    _require_pk(a, b)
    if a.chain != b.chain:
        raise DomainMismatch("series live over different groups")
    if a == b:
        return Equivalent(0)
    group = archimedean_equivalent(a.valuation(), b.valuation(), cap)
    if isinstance(group, NotEquivalent):
        return NotEquivalent(f"squaring doubles valuations: {group.reason}")
    found = search_witness(lambda x: _Power(x.base, 2 * x.exponent), _compare_powers,
                           _Power(a, 1), _Power(b, 1), Orientation.RIGHT, cap)
    return found if found is not None else Undecided(cap)


def sigma_equivalent(tower: AutomorphismTower, a: HahnSeries, b: HahnSeries,
                     cap: int = DEFAULT_CAP, require_growth: bool = True) -> EquivalenceVerdict:
    """Shift equivalence of ``sigma`` on P_K.

    Needs ``sigma(a) >= a^2`` on P_K, proven by :func:`classify_automorphism`.
    """
    if require_growth and classify_automorphism(tower).square_growth is not Verdict.PROVEN:
        raise HypothesisNotProven("sigma(a) >= a^2 on P_K is not proven for this tower")
    _require_pk(a, b)
    if a == b:
        return Equivalent(0)
    # the diagram commutes, so a witness for a and b projects to one for
    # their leading indices; a separated pair of indices settles the case
    chain_verdict = shift_equivalent(tower.sigma_chain, value_vG(a.valuation()),
                                     value_vG(b.valuation()), cap=cap, chain=tower.chain)
    if isinstance(chain_verdict, NotEquivalent):
        return NotEquivalent(f"value set: {chain_verdict.reason}")
    found = search_witness(tower.sigma_field, lambda x, y: x.compare(y), a, b,
                           Orientation.RIGHT, cap)
    return found if found is not None else Undecided(cap)


def group_shift_equivalent(sigma_group: GroupAutomorphism, g: HahnGroupElement,
                           h: HahnGroupElement, cap: int = DEFAULT_CAP) -> EquivalenceVerdict:
    """Shift equivalence of ``sigma_G`` on the negative cone (a left shift there)."""
    if g.sign >= 0 or h.sign >= 0:
        raise DomainMismatch("sigma_G equivalence is taken on the negative cone")
    if g == h:
        return Equivalent(0)
    found = search_witness(sigma_group, lambda x, y: x.compare(y), g, h, Orientation.LEFT, cap)
    if found is not None:
        return found
    chain_verdict = shift_equivalent(sigma_group.shift, value_vG(g), value_vG(h), cap=cap,
                                     chain=sigma_group.chain)
    if isinstance(chain_verdict, NotEquivalent):
        return NotEquivalent(f"value set: {chain_verdict.reason}")
    return Undecided(cap)
