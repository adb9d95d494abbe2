"""Hahn groups over a chain with rational components.

Elements are finite formal sums ``sum c_g 1_g`` ordered lexicographically:
the sign of an element is the sign of its coefficient at the smallest index
in its support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .chain import (
    DEFAULT_CAP,
    AtOrAbove,
    Chain,
    EquivalenceVerdict,
    Equivalent,
    FinalSegmentCut,
    Identity,
    NotEquivalent,
    Ordering,
    Orientation,
    ShiftMap,
    Undecided,
    format_rational,
    search_witness,
    value_key,
)
from .errors import DomainMismatch, NotInvertible, ZeroElement


def _sign(c) -> Ordering:
    return Ordering.GREATER if c > 0 else Ordering.LESS


def _compare_terms(s: tuple, t: tuple) -> Ordering:
    """Lexicographic comparison of two sorted supports, missing entries are zero."""
    i = j = 0
    ls, lt = len(s), len(t)
    while i < ls or j < lt:
        if j == lt:
            return _sign(s[i][1])
        if i == ls:
            return _sign(-t[j][1])
        gs, gt = s[i][0], t[j][0]
        if gs != gt:
            ks, kt = value_key(gs), value_key(gt)
            if ks < kt:
                return _sign(s[i][1])
            return _sign(-t[j][1])
        if s[i][1] != t[j][1]:
            return Ordering.of(s[i][1], t[j][1])
        i += 1
        j += 1
    return Ordering.EQUAL


@dataclass(frozen=True)
class HahnGroupElement:
    chain: Chain
    terms: tuple

    @classmethod
    def from_terms(cls, chain: Chain, terms: Union[Mapping, Iterable]) -> "HahnGroupElement":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for gamma, c in items:
            if not chain.contains(gamma):
                raise DomainMismatch(f"{gamma} is not an element of {chain}")
            acc[gamma] = acc.get(gamma, 0) + Fraction(c)
        kept = [(g, c) for g, c in acc.items() if c != 0]
        kept.sort(key=lambda item: value_key(item[0]))
        return cls(chain, tuple(kept))

    @classmethod
    def basis(cls, chain: Chain, gamma, coefficient=1) -> "HahnGroupElement":
        return cls.from_terms(chain, [(gamma, coefficient)])

    @classmethod
    def zero(cls, chain: Chain) -> "HahnGroupElement":
        return cls(chain, ())

    def _same(self, other: "HahnGroupElement") -> None:
        if not isinstance(other, HahnGroupElement) or other.chain != self.chain:
            raise DomainMismatch("group elements live over different chains")

    @property
    def support(self) -> list:
        return [g for g, _ in self.terms]

    def coefficient(self, gamma) -> Fraction:
        for g, c in self.terms:
            if g == gamma:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "HahnGroupElement") -> "HahnGroupElement":
        self._same(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for g, c in other.terms:
            acc[g] = acc.get(g, 0) + c
        kept = [(g, c) for g, c in acc.items() if c != 0]
        kept.sort(key=lambda item: value_key(item[0]))
        return HahnGroupElement(self.chain, tuple(kept))

    def __neg__(self) -> "HahnGroupElement":
        return HahnGroupElement(self.chain, tuple((g, -c) for g, c in self.terms))

    def __sub__(self, other: "HahnGroupElement") -> "HahnGroupElement":
        return self + (-other)

    def __mul__(self, scalar) -> "HahnGroupElement":
        scalar = Fraction(scalar)
        if scalar == 0:
            return HahnGroupElement.zero(self.chain)
        return HahnGroupElement(self.chain, tuple((g, c * scalar) for g, c in self.terms))

    __rmul__ = __mul__

    def compare(self, other: "HahnGroupElement") -> Ordering:
        self._same(other)
        return _compare_terms(self.terms, other.terms)

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

    def __abs__(self) -> "HahnGroupElement":
        return -self if self.sign < 0 else self

    def to_json(self) -> list:
        return [[str(g), format_rational(c)] for g, c in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{format_rational(c)}*1_{g}" for g, c in self.terms)


def group_add(g: HahnGroupElement, h: HahnGroupElement) -> HahnGroupElement:
    return g + h


def group_neg(g: HahnGroupElement) -> HahnGroupElement:
    return -g


def group_compare(g: HahnGroupElement, h: HahnGroupElement) -> Ordering:
    return g.compare(h)


def value_vG(g: HahnGroupElement):
    """Archimedean class of ``g``: the smallest index of its support."""
    if not g.terms:
        raise ZeroElement("the zero element has no archimedean value")
    return g.terms[0][0]


@dataclass(frozen=True)
class Doubling:
    """``g -> 2g``; a left shift on the negative cone."""

    def apply(self, g: HahnGroupElement) -> HahnGroupElement:
        return g * 2

    def orientation(self, chain=None) -> Orientation:
        return Orientation.LEFT

    def __str__(self) -> str:
        return "doubling"


def archimedean_equivalent(g: HahnGroupElement, h: HahnGroupElement,
                           cap: int = DEFAULT_CAP) -> EquivalenceVerdict:
    """Archimedean equivalence as shift equivalence of doubling on the negative cone."""
    if not g.terms or not h.terms:
        raise ZeroElement("archimedean equivalence is defined for nonzero elements")
    g.compare(h)
    a, b = -abs(g), -abs(h)
    if a == b:
        return Equivalent(0)
    # doubling rescales coefficients, so the leading index never moves
    if a.terms[0][0] != b.terms[0][0]:
        return NotEquivalent("doubling preserves the leading index")
    step = Doubling().apply
    found = search_witness(step, lambda x, y: x.compare(y), a, b, Orientation.LEFT, cap)
    return found if found is not None else Undecided(cap)


@dataclass(frozen=True)
class GroupAutomorphism:
    """Order automorphism ``g -> scale * (g re-indexed by shift)``.

    ``shift`` is the chain automorphism it induces on the value set; plain
    lifts have ``scale == 1`` and coefficient scalings have the identity shift.
    """

    chain: Chain
    shift: ShiftMap = Identity()
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise ValueError("coefficient scale must be positive")

    @property
    def kind(self) -> str:
        if self.is_identity:
            return "identity"
        if self.shift.is_identity:
            return "scale"
        return "lifted" if self.scale == 1 else "lifted+scale"

    @property
    def is_identity(self) -> bool:
        return self.shift.is_identity and self.scale == 1

    def __call__(self, g: HahnGroupElement) -> HahnGroupElement:
        if g.chain != self.chain:
            raise DomainMismatch("automorphism applied over the wrong chain")
        if self.is_identity:
            return g
        shift, scale = self.shift, self.scale
        # an order automorphism of the chain keeps supports sorted
        return HahnGroupElement(self.chain, tuple((shift.apply(x), c * scale) for x, c in g.terms))

    def inverse(self) -> "GroupAutomorphism":
        inv = self.shift.inverse()
        if inv is None:
            raise NotInvertible(f"{self.shift} has no inverse")
        return GroupAutomorphism(self.chain, inv, 1 / self.scale)

    def __str__(self) -> str:
        if self.kind == "scale":
            return f"coefficient scale {format_rational(self.scale)}"
        if self.scale == 1:
            return f"lift of {self.shift}"
        return f"lift of {self.shift} scaled by {format_rational(self.scale)}"


def coefficient_scale(chain: Chain, factor) -> GroupAutomorphism:
    return GroupAutomorphism(chain, Identity(), Fraction(factor))


def lift_shift_to_group(chain: Chain, shift: ShiftMap) -> GroupAutomorphism:
    """Re-index supports along a bijective chain shift."""
    if not shift.acts_on(chain):
        raise DomainMismatch(f"{shift} does not act on {chain}")
    if shift.inverse() is None:
        raise NotInvertible(f"{shift} is not a bijection of {chain}")
    return GroupAutomorphism(chain, shift)


def convex_subgroup_member(segment: FinalSegmentCut, g: HahnGroupElement) -> bool:
    if segment.chain != g.chain:
        raise DomainMismatch("segment and element live over different chains")
    if not g.terms:
        return True
    return segment.contains(g.terms[0][0])


def subgroup_generated_value(g: HahnGroupElement) -> AtOrAbove:
    """Final segment of the smallest convex subgroup containing ``g``."""
    return AtOrAbove(g.chain, value_vG(g))
