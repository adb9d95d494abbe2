"""Rank, principal rank and their difference analogues as order types.

Every rank is read off the value set: convex valuations correspond to final
segments, principal ones to points, sigma-compatible ones to final segments
of the quotient by the induced shift, and sigma-principal rings meeting the
principal rank to fixed points of the shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .chain import (
    DEFAULT_CAP,
    AtOrAbove,
    AtOrAboveClass,
    Chain,
    Empty,
    FinalSegments,
    Finite,
    NotEquivalent,
    Quotient,
    Reverse,
    ShiftMap,
    Singleton,
    Undecided,
    canonical_quotient,
    enumerate_final_segments,
    fixed_points,
    quotient_chain,
)
from .errors import (
    InconsistentSegment,
    NoCanonicalQuotient,
    UndecidedEquivalence,
    UnsupportedShape,
)
from .hahn_field import (
    AutomorphismTower,
    ConvexValuation,
    HahnSeries,
    in_natural_ring,
    in_P_K,
    mult_equivalent,
    sigma_equivalent,
)
from .hahn_group import value_vG

RANK = "rank"
PRINCIPAL_RANK = "principal_rank"
SIGMA_RANK = "sigma_rank"
PRINCIPAL_SIGMA_RANK = "principal_sigma_rank"
INTERSECTION = "sigma_principal_intersection"


def canonical_order_type(chain: Chain) -> Chain:
    """Simplify an order-type descriptor without deciding isomorphism in general."""
    if isinstance(chain, Singleton):
        return Finite(1)
    if isinstance(chain, Reverse):
        inner = canonical_order_type(chain.inner)
        if isinstance(inner, (Finite, Empty)):
            return inner
        if isinstance(inner, Reverse):
            return inner.inner
        return Reverse(inner)
    if isinstance(chain, Quotient):
        canon = chain.canonical
        return chain if canon is None else canonical_order_type(canon)
    return chain


@dataclass(frozen=True)
class RankDescriptor:
    kind: str
    order_type: Chain
    provenance: str
    alternate: Optional[Chain] = None

    @property
    def cardinality(self) -> Union[int, str]:
        size = self.order_type.size() if self.order_type.finite else None
        return "infinite" if size is None else size

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "order_type": str(self.order_type),
            "cardinality": self.cardinality,
            "provenance": self.provenance,
        }
        if self.alternate is not None:
            out["reversed_order_type"] = str(self.alternate)
        return out


def _final_segment_type(chain: Chain) -> Chain:
    chain = canonical_order_type(chain)
    if isinstance(chain, Finite):
        return Finite(len(enumerate_final_segments(chain)))
    if isinstance(chain, Empty):
        return Empty()
    if isinstance(chain, Quotient):
        raise UnsupportedShape(f"no canonical descriptor for {chain}")
    return FinalSegments(chain)


def rank_of(chain: Chain) -> RankDescriptor:
    return RankDescriptor(RANK, _final_segment_type(chain), "rank = final segments of the value set")


def principal_rank_of(chain: Chain) -> RankDescriptor:
    if isinstance(chain, Quotient) and chain.canonical is None:
        raise UnsupportedShape(f"no canonical descriptor for {chain}")
    return RankDescriptor(PRINCIPAL_RANK, canonical_order_type(Reverse(chain)),
                          "principal rank = reversed value set")


def _quotient(chain: Chain, shift: ShiftMap) -> Chain:
    quotient_chain(chain, shift)
    canon = canonical_quotient(chain, shift)
    if canon is None:
        raise NoCanonicalQuotient(f"no canonical descriptor for {chain} modulo {shift}")
    return canon


def sigma_rank_of(chain: Chain, shift: ShiftMap) -> RankDescriptor:
    return RankDescriptor(SIGMA_RANK, _final_segment_type(_quotient(chain, shift)),
                          "sigma-rank = final segments of the value set modulo sigma_Gamma")


def principal_sigma_rank_of(chain: Chain, shift: ShiftMap) -> RankDescriptor:
    return RankDescriptor(PRINCIPAL_SIGMA_RANK, canonical_order_type(Reverse(_quotient(chain, shift))),
                          "principal sigma-rank = reversed value set modulo sigma_Gamma")


def sigma_principal_intersection(chain: Chain, shift: ShiftMap) -> RankDescriptor:
    """Order type of the fixed points of ``shift``, with its reverse as alternate.

    The correspondence with sigma-compatible principal rings reverses order,
    so both orientations are reported.
    """
    points = fixed_points(shift, chain)
    if isinstance(points, Chain):
        order_type = canonical_order_type(points)
    else:
        order_type = Finite(len(points)) if points else Empty()
    return RankDescriptor(INTERSECTION, order_type,
                          "sigma-compatible principal rings = fixed points of sigma_Gamma",
                          canonical_order_type(Reverse(order_type)))


def all_ranks(chain: Chain, shift: Optional[ShiftMap] = None) -> list:
    out = [rank_of(chain), principal_rank_of(chain)]
    if shift is not None:
        out += [sigma_rank_of(chain, shift), principal_sigma_rank_of(chain, shift),
                sigma_principal_intersection(chain, shift)]
    return out


# ---------------------------------------------------------------------------
# Rings from initial segments of P_K modulo an equivalence


MULT = "mult"
SIGMA = "sigma"


@dataclass(frozen=True)
class SegmentRing:
    """Convex ring ``-(U I) u R_v u (U I)`` for an initial segment ``I`` of P_K/~.

    ``I`` is the downward closure of the listed classes; an element of P_K
    lies in the ring iff its class is at most the class of the last
    representative.
    """

    representatives: tuple
    relation: str
    tower: Optional[AutomorphismTower] = None
    cap: int = DEFAULT_CAP

    @property
    def chain(self) -> Chain:
        return self.representatives[0].chain

    @property
    def generator(self) -> HahnSeries:
        return self.representatives[-1]

    def equivalent(self, a: HahnSeries, b: HahnSeries):
        if self.relation == MULT:
            return mult_equivalent(a, b, self.cap)
        return sigma_equivalent(self.tower, a, b, self.cap)

    def contains(self, a: HahnSeries) -> bool:
        if in_natural_ring(a):
            return True
        a = abs(a)
        top = self.generator
        if a <= top:
            return True
        verdict = self.equivalent(a, top)
        if isinstance(verdict, Undecided):
            raise UndecidedEquivalence(f"class of {a} against {top} undecided")
        return not isinstance(verdict, NotEquivalent)

    __contains__ = contains

    def segment(self):
        """The final segment of the value set matching this ring."""
        point = value_vG(self.generator.valuation())
        if self.relation == MULT:
            return AtOrAbove(self.chain, point)
        return AtOrAboveClass(self.chain, self.tower.sigma_chain, point, self.cap)

    def valuation(self) -> ConvexValuation:
        return ConvexValuation(self.segment())


def ring_from_initial_segment(representatives: Sequence[HahnSeries], relation: str,
                              tower: Optional[AutomorphismTower] = None, has_last: bool = True,
                              cap: int = DEFAULT_CAP) -> SegmentRing:
    """Build the convex ring of an initial segment given by class representatives.

    Representatives must be in P_K, strictly increasing and pairwise
    inequivalent.  The ring is principal (sigma-principal for the sigma
    relation) and generated by the last representative.
    """
    if relation not in (MULT, SIGMA):
        raise ValueError(f"unknown relation {relation!r}")
    reps = tuple(representatives)
    if not reps:
        raise InconsistentSegment("the empty segment gives the natural valuation ring")
    if not has_last:
        raise InconsistentSegment("a finite list of classes always has a last element")
    if relation == SIGMA and tower is None:
        raise InconsistentSegment("the sigma relation needs an automorphism tower")
    for a in reps:
        if not in_P_K(a):
            raise InconsistentSegment(f"{a} is not in P_K")
    ring = SegmentRing(reps, relation, tower, cap)
    for a, b in zip(reps, reps[1:]):
        if not a < b:
            raise InconsistentSegment(f"{a} and {b} are out of order")
        if not isinstance(ring.equivalent(a, b), NotEquivalent):
            raise InconsistentSegment(f"{a} and {b} are not provably inequivalent")
    return ring


def classes_in_ring(ring: SegmentRing, class_reps: Sequence[HahnSeries]) -> list:
    """Representatives (from a full list of class representatives) lying in the ring."""
    return [a for a in class_reps if ring.contains(a)]
