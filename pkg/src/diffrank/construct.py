"""Construction recipes for ordered difference fields and the brute-force oracles.

Both recipes build a chain with an automorphism, lift it to the Hahn group and
then to the Hahn field, and report every rank.  The oracles re-derive the
rank correspondences on finite instances from explicit element pools.
"""

from __future__ import annotations

import functools
import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Sequence, Union

from .chain import (
    DEFAULT_CAP,
    Chain,
    Concat,
    Finite,
    FixZeroPerCopy,
    Identity,
    NonNegRationals,
    PerCopy,
    Rationals,
    Scale,
    ShiftMap,
    Translate,
    class_representatives,
    enumerate_final_segments,
    principal_segment_of,
)
from .errors import (
    HypothesisNotProven,
    PoolTooLarge,
    QuotientTooLarge,
    TrivialEta,
    UnsupportedShape,
)
from .hahn_field import (
    AutomorphismClassification,
    AutomorphismTower,
    ConvexValuation,
    HahnSeries,
    Verdict,
    classify_automorphism,
    in_natural_ring,
    is_sigma_compatible,
    t,
    tower_from_chain_shift,
)
from .hahn_group import HahnGroupElement, convex_subgroup_member, value_vG
from .rank import (
    INTERSECTION,
    PRINCIPAL_SIGMA_RANK,
    SIGMA,
    RankDescriptor,
    all_ranks,
    classes_in_ring,
    ring_from_initial_segment,
)
from .sampling import group_pool, random_group_element, random_series, series_pool

MAX_ORACLE_N = 8
MAX_QUOTIENT = 6


@dataclass(frozen=True)
class Check:
    case_id: str
    property: str
    status: str
    witness: object = None

    def to_json(self) -> dict:
        return {"case_id": self.case_id, "property": self.property,
                "status": self.status, "witness": self.witness}


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, case_id: str, prop: str, ok: bool, witness=None) -> bool:
        self.checks.append(Check(case_id, prop, "pass" if ok else "fail", witness))
        return ok

    def skip(self, case_id: str, prop: str, note: str) -> None:
        self.checks.append(Check(case_id, prop, "skipped", note))

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_jsonl(self) -> str:
        return "".join(json.dumps(c.to_json(), sort_keys=True) + "\n" for c in self.checks)


# ---------------------------------------------------------------------------
# Constructions


@dataclass(frozen=True)
class ConstructionResult:
    recipe: str
    m: int
    chain: Chain
    tower: AutomorphismTower
    classification: AutomorphismClassification
    ranks: tuple

    def rank(self, kind: str) -> RankDescriptor:
        for r in self.ranks:
            if r.kind == kind:
                return r
        raise KeyError(kind)

    def to_records(self) -> list:
        case = f"construct:{self.recipe}:m={self.m}"
        records = [Check(case, "chain", "pass", str(self.chain)),
                   Check(case, "sigma_Gamma", "pass", str(self.tower.sigma_chain)),
                   Check(case, "classification", "pass", self.classification.to_json())]
        records += [Check(case, r.kind, "pass", r.to_json()) for r in self.ranks]
        return records


def _construction(recipe: str, m: int, chain: Chain, shift: ShiftMap) -> ConstructionResult:
    tower = tower_from_chain_shift(chain, shift)
    return ConstructionResult(recipe, m, chain, tower, classify_automorphism(tower),
                              tuple(all_ranks(chain, shift)))


def build_fixed_point_example(m: int, eta: ShiftMap = Scale(2)) -> ConstructionResult:
    """``m`` copies of the non-negative rationals; ``eta`` acts on every copy and
    the zero of each copy is fixed."""
    if m < 1:
        raise ValueError("m must be positive")
    if eta.is_identity:
        raise TrivialEta("eta must be a non-trivial automorphism of the positive rationals")
    if not isinstance(eta, Scale):
        raise UnsupportedShape(f"{eta} is not an automorphism of the positive rationals")
    chain = Concat(Finite(m), NonNegRationals())
    return _construction("fixedpoint", m, chain, FixZeroPerCopy(eta))


def build_omega_increasing_example(m: int) -> ConstructionResult:
    """``m`` copies of the rationals, translated by -1 inside every copy."""
    if m < 1:
        raise ValueError("m must be positive")
    chain = Concat(Finite(m), Rationals())
    return _construction("omega", m, chain, PerCopy(Translate(-1)))


def tower_diagram_failures(tower: AutomorphismTower, series: Sequence[HahnSeries],
                           elements: Sequence[HahnGroupElement]) -> list:
    """Samples on which ``v o sigma = sigma_G o v`` or ``v_G o sigma_G = sigma_Gamma o v_G`` fails."""
    bad = []
    for a in series:
        if a and tower(a).valuation() != tower.sigma_group(a.valuation()):
            bad.append(str(a))
    for g in elements:
        if g and value_vG(tower.sigma_group(g)) != tower.sigma_chain.apply(value_vG(g)):
            bad.append(str(g))
    return bad


# ---------------------------------------------------------------------------
# Oracle: rank correspondences on Finite(n)


def _dense(g: HahnGroupElement, n: int) -> tuple:
    # pool coefficients are integers, and plain ints keep the oracle fast
    vec = [0] * n
    for x, c in g.terms:
        vec[x.index] = int(c) if c.denominator == 1 else c
    return tuple(vec)


def _dense_abs(vec: tuple) -> tuple:
    for c in vec:
        if c:
            return vec if c > 0 else tuple(-x for x in vec)
    return vec


def _dense_scale(vec: tuple, k) -> tuple:
    return tuple(k * x for x in vec)


def _is_chain(tables: list) -> bool:
    return all(a < b for a, b in zip(tables, tables[1:]))


def oracle_verify_rank_correspondences(n: int) -> Report:
    """Check rings, convex subgroups and final segments of Finite(n) correspond.

    Group elements are compared through dense coefficient vectors, whose
    lexicographic tuple order is the Hahn group order on a finite chain;
    convex subgroups and valuation rings are generated from that order alone
    and then matched against the segment-defined predicates.
    """
    if not 1 <= n <= MAX_ORACLE_N:
        raise PoolTooLarge(f"n={n} exceeds the exhaustive pool bound {MAX_ORACLE_N}")
    case = f"correspondences:n={n}"
    report = Report()
    chain = Finite(n)
    segments = enumerate_final_segments(chain)
    report.add(case, "segment count", len(segments) == n, len(segments))

    pool = group_pool(chain)
    dense = [_dense(g, n) for g in pool]
    order = sorted(range(len(pool)), key=dense.__getitem__)

    rng = random.Random(n)
    mismatched = []
    for _ in range(500):
        i, j = rng.randrange(len(pool)), rng.randrange(len(pool))
        expect = (dense[i] > dense[j]) - (dense[i] < dense[j])
        if int(pool[i].compare(pool[j])) != expect:
            mismatched.append([str(pool[i]), str(pool[j])])
    report.add(case, "lexicographic order matches dense order", not mismatched, mismatched[:3])

    # subgroups from segments
    seg_tables = [frozenset(i for i, g in enumerate(pool) if convex_subgroup_member(s, g))
                  for s in segments]
    report.add(case, "distinct convex subgroups", len(set(seg_tables)) == n, len(set(seg_tables)))
    report.add(case, "subgroups nested like segments", _is_chain(seg_tables))

    for s, table in zip(segments, seg_tables):
        flags = [i in table for i in order]
        first, last = flags.index(True), len(flags) - 1 - flags[::-1].index(True)
        report.add(case, f"subgroup {s} convex", all(flags[first:last + 1]))
        members = sorted(table)
        closed = all(convex_subgroup_member(s, pool[i] + pool[j]) and
                     convex_subgroup_member(s, -pool[i])
                     for i, j in itertools.islice(zip(members, reversed(members)), 200))
        report.add(case, f"subgroup {s} closed", closed)

    # subgroups generated from the dense order: |h| <= 3|g| reaches every pool
    # element archimedean-below g because pool coefficients are bounded by 2
    generators = [HahnGroupElement.basis(chain, x) for x in chain.elements()]
    generators += [pool[rng.randrange(1, len(pool))] for _ in range(12)]
    dense_abs = [_dense_abs(vec) for vec in dense]
    oracle_tables = set()
    for g in generators:
        bound = _dense_scale(_dense_abs(_dense(g, n)), 3)
        oracle_tables.add(frozenset(i for i, vec in enumerate(dense_abs) if vec <= bound))
    report.add(case, "segment subgroups equal generated subgroups", oracle_tables == set(seg_tables),
               {"oracle": len(oracle_tables), "segments": len(set(seg_tables))})

    # valuation rings on a monomial pool
    exps = [g for g in pool if len(g.terms) <= 2]
    monomials = [t(g, c) for g in exps for c in (1, -2)]
    valuations = [ConvexValuation(s) for s in segments]
    ring_tables = [frozenset(i for i, a in enumerate(monomials) if w.in_ring(a)) for w in valuations]
    oracle_rings = set()
    for x in chain.elements():
        # |c t^g| <= t^(-k 1_x) for some k iff g > -3*1_x, for |c| <= 2
        bound = _dense(HahnGroupElement.basis(chain, x, -3), n)
        oracle_rings.add(frozenset(i for i, a in enumerate(monomials)
                                   if _dense(a.valuation(), n) > bound))
    report.add(case, "distinct valuation rings", len(set(ring_tables)) == n, len(set(ring_tables)))
    report.add(case, "rings nested like segments", _is_chain(ring_tables))
    report.add(case, "segment rings equal generated rings", oracle_rings == set(ring_tables))
    report.add(case, "rings strictly contain the natural ring",
               all(all(w.in_ring(a) for a in monomials if in_natural_ring(a)) for w in valuations)
               and all(not all(in_natural_ring(monomials[i]) for i in table) for table in ring_tables))

    units_ok = all((w.in_ring(t(g)) and w.in_ring(t(-g))) == w.in_value_subgroup(g)
                   for w in valuations for g in exps)
    report.add(case, "value group of positive units is the segment subgroup", units_ok)

    # principal segments reverse the order of the chain
    principal = [principal_segment_of(chain, x) for x in chain.elements()]
    reversing = all(
        all(q.contains(y) for y in chain.elements() if p.contains(y)) is (chain.compare(a, b) >= 0)
        for a, p in zip(chain.elements(), principal) for b, q in zip(chain.elements(), principal))
    report.add(case, "principal segments reverse order", reversing)
    return report


# ---------------------------------------------------------------------------
# Oracle: rings from initial segments of P_K / ~


def _segment_oracle_setup(example, relation: str):
    if isinstance(example, ConstructionResult):
        chain, tower = example.chain, example.tower
        label = f"{example.recipe}:m={example.m}"
    else:
        chain, shift = example
        tower = tower_from_chain_shift(chain, shift)
        label = f"{chain}|{shift}"
    if relation == SIGMA:
        if classify_automorphism(tower).square_growth is not Verdict.PROVEN:
            raise HypothesisNotProven("sigma relation needs proven square growth")
        class_shift = tower.sigma_chain
    else:
        class_shift = Identity()
    if class_shift.is_identity:
        reps = tuple(chain.elements()) if chain.finite else None
    else:
        reps = class_representatives(chain, class_shift)
    if reps is None or len(reps) > MAX_QUOTIENT:
        raise QuotientTooLarge(f"quotient of {chain} must be finite with at most {MAX_QUOTIENT} classes")
    return chain, tower, reps, f"segment-rings:{relation}:{label}"


def oracle_verify_theorem3(example: Union[ConstructionResult, tuple], relation: str,
                           cap: int = DEFAULT_CAP) -> Report:
    """Build the ring of every initial segment of P_K modulo the relation and check it.

    Class representatives are ``t^(-1_x)`` for representatives ``x`` of the
    value-set quotient; a larger ``x`` gives a smaller element of P_K.
    """
    chain, tower, reps, case = _segment_oracle_setup(example, relation)
    field_reps = [t(HahnGroupElement.basis(chain, x, -1)) for x in reversed(reps)]
    pool = series_pool(chain)
    pool_sorted = sorted(pool, key=functools.cmp_to_key(lambda a, b: a.compare(b)))
    report = Report()
    report.skip(case, "empty initial segment", "corresponds to the natural valuation ring")

    rings = []
    for j in range(1, len(field_reps) + 1):
        seg_case = f"{case}:segment={j}"
        ring = ring_from_initial_segment(field_reps[:j], relation,
                                         tower if relation == SIGMA else None, cap=cap)
        rings.append(ring)
        members = [a for a in pool_sorted if ring.contains(a)]
        member_set = set(members)
        gen = ring.generator

        report.add(seg_case, "contains the natural ring",
                   all(a in member_set for a in pool if in_natural_ring(a)))
        report.add(seg_case, "strictly contains the natural ring",
                   ring.contains(gen) and not in_natural_ring(gen))
        flags = [a in member_set for a in pool_sorted]
        first, last = flags.index(True), len(flags) - 1 - flags[::-1].index(True)
        report.add(seg_case, "convex", all(flags[first:last + 1]))

        rng = random.Random(j)
        closure_bad = []
        for _ in range(150):
            a, b = rng.choice(members), rng.choice(members)
            if not (ring.contains(a + b) and ring.contains(a * b)):
                closure_bad.append([str(a), str(b)])
        report.add(seg_case, "closed under sum and product", not closure_bad, closure_bad[:2])

        if relation == SIGMA:
            inverse = tower.sigma_field.inverse()
            stable = all(ring.contains(tower(a)) == (a in member_set) == ring.contains(inverse(a))
                         for a in pool)
            report.add(seg_case, "sigma-compatible (sampled)", stable)
            report.add(seg_case, "sigma-compatible (segment invariant)",
                       is_sigma_compatible(ring.valuation(), tower))

        back = classes_in_ring(ring, field_reps)
        report.add(seg_case, "round trip", back == field_reps[:j],
                   [str(a) for a in back])

        w = ring.valuation()
        report.add(seg_case, "agrees with the segment valuation ring",
                   all(w.in_ring(a) == (a in member_set) for a in pool))
        smaller = all(not r.contains(gen) for r in rings[:-1])
        report.add(seg_case, "principal generated by last representative",
                   ring.contains(gen) and smaller)
    return report


def construction_checks(result: ConstructionResult, samples: int = 100, seed: int = 0) -> Report:
    """Diagram commutation on seeded samples and the guarantees of the recipe."""
    case = f"construct:{result.recipe}:m={result.m}"
    report = Report()
    rng = random.Random(seed)
    series = [random_series(rng, result.chain, nonzero=True) for _ in range(samples)]
    elements = [random_group_element(rng, result.chain, nonzero=True) for _ in range(samples)]
    bad = tower_diagram_failures(result.tower, series, elements)
    report.add(case, "diagram commutes", not bad, {"samples": 2 * samples, "failures": bad[:3]})

    cls = result.classification
    intersection = result.rank(INTERSECTION)
    if result.recipe == "omega":
        report.add(case, "omega-increasing proven", cls.omega_increasing is Verdict.PROVEN)
        report.add(case, "square growth proven", cls.square_growth is Verdict.PROVEN)
        principal = result.rank(PRINCIPAL_SIGMA_RANK)
        report.add(case, "principal sigma-rank", principal.order_type == Finite(result.m),
                   str(principal.order_type))
        report.add(case, "empty intersection", intersection.cardinality == 0,
                   str(intersection.order_type))
    else:
        report.add(case, "intersection order type", intersection.order_type == Finite(result.m),
                   str(intersection.order_type))
        fixed = [t(HahnGroupElement.basis(result.chain, x, -1))
                 for x in result.chain.samples() if x.inner.value == 0]
        report.add(case, "fixed monomials", len(fixed) == result.m and
                   all(result.tower(a) == a for a in fixed), [str(a) for a in fixed])
    return report
