"""Deterministic element pools and seeded random samplers.

Oracle pools are fixed so that reports are reproducible: group pools use
coefficients in {-2, -1, 1, 2} and at most five support points.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator, Sequence

from .chain import Chain
from .hahn_field import HahnSeries
from .hahn_group import HahnGroupElement

POOL_COEFFICIENTS = (-2, -1, 1, 2)
POOL_MAX_TERMS = 5


def group_pool(chain: Chain, coefficients: Sequence[int] = POOL_COEFFICIENTS,
               max_terms: int = POOL_MAX_TERMS) -> list:
    """Every element with support in a finite chain and the given coefficients."""
    points = chain.elements()
    coefficients = [Fraction(c) for c in coefficients]
    pool = [HahnGroupElement.zero(chain)]
    for size in range(1, min(max_terms, len(points)) + 1):
        for support in itertools.combinations(points, size):
            for coeffs in itertools.product(coefficients, repeat=size):
                pool.append(HahnGroupElement(chain, tuple(zip(support, coeffs))))
    return pool


def exponent_pool(chain: Chain) -> list:
    """Zero, ``+-1_x``, ``+-2*1_x`` and ``-1_x + 1_y`` (x < y) over sample points."""
    points = chain.samples()
    pool = [HahnGroupElement.zero(chain)]
    for x in points:
        for c in (-2, -1, 1, 2):
            pool.append(HahnGroupElement.basis(chain, x, c))
    for x, y in zip(points, points[1:]):
        pool.append(HahnGroupElement.from_terms(chain, [(x, -1), (y, 1)]))
        pool.append(HahnGroupElement.from_terms(chain, [(x, 1), (y, -1)]))
    return pool


def series_pool(chain: Chain) -> list:
    """Monomials ``c t^g`` (c in {-2, -1, 1, 2}) over :func:`exponent_pool`,
    and the binomials ``t^g + 1``."""
    pool = []
    exps = exponent_pool(chain)
    for g in exps:
        for c in (-2, -1, 1, 2):
            pool.append(HahnSeries.monomial(g, c))
    one = HahnSeries.one(chain)
    for g in exps:
        if not g.is_zero():
            pool.append(HahnSeries.monomial(g) + one)
    return pool


def random_group_element(rng: random.Random, chain: Chain, max_terms: int = 3,
                         nonzero: bool = False) -> HahnGroupElement:
    while True:
        size = rng.randint(1 if nonzero else 0, max_terms)
        terms = [(chain.random_value(rng), Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
                 for _ in range(size)]
        g = HahnGroupElement.from_terms(chain, terms)
        if g or not nonzero:
            return g


def random_series(rng: random.Random, chain: Chain, max_terms: int = 3,
                  nonzero: bool = False) -> HahnSeries:
    while True:
        size = rng.randint(1 if nonzero else 0, max_terms)
        terms = [(random_group_element(rng, chain, 2), Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
                 for _ in range(size)]
        s = HahnSeries.from_terms(chain, terms)
        if s or not nonzero:
            return s


def random_pk(rng: random.Random, chain: Chain, max_terms: int = 3) -> HahnSeries:
    """A random element of P_K: positive leading coefficient, negative valuation."""
    while True:
        s = random_series(rng, chain, max_terms, nonzero=True)
        if s.valuation().sign < 0:
            return abs(s)


def random_negative_monomial_pk(rng: random.Random, chain: Chain) -> HahnSeries:
    """``c t^g`` with ``g`` a negative multiple of a basis element plus a tail."""
    x = chain.random_value(rng)
    g = HahnGroupElement.basis(chain, x, -rng.randint(1, 3))
    s = HahnSeries.monomial(g, rng.randint(1, 3))
    if rng.random() < 0.5:
        s = s + HahnSeries.monomial(random_group_element(rng, chain, 2), rng.randint(-2, 2))
        if s.valuation().sign >= 0 or s.sign <= 0:
            s = HahnSeries.monomial(g, 1)
    return s


def pairs(rng: random.Random, items: Sequence, count: int) -> Iterator:
    for _ in range(count):
        yield rng.choice(items), rng.choice(items)
