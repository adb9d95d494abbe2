"""Totally ordered chains, oriented shift maps and their quotients.

Chains and their elements are small immutable terms.  Every element has a
natural sort key (see :func:`value_key`); a chain descriptor validates that
an element has the right shape before comparing it.  Shift maps are
order-preserving self-maps with an orientation, and two points are
equivalent when iterating the map carries each past the other.
"""

from __future__ import annotations

import enum
import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import (
    CrossChainComparison,
    DomainMismatch,
    NotFinite,
    UndecidedEquivalence,
    UnknownOrientation,
    UnsupportedShape,
)

DEFAULT_CAP = 64


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, x, y) -> "Ordering":
        if x < y:
            return cls.LESS
        if y < x:
            return cls.GREATER
        return cls.EQUAL


def format_rational(value) -> str:
    """Canonical ``p/q`` text; the denominator is always written."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# Chain elements


@dataclass(frozen=True)
class FiniteAt:
    index: int

    def __str__(self) -> str:
        return str(self.index)


@dataclass(frozen=True)
class Rational:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def __str__(self) -> str:
        return format_rational(self.value)


@dataclass(frozen=True)
class ConcatAt:
    copy: "ChainValue"
    inner: "ChainValue"

    def __str__(self) -> str:
        return f"({self.copy},{self.inner})"


@dataclass(frozen=True)
class ReverseOf:
    value: "ChainValue"

    def __str__(self) -> str:
        return f"rev({self.value})"


@dataclass(frozen=True)
class ClassOf:
    representative: "ChainValue"

    def __str__(self) -> str:
        return f"[{self.representative}]"


ChainValue = Union[FiniteAt, Rational, ConcatAt, ReverseOf, ClassOf]


def q(value) -> Rational:
    """Shorthand for a rational chain element."""
    return Rational(Fraction(value))


def at(copy: int, inner) -> ConcatAt:
    """Shorthand for an element of a concatenation indexed by a finite chain."""
    if not isinstance(inner, (FiniteAt, Rational, ConcatAt, ReverseOf)):
        inner = q(inner)
    return ConcatAt(FiniteAt(copy), inner)


@functools.total_ordering
class _Descending:
    """Sort key wrapper that inverts the order of the wrapped key."""

    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __eq__(self, other):
        return self.key == other.key

    def __lt__(self, other):
        return other.key < self.key

    def __hash__(self):
        return hash(self.key)


def value_key(value: ChainValue):
    """Chain-independent sort key realising the order of an element's chain."""
    if isinstance(value, FiniteAt):
        return value.index
    if isinstance(value, Rational):
        return value.value
    if isinstance(value, ConcatAt):
        return (value_key(value.copy), value_key(value.inner))
    if isinstance(value, ReverseOf):
        return _Descending(value_key(value.value))
    raise UnsupportedShape(f"{value!r} has no intrinsic sort key")


def natural_compare(a: ChainValue, b: ChainValue) -> Ordering:
    return Ordering.of(value_key(a), value_key(b))


# ---------------------------------------------------------------------------
# Chain descriptors


class Chain:
    """Common behaviour of chain descriptors."""

    finite = False

    def key(self, value: ChainValue):
        self._check(value)
        return value_key(value)

    def compare(self, a: ChainValue, b: ChainValue) -> Ordering:
        return Ordering.of(self.key(a), self.key(b))

    def contains(self, value) -> bool:
        try:
            self._check(value)
        except CrossChainComparison:
            return False
        return True

    def _check(self, value) -> None:
        if not self._accepts(value):
            raise CrossChainComparison(f"{value!r} is not an element of {self}")

    def _accepts(self, value) -> bool:  # pragma: no cover - overridden
        raise NotImplementedError

    def elements(self) -> list:
        raise NotFinite(f"{self} is not finite")

    def size(self) -> Optional[int]:
        """Cardinality, or None for infinite chains."""
        return None

    def samples(self) -> list:
        """A small deterministic list of elements, sorted increasingly."""
        raise UnsupportedShape(f"no sample elements for {self}")

    def random_value(self, rng: random.Random):
        raise UnsupportedShape(f"no random elements for {self}")


@dataclass(frozen=True)
class Finite(Chain):
    n: int

    finite = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Finite chains have at least one element")

    def _accepts(self, value) -> bool:
        return isinstance(value, FiniteAt) and 0 <= value.index < self.n

    def elements(self) -> list:
        return [FiniteAt(i) for i in range(self.n)]

    def size(self) -> int:
        return self.n

    def samples(self) -> list:
        return self.elements()

    def random_value(self, rng):
        return FiniteAt(rng.randrange(self.n))

    def __str__(self) -> str:
        return f"finite({self.n})"


@dataclass(frozen=True)
class Singleton(Chain):
    finite = True

    def _accepts(self, value) -> bool:
        return value == FiniteAt(0)

    def elements(self) -> list:
        return [FiniteAt(0)]

    def size(self) -> int:
        return 1

    def samples(self) -> list:
        return self.elements()

    def random_value(self, rng):
        return FiniteAt(0)

    def __str__(self) -> str:
        return "singleton"


@dataclass(frozen=True)
class Empty(Chain):
    """The empty order type; only used to report ranks."""

    finite = True

    def _accepts(self, value) -> bool:
        return False

    def elements(self) -> list:
        return []

    def size(self) -> int:
        return 0

    def __str__(self) -> str:
        return "empty"


_RATIONAL_SAMPLES = [Fraction(n, d) for n, d in
                     [(-3, 1), (-2, 1), (-3, 2), (-1, 1), (-1, 3), (0, 1), (1, 2),
                      (1, 1), (4, 3), (2, 1), (3, 1)]]


def _random_fraction(rng, lo=-6, hi=6):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3))


@dataclass(frozen=True)
class Rationals(Chain):
    def _accepts(self, value) -> bool:
        return isinstance(value, Rational)

    def samples(self) -> list:
        return [Rational(x) for x in _RATIONAL_SAMPLES]

    def random_value(self, rng):
        return Rational(_random_fraction(rng))

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class NonNegRationals(Chain):
    def _accepts(self, value) -> bool:
        return isinstance(value, Rational) and value.value >= 0

    def samples(self) -> list:
        return [Rational(x) for x in _RATIONAL_SAMPLES if x >= 0]

    def random_value(self, rng):
        if rng.random() < 0.2:
            return Rational(0)
        return Rational(_random_fraction(rng, 1, 6))

    def __str__(self) -> str:
        return "Qnn"


@dataclass(frozen=True)
class Concat(Chain):
    """Lexicographic sum of copies of ``component`` indexed by a finite chain."""

    index: Chain
    component: Chain

    def __post_init__(self):
        if not isinstance(self.index, (Finite, Singleton)):
            raise UnsupportedShape("concatenations are indexed by finite chains only")

    @property
    def finite(self):
        return self.component.finite

    def _accepts(self, value) -> bool:
        return (isinstance(value, ConcatAt) and self.index.contains(value.copy)
                and self.component.contains(value.inner))

    def elements(self) -> list:
        return [ConcatAt(i, x) for i in self.index.elements() for x in self.component.elements()]

    def size(self):
        inner = self.component.size()
        return None if inner is None else self.index.size() * inner

    def samples(self) -> list:
        return [ConcatAt(i, x) for i in self.index.elements() for x in self.component.samples()]

    def random_value(self, rng):
        return ConcatAt(self.index.random_value(rng), self.component.random_value(rng))

    def __str__(self) -> str:
        return f"concat({self.index},{self.component})"


@dataclass(frozen=True)
class Reverse(Chain):
    inner: Chain

    @property
    def finite(self):
        return self.inner.finite

    def _accepts(self, value) -> bool:
        return isinstance(value, ReverseOf) and self.inner.contains(value.value)

    def elements(self) -> list:
        return [ReverseOf(x) for x in reversed(self.inner.elements())]

    def size(self):
        return self.inner.size()

    def samples(self) -> list:
        return [ReverseOf(x) for x in reversed(self.inner.samples())]

    def random_value(self, rng):
        return ReverseOf(self.inner.random_value(rng))

    def __str__(self) -> str:
        return f"reverse({self.inner})"


@dataclass(frozen=True)
class FinalSegments(Chain):
    """Symbolic order type of the non-empty final segments of ``inner``.

    Carries no elements; it names an order type that is not enumerated.
    """

    inner: Chain

    def _accepts(self, value) -> bool:
        return False

    def __str__(self) -> str:
        return f"fs({self.inner})"


@dataclass(frozen=True)
class Quotient(Chain):
    """``inner`` modulo the equivalence induced by ``shift``.

    Elements are ``ClassOf(representative)``; comparison decides equivalence
    first and therefore may raise :class:`UndecidedEquivalence`.
    """

    inner: Chain
    shift: "ShiftMap"
    cap: int = DEFAULT_CAP

    def _accepts(self, value) -> bool:
        return isinstance(value, ClassOf) and self.inner.contains(value.representative)

    def key(self, value):
        raise UnsupportedShape("quotient elements are compared through their classes")

    def compare(self, a, b) -> Ordering:
        self._check(a)
        self._check(b)
        return compare_classes(self.shift, a.representative, b.representative,
                               cap=self.cap, chain=self.inner)

    @property
    def finite(self):
        reps = class_representatives(self.inner, self.shift)
        return reps is not None

    def elements(self) -> list:
        reps = class_representatives(self.inner, self.shift)
        if reps is None:
            raise NotFinite(f"{self} has no finite class enumeration")
        return [ClassOf(r) for r in reps]

    def size(self):
        reps = class_representatives(self.inner, self.shift)
        return None if reps is None else len(reps)

    @property
    def canonical(self) -> Optional[Chain]:
        """An isomorphic descriptor for built-in constructions, else None."""
        return canonical_quotient(self.inner, self.shift)

    def __str__(self) -> str:
        return f"quotient({self.inner},{self.shift})"


def compare_elements(chain: Chain, a: ChainValue, b: ChainValue) -> Ordering:
    return chain.compare(a, b)


# ---------------------------------------------------------------------------
# Shift maps


class Orientation(enum.Enum):
    RIGHT = "right shift"
    LEFT = "left shift"
    NEUTRAL = "neutral"


def _has_negatives(chain: Optional[Chain]) -> bool:
    return isinstance(chain, Rationals)


class ShiftMap:
    """Order-preserving self-map of a chain."""

    def apply(self, value):  # pragma: no cover - overridden
        raise NotImplementedError

    def orientation(self, chain: Optional[Chain] = None) -> Orientation:  # pragma: no cover
        raise NotImplementedError

    def inverse(self) -> Optional["ShiftMap"]:
        return None

    def acts_on(self, chain: Chain) -> bool:  # pragma: no cover - overridden
        raise NotImplementedError

    @property
    def is_identity(self) -> bool:
        return False

    def __call__(self, value):
        return self.apply(value)


@dataclass(frozen=True)
class Identity(ShiftMap):
    def apply(self, value):
        return value

    def orientation(self, chain=None):
        # Identity is both a left and a right shift; either reading gives equality.
        return Orientation.RIGHT

    def inverse(self):
        return self

    def acts_on(self, chain):
        return True

    @property
    def is_identity(self):
        return True

    def __str__(self) -> str:
        return "identity"


@dataclass(frozen=True)
class Translate(ShiftMap):
    amount: Fraction

    def __post_init__(self):
        object.__setattr__(self, "amount", Fraction(self.amount))

    def apply(self, value):
        if not isinstance(value, Rational):
            raise DomainMismatch(f"translate acts on rationals, got {value!r}")
        return Rational(value.value + self.amount)

    def orientation(self, chain=None):
        return Orientation.LEFT if self.amount < 0 else Orientation.RIGHT

    def inverse(self):
        return Translate(-self.amount)

    def acts_on(self, chain):
        return isinstance(chain, Rationals) or (self.amount == 0 and isinstance(chain, NonNegRationals))

    @property
    def is_identity(self):
        return self.amount == 0

    def __str__(self) -> str:
        return f"translate({format_rational(self.amount)})"


@dataclass(frozen=True)
class Scale(ShiftMap):
    factor: Fraction

    def __post_init__(self):
        object.__setattr__(self, "factor", Fraction(self.factor))
        if self.factor <= 0:
            raise ValueError("scale factor must be positive")

    def apply(self, value):
        if not isinstance(value, Rational):
            raise DomainMismatch(f"scale acts on rationals, got {value!r}")
        return Rational(value.value * self.factor)

    def orientation(self, chain=None):
        if self.factor == 1:
            return Orientation.RIGHT
        if _has_negatives(chain):
            return Orientation.NEUTRAL
        return Orientation.RIGHT if self.factor > 1 else Orientation.LEFT

    def inverse(self):
        return Scale(1 / self.factor)

    def acts_on(self, chain):
        return isinstance(chain, (Rationals, NonNegRationals))

    @property
    def is_identity(self):
        return self.factor == 1

    def __str__(self) -> str:
        return f"scale({format_rational(self.factor)})"


@dataclass(frozen=True)
class PerCopy(ShiftMap):
    """Apply ``inner`` inside every copy of a concatenation."""

    inner: ShiftMap

    def apply(self, value):
        if not isinstance(value, ConcatAt):
            raise DomainMismatch(f"percopy acts on concatenations, got {value!r}")
        return ConcatAt(value.copy, self.inner.apply(value.inner))

    def orientation(self, chain=None):
        return self.inner.orientation(chain.component if isinstance(chain, Concat) else None)

    def inverse(self):
        inv = self.inner.inverse()
        return None if inv is None else PerCopy(inv)

    def acts_on(self, chain):
        return isinstance(chain, Concat) and self.inner.acts_on(chain.component)

    @property
    def is_identity(self):
        return self.inner.is_identity

    def __str__(self) -> str:
        return f"percopy({self.inner})"


@dataclass(frozen=True)
class FixZeroPerCopy(ShiftMap):
    """Fix the zero of every copy of non-negative rationals, apply ``inner`` elsewhere."""

    inner: ShiftMap

    def apply(self, value):
        if not isinstance(value, ConcatAt) or not isinstance(value.inner, Rational):
            raise DomainMismatch(f"fixzero acts on copies of rationals, got {value!r}")
        if value.inner.value == 0:
            return value
        image = self.inner.apply(value.inner)
        if image.value <= 0:
            raise DomainMismatch(f"{self.inner} does not preserve the positive rationals")
        return ConcatAt(value.copy, image)

    def orientation(self, chain=None):
        return self.inner.orientation(NonNegRationals())

    def inverse(self):
        inv = self.inner.inverse()
        return None if inv is None else FixZeroPerCopy(inv)

    def acts_on(self, chain):
        return (isinstance(chain, Concat) and isinstance(chain.component, NonNegRationals)
                and isinstance(self.inner, (Scale, Identity)))

    @property
    def is_identity(self):
        return self.inner.is_identity

    def __str__(self) -> str:
        return f"fixzero({self.inner})"


@dataclass(frozen=True)
class Decrement(ShiftMap):
    """``i -> max(i - 1, 0)`` on a finite chain."""

    def apply(self, value):
        if not isinstance(value, FiniteAt):
            raise DomainMismatch(f"decrement acts on finite chains, got {value!r}")
        return FiniteAt(max(value.index - 1, 0))

    def orientation(self, chain=None):
        return Orientation.LEFT

    def acts_on(self, chain):
        return isinstance(chain, (Finite, Singleton))

    def __str__(self) -> str:
        return "decrement"


def apply_shift(shift: ShiftMap, a: ChainValue, n: int = 1, chain: Optional[Chain] = None):
    """Return the ``n``-th iterate of ``shift`` at ``a``."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    if chain is not None:
        _require(chain, a)
    for _ in range(n):
        a = shift.apply(a)
    return a


def _require(chain: Chain, *values) -> None:
    for value in values:
        if not chain.contains(value):
            raise DomainMismatch(f"{value} is not an element of {chain}")


# ---------------------------------------------------------------------------
# Shift equivalence


@dataclass(frozen=True)
class Equivalent:
    witness: int


@dataclass(frozen=True)
class NotEquivalent:
    reason: str


@dataclass(frozen=True)
class Undecided:
    cap: int


EquivalenceVerdict = Union[Equivalent, NotEquivalent, Undecided]


def witness_holds(step: Callable, compare: Callable, a, b, orientation: Orientation, n: int) -> bool:
    """Check the two inequalities defining equivalence at iteration ``n``."""
    x, y = a, b
    for _ in range(n):
        x, y = step(x), step(y)
    if orientation is Orientation.RIGHT:
        return compare(x, b) >= 0 and compare(y, a) >= 0
    return compare(x, b) <= 0 and compare(y, a) <= 0


def search_witness(step: Callable, compare: Callable, a, b, orientation: Orientation,
                   cap: int) -> Optional[Equivalent]:
    """Smallest ``n <= cap`` at which the iterates of ``a`` and ``b`` pass each other.

    Both inequalities are monotone in ``n`` for an oriented order-preserving
    map, so the first hit is minimal.
    """
    if orientation is Orientation.NEUTRAL:
        raise UnknownOrientation("equivalence needs a left or right shift")
    right = orientation is Orientation.RIGHT
    x, y = a, b
    for n in range(cap + 1):
        cx, cy = compare(x, b), compare(y, a)
        if (cx >= 0 and cy >= 0) if right else (cx <= 0 and cy <= 0):
            return Equivalent(n)
        if n < cap:
            x, y = step(x), step(y)
    return None


def _separation(shift: ShiftMap, a, b) -> Optional[str]:
    """Exact reason why ``a`` and ``b`` are never equivalent, if one is known."""
    if shift.is_identity and not isinstance(shift, (PerCopy, FixZeroPerCopy)):
        return "identity separates distinct points"
    if isinstance(shift, PerCopy):
        if a.copy != b.copy:
            return "copy index invariant"
        return _separation(shift.inner, a.inner, b.inner)
    if isinstance(shift, FixZeroPerCopy):
        if a.copy != b.copy:
            return "copy index invariant"
        za, zb = a.inner.value == 0, b.inner.value == 0
        if za != zb:
            return "fixed point separates"
        if za:
            return None
        return _separation(shift.inner, a.inner, b.inner)
    if isinstance(shift, Scale):
        if (a.value == 0) != (b.value == 0):
            return "fixed point separates"
    return None


def _ratio_steps(ratio: Fraction, factor: Fraction) -> int:
    """Smallest ``n`` with ``factor**n >= ratio`` for ``factor > 1``."""
    n, power = 0, Fraction(1)
    while power < ratio:
        power *= factor
        n += 1
    return n


def _closed_form_witness(shift: ShiftMap, a, b) -> Optional[int]:
    """Minimal witness for shapes whose iterates have a closed form."""
    if isinstance(shift, Translate) and shift.amount != 0:
        gap = abs(a.value - b.value) / abs(shift.amount)
        return -(-gap.numerator // gap.denominator)
    if isinstance(shift, Scale) and shift.factor != 1 and a.value > 0 and b.value > 0:
        factor = shift.factor if shift.factor > 1 else 1 / shift.factor
        return _ratio_steps(max(a.value / b.value, b.value / a.value), factor)
    if isinstance(shift, (PerCopy, FixZeroPerCopy)) and a.copy == b.copy:
        return _closed_form_witness(shift.inner, a.inner, b.inner)
    return None


def shift_equivalent(shift: ShiftMap, a: ChainValue, b: ChainValue, cap: int = DEFAULT_CAP,
                     chain: Optional[Chain] = None) -> EquivalenceVerdict:
    """Decide whether ``a`` and ``b`` are equivalent under iteration of ``shift``.

    Returns the minimal witness when one is found within ``cap`` iterations
    (or computed in closed form for translations and scalings), a certificate
    when a built-in decision procedure separates the points, and
    ``Undecided(cap)`` otherwise.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if chain is not None:
        _require(chain, a, b)
        compare = chain.compare
    else:
        compare = natural_compare
    if a == b:
        return Equivalent(0)
    reason = _separation(shift, a, b)
    if reason is not None:
        return NotEquivalent(reason)
    if chain is None and isinstance(shift, Scale) and min(value_key(a), value_key(b)) < 0:
        chain = Rationals()
    orientation = shift.orientation(chain)
    if orientation is Orientation.NEUTRAL:
        raise UnknownOrientation(f"{shift} has no orientation on {chain}")
    steps = _closed_form_witness(shift, a, b)
    if steps is not None:
        return Equivalent(steps)
    found = search_witness(shift.apply, compare, a, b, orientation, cap)
    return found if found is not None else Undecided(cap)


def compare_classes(shift: ShiftMap, a: ChainValue, b: ChainValue, cap: int = DEFAULT_CAP,
                    chain: Optional[Chain] = None) -> Ordering:
    verdict = shift_equivalent(shift, a, b, cap=cap, chain=chain)
    if isinstance(verdict, Equivalent):
        return Ordering.EQUAL
    if isinstance(verdict, Undecided):
        raise UndecidedEquivalence(f"{a} and {b} undecided after {verdict.cap} iterations")
    return chain.compare(a, b) if chain is not None else natural_compare(a, b)


def _check_shift(chain: Chain, shift: ShiftMap) -> None:
    if not shift.acts_on(chain):
        raise DomainMismatch(f"{shift} does not act on {chain}")


def quotient_chain(chain: Chain, shift: ShiftMap, cap: int = DEFAULT_CAP) -> Quotient:
    _check_shift(chain, shift)
    if shift.orientation(chain) is Orientation.NEUTRAL:
        raise UnknownOrientation(f"{shift} has no orientation on {chain}")
    return Quotient(chain, shift, cap)


@functools.lru_cache(maxsize=256)
def class_representatives(chain: Chain, shift: ShiftMap) -> Optional[tuple]:
    """One representative per class, increasing; None when there are infinitely many."""
    _check_shift(chain, shift)
    if chain.finite and chain.size() is not None:
        reps: list = []
        for x in chain.elements():
            if not reps or compare_classes(shift, reps[-1], x, chain=chain) != Ordering.EQUAL:
                reps.append(x)
        return tuple(reps)
    if shift.is_identity:
        return None
    if isinstance(chain, Rationals) and isinstance(shift, Translate):
        return (Rational(0),)
    if isinstance(chain, NonNegRationals) and isinstance(shift, Scale):
        return (Rational(0), Rational(1))
    if isinstance(chain, Concat) and isinstance(shift, PerCopy):
        inner = class_representatives(chain.component, shift.inner)
        if inner is None:
            return None
        return tuple(ConcatAt(i, r) for i in chain.index.elements() for r in inner)
    if isinstance(chain, Concat) and isinstance(shift, FixZeroPerCopy):
        return tuple(ConcatAt(i, Rational(x)) for i in chain.index.elements() for x in (0, 1))
    return None


def canonical_quotient(chain: Chain, shift: ShiftMap) -> Optional[Chain]:
    """Isomorphic descriptor of ``chain / shift`` for built-in shapes."""
    _check_shift(chain, shift)
    if shift.is_identity:
        return chain
    reps = class_representatives(chain, shift)
    if reps is None:
        return None
    return Singleton() if len(reps) == 1 and isinstance(chain, Singleton) else Finite(len(reps))


def fixed_points(shift: ShiftMap, chain: Chain) -> Union[Chain, list]:
    """Exact fixed-point set: the whole chain, or an increasing list of elements."""
    _check_shift(chain, shift)
    if shift.is_identity:
        return chain
    if isinstance(shift, Translate):
        return []
    if isinstance(shift, Scale):
        return [Rational(0)]
    if isinstance(shift, Decrement):
        return [FiniteAt(0)]
    if isinstance(shift, PerCopy):
        inner = fixed_points(shift.inner, chain.component)
        if isinstance(inner, Chain):
            return chain
        return [ConcatAt(i, p) for i in chain.index.elements() for p in inner]
    if isinstance(shift, FixZeroPerCopy):
        return [ConcatAt(i, Rational(0)) for i in chain.index.elements()]
    raise UnsupportedShape(f"no fixed-point procedure for {shift}")


def is_strict_left_shift(shift: ShiftMap) -> bool:
    """Certificate that ``shift(x) < x`` for every point of its domain."""
    if isinstance(shift, Translate):
        return shift.amount < 0
    if isinstance(shift, PerCopy):
        return is_strict_left_shift(shift.inner)
    return False


# ---------------------------------------------------------------------------
# Final segments


class FinalSegmentCut:
    chain: Chain

    def contains(self, value) -> bool:  # pragma: no cover - overridden
        raise NotImplementedError

    @property
    def minimum(self):
        return None

    def __contains__(self, value) -> bool:
        return self.contains(value)


@dataclass(frozen=True)
class AtOrAbove(FinalSegmentCut):
    chain: Chain
    point: ChainValue

    def contains(self, value) -> bool:
        return self.chain.compare(value, self.point) >= 0

    @property
    def minimum(self):
        return self.point

    def __str__(self) -> str:
        return f">={self.point}"


@dataclass(frozen=True)
class StrictlyAbove(FinalSegmentCut):
    chain: Chain
    point: ChainValue

    def contains(self, value) -> bool:
        return self.chain.compare(value, self.point) > 0

    def __str__(self) -> str:
        return f">{self.point}"


@dataclass(frozen=True)
class All(FinalSegmentCut):
    chain: Chain

    def contains(self, value) -> bool:
        self.chain._check(value)
        return True

    @property
    def minimum(self):
        if self.chain.finite and self.chain.size():
            return self.chain.elements()[0]
        return None

    def __str__(self) -> str:
        return "all"


@dataclass(frozen=True)
class AtOrAboveClass(FinalSegmentCut):
    """Points whose class under ``shift`` is at or above the class of ``point``.

    These are the final segments left invariant by ``shift``; on a
    concatenation of rationals they express cuts between copies.
    """

    chain: Chain
    shift: ShiftMap
    point: ChainValue
    cap: int = DEFAULT_CAP

    def contains(self, value) -> bool:
        return compare_classes(self.shift, value, self.point, cap=self.cap, chain=self.chain) >= 0

    def __str__(self) -> str:
        return f">=[{self.point}]"


def segment_includes(big: FinalSegmentCut, small: FinalSegmentCut, pool: Sequence) -> bool:
    """Inclusion of two cuts, decided on an explicit element pool."""
    return all(big.contains(x) for x in pool if small.contains(x))


def enumerate_final_segments(chain: Chain) -> list:
    """All non-empty final segments of a finite chain, increasing by inclusion."""
    if not isinstance(chain, (Finite, Singleton)):
        raise NotFinite(f"{chain} is not a finite chain")
    return [AtOrAbove(chain, x) for x in reversed(chain.elements())]


def principal_segment_of(chain: Chain, point: ChainValue) -> AtOrAbove:
    _require(chain, point)
    return AtOrAbove(chain, point)
