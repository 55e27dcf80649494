"""Partially ordered abelian groups and modules with executable laws.

Everything here is exact: elements are `fractions.Fraction` scalars or
fixed-width tuples of them, comparisons are four-way (equal, strictly-less,
strictly-greater, incomparable), and law checks quantify over deterministic
seeded samples plus designated edge elements, so a failing law always comes
back with a concrete witness instead of a silent boolean.

The four-way comparison is deliberate: with a genuinely partial order,
returning plain ``False`` for "not below" would conflate incomparability
with strict reversal, and downstream min/max code needs to fail loudly.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

Element = Union[Fraction, tuple]
Scalar = Fraction


class Order(Enum):
    """Outcome of comparing two elements under a partial order."""

    EQUAL = "equal"
    LESS = "strictly-less"
    GREATER = "strictly-greater"
    INCOMPARABLE = "incomparable"

    def flipped(self) -> "Order":
        if self is Order.LESS:
            return Order.GREATER
        if self is Order.GREATER:
            return Order.LESS
        return self


class DomainError(ValueError):
    """A value does not belong to the instance's carrier."""


class IncomparableError(ValueError):
    """An order-dependent min/max met a pair with no order between them."""

    def __init__(self, a: Element, b: Element, context: str = ""):
        self.pair = (a, b)
        msg = f"incomparable pair {format_element(a)} , {format_element(b)}"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


def format_element(value: Element) -> str:
    """Exact text form: scalars as p/q, vectors as (p/q, ...)."""
    if isinstance(value, tuple):
        return "(" + ", ".join(format_element(v) for v in value) + ")"
    return str(value)


@dataclass(frozen=True)
class SamplePlan:
    """Deterministic quantification plan for universally quantified laws.

    ``count`` is the number of sampled tuples per law; ``extra`` holds
    user-supplied edge elements that every stream must include.
    """

    seed: int = 0
    count: int = 200
    extra: tuple = ()


@dataclass(frozen=True)
class LawResult:
    law: str
    passed: bool
    checked: int
    witness: str | None = None
    note: str = ""


@dataclass(frozen=True)
class LawReport:
    subject: str
    results: tuple[LawResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[LawResult]:
        return [r for r in self.results if not r.passed]

    def result(self, law: str) -> LawResult:
        for r in self.results:
            if r.law == law:
                return r
        raise KeyError(law)

    def summary(self) -> str:
        lines = [f"law report: {self.subject}"]
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            line = f"  {r.law:<28} {status}  (checked {r.checked})"
            if r.witness:
                line += f"  witness: {r.witness}"
            lines.append(line)
        return "\n".join(lines)


@dataclass(frozen=True, eq=False)
class OrderedGroupInstance:
    """An abelian group carrier with a translation-invariant partial order.

    ``cmp`` is the primitive: a four-way comparison that must return EQUAL
    exactly on identical elements. ``sampler`` draws arbitrary carrier
    elements, ``positive_sampler`` draws elements strictly above the
    identity; both take an explicit ``random.Random`` so every law check is
    reproducible. ``meet`` (greatest lower bound) is optional and only
    present when the order has one, e.g. coordinatewise min.
    """

    name: str
    identity: Element
    add: Callable[[Element, Element], Element]
    neg: Callable[[Element], Element]
    cmp: Callable[[Element, Element], Order]
    contains: Callable[[Element], bool]
    sampler: Callable[[random.Random], Element]
    positive_sampler: Callable[[random.Random], Element]
    edge_elements: tuple = ()
    meet: Callable[[Element, Element], Element] | None = None

    def __post_init__(self):
        # standing assumption: the carrier is not just the identity
        if not any(self.cmp(e, self.identity) is not Order.EQUAL for e in self.edge_elements):
            raise DomainError(f"instance {self.name!r} registers no non-identity element")

    # -- derived order helpers -------------------------------------------
    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def eq(self, a: Element, b: Element) -> bool:
        return self.cmp(a, b) is Order.EQUAL

    def leq(self, a: Element, b: Element) -> bool:
        return self.cmp(a, b) in (Order.EQUAL, Order.LESS)

    def lt(self, a: Element, b: Element) -> bool:
        return self.cmp(a, b) is Order.LESS

    def geq(self, a: Element, b: Element) -> bool:
        return self.cmp(a, b) in (Order.EQUAL, Order.GREATER)

    def gt(self, a: Element, b: Element) -> bool:
        return self.cmp(a, b) is Order.GREATER

    def is_nonneg(self, a: Element) -> bool:
        return self.geq(a, self.identity)

    def is_positive(self, a: Element) -> bool:
        return self.gt(a, self.identity)

    def coerce(self, value) -> Element:
        """Canonicalize ints/lists into the exact carrier representation."""
        if isinstance(value, (list, tuple)):
            value = tuple(Fraction(v) for v in value)
        elif not isinstance(value, Fraction):
            value = Fraction(value)
        if not self.contains(value):
            raise DomainError(f"{format_element(value)} is not in the carrier of {self.name!r}")
        return value


@dataclass(frozen=True, eq=False)
class RingDescriptor:
    """Totally ordered ring of scalars; instantiated as the rationals."""

    name: str
    zero: Scalar
    one: Scalar
    le: Callable[[Scalar, Scalar], bool]
    sampler: Callable[[random.Random], Scalar]
    edge_scalars: tuple = ()

    def lt(self, a: Scalar, b: Scalar) -> bool:
        return self.le(a, b) and a != b


@dataclass(frozen=True, eq=False)
class OrderedModuleInstance:
    """A group together with a scalar action that preserves strict order."""

    group: OrderedGroupInstance
    ring: RingDescriptor
    scale: Callable[[Scalar, Element], Element]

    @property
    def name(self) -> str:
        return self.group.name


# ---------------------------------------------------------------------------
# sampling streams


def _law_rng(plan: SamplePlan, label: str) -> random.Random:
    return random.Random(plan.seed ^ zlib.crc32(label.encode()))


def sample_elements(g: OrderedGroupInstance, plan: SamplePlan, label: str) -> list[Element]:
    rng = _law_rng(plan, label)
    out = list(g.edge_elements) + [g.coerce(e) for e in plan.extra]
    while len(out) < plan.count:
        out.append(g.sampler(rng))
    return out


def _edge_pairs(g: OrderedGroupInstance, plan: SamplePlan) -> list[tuple]:
    edges = list(g.edge_elements) + [g.coerce(e) for e in plan.extra]
    return [(a, b) for a in edges for b in edges]


def sample_pairs(g, plan: SamplePlan, label: str) -> list[tuple]:
    rng = _law_rng(plan, label)
    out = _edge_pairs(g, plan)
    while len(out) < plan.count:
        out.append((g.sampler(rng), g.sampler(rng)))
    return out


def sample_triples(g, plan: SamplePlan, label: str) -> list[tuple]:
    rng = _law_rng(plan, label)
    edges = list(g.edge_elements)
    out = [(a, b, c) for a in edges for b in edges for c in edges]
    out = out[: plan.count // 2]
    while len(out) < plan.count:
        out.append((g.sampler(rng), g.sampler(rng), g.sampler(rng)))
    return out


def strict_pairs(g, plan: SamplePlan, label: str) -> list[tuple]:
    """Pairs (a, b) with a strictly below b, built constructively.

    Edge x edge pairs that happen to be strict are kept as well; this is
    what lets a corrupted comparison on a designated pair surface in the
    translation laws.
    """
    rng = _law_rng(plan, label)
    out = [(a, b) for a, b in _edge_pairs(g, plan) if g.lt(a, b)]
    attempts = 0
    while len(out) < plan.count and attempts < plan.count * 64:
        attempts += 1
        a = g.sampler(rng)
        b = g.add(a, g.positive_sampler(rng))
        if g.lt(a, b):
            out.append((a, b))
    return out


# ---------------------------------------------------------------------------
# operations


def compare(g: OrderedGroupInstance, a, b) -> Order:
    """Four-way comparison of two carrier elements."""
    return g.cmp(g.coerce(a), g.coerce(b))


def order_min(g: OrderedGroupInstance, items: Iterable[Element], context: str = "min") -> Element:
    """Least element of a finite chain; raises if any two items are incomparable."""
    return _order_extreme(g, items, Order.LESS, context)


def order_max(g: OrderedGroupInstance, items: Iterable[Element], context: str = "max") -> Element:
    return _order_extreme(g, items, Order.GREATER, context)


def _order_extreme(g, items, keep: Order, context: str) -> Element:
    vals = list(items)
    if not vals:
        raise ValueError(f"{context} of empty collection")
    for i, a in enumerate(vals):
        for b in vals[i + 1:]:
            if g.cmp(a, b) is Order.INCOMPARABLE:
                raise IncomparableError(a, b, context)
    best = vals[0]
    for v in vals[1:]:
        if g.cmp(v, best) is keep:
            best = v
    return best


def _run_law(law: str, stream: Sequence, predicate) -> LawResult:
    checked = 0
    for args in stream:
        checked += 1
        ok, witness = predicate(*args)
        if not ok:
            return LawResult(law, False, checked, witness)
    return LawResult(law, True, checked)


def check_group_laws(g: OrderedGroupInstance, plan: SamplePlan) -> LawReport:
    """Verify the group and order axioms on seeded samples.

    Covers associativity, commutativity, identity, inverses, the order
    axioms (reflexive, antisymmetric-consistent, transitive), the strict
    translation law g1, and its two-sided form g1': translation by any
    element preserves the whole four-way comparison.
    """
    results = []
    fmt = format_element

    def w(*els):
        return ", ".join(fmt(e) for e in els)

    results.append(_run_law(
        "assoc",
        sample_triples(g, plan, "assoc"),
        lambda a, b, c: (g.eq(g.add(g.add(a, b), c), g.add(a, g.add(b, c))), w(a, b, c)),
    ))
    results.append(_run_law(
        "comm",
        sample_pairs(g, plan, "comm"),
        lambda a, b: (g.eq(g.add(a, b), g.add(b, a)), w(a, b)),
    ))
    results.append(_run_law(
        "identity",
        [(a,) for a in sample_elements(g, plan, "identity")],
        lambda a: (g.eq(g.add(a, g.identity), a), w(a)),
    ))
    results.append(_run_law(
        "inverse",
        [(a,) for a in sample_elements(g, plan, "inverse")],
        lambda a: (g.eq(g.add(a, g.neg(a)), g.identity), w(a)),
    ))
    results.append(_run_law(
        "order-reflexive",
        [(a,) for a in sample_elements(g, plan, "order-reflexive")],
        lambda a: (g.cmp(a, a) is Order.EQUAL, w(a)),
    ))
    results.append(_run_law(
        "order-antisymmetric",
        sample_pairs(g, plan, "order-antisymmetric"),
        lambda a, b: (g.cmp(a, b) is g.cmp(b, a).flipped(), w(a, b)),
    ))

    def transitive(a, p, q):
        b = g.add(a, p)
        c = g.add(b, q)
        if g.leq(a, b) and g.leq(b, c):
            return g.leq(a, c), w(a, b, c)
        return True, ""

    trans_stream = [(a, p, q) for (a, _, _), (p, q) in zip(
        sample_triples(g, plan, "order-transitive"),
        [(g.positive_sampler(_law_rng(plan, f"trans+{i}")), g.positive_sampler(_law_rng(plan, f"trans-{i}")))
         for i in range(plan.count)],
    )]
    results.append(_run_law("order-transitive", trans_stream, transitive))

    def g1(a, b):
        rng = _law_rng(plan, f"g1c:{fmt(a)}:{fmt(b)}")
        c = g.sampler(rng)
        if not g.lt(a, b):
            return True, ""
        return g.lt(g.add(a, c), g.add(b, c)), w(a, b, c)

    results.append(_run_law("g1", strict_pairs(g, plan, "g1"), g1))

    def g1_prime(a, b, c):
        return g.cmp(g.add(a, c), g.add(b, c)) is g.cmp(a, b), w(a, b, c)

    g1p_stream = [(a, b, c) for (a, b) in _edge_pairs(g, plan) for c in g.edge_elements]
    rng = _law_rng(plan, "g1-prime")
    while len(g1p_stream) < plan.count:
        g1p_stream.append((g.sampler(rng), g.sampler(rng), g.sampler(rng)))
    results.append(_run_law("g1-prime", g1p_stream, g1_prime))

    return LawReport(subject=f"group laws on {g.name}", results=tuple(results))


def check_module_laws(m: OrderedModuleInstance, plan: SamplePlan) -> LawReport:
    """Verify the ring-action axioms r1, m1, m1', m2, m2' on seeded samples.

    m2 and m2' are derived facts, so they are checked rather than assumed:
    a broken scalar action must surface here even if m1 was taken on faith.
    """
    g, ring = m.group, m.ring
    fmt = format_element
    results = []

    r1_ok = ring.lt(ring.zero, ring.one)
    results.append(LawResult("r1", r1_ok, 1, None if r1_ok else f"1 = {ring.one}, 0 = {ring.zero}"))

    def scalars(label: str, n: int) -> list[Scalar]:
        rng = _law_rng(plan, label)
        out = list(ring.edge_scalars)
        while len(out) < n:
            out.append(ring.sampler(rng))
        return out

    def m1(pair_and_r):
        (a, b), r = pair_and_r
        if not (g.lt(a, b) and ring.lt(ring.zero, r)):
            return True, ""
        return g.lt(m.scale(r, a), m.scale(r, b)), f"a={fmt(a)}, b={fmt(b)}, r={r}"

    pairs = strict_pairs(g, plan, "m1")
    rs = scalars("m1-scalars", len(pairs))
    results.append(_run_law("m1", [((p, abs(r) + Fraction(1, 3)),) for p, r in zip(pairs, rs)], m1))

    def m1_prime(pair_and_r):
        (a, b), r = pair_and_r
        if not (g.leq(a, b) and ring.le(ring.zero, r)):
            return True, ""
        return g.leq(m.scale(r, a), m.scale(r, b)), f"a={fmt(a)}, b={fmt(b)}, r={r}"

    results.append(_run_law("m1-prime", [((p, abs(r)),) for p, r in zip(pairs, rs)], m1_prime))

    def m2(trip):
        r, s, a = trip
        if not (ring.lt(r, s) and g.is_positive(a)):
            return True, ""
        return g.lt(m.scale(r, a), m.scale(s, a)), f"r={r}, s={s}, a={fmt(a)}"

    rng = _law_rng(plan, "m2")
    m2_stream = []
    while len(m2_stream) < plan.count:
        r = ring.sampler(rng)
        s = r + abs(ring.sampler(rng)) + Fraction(1, 5)
        m2_stream.append(((r, s, g.positive_sampler(rng)),))
    results.append(_run_law("m2", m2_stream, m2))

    def m2_prime(trip):
        r, s, a = trip
        if not (ring.le(r, s) and g.is_nonneg(a)):
            return True, ""
        return g.leq(m.scale(r, a), m.scale(s, a)), f"r={r}, s={s}, a={fmt(a)}"

    rng = _law_rng(plan, "m2-prime")
    m2p_stream = []
    while len(m2p_stream) < plan.count:
        r = ring.sampler(rng)
        s = r + abs(ring.sampler(rng))
        m2p_stream.append(((r, s, g.positive_sampler(rng)),))
    results.append(_run_law("m2-prime", m2p_stream, m2_prime))

    return LawReport(subject=f"module laws on {m.name}", results=tuple(results))


# ---------------------------------------------------------------------------
# built-in instances


def _rand_fraction(rng: random.Random, span: int = 48, max_den: int = 8) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def _rand_positive_fraction(rng: random.Random, span: int = 48, max_den: int = 8) -> Fraction:
    return Fraction(rng.randint(1, span), rng.randint(1, max_den))


def _scalar_cmp(a: Fraction, b: Fraction) -> Order:
    if a == b:
        return Order.EQUAL
    return Order.LESS if a < b else Order.GREATER


def _cone_cmp(a: tuple, b: tuple) -> Order:
    below = above = False
    for x, y in zip(a, b):
        if x < y:
            below = True
        elif x > y:
            above = True
    if below and above:
        return Order.INCOMPARABLE
    if below:
        return Order.LESS
    if above:
        return Order.GREATER
    return Order.EQUAL


def real_group() -> OrderedGroupInstance:
    """The rational line with its usual (total) order."""
    return OrderedGroupInstance(
        name="real",
        identity=Fraction(0),
        add=lambda a, b: a + b,
        neg=lambda a: -a,
        cmp=_scalar_cmp,
        contains=lambda v: isinstance(v, Fraction),
        sampler=_rand_fraction,
        positive_sampler=_rand_positive_fraction,
        edge_elements=(Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2),
                       Fraction(-1, 2), Fraction(7, 3)),
        meet=min,
    )


def coord_cone_group(dim: int) -> OrderedGroupInstance:
    """Rational coordinate space ordered by the nonnegative-orthant cone.

    x is below y exactly when every coordinate of y - x is nonnegative;
    mixed signs come back incomparable.
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")

    def contains(v) -> bool:
        return isinstance(v, tuple) and len(v) == dim and all(isinstance(c, Fraction) for c in v)

    def sampler(rng):
        return tuple(_rand_fraction(rng) for _ in range(dim))

    def positive_sampler(rng):
        # at least one strictly positive coordinate, none negative
        vec = [Fraction(rng.randint(0, 48), rng.randint(1, 8)) for _ in range(dim)]
        vec[rng.randrange(dim)] += Fraction(1, rng.randint(1, 8))
        return tuple(vec)

    zero = tuple(Fraction(0) for _ in range(dim))
    ones = tuple(Fraction(1) for _ in range(dim))
    units = [tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)]
    mixed = tuple(Fraction(1 if i == 0 else -1) for i in range(dim))
    edges = (zero, ones, tuple(-c for c in ones), *units, mixed,
             tuple(Fraction(1, 2) for _ in range(dim)))

    return OrderedGroupInstance(
        name=f"cone-{dim}",
        identity=zero,
        add=lambda a, b: tuple(x + y for x, y in zip(a, b)),
        neg=lambda a: tuple(-x for x in a),
        cmp=_cone_cmp,
        contains=contains,
        sampler=sampler,
        positive_sampler=positive_sampler,
        edge_elements=edges,
        meet=lambda a, b: tuple(min(x, y) for x, y in zip(a, b)),
    )


def rational_ring() -> RingDescriptor:
    return RingDescriptor(
        name="Q",
        zero=Fraction(0),
        one=Fraction(1),
        le=lambda a, b: a <= b,
        sampler=lambda rng: Fraction(rng.randint(-16, 16), rng.randint(1, 8)),
        edge_scalars=(Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2),
                      Fraction(2), Fraction(-3, 2)),
    )


def real_module() -> OrderedModuleInstance:
    return OrderedModuleInstance(group=real_group(), ring=rational_ring(),
                                 scale=lambda r, a: r * a)


def coord_cone_module(dim: int) -> OrderedModuleInstance:
    return OrderedModuleInstance(
        group=coord_cone_group(dim),
        ring=rational_ring(),
        scale=lambda r, a: tuple(r * x for x in a),
    )
