"""Metric spaces whose distances land in an ordered group.

Point sets are either finite enumerations or sampled rational boxes; the
distance map is exact. The set distance is restricted to finite subsets:
in a genuinely partial order the inner min/max may simply not exist, so
every fold checks pairwise comparability and fails loudly with the
offending pair instead of inventing an answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .order_core import (
    DomainError,
    Element,
    IncomparableError,
    LawReport,
    LawResult,
    SamplePlan,
    _law_rng,
    format_element,
    order_max,
    order_min,
)
from .topo import (
    PositiveSequence,
    TopoStructure,
    exact_threshold,
    from_terms,
    geometric,
    verify_convergence,
)

Point = object


def format_point(p) -> str:
    if isinstance(p, (Fraction, int)):
        return str(p)
    if isinstance(p, tuple):
        return "(" + ", ".join(format_point(c) for c in p) + ")"
    return str(p)


@dataclass(frozen=True, eq=False)
class ConeMetricSpace:
    """A point set with a group-valued distance.

    ``points`` enumerates finite carriers; continuum carriers leave it None
    and provide ``sampler`` plus a membership test. ``key`` induces the
    canonical (lexicographic-style) enumeration order used by solvers that
    need a deterministic tie-break. ``complete`` is declared metadata:
    finite spaces are complete because certified Cauchy sequences are
    eventually constant, rational boxes inherit the declaration from their
    ambient coordinate space.
    """

    name: str
    structure: TopoStructure
    metric: Callable[[Point, Point], Element]
    points: tuple | None = None
    contains: Callable[[Point], bool] | None = None
    sampler: Callable[[random.Random], Point] | None = None
    key: Callable[[Point], object] = lambda p: p
    complete: bool = True

    @property
    def group(self):
        return self.structure.group

    @property
    def finite(self) -> bool:
        return self.points is not None

    def member(self, p) -> bool:
        if self.points is not None:
            return p in self.points
        return bool(self.contains and self.contains(p))

    def require_member(self, p) -> Point:
        if not self.member(p):
            raise DomainError(f"point {format_point(p)} is not in space {self.name!r}")
        return p

    def distance(self, x, y) -> Element:
        return self.metric(x, y)

    def sample_points(self, plan: SamplePlan, label: str) -> list:
        if self.points is not None:
            rng = _law_rng(plan, label)
            pts = list(self.points)
            while len(pts) < plan.count:
                pts.append(rng.choice(self.points))
            return pts[:max(plan.count, len(self.points))]
        rng = _law_rng(plan, label)
        return [self.sampler(rng) for _ in range(plan.count)]


def min_positive_distance(m: ConeMetricSpace) -> Element:
    """Least nonzero distance of a finite space: the canonical tolerance scale."""
    if not m.finite:
        raise ValueError("minimum positive distance needs a finite space")
    vals = [m.distance(x, y) for i, x in enumerate(m.points)
            for y in m.points[i + 1:]]
    if not vals:
        raise ValueError("space has fewer than two points")
    return order_min(m.group, vals, "minimum positive distance")


def check_metric_laws(m: ConeMetricSpace, plan: SamplePlan) -> LawReport:
    """Verify positivity/identity, symmetry, and the triangle inequality."""
    g = m.group
    results = []

    def w(*pts):
        return ", ".join(format_point(p) for p in pts)

    pts1 = m.sample_points(plan, "d1")
    pts2 = m.sample_points(plan, "d1-b")
    checked = 0
    failure = None
    for x, y in zip(pts1, pts2):
        checked += 1
        d = m.distance(x, y)
        if not g.is_nonneg(d):
            failure = (w(x, y), "distance below the identity")
            break
        same = x == y
        if same != g.eq(d, g.identity):
            failure = (w(x, y), "zero distance must characterize equal points")
            break
    results.append(LawResult("d1", failure is None, checked,
                             failure[0] if failure else None,
                             failure[1] if failure else ""))

    def d2(x, y):
        return g.eq(m.distance(x, y), m.distance(y, x)), w(x, y)

    pairs = list(zip(m.sample_points(plan, "d2"), m.sample_points(plan, "d2-b")))
    results.append(_scan("d2", pairs, d2))

    def d3(x, y, z):
        lhs = m.distance(x, y)
        rhs = g.add(m.distance(x, z), m.distance(z, y))
        return g.leq(lhs, rhs), w(x, y, z)

    triples = list(zip(m.sample_points(plan, "d3"), m.sample_points(plan, "d3-b"),
                       m.sample_points(plan, "d3-c")))
    results.append(_scan("d3", triples, d3))

    return LawReport(subject=f"metric laws on {m.name}", results=tuple(results))


def _scan(law, stream, predicate) -> LawResult:
    checked = 0
    for args in stream:
        checked += 1
        ok, witness = predicate(*args)
        if not ok:
            return LawResult(law, False, checked, witness)
    return LawResult(law, True, checked)


# ---------------------------------------------------------------------------
# point sequences


@dataclass(frozen=True, eq=False)
class PointSequence:
    """A 1-indexed sequence of points, explicit or rule-defined."""

    space: ConeMetricSpace
    name: str
    explicit: tuple | None = None
    rule: Callable[[int], Point] | None = None

    def __post_init__(self):
        if (self.explicit is None) == (self.rule is None):
            raise ValueError("point sequence needs exactly one of explicit / rule")

    def term(self, n: int) -> Point:
        if n < 1:
            raise IndexError("point sequences are 1-indexed")
        if self.explicit is not None:
            if n > len(self.explicit):
                raise IndexError("explicit point sequence exhausted")
            return self.explicit[n - 1]
        return self.rule(n)

    def cap(self, n_max: int) -> int:
        if self.explicit is None:
            return n_max
        return min(n_max, len(self.explicit))


def point_seq(space: ConeMetricSpace, terms=None, rule=None, name: str = "points") -> PointSequence:
    if terms is not None:
        terms = tuple(space.require_member(p) for p in terms)
        return PointSequence(space, name, explicit=terms)
    return PointSequence(space, name, rule=rule)


def distance_profile(m: ConeMetricSpace, s: PointSequence, x: Point, n_max: int) -> PositiveSequence:
    """Materialize n -> d(x_n, x) as a positive sequence over the target group."""
    module = m.structure.module
    if module is None:
        raise ValueError("distance profiles need a module-backed structure")
    cap = s.cap(n_max)
    return from_terms(module, [m.distance(s.term(n), x) for n in range(1, cap + 1)],
                      name=f"d({s.name}, {format_point(x)})")


def point_convergence(m: ConeMetricSpace, s: PointSequence, x: Point,
                      eps_family: Sequence[Element], n_max: int) -> list:
    """Convergence of points is convergence of the distance profile to zero."""
    m.require_member(x)
    profile = distance_profile(m, s, x, n_max)
    return verify_convergence(m.structure, profile, m.group.identity, eps_family, n_max)


@dataclass(frozen=True)
class CauchyCertificate:
    epsilon: Element
    threshold: int
    verified_up_to: int
    analytic_bound: int | None = None  # threshold from a declared geometric step profile


@dataclass(frozen=True)
class CauchyFailure:
    epsilon: Element
    witness_pair: tuple[int, int]
    reason: str = ""


def cauchy_check(m: ConeMetricSpace, s: PointSequence, eps_family: Sequence[Element],
                 n_max: int, step_profile: tuple[Element, Fraction] | None = None) -> list:
    """Windowed Cauchy check with an optional exact geometric tail bound.

    For each tolerance, find the smallest N such that every pair of indices
    in [N, n_max] has distance strictly dominated by it; the failing case
    reports the violating pair that pushed N to the end of the window.

    ``step_profile = (c, alpha)`` declares d(x_n, x_{n+1}) <= c * alpha^n;
    the declaration is re-checked on the materialized prefix and converts,
    through the geometric tail sum c * alpha^n / (1 - alpha), into an
    analytic threshold recorded on the certificate.
    """
    t = m.structure
    g = m.group
    cap = s.cap(n_max)
    pts = [s.term(n) for n in range(1, cap + 1)]

    analytic: dict[int, int] = {}
    if step_profile is not None:
        c, alpha = g.coerce(step_profile[0]), Fraction(step_profile[1])
        if not (0 <= alpha < 1):
            raise ValueError("geometric ratio must lie in [0, 1)")
        module = t.module
        for n in range(1, cap):
            bound = module.scale(alpha ** n, c)
            if not g.leq(m.distance(pts[n - 1], pts[n]), bound):
                raise ValueError(f"declared step profile fails at n={n}")
        tail_coeff = module.scale(1 / (1 - alpha), c)
        tail = geometric(module, tail_coeff, alpha, name="cauchy tail bound")
        for i, eps in enumerate(eps_family):
            n_at = exact_threshold(t, tail, g.identity, g.coerce(eps))
            if n_at is not None:
                # pairs need both indices at or past the bound, hence +1
                analytic[i] = n_at + 1

    outcomes = []
    for i, eps in enumerate(eps_family):
        eps = g.coerce(eps)
        if not t.gg_zero(eps):
            raise ValueError(f"tolerance {format_element(eps)} does not dominate the identity")
        worst = 0
        worst_pair = None
        for a in range(1, cap + 1):
            for b in range(a + 1, cap + 1):
                if not t.ll(m.distance(pts[a - 1], pts[b - 1]), eps):
                    if a > worst:
                        worst, worst_pair = a, (a, b)
        if worst_pair is None:
            outcomes.append(CauchyCertificate(eps, 0, cap, analytic.get(i)))
        elif worst + 1 < cap:
            outcomes.append(CauchyCertificate(eps, worst + 1, cap, analytic.get(i)))
        else:
            outcomes.append(CauchyFailure(eps, worst_pair,
                                          reason="violating pairs persist to the end of the window"))
    return outcomes


def constant_tail_start(s: PointSequence, n_max: int) -> int:
    """Smallest index i such that every term from i through the window end
    equals the final term; equals the window end itself when no tail repeats."""
    cap = s.cap(n_max)
    last = s.term(cap)
    start = cap
    while start > 1 and s.term(start - 1) == last:
        start -= 1
    return start


# ---------------------------------------------------------------------------
# set distance


class SetDistanceUndefined(IncomparableError):
    """The order cannot rank the candidate distances of these sets."""


def _directed(m: ConeMetricSpace, src: Sequence, dst: Sequence) -> Element:
    g = m.group
    try:
        per_point = [order_min(g, [m.distance(x, y) for y in dst], "inner point-to-set min")
                     for x in src]
        return order_max(g, per_point, "directed max")
    except IncomparableError as exc:
        raise SetDistanceUndefined(*exc.pair, "set distance undefined for this order") from exc


def hausdorff(m: ConeMetricSpace, set_a: Sequence, set_b: Sequence) -> Element:
    """Exact two-sided set distance of finite nonempty subsets.

    Exhaustive max of the two directed values, each an exhaustive
    max-over-min; any incomparable pair met along the way aborts with that
    pair named, because a partial order need not admit the inner extremes.
    """
    if not set_a or not set_b:
        raise ValueError("set distance needs nonempty sets")
    a = [m.require_member(p) for p in set_a]
    b = [m.require_member(p) for p in set_b]
    g = m.group
    try:
        return order_max(g, [_directed(m, a, b), _directed(m, b, a)], "two-sided max")
    except SetDistanceUndefined:
        raise
    except IncomparableError as exc:
        raise SetDistanceUndefined(*exc.pair, "set distance undefined for this order") from exc
