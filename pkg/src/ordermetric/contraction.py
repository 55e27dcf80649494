"""Set-valued maps and weak-contraction predicates.

A map sends each point to a finite nonempty subset of the space. The
one-sided contraction bound asks, for every ordered pair of distinct
points and every image point of the first, for some image point of the
second within the bound; the global variant bounds every image pair.
Both are decided exhaustively on finite spaces and on seeded samples
otherwise, always with a concrete counterexample on failure.

Convergence conditions that quantify over all sequences are not decidable
from tables, so witnesses carry them as class-level certificates: the
ratio-bounded classes earn "holds-by-theorem", bare bound tables stay
"unknown" and downstream solvers must degrade to best effort.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .order_core import (
    DomainError,
    Element,
    LawReport,
    LawResult,
    SamplePlan,
    _law_rng,
    format_element,
    order_max,
    order_min,
)
from .cone_metric import ConeMetricSpace, PointSequence, format_point
from .topo import PositiveSequence, is_certificate, verify_convergence

Point = object


@dataclass(frozen=True, eq=False)
class SetValuedMap:
    """x -> finite nonempty subset of the space, table- or rule-backed."""

    space: ConeMetricSpace
    images_fn: Callable[[Point], tuple]
    name: str = "T"

    def images(self, x: Point) -> tuple:
        out = self.images_fn(x)
        if not out:
            raise DomainError(f"map {self.name!r} has an empty image at {format_point(x)}")
        seen: set = set()
        uniq = []
        for p in out:
            if p not in seen:
                seen.add(p)
                uniq.append(p)
        return tuple(uniq)

    def is_endpoint(self, x: Point) -> bool:
        return self.images(x) == (x,)

    @staticmethod
    def from_table(space: ConeMetricSpace, table: Mapping, name: str = "T") -> "SetValuedMap":
        frozen = {k: tuple(v) for k, v in table.items()}
        for x, img in frozen.items():
            space.require_member(x)
            for y in img:
                space.require_member(y)
        if space.points is not None:
            missing = [p for p in space.points if p not in frozen]
            if missing:
                raise DomainError(f"map table misses point {format_point(missing[0])}")

        def images_fn(x):
            try:
                return frozen[x]
            except KeyError:
                raise DomainError(f"no image recorded for {format_point(x)}") from None

        return SetValuedMap(space, images_fn, name)

    @staticmethod
    def from_rule(space: ConeMetricSpace, rule: Callable[[Point], Sequence],
                  name: str = "T") -> "SetValuedMap":
        return SetValuedMap(space, lambda x: tuple(rule(x)), name)


def singleton_lift(space: ConeMetricSpace, f: Callable[[Point], Point],
                   name: str = "f") -> SetValuedMap:
    """View a single-valued map as a set-valued one with singleton images."""
    return SetValuedMap(space, lambda x: (f(x),), name)


@dataclass(frozen=True)
class EndpointSet:
    members: tuple

    def __len__(self):
        return len(self.members)


class WitnessClass(Enum):
    PHI_TABLE = "phi-table"
    ALPHA_CONSTANT = "alpha-const"
    ALPHA_FUNCTION = "alpha-fn"
    PSI_ON_DISTANCE = "psi"


class CStatus(Enum):
    HOLDS_BY_THEOREM = "holds-by-theorem"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PsiProperties:
    """Declared analytic facts about a scalar shrinking function.

    All three are needed for the convergence condition: upper
    semicontinuity, sitting strictly below the identity on positives, and
    a positive gap liminf at infinity.
    """

    upper_semicontinuous: bool = True
    below_identity: bool = True
    positive_tail_gap: bool = True

    @property
    def all_hold(self) -> bool:
        return self.upper_semicontinuous and self.below_identity and self.positive_tail_gap


@dataclass(frozen=True, eq=False)
class ContractionWitness:
    """The bound paired with a map: a table, a ratio, a ratio function with
    a declared sup bound, or a scalar function composed with the distance."""

    klass: WitnessClass
    phi_table: Mapping | None = None
    alpha_const: Fraction | None = None
    alpha_fn: Callable[[Point, Point], Fraction] | None = None
    alpha_bound: Fraction | None = None
    psi: Callable[[Element], Element] | None = None
    psi_properties: PsiProperties | None = None
    label: str = ""

    def __post_init__(self):
        if self.klass is WitnessClass.ALPHA_CONSTANT:
            if self.alpha_const is None or not (0 <= self.alpha_const < 1):
                raise ValueError("constant ratio must lie in [0, 1)")
        if self.klass is WitnessClass.ALPHA_FUNCTION:
            if self.alpha_fn is None or self.alpha_bound is None \
                    or not (0 <= self.alpha_bound < 1):
                raise ValueError("ratio function needs a declared sup bound in [0, 1)")
        if self.klass is WitnessClass.PHI_TABLE and self.phi_table is None:
            raise ValueError("table witness needs its table")
        if self.klass is WitnessClass.PSI_ON_DISTANCE and self.psi is None:
            raise ValueError("scalar witness needs its function")

    def alpha(self, x: Point, y: Point) -> Fraction:
        if self.klass is WitnessClass.ALPHA_CONSTANT:
            return self.alpha_const
        if self.klass is WitnessClass.ALPHA_FUNCTION:
            return self.alpha_fn(x, y)
        raise ValueError("witness has no ratio payload")

    def phi(self, space: ConeMetricSpace, x: Point, y: Point) -> Element:
        """Evaluate the bound at an ordered pair of distinct points."""
        if self.klass is WitnessClass.PHI_TABLE:
            try:
                return self.phi_table[(x, y)]
            except KeyError:
                raise DomainError(
                    f"bound table has no entry for ({format_point(x)}, {format_point(y)})"
                ) from None
        d = space.distance(x, y)
        if self.klass in (WitnessClass.ALPHA_CONSTANT, WitnessClass.ALPHA_FUNCTION):
            module = space.structure.module
            if module is None:
                raise ValueError("ratio witnesses need a module-backed structure")
            return module.scale(self.alpha(x, y), d)
        return self.psi(d)

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.klass is WitnessClass.ALPHA_CONSTANT:
            return f"alpha-const {self.alpha_const}"
        if self.klass is WitnessClass.ALPHA_FUNCTION:
            return f"alpha-fn (bound {self.alpha_bound})"
        return self.klass.value


@dataclass(frozen=True)
class CConditionStatus:
    status: CStatus
    justification: str


def c_condition_status(w: ContractionWitness) -> CConditionStatus:
    """Class-level verdict on the convergence condition.

    Ratio classes qualify: with ratios capped by some value below one, the
    gap (1 - ratio) * d dominates a fixed positive multiple of d, so a
    vanishing gap forces vanishing distance, and dividing by (1 - cap)
    is legal because the scalar ring is the rationals. A scalar function
    with the three declared analytic properties qualifies by the standard
    subsequence argument on the real line. A bare table proves nothing
    about sequences, so it stays unknown.

    The pairwise-index variant of the condition (vanishing gaps over all
    index pairs force vanishing distances over all index pairs) follows
    from the sequence form by reindexing the countable set of pairs; like
    the condition itself it is a statement about all sequences, so it is
    carried here as documentation rather than as a runtime check.
    """
    if w.klass is WitnessClass.ALPHA_CONSTANT:
        return CConditionStatus(
            CStatus.HOLDS_BY_THEOREM,
            f"uniform ratio {w.alpha_const} < 1: the gap dominates "
            f"(1 - {w.alpha_const}) * d, and that factor is invertible and positive",
        )
    if w.klass is WitnessClass.ALPHA_FUNCTION:
        return CConditionStatus(
            CStatus.HOLDS_BY_THEOREM,
            f"ratios are declared bounded by {w.alpha_bound} < 1, so the gap "
            f"dominates (1 - {w.alpha_bound}) * d with an invertible positive factor",
        )
    if w.klass is WitnessClass.PSI_ON_DISTANCE and w.psi_properties \
            and w.psi_properties.all_hold:
        return CConditionStatus(
            CStatus.HOLDS_BY_THEOREM,
            "scalar bound: upper semicontinuous, strictly below the identity on "
            "positives, with positive gap liminf at infinity",
        )
    return CConditionStatus(CStatus.UNKNOWN,
                            "no registered criterion applies to this witness class")


# ---------------------------------------------------------------------------
# pair streams


def _distinct_pairs(T: SetValuedMap, plan: SamplePlan, label: str) -> list[tuple]:
    space = T.space
    if space.finite:
        return [(x, y) for x in space.points for y in space.points if x != y]
    rng = _law_rng(plan, label)
    out = []
    attempts = 0
    while len(out) < plan.count and attempts < plan.count * 64:
        attempts += 1
        x, y = space.sampler(rng), space.sampler(rng)
        if x != y:
            out.append((x, y))
    return out


@dataclass(frozen=True)
class ContractionReport:
    kind: str
    passed: bool
    checked_pairs: int
    counterexample: str | None = None
    exhaustive: bool = False


def is_weak_contraction(T: SetValuedMap, w: ContractionWitness,
                        plan: SamplePlan | None = None) -> ContractionReport:
    """For each pair and each image point of the first, some image point of
    the second must land within the bound."""
    plan = plan or SamplePlan()
    space, g = T.space, T.space.group
    pairs = _distinct_pairs(T, plan, "weak")
    for x, y in pairs:
        bound = w.phi(space, x, y)
        ty = T.images(y)
        for xp in T.images(x):
            if not any(g.leq(space.distance(xp, yp), bound) for yp in ty):
                return ContractionReport(
                    "weak", False, len(pairs),
                    f"x={format_point(x)}, y={format_point(y)}, x'={format_point(xp)}: "
                    f"no image point of y within {format_element(bound)}",
                    exhaustive=space.finite)
    return ContractionReport("weak", True, len(pairs), exhaustive=space.finite)


def is_global_weak_contraction(T: SetValuedMap, w: ContractionWitness,
                               plan: SamplePlan | None = None) -> ContractionReport:
    """Every image pair must satisfy the bound."""
    plan = plan or SamplePlan()
    space, g = T.space, T.space.group
    pairs = _distinct_pairs(T, plan, "global")
    for x, y in pairs:
        bound = w.phi(space, x, y)
        ty = T.images(y)
        for xp in T.images(x):
            for yp in ty:
                if not g.leq(space.distance(xp, yp), bound):
                    return ContractionReport(
                        "global", False, len(pairs),
                        f"x={format_point(x)}, y={format_point(y)}, "
                        f"x'={format_point(xp)}, y'={format_point(yp)}: "
                        f"d={format_element(space.distance(xp, yp))} exceeds "
                        f"{format_element(bound)}",
                        exhaustive=space.finite)
    return ContractionReport("global", True, len(pairs), exhaustive=space.finite)


def validate_witness(T: SetValuedMap, w: ContractionWitness,
                     plan: SamplePlan | None = None) -> LawReport:
    """Check the witness obligations: the bound sits strictly below the
    distance wherever the distance is positive, and ratio payloads stay in
    [0, 1). Only distinct pairs are ever consulted."""
    plan = plan or SamplePlan()
    space, g = T.space, T.space.group
    pairs = _distinct_pairs(T, plan, "phi-valid")
    results = []
    checked = 0
    failure = None
    for x, y in pairs:
        checked += 1
        d = space.distance(x, y)
        if not g.is_positive(d):
            continue
        if not g.lt(w.phi(space, x, y), d):
            failure = (f"x={format_point(x)}, y={format_point(y)}: bound "
                       f"{format_element(w.phi(space, x, y))} not strictly below "
                       f"{format_element(d)}")
            break
    results.append(LawResult("phi-strictly-below", failure is None, checked, failure))

    if w.klass in (WitnessClass.ALPHA_CONSTANT, WitnessClass.ALPHA_FUNCTION):
        checked = 0
        failure = None
        for x, y in pairs:
            checked += 1
            a = w.alpha(x, y)
            if not (0 <= a < 1):
                failure = f"ratio {a} at ({format_point(x)}, {format_point(y)})"
                break
            if w.klass is WitnessClass.ALPHA_FUNCTION and a > w.alpha_bound:
                failure = f"ratio {a} exceeds declared bound {w.alpha_bound}"
                break
        results.append(LawResult("alpha-range", failure is None, checked, failure))

    return LawReport(subject=f"witness {w.describe()} against {T.name}",
                     results=tuple(results))


# ---------------------------------------------------------------------------
# endpoints


def endpoints_bruteforce(T: SetValuedMap) -> EndpointSet:
    """Exhaustive scan of a finite space for points with image exactly {x}."""
    if not T.space.finite:
        raise ValueError("brute-force endpoint scan needs a finite space")
    return EndpointSet(tuple(x for x in T.space.points if T.is_endpoint(x)))


def fixed_points_bruteforce(T: SetValuedMap) -> tuple:
    if not T.space.finite:
        raise ValueError("brute-force fixed-point scan needs a finite space")
    return tuple(x for x in T.space.points if x in T.images(x))


@dataclass(frozen=True)
class ApproxEndpointValue:
    value: Element
    achieving_point: Point

    def holds(self, g) -> bool:
        return g.eq(self.value, g.identity)


def approximate_endpoint_property_finite(T: SetValuedMap) -> ApproxEndpointValue:
    """min over points of the max image distance, with the minimizer.

    The property holds exactly when the value is the identity. Raises with
    the offending pair when the order cannot rank the candidates.
    """
    if not T.space.finite:
        raise ValueError("the inf-sup computation needs a finite space")
    g = T.space.group
    best_value = None
    best_point = None
    sups = []
    for x in T.space.points:
        sup = order_max(g, [T.space.distance(x, y) for y in T.images(x)],
                        f"image spread at {format_point(x)}")
        sups.append((x, sup))
    value = order_min(g, [s for _, s in sups], "inf over points")
    for x, sup in sups:
        if g.eq(sup, value):
            best_value, best_point = sup, x
            break
    return ApproxEndpointValue(best_value, best_point)


@dataclass(frozen=True)
class ApproxSequenceReport:
    holds: bool
    violation: str | None = None
    bound_outcomes: tuple = ()


def approximate_endpoint_sequence(T: SetValuedMap, seq: PointSequence,
                                  bounds: PositiveSequence, eps_family, n_max: int) -> ApproxSequenceReport:
    """Verify the witness-pair form of the approximate endpoint property:
    a point sequence and a vanishing bound sequence dominating every image
    distance at each index."""
    space, g = T.space, T.space.group
    bound_out = verify_convergence(space.structure, bounds, g.identity, eps_family, n_max)
    if not all(is_certificate(o) for o in bound_out):
        return ApproxSequenceReport(False, "bound sequence failed to certify toward the identity",
                                    tuple(bound_out))
    cap = min(seq.cap(n_max), bounds.cap(n_max))
    for n in range(1, cap + 1):
        x = seq.term(n)
        a_n = bounds.term(n)
        for xp in T.images(x):
            if not g.leq(space.distance(x, xp), a_n):
                return ApproxSequenceReport(
                    False,
                    f"n={n}, x'={format_point(xp)}: d={format_element(space.distance(x, xp))} "
                    f"exceeds bound {format_element(a_n)}",
                    tuple(bound_out))
    return ApproxSequenceReport(True, None, tuple(bound_out))
