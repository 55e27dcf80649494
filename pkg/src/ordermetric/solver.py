"""Endpoint and fixed-point solvers with certified termination.

The set-valued solver walks y_{n+1} inside the image of y_n under a
deterministic selection rule. It stops in one of four ways: the image
collapses to the current point (an exact endpoint), every image point sits
strictly within the tolerance (an approximate-endpoint certificate built
from the walk and its bounds), the step budget runs out, or a step
contradicts the contraction bound that was supposed to govern it.

Hypotheses gate the language of the report: when the global bound check or
the convergence-condition certificate fails, the solver still runs, but in
best-effort mode, and never claims uniqueness.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from .order_core import (
    DomainError,
    Element,
    IncomparableError,
    Order,
    SamplePlan,
    _law_rng,
    format_element,
    order_min,
)
from .cone_metric import ConeMetricSpace, format_point
from .contraction import (
    ApproxEndpointValue,
    CStatus,
    ContractionWitness,
    EndpointSet,
    SetValuedMap,
    approximate_endpoint_property_finite,
    c_condition_status,
    endpoints_bruteforce,
    fixed_points_bruteforce,
    is_global_weak_contraction,
    is_weak_contraction,
    singleton_lift,
    validate_witness,
)

Point = object


class SelectionRule(Enum):
    MIN_DISTANCE = "min-dist"
    LEX_FIRST = "lex"


class SolverOutcome(Enum):
    ENDPOINT_FOUND = "endpoint-found"
    APPROX_ENDPOINT_SEQUENCE = "approximate-endpoint-sequence"
    BUDGET_EXHAUSTED = "budget-exhausted"
    HYPOTHESIS_VIOLATION = "hypothesis-violation"


@dataclass(frozen=True)
class SolverConfig:
    eps: Element
    seed_point: Point
    max_iter: int = 1000
    selection_rule: SelectionRule = SelectionRule.MIN_DISTANCE

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class TraceStep:
    n: int
    point: Point
    chosen: Point
    step_distance: Element
    bound: Element | None = None  # contraction bound consumed by the next step


@dataclass(frozen=True)
class SolverReport:
    outcome: SolverOutcome
    trace: tuple[TraceStep, ...]
    endpoint: Point | None = None
    witness_points: tuple = ()
    witness_bounds: tuple = ()
    best_effort: bool = False
    notes: tuple[str, ...] = ()
    message: str = ""

    @property
    def iterations(self) -> int:
        return len(self.trace)

    def render(self) -> str:
        lines = [f"outcome: {self.outcome.value}"]
        if self.best_effort:
            lines.append("mode: best-effort (hypotheses not verified; no uniqueness claim)")
        for note in self.notes:
            lines.append(f"note: {note}")
        if self.message:
            lines.append(self.message)
        if self.endpoint is not None:
            lines.append(f"endpoint: {format_point(self.endpoint)}")
        if self.witness_points:
            pts = ", ".join(format_point(p) for p in self.witness_points)
            bnds = ", ".join(format_element(b) for b in self.witness_bounds)
            lines.append(f"witness points: {pts}")
            lines.append(f"witness bounds: {bnds}")
        lines.append("trace:")
        for s in self.trace:
            row = (f"  n={s.n}  y={format_point(s.point)}  ->  {format_point(s.chosen)}"
                   f"  d={format_element(s.step_distance)}")
            if s.bound is not None:
                row += f"  bound={format_element(s.bound)}"
            lines.append(row)
        if not self.trace:
            lines.append("  (empty)")
        return "\n".join(lines)


def _select_next(m: ConeMetricSpace, candidates: Sequence, current: Point,
                 rule: SelectionRule) -> Point:
    """Deterministic choice of the next walk point among the image.

    Min-distance picks the candidate closest to the current point when the
    candidate distances form a chain, with the canonical enumeration order
    as tie-break; incomparable distances fall back to the canonical order.
    """
    ordered = sorted(candidates, key=m.key)
    if rule is SelectionRule.LEX_FIRST:
        return ordered[0]
    g = m.group
    dists = [m.distance(current, p) for p in ordered]
    try:
        best = order_min(g, dists, "selection")
    except IncomparableError:
        return ordered[0]
    for p, d in zip(ordered, dists):
        if g.eq(d, best):
            return p
    return ordered[0]


def iterate_endpoint(T: SetValuedMap, w: ContractionWitness, cfg: SolverConfig,
                     plan: SamplePlan | None = None) -> SolverReport:
    """Walk y_{n+1} in the image of y_n until an endpoint or the tolerance.

    Verified mode holds when the global bound check passes, the witness
    obligations pass, and the convergence condition is certified for the
    witness class; each consumed bound is then enforced against the next
    step and any breach aborts as a hypothesis violation. In best-effort
    mode only gross monotonicity breaches (a strictly growing step) abort.
    """
    plan = plan or SamplePlan()
    m, g, t = T.space, T.space.group, T.space.structure
    eps = g.coerce(cfg.eps)
    if not t.gg_zero(eps):
        raise ValueError("tolerance must strictly dominate the identity")
    y = m.require_member(cfg.seed_point)

    notes = []
    global_report = is_global_weak_contraction(T, w, plan)
    witness_report = validate_witness(T, w, plan)
    cstat = c_condition_status(w)
    if not global_report.passed:
        notes.append(f"global bound check failed: {global_report.counterexample}")
    if not witness_report.passed:
        notes.append("witness obligations failed: "
                     + "; ".join(r.witness or r.law for r in witness_report.failures()))
    if cstat.status is not CStatus.HOLDS_BY_THEOREM:
        notes.append(f"convergence condition unknown: {cstat.justification}")
    verified = not notes

    trace: list[TraceStep] = []
    prev_bound: Element | None = None
    prev_step: Element | None = None
    for n in range(cfg.max_iter + 1):
        images = T.images(y)
        if images == (y,):
            return SolverReport(SolverOutcome.ENDPOINT_FOUND, tuple(trace), endpoint=y,
                                best_effort=not verified, notes=tuple(notes),
                                message=f"image collapsed at iteration {n}")
        if all(t.ll(m.distance(y, xp), eps) for xp in images):
            points = tuple(s.chosen for s in trace)
            bounds = tuple(s.bound for s in trace)
            return SolverReport(SolverOutcome.APPROX_ENDPOINT_SEQUENCE, tuple(trace),
                                witness_points=points, witness_bounds=bounds,
                                best_effort=not verified, notes=tuple(notes),
                                message=(f"image spread strictly within tolerance at "
                                         f"{format_point(y)} after {n} steps"))
        if n == cfg.max_iter:
            break
        candidates = [p for p in images if p != y]
        chosen = _select_next(m, candidates, y, cfg.selection_rule)
        step = m.distance(y, chosen)
        if prev_bound is not None and verified and not g.leq(step, prev_bound):
            return SolverReport(SolverOutcome.HYPOTHESIS_VIOLATION, tuple(trace),
                                best_effort=False, notes=tuple(notes),
                                message=(f"step {n}: d={format_element(step)} exceeds the "
                                         f"consumed bound {format_element(prev_bound)}"))
        if prev_step is not None and not verified \
                and g.cmp(step, prev_step) is Order.GREATER:
            return SolverReport(SolverOutcome.HYPOTHESIS_VIOLATION, tuple(trace),
                                best_effort=True, notes=tuple(notes),
                                message=(f"step {n}: distance grew from "
                                         f"{format_element(prev_step)} to {format_element(step)}"))
        bound = w.phi(m, y, chosen)
        trace.append(TraceStep(n, y, chosen, step, bound))
        prev_bound, prev_step = bound, step
        y = chosen
    return SolverReport(SolverOutcome.BUDGET_EXHAUSTED, tuple(trace),
                        best_effort=not verified, notes=tuple(notes),
                        message=f"no certificate within {cfg.max_iter} iterations")


# ---------------------------------------------------------------------------
# single-valued ratio iteration


@dataclass(frozen=True)
class BanachStep:
    n: int
    point: Point
    next_point: Point
    step_distance: Element
    apriori_bound: Element


@dataclass(frozen=True)
class BanachReport:
    outcome: SolverOutcome
    trace: tuple[BanachStep, ...]
    alpha: Fraction
    fixed_point: Point | None = None
    final_point: Point | None = None
    error_bound: Element | None = None
    message: str = ""

    @property
    def iterations(self) -> int:
        return len(self.trace)

    def render(self) -> str:
        lines = [f"outcome: {self.outcome.value} (ratio {self.alpha})"]
        if self.message:
            lines.append(self.message)
        if self.fixed_point is not None:
            lines.append(f"fixed point: {format_point(self.fixed_point)}")
        if self.final_point is not None:
            lines.append(f"final point: {format_point(self.final_point)}")
        if self.error_bound is not None:
            lines.append(f"guaranteed error bound: {format_element(self.error_bound)}")
        lines.append("trace:")
        for s in self.trace:
            lines.append(f"  n={s.n}  x={format_point(s.point)}  ->  "
                         f"{format_point(s.next_point)}  d={format_element(s.step_distance)}"
                         f"  apriori={format_element(s.apriori_bound)}")
        return "\n".join(lines)


def banach_iterate(m: ConeMetricSpace, f: Callable[[Point], Point], alpha,
                   cfg: SolverConfig, plan: SamplePlan | None = None) -> BanachReport:
    """Successive application of a ratio contraction with exact bounds.

    Stops at an exact fixed point, or as soon as the step distance is
    strictly dominated by (1 - alpha) * eps: the geometric tail then
    guarantees the distance to the fixed point is strictly within eps.
    Every trace row also carries the a-priori bound
    alpha^n * (1 - alpha)^{-1} * d(x0, x1).
    """
    plan = plan or SamplePlan()
    g, t = m.group, m.structure
    module = t.module
    if module is None:
        raise ValueError("ratio iteration needs a module-backed structure")
    alpha = Fraction(alpha)
    if not (0 <= alpha < 1):
        raise ValueError("ratio must lie in [0, 1)")
    eps = g.coerce(cfg.eps)
    if not t.gg_zero(eps):
        raise ValueError("tolerance must strictly dominate the identity")
    x = m.require_member(cfg.seed_point)

    # sampled contraction pre-check
    pairs = []
    if m.finite:
        pairs = [(a, b) for a in m.points for b in m.points if a != b]
    else:
        rng = _law_rng(plan, "banach-precheck")
        attempts = 0
        while len(pairs) < plan.count and attempts < plan.count * 64:
            attempts += 1
            a, b = m.sampler(rng), m.sampler(rng)
            if a != b:
                pairs.append((a, b))
    for a, b in pairs:
        lhs = m.distance(f(a), f(b))
        rhs = module.scale(alpha, m.distance(a, b))
        if not g.leq(lhs, rhs):
            return BanachReport(
                SolverOutcome.HYPOTHESIS_VIOLATION, (), alpha,
                message=(f"contraction bound fails at x={format_point(a)}, "
                         f"y={format_point(b)}: d(fx, fy)={format_element(lhs)} exceeds "
                         f"{format_element(rhs)}"))

    stop_scale = module.scale(1 - alpha, eps)
    inv_gap = 1 / (1 - alpha)
    trace: list[BanachStep] = []
    first_step: Element | None = None
    for n in range(cfg.max_iter + 1):
        x_next = f(x)
        if not m.member(x_next):
            raise DomainError(f"iterate {format_point(x_next)} left the space")
        step = m.distance(x, x_next)
        if first_step is None:
            first_step = step
        apriori = module.scale(alpha ** n * inv_gap, first_step)
        trace.append(BanachStep(n, x, x_next, step, apriori))
        if g.eq(step, g.identity):
            return BanachReport(SolverOutcome.ENDPOINT_FOUND, tuple(trace), alpha,
                                fixed_point=x,
                                message=f"exact fixed point after {n} steps")
        if t.ll(step, stop_scale):
            err = module.scale(inv_gap, step)
            return BanachReport(SolverOutcome.APPROX_ENDPOINT_SEQUENCE, tuple(trace), alpha,
                                final_point=x_next, error_bound=err,
                                message=(f"step strictly below (1 - {alpha}) * eps at n={n}; "
                                         "the geometric tail keeps the limit strictly within eps"))
        x = x_next
    return BanachReport(SolverOutcome.BUDGET_EXHAUSTED, tuple(trace), alpha,
                        message=f"no certificate within {cfg.max_iter} iterations")


# ---------------------------------------------------------------------------
# equivalence and single-valued reports


@dataclass(frozen=True)
class IffReport:
    status: str  # checked | skipped
    reason: str = ""
    endpoint_exists: bool | None = None
    infsup_is_zero: bool | None = None
    endpoints: tuple = ()
    infsup_value: Element | None = None
    achieving_point: Point | None = None

    @property
    def equivalent(self) -> bool | None:
        if self.status != "checked":
            return None
        return self.endpoint_exists == self.infsup_is_zero

    @property
    def solver_defect(self) -> bool:
        return self.status == "checked" and not self.equivalent


def endpoint_iff_report(T: SetValuedMap, w: ContractionWitness,
                        plan: SamplePlan | None = None) -> IffReport:
    """Compute both sides of the endpoint equivalence independently.

    One side scans the finite space for exact endpoints; the other decides
    whether the inf-sup image distance is the identity. On a finite space
    the two are logically forced to agree, so a disagreement is a defect in
    this package, not in the instance.
    """
    if not T.space.finite:
        return IffReport("skipped", "space is not finite")
    weak = is_weak_contraction(T, w, plan)
    if not weak.passed:
        return IffReport("skipped", f"one-sided bound check failed: {weak.counterexample}")
    cstat = c_condition_status(w)
    if cstat.status is not CStatus.HOLDS_BY_THEOREM:
        return IffReport("skipped", f"convergence condition not certified: {cstat.justification}")
    ends: EndpointSet = endpoints_bruteforce(T)
    try:
        value: ApproxEndpointValue = approximate_endpoint_property_finite(T)
    except IncomparableError as exc:
        return IffReport("skipped", f"inf-sup undefined: {exc}")
    g = T.space.group
    return IffReport("checked", "",
                     endpoint_exists=len(ends) == 1,
                     infsup_is_zero=value.holds(g),
                     endpoints=ends.members,
                     infsup_value=value.value,
                     achieving_point=value.achieving_point)


@dataclass(frozen=True)
class SingleValuedReport:
    status: str  # checked | skipped
    reason: str = ""
    solver: SolverReport | None = None
    brute_fixed_points: tuple = ()
    agrees: bool | None = None


def single_valued_fixed_point_report(m: ConeMetricSpace, f: Callable[[Point], Point],
                                     w: ContractionWitness, cfg: SolverConfig,
                                     plan: SamplePlan | None = None) -> SingleValuedReport:
    """Run the endpoint walk on the singleton lift of a single-valued map
    and, on finite spaces, compare against the brute-force fixed points.

    For singleton images an endpoint is exactly a fixed point, so a passing
    one-sided bound check already forces uniqueness of the target."""
    if not m.structure.regular:
        return SingleValuedReport("skipped", "instance is not declared regular")
    T = singleton_lift(m, f)
    weak = is_weak_contraction(T, w, plan)
    if not weak.passed:
        return SingleValuedReport("skipped",
                                  f"one-sided bound check failed: {weak.counterexample}")
    report = iterate_endpoint(T, w, cfg, plan)
    if not m.finite:
        return SingleValuedReport("checked", "", report, (), None)
    brute = fixed_points_bruteforce(T)
    agrees = (report.outcome is SolverOutcome.ENDPOINT_FOUND
              and len(brute) == 1 and brute[0] == report.endpoint)
    return SingleValuedReport("checked", "", report, brute, agrees)
