"""Suite orchestration: run every law, limit fact, and solver check over the
registered instances and emit a traceability report.

Checks are identified by stable descriptive ids ("group/g1", "seq/sum",
"solver/oracle-agreement", ...). A run is deterministic in its seed: the
serialized report (which omits wall-clock timings) is byte-identical
across runs. Skips are first-class outcomes and always carry a reason.

Fault injection produces mutated copies of a bundle, each engineered to
flip one targeted check; the sensitivity helper asserts the flip, which is
the meta-test that the harness can actually see violations.
"""

from __future__ import annotations

import dataclasses
import time
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .order_core import (
    IncomparableError,
    Order,
    OrderedModuleInstance,
    SamplePlan,
    _law_rng,
    check_group_laws,
    check_module_laws,
    coord_cone_module,
    format_element,
    real_module,
)
from .topo import (
    PositiveSequence,
    TopoStructure,
    check_regularity,
    check_topo_laws,
    constant,
    geometric,
    harmonic,
    interior_cone_structure,
    inverse_square,
    is_certificate,
    strict_order_structure,
    sum_of,
    verify_convergence,
    verify_convergence_twosided,
)
from .cone_metric import (
    CauchyCertificate,
    ConeMetricSpace,
    SetDistanceUndefined,
    cauchy_check,
    check_metric_laws,
    constant_tail_start,
    format_point,
    hausdorff,
    min_positive_distance,
    point_convergence,
    point_seq,
)
from .contraction import (
    ContractionWitness,
    CStatus,
    SetValuedMap,
    WitnessClass,
    approximate_endpoint_property_finite,
    approximate_endpoint_sequence,
    c_condition_status,
    endpoints_bruteforce,
    is_global_weak_contraction,
    is_weak_contraction,
    validate_witness,
)
from .solver import (
    BanachReport,
    SelectionRule,
    SolverConfig,
    SolverOutcome,
    banach_iterate,
    endpoint_iff_report,
    iterate_endpoint,
)
from . import topo as _topo


@dataclass(frozen=True, eq=False)
class InstanceBundle:
    """Everything the suite needs about one registered instance."""

    name: str
    module: OrderedModuleInstance
    structure: TopoStructure
    space: ConeMetricSpace | None = None
    map_: SetValuedMap | None = None
    witness: ContractionWitness | None = None
    sequences: tuple[PositiveSequence, ...] = ()
    eps_family: tuple = ()
    alt_structure: TopoStructure | None = None
    solver_seed: object = None
    solver_eps: object = None
    banach_map: Callable | None = None
    banach_alpha: Fraction | None = None

    def replace(self, **kw) -> "InstanceBundle":
        return dataclasses.replace(self, **kw)


@dataclass(frozen=True)
class Budgets:
    samples: int = 1000
    n_max: int = 200


@dataclass(frozen=True)
class SuiteSpec:
    instances: tuple[str, ...]
    checks: tuple[str, ...]
    sample_seed: int = 0
    budgets: Budgets = Budgets()


@dataclass(frozen=True)
class CheckRow:
    check: str
    instance: str
    outcome: str  # pass | fail | skip
    witness: str
    runtime: float


@dataclass(frozen=True)
class TraceabilityReport:
    rows: tuple[CheckRow, ...]

    @property
    def failed(self) -> tuple[CheckRow, ...]:
        return tuple(r for r in self.rows if r.outcome == "fail")

    @property
    def ok(self) -> bool:
        return not self.failed

    def row(self, check: str, instance: str) -> CheckRow:
        for r in self.rows:
            if r.check == check and r.instance == instance:
                return r
        raise KeyError((check, instance))

    def to_text(self, fmt: str = "text") -> str:
        if fmt == "machine-rows":
            return "\n".join(f"{r.check}\t{r.instance}\t{r.outcome}\t{r.witness}"
                             for r in self.rows) + "\n"
        width = max((len(r.check) for r in self.rows), default=10) + 2
        lines = []
        for r in self.rows:
            line = f"{r.check:<{width}} {r.instance:<14} {r.outcome:<5}"
            if r.witness:
                line += f" {r.witness}"
            lines.append(line.rstrip())
        n_fail = len(self.failed)
        n_skip = sum(1 for r in self.rows if r.outcome == "skip")
        lines.append(f"-- {len(self.rows)} rows: "
                     f"{len(self.rows) - n_fail - n_skip} pass, {n_fail} fail, {n_skip} skip")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-in instance bundles


def _abs_metric(x, y):
    return abs(x - y)


def _coord_metric(x, y):
    return tuple(abs(a - b) for a, b in zip(x, y))


def _interval_sampler(dim: int):
    def sampler(rng):
        def coord():
            den = rng.randint(1, 16)
            return Fraction(rng.randint(0, den), den)
        if dim == 1:
            return coord()
        return tuple(coord() for _ in range(dim))
    return sampler


def _interval_contains(dim: int):
    def contains(p):
        if dim == 1:
            return isinstance(p, Fraction) and 0 <= p <= 1
        return (isinstance(p, tuple) and len(p) == dim
                and all(isinstance(c, Fraction) and 0 <= c <= 1 for c in p))
    return contains


def _scalar_sequences(module) -> tuple:
    return (
        harmonic(module, 1),
        inverse_square(module, 1),
        geometric(module, 1, Fraction(1, 2)),
        geometric(module, 2, Fraction(2, 3)),
        sum_of(harmonic(module, 1), inverse_square(module, 1)),
    )


def _vector_sequences(module, dim: int) -> tuple:
    ones = tuple(Fraction(1) for _ in range(dim))
    ramp = tuple(Fraction(i + 1) for i in range(dim))
    return (
        harmonic(module, ones),
        inverse_square(module, ramp),
        geometric(module, ones, Fraction(1, 2)),
        geometric(module, ramp, Fraction(2, 3)),
        sum_of(harmonic(module, ones), inverse_square(module, ones)),
    )


def _real_line_bundle() -> InstanceBundle:
    module = real_module()
    structure = strict_order_structure(module)
    space = ConeMetricSpace(
        "unit-interval", structure, _abs_metric,
        contains=_interval_contains(1), sampler=_interval_sampler(1))
    halve = SetValuedMap.from_rule(space, lambda x: (x / 2,), name="halve")
    witness = ContractionWitness(WitnessClass.ALPHA_CONSTANT, alpha_const=Fraction(1, 2))
    return InstanceBundle(
        name="real-line",
        module=module,
        structure=structure,
        space=space,
        map_=halve,
        witness=witness,
        sequences=_scalar_sequences(module),
        eps_family=(Fraction(1, 2), Fraction(1, 10), Fraction(1, 100)),
        solver_seed=Fraction(1),
        solver_eps=Fraction(1, 100),
        banach_map=lambda x: x / 2,
        banach_alpha=Fraction(1, 2),
    )


def _three_point_bundle() -> InstanceBundle:
    module = real_module()
    structure = strict_order_structure(module)
    pts = (Fraction(0), Fraction(1, 4), Fraction(1))
    space = ConeMetricSpace("three-point", structure, _abs_metric, points=pts)
    table = {Fraction(0): (Fraction(0),),
             Fraction(1, 4): (Fraction(0),),
             Fraction(1): (Fraction(0), Fraction(1, 4))}
    map_ = SetValuedMap.from_table(space, table, name="dilation")
    witness = ContractionWitness(WitnessClass.ALPHA_CONSTANT, alpha_const=Fraction(1, 2))

    def banach_f(x):
        return {Fraction(0): Fraction(0), Fraction(1, 4): Fraction(0),
                Fraction(1): Fraction(1, 4)}[x]

    return InstanceBundle(
        name="three-point",
        module=module,
        structure=structure,
        space=space,
        map_=map_,
        witness=witness,
        sequences=_scalar_sequences(module),
        eps_family=(Fraction(1, 2), Fraction(1, 10), Fraction(1, 100)),
        solver_seed=Fraction(1),
        solver_eps=Fraction(1, 8),
        banach_map=banach_f,
        banach_alpha=Fraction(1, 2),
    )


def _cone_bundle(dim: int) -> InstanceBundle:
    module = coord_cone_module(dim)
    structure = interior_cone_structure(module)
    space = ConeMetricSpace(
        f"unit-box-{dim}", structure, _coord_metric,
        contains=_interval_contains(dim), sampler=_interval_sampler(dim))
    halve = SetValuedMap.from_rule(
        space, lambda x: (tuple(c / 2 for c in x),), name="halve")
    witness = ContractionWitness(WitnessClass.ALPHA_CONSTANT, alpha_const=Fraction(1, 2))
    factors = tuple(Fraction(1, k + 2) for k in range(dim))  # 1/2, 1/3, ...

    def banach_f(x):
        return tuple(c * f for c, f in zip(x, factors))

    half = tuple(Fraction(1, 2) for _ in range(dim))
    tenth = tuple(Fraction(1, 10) for _ in range(dim))
    skew = tuple(Fraction(1, 10) if i == 0 else Fraction(1, 2) for i in range(dim))
    return InstanceBundle(
        name=f"cone-{dim}",
        module=module,
        structure=structure,
        space=space,
        map_=halve,
        witness=witness,
        sequences=_vector_sequences(module, dim),
        eps_family=(half, tenth, skew),
        alt_structure=strict_order_structure(module),
        solver_seed=tuple(Fraction(1) for _ in range(dim)),
        solver_eps=tuple(Fraction(1, 100) for _ in range(dim)),
        banach_map=banach_f,
        banach_alpha=Fraction(1, 2),
    )


def builtin_bundles() -> dict[str, InstanceBundle]:
    bundles = [_real_line_bundle(), _three_point_bundle(), _cone_bundle(2), _cone_bundle(3)]
    return {b.name: b for b in bundles}


DEFAULT_INSTANCES = ("real-line", "three-point", "cone-2", "cone-3")


# ---------------------------------------------------------------------------
# check implementations

_GROUP_LAWS = ("assoc", "comm", "identity", "inverse", "order-reflexive",
               "order-antisymmetric", "order-transitive", "g1", "g1-prime")
_MODULE_LAWS = ("r1", "m1", "m1-prime", "m2", "m2-prime")
_TOPO_LAWS = ("t1", "t2", "t3", "t4-shrinking", "t5", "t6", "strictness-gap")
_METRIC_LAWS = ("d1", "d2", "d3")


class _Ctx:
    """Per-run scratch: the sampling plan and memoized law reports."""

    def __init__(self, plan: SamplePlan, budgets: Budgets):
        self.plan = plan
        self.budgets = budgets
        self.cache: dict = {}

    def memo(self, key, thunk):
        if key not in self.cache:
            self.cache[key] = thunk()
        return self.cache[key]


def _law_row(report, law: str):
    try:
        r = report.result(law)
    except KeyError:
        return "skip", "law not applicable to this instance"
    if r.passed:
        return "pass", f"checked {r.checked}"
    return "fail", r.witness or r.note or "violated"


def _check_group_law(law):
    def run(b: InstanceBundle, ctx: _Ctx):
        rep = ctx.memo(("group", b.name),
                       lambda: check_group_laws(b.module.group, ctx.plan))
        return _law_row(rep, law)
    return run


def _check_module_law(law):
    def run(b: InstanceBundle, ctx: _Ctx):
        rep = ctx.memo(("module", b.name),
                       lambda: check_module_laws(b.module, ctx.plan))
        return _law_row(rep, law)
    return run


def _check_topo_law(law):
    def run(b: InstanceBundle, ctx: _Ctx):
        rep = ctx.memo(("topo", b.name),
                       lambda: check_topo_laws(b.structure, ctx.plan))
        return _law_row(rep, law)
    return run


def _check_metric_law(law):
    def run(b: InstanceBundle, ctx: _Ctx):
        if b.space is None:
            return "skip", "bundle has no metric space"
        rep = ctx.memo(("metric", b.name),
                       lambda: check_metric_laws(b.space, ctx.plan))
        return _law_row(rep, law)
    return run


def _theta_sequences(b: InstanceBundle):
    g = b.module.group
    return [s for s in b.sequences if s.closed_form and g.eq(s.declared_limit, g.identity)]


def _check_limit_uniqueness(b: InstanceBundle, ctx: _Ctx):
    g, t = b.module.group, b.structure
    n_max = ctx.budgets.n_max
    fake = t.shrink(t.positivity_witness)
    for s in _theta_sequences(b):
        ok = _topo.check_limit_uniqueness(t, s, g.identity, g.identity,
                                          b.eps_family, n_max)
        if ok.candidate_is_limit is not True:
            return "fail", f"{s.name}: true limit rejected ({ok.witness})"
        alt = _topo.check_limit_uniqueness(t, s, g.identity, fake,
                                           b.eps_family, n_max)
        if alt.candidate_is_limit is not False:
            return "fail", f"{s.name}: fake limit {format_element(fake)} not refuted"
    return "pass", f"{len(_theta_sequences(b))} sequences, fake limit refuted each time"


def _check_sum(b: InstanceBundle, ctx: _Ctx):
    t = b.structure
    seqs = _theta_sequences(b)
    pairs = [(seqs[i], seqs[(i + 1) % len(seqs)]) for i in range(len(seqs))]
    for s1, s2 in pairs:
        outs = _topo.sum_convergence(t, s1, s2, b.eps_family, ctx.budgets.n_max)
        bad = [o for o in outs if not is_certificate(o)]
        if bad:
            return "fail", f"{s1.name} + {s2.name}: {bad[0]}"
    return "pass", f"{len(pairs)} sums certified by tolerance splitting"


def _check_sandwich(b: InstanceBundle, ctx: _Ctx):
    g, t = b.module.group, b.structure
    seqs = _theta_sequences(b)
    for i, lower in enumerate(seqs):
        bump = seqs[(i + 1) % len(seqs)]
        upper = sum_of(lower, bump)
        outs = _topo.sandwich_convergence(t, lower, upper, g.identity,
                                          b.eps_family, ctx.budgets.n_max)
        bad = [o for o in outs if not is_certificate(o)]
        if bad:
            return "fail", f"{lower.name} vs {upper.name}: {bad[0]}"
    return "pass", f"{len(seqs)} dominated pairs certified"


def _check_regularity(b: InstanceBundle, ctx: _Ctx):
    t = b.structure
    if not t.regular:
        return "skip", "instance is not declared regular"
    decreasing = list(_theta_sequences(b))
    shifted = sum_of(constant(b.module, t.positivity_witness), harmonic(
        b.module, t.positivity_witness))
    decreasing.append(shifted)
    rep = check_regularity(t, decreasing, b.eps_family, ctx.budgets.n_max)
    if rep.all_convergent:
        return "pass", f"{len(rep.rows)} decreasing sequences converge"
    bad = [r for r in rep.rows if r.status != "converges"][0]
    return "fail", f"{bad.sequence}: {bad.status}"


def _check_two_sided(b: InstanceBundle, ctx: _Ctx):
    g, t = b.module.group, b.structure
    for s in _theta_sequences(b):
        one = verify_convergence(t, s, g.identity, b.eps_family, ctx.budgets.n_max)
        two = verify_convergence_twosided(t, s, g.identity, b.eps_family, ctx.budgets.n_max)
        for a, c in zip(one, two):
            if not (is_certificate(a) and is_certificate(c)):
                return "fail", f"{s.name}: outcome mismatch at {format_element(a.epsilon)}"
            if a.threshold != c.threshold:
                return "fail", (f"{s.name}: thresholds differ at "
                                f"{format_element(a.epsilon)}: {a.threshold} vs {c.threshold}")
    return "pass", "both phrasings agree on every threshold"


def _check_weak_vs_strong(b: InstanceBundle, ctx: _Ctx):
    if b.alt_structure is None:
        return "skip", "no strict-order twin registered (relations coincide)"
    g = b.module.group
    t_main, t_strict = b.structure, b.alt_structure
    for s in _theta_sequences(b):
        for eps in b.eps_family:
            eta = t_main.shrink(g.coerce(eps))
            strict_out = verify_convergence(t_strict, s, g.identity, [eta],
                                            ctx.budgets.n_max)[0]
            main_out = verify_convergence(t_main, s, g.identity, [eps],
                                          ctx.budgets.n_max)[0]
            if not (is_certificate(strict_out) and is_certificate(main_out)):
                return "fail", f"{s.name}: certification failed"
            if main_out.threshold > strict_out.threshold:
                return "fail", (f"{s.name}: dominance threshold {main_out.threshold} "
                                f"exceeds strict-order threshold {strict_out.threshold} "
                                f"on the produced witness")
    return "pass", "strict-order certificates convert with no larger thresholds"


def _check_norm_to_order(b: InstanceBundle, ctx: _Ctx):
    g, t = b.module.group, b.structure
    n_max = ctx.budgets.n_max
    established = 0
    for s in _theta_sequences(b):
        for eps in b.eps_family:
            eps = g.coerce(eps)
            eps_coords = eps if isinstance(eps, tuple) else (eps,)
            floor = min(eps_coords)

            def max_coord(n):
                v = s.term(n)
                return max(v) if isinstance(v, tuple) else v

            viol = [n for n in range(1, n_max + 1) if not max_coord(n) < floor]
            if viol and viol[-1] == n_max:
                # sup-coordinate decay not established in the window: vacuous
                continue
            established += 1
            norm_n = viol[-1] if viol else 0
            out = verify_convergence(t, s, g.identity, [eps], n_max)[0]
            if not is_certificate(out):
                return "fail", f"{s.name}: no dominance certificate at {format_element(eps)}"
            if out.threshold > norm_n:
                return "fail", (f"{s.name}: dominance threshold {out.threshold} exceeds "
                                f"sup-coordinate threshold {norm_n}")
    if not established:
        return "skip", "no (sequence, tolerance) pair established sup-coordinate decay in the window"
    return "pass", f"sup-coordinate decay certifies dominance on {established} pairs"


def _sample_subsets(b: InstanceBundle, ctx: _Ctx, pairs: int = 30):
    rng = _law_rng(ctx.plan, f"hausdorff:{b.name}")
    space = b.space
    out = []
    for _ in range(pairs):
        if space.finite:
            pool = list(space.points)
        else:
            pool = [space.sampler(rng) for _ in range(6)]
        k1 = rng.randint(1, min(4, len(pool)))
        k2 = rng.randint(1, min(4, len(pool)))
        out.append((tuple(rng.sample(pool, k1)), tuple(rng.sample(pool, k2))))
    return out


def _check_hausdorff_identity(b: InstanceBundle, ctx: _Ctx):
    if b.space is None:
        return "skip", "bundle has no metric space"
    g = b.space.group
    defined = 0
    for a, _ in _sample_subsets(b, ctx):
        try:
            h = hausdorff(b.space, a, a)
        except SetDistanceUndefined:
            continue
        defined += 1
        if not g.eq(h, g.identity):
            return "fail", f"H(A, A) = {format_element(h)} for A = {a}"
    return "pass", f"H(A, A) is the identity on {defined} defined samples"


def _check_hausdorff_symmetry(b: InstanceBundle, ctx: _Ctx):
    if b.space is None:
        return "skip", "bundle has no metric space"
    g = b.space.group
    defined = 0
    for a, c in _sample_subsets(b, ctx):
        try:
            h1, h2 = hausdorff(b.space, a, c), hausdorff(b.space, c, a)
        except SetDistanceUndefined:
            continue
        defined += 1
        if not g.eq(h1, h2):
            return "fail", f"H asymmetric on {a} vs {c}"
    return "pass", f"symmetric on {defined} defined samples"


def _check_hausdorff_singleton(b: InstanceBundle, ctx: _Ctx):
    if b.space is None:
        return "skip", "bundle has no metric space"
    g = b.space.group
    rng = _law_rng(ctx.plan, f"hausdorff-singleton:{b.name}")
    for _ in range(40):
        if b.space.finite:
            x, y = rng.choice(b.space.points), rng.choice(b.space.points)
        else:
            x, y = b.space.sampler(rng), b.space.sampler(rng)
        if not g.eq(hausdorff(b.space, [x], [y]), b.space.distance(x, y)):
            return "fail", f"H({{x}}, {{y}}) != d(x, y) at x={format_point(x)}, y={format_point(y)}"
    return "pass", "singleton sets reduce to the point distance"


def _check_hausdorff_triangle(b: InstanceBundle, ctx: _Ctx):
    if b.space is None:
        return "skip", "bundle has no metric space"
    g = b.space.group
    if isinstance(g.identity, tuple):
        return "skip", "triangle check restricted to totally ordered targets"
    subsets = _sample_subsets(b, ctx, pairs=20)
    for (a, c), (mid, _) in zip(subsets, subsets[1:] + subsets[:1]):
        lhs = hausdorff(b.space, a, c)
        rhs = g.add(hausdorff(b.space, a, mid), hausdorff(b.space, mid, c))
        if not g.leq(lhs, rhs):
            return "fail", f"triangle fails via {mid}"
    return "pass", "triangle inequality holds on sampled set triples"


def _geometric_approach(b: InstanceBundle):
    """Points marching toward the designated corner with geometric steps."""
    module = b.module
    corner = b.solver_seed

    def rule(n):
        return module.scale(1 - Fraction(1, 2 ** n), corner)

    return point_seq(b.space, rule=rule, name="geometric approach"), corner


def _check_point_convergence(b: InstanceBundle, ctx: _Ctx):
    if b.space is None or b.space.finite:
        return "skip", "continuum row; finite spaces are covered by eventual constancy"
    s, corner = _geometric_approach(b)
    outs = point_convergence(b.space, s, corner, b.eps_family, 64)
    if all(is_certificate(o) for o in outs):
        return "pass", "distance profile to the corner certified toward the identity"
    bad = next(o for o in outs if not is_certificate(o))
    return "fail", f"no certificate at {format_element(bad.epsilon)}"


def _check_point_cauchy(b: InstanceBundle, ctx: _Ctx):
    if b.space is None or b.space.finite:
        return "skip", "continuum row; finite spaces are covered by eventual constancy"
    module = b.module
    s, corner = _geometric_approach(b)
    profile = (module.scale(Fraction(1, 2), corner), Fraction(1, 2))
    outs = cauchy_check(b.space, s, b.eps_family, 64, step_profile=profile)
    for out in outs:
        if not isinstance(out, CauchyCertificate):
            return "fail", f"pair {out.witness_pair} violates {format_element(out.epsilon)}"
        if out.analytic_bound is None or out.threshold > out.analytic_bound:
            return "fail", (f"windowed threshold {out.threshold} exceeds the geometric "
                            f"tail bound {out.analytic_bound}")
    return "pass", "certified with geometric tail bounds dominating the windowed thresholds"


def _check_finite_completeness(b: InstanceBundle, ctx: _Ctx):
    if b.space is None or not b.space.finite:
        return "skip", "eventual constancy applies to finite spaces"
    space, g, t = b.space, b.space.group, b.structure
    minpos = min_positive_distance(space)
    pts = space.points
    n_max = 24
    sequences = {
        "constant": point_seq(space, [pts[0]] * n_max, name="constant"),
        "stabilizing": point_seq(space, [pts[-1], pts[0]] + [pts[0]] * (n_max - 2),
                                 name="stabilizing"),
        "oscillating": point_seq(space, [pts[0], pts[-1]] * (n_max // 2),
                                 name="oscillating"),
    }
    for name, s in sequences.items():
        outcome = cauchy_check(space, s, [minpos], n_max)[0]
        if isinstance(outcome, CauchyCertificate):
            if constant_tail_start(s, n_max) > max(outcome.threshold, 1):
                return "fail", f"{name}: certified at the minimum scale but not constant"
            tail_value = s.term(n_max)
            conv = point_convergence(space, s, tail_value, b.eps_family, n_max)
            if not all(is_certificate(o) for o in conv):
                return "fail", f"{name}: eventually constant but convergence failed"
        elif name != "oscillating":
            return "fail", f"{name}: expected a certificate at the minimum positive distance"
    return "pass", "certified-at-scale sequences are eventually constant, hence convergent"


def _check_witness_validity(b: InstanceBundle, ctx: _Ctx):
    if b.map_ is None or b.witness is None:
        return "skip", "bundle has no map/witness"
    rep = ctx.memo(("witness", b.name),
                   lambda: validate_witness(b.map_, b.witness, ctx.plan))
    return _law_row(rep, "phi-strictly-below")


def _check_weak(b: InstanceBundle, ctx: _Ctx):
    if b.map_ is None or b.witness is None:
        return "skip", "bundle has no map/witness"
    rep = ctx.memo(("weak", b.name),
                   lambda: is_weak_contraction(b.map_, b.witness, ctx.plan))
    if rep.passed:
        scope = "exhaustive" if rep.exhaustive else f"{rep.checked_pairs} sampled pairs"
        return "pass", scope
    return "fail", rep.counterexample


def _check_global(b: InstanceBundle, ctx: _Ctx):
    if b.map_ is None or b.witness is None:
        return "skip", "bundle has no map/witness"
    rep = ctx.memo(("global", b.name),
                   lambda: is_global_weak_contraction(b.map_, b.witness, ctx.plan))
    if rep.passed:
        scope = "exhaustive" if rep.exhaustive else f"{rep.checked_pairs} sampled pairs"
        return "pass", scope
    return "fail", rep.counterexample


def _check_global_implies_weak(b: InstanceBundle, ctx: _Ctx):
    if b.map_ is None or b.witness is None:
        return "skip", "bundle has no map/witness"
    glob = ctx.memo(("global", b.name),
                    lambda: is_global_weak_contraction(b.map_, b.witness, ctx.plan))
    if not glob.passed:
        return "skip", "all-pairs bound does not hold; implication is vacuous"
    weak = ctx.memo(("weak", b.name),
                    lambda: is_weak_contraction(b.map_, b.witness, ctx.plan))
    if weak.passed:
        return "pass", "all-pairs bound entails the one-sided bound on the same samples"
    return "fail", f"one-sided check failed despite all-pairs: {weak.counterexample}"


def _check_c_status(b: InstanceBundle, ctx: _Ctx):
    if b.witness is None:
        return "skip", "bundle has no witness"
    status = c_condition_status(b.witness)
    ratio_class = b.witness.klass in (WitnessClass.ALPHA_CONSTANT, WitnessClass.ALPHA_FUNCTION)
    expected = CStatus.HOLDS_BY_THEOREM if ratio_class else status.status
    if status.status is expected:
        return "pass", f"{status.status.value}: {status.justification}"
    return "fail", f"unexpected verdict {status.status.value}"


def _check_at_most_one(b: InstanceBundle, ctx: _Ctx):
    if b.map_ is None or b.space is None or not b.space.finite:
        return "skip", "needs a finite mapped space"
    weak = ctx.memo(("weak", b.name),
                    lambda: is_weak_contraction(b.map_, b.witness, ctx.plan))
    if not weak.passed:
        return "skip", "one-sided bound fails; uniqueness not implied"
    ends = endpoints_bruteforce(b.map_)
    if len(ends) <= 1:
        return "pass", f"endpoints: {[format_point(p) for p in ends.members]}"
    return "fail", f"two endpoints: {format_point(ends.members[0])}, {format_point(ends.members[1])}"


def _check_approx_equivalence(b: InstanceBundle, ctx: _Ctx):
    if b.map_ is None or b.space is None or not b.space.finite:
        return "skip", "needs a finite mapped space"
    g = b.space.group
    try:
        value = approximate_endpoint_property_finite(b.map_)
    except IncomparableError as exc:
        return "skip", f"inf-sup undefined: {exc}"
    ends = endpoints_bruteforce(b.map_)
    if (len(ends) > 0) != value.holds(g):
        return "fail", (f"endpoint presence and inf-sup value disagree: "
                        f"{len(ends)} endpoints, value {format_element(value.value)}")
    if value.holds(g):
        const_pts = point_seq(b.space, [value.achieving_point] * 16, name="minimizer")
        const_bounds = constant(b.module, g.identity)
        rep = approximate_endpoint_sequence(b.map_, const_pts, const_bounds,
                                            b.eps_family, 16)
        if not rep.holds:
            return "fail", f"constant witness at the minimizer rejected: {rep.violation}"
        return "pass", "inf-sup is zero and the constant witness validates"
    return "pass", f"no endpoint and inf-sup value {format_element(value.value)} above zero"


def _check_iff(b: InstanceBundle, ctx: _Ctx):
    if b.map_ is None or b.witness is None:
        return "skip", "bundle has no map/witness"
    rep = endpoint_iff_report(b.map_, b.witness, ctx.plan)
    if rep.status == "skipped":
        return "skip", rep.reason
    if rep.equivalent:
        return "pass", (f"endpoint={rep.endpoint_exists}, inf-sup zero={rep.infsup_is_zero}, "
                        f"value {format_element(rep.infsup_value)}")
    return "fail", "sides disagree: solver defect"


def _solver_cfg(b: InstanceBundle, rule=SelectionRule.MIN_DISTANCE) -> SolverConfig:
    return SolverConfig(eps=b.solver_eps, seed_point=b.solver_seed,
                        max_iter=400, selection_rule=rule)


def _check_oracle_agreement(b: InstanceBundle, ctx: _Ctx):
    if b.map_ is None or b.space is None or not b.space.finite:
        return "skip", "needs a finite mapped space"
    glob = ctx.memo(("global", b.name),
                    lambda: is_global_weak_contraction(b.map_, b.witness, ctx.plan))
    if not glob.passed:
        return "skip", "all-pairs bound fails; walk not governed"
    ends = endpoints_bruteforce(b.map_)
    if len(ends) != 1:
        return "fail", f"expected a unique endpoint, found {len(ends)}"
    target = ends.members[0]
    module = b.module
    eps = module.scale(Fraction(1, 2), min_positive_distance(b.space))
    for seed in b.space.points:
        for rule in SelectionRule:
            cfg = SolverConfig(eps=eps, seed_point=seed, max_iter=400, selection_rule=rule)
            rep = iterate_endpoint(b.map_, b.witness, cfg, ctx.plan)
            if rep.outcome is not SolverOutcome.ENDPOINT_FOUND or rep.endpoint != target:
                return "fail", (f"seed {format_point(seed)} rule {rule.value}: "
                                f"{rep.outcome.value} at {format_point(rep.endpoint)}")
    return "pass", f"every seed and rule reaches {format_point(target)}"


def _check_trace_monotone(b: InstanceBundle, ctx: _Ctx):
    if b.map_ is None or b.witness is None:
        return "skip", "bundle has no map/witness"
    g = b.space.group
    rep = iterate_endpoint(b.map_, b.witness, _solver_cfg(b), ctx.plan)
    if rep.outcome is SolverOutcome.HYPOTHESIS_VIOLATION:
        return "fail", rep.message
    steps = [s for s in rep.trace]
    for prev, cur in zip(steps, steps[1:]):
        if not g.leq(cur.step_distance, prev.bound):
            return "fail", (f"step {cur.n}: {format_element(cur.step_distance)} exceeds the "
                            f"bound {format_element(prev.bound)} consumed before it")
        if not g.leq(cur.step_distance, prev.step_distance):
            return "fail", f"step {cur.n}: trace distance grew"
    return "pass", f"{rep.outcome.value} with governed trace of {len(steps)} steps"


def _check_banach_rate(b: InstanceBundle, ctx: _Ctx):
    if b.banach_map is None or b.space is None:
        return "skip", "bundle has no single-valued contraction"
    g = b.space.group
    cfg = SolverConfig(eps=b.solver_eps, seed_point=b.solver_seed, max_iter=400)
    rep: BanachReport = banach_iterate(b.space, b.banach_map, b.banach_alpha, cfg, ctx.plan)
    if rep.outcome not in (SolverOutcome.ENDPOINT_FOUND, SolverOutcome.APPROX_ENDPOINT_SEQUENCE):
        return "fail", rep.message
    for step in rep.trace:
        if not g.leq(step.step_distance, step.apriori_bound):
            return "fail", (f"n={step.n}: step {format_element(step.step_distance)} exceeds "
                            f"the a-priori bound {format_element(step.apriori_bound)}")
    return "pass", f"{rep.outcome.value} in {rep.iterations} steps, a-priori bound dominates"


CHECKS: dict[str, Callable[[InstanceBundle, _Ctx], tuple[str, str]]] = {}
CHECKS.update({f"group/{law}": _check_group_law(law) for law in _GROUP_LAWS})
CHECKS.update({f"module/{law}": _check_module_law(law) for law in _MODULE_LAWS})
CHECKS.update({f"topo/{law}": _check_topo_law(law) for law in _TOPO_LAWS})
CHECKS.update({f"metric/{law}": _check_metric_law(law) for law in _METRIC_LAWS})
CHECKS.update({
    "metric/point-convergence": _check_point_convergence,
    "metric/cauchy": _check_point_cauchy,
    "metric/finite-completeness": _check_finite_completeness,
    "seq/limit-uniqueness": _check_limit_uniqueness,
    "seq/sum": _check_sum,
    "seq/sandwich": _check_sandwich,
    "seq/regularity": _check_regularity,
    "seq/two-sided": _check_two_sided,
    "seq/weak-vs-strong": _check_weak_vs_strong,
    "seq/norm-to-order": _check_norm_to_order,
    "hausdorff/identity": _check_hausdorff_identity,
    "hausdorff/symmetry": _check_hausdorff_symmetry,
    "hausdorff/singleton": _check_hausdorff_singleton,
    "hausdorff/triangle": _check_hausdorff_triangle,
    "map/phi-strictly-below": _check_witness_validity,
    "map/weak-contraction": _check_weak,
    "map/global-contraction": _check_global,
    "map/global-implies-weak": _check_global_implies_weak,
    "map/c-status": _check_c_status,
    "endpoint/at-most-one": _check_at_most_one,
    "endpoint/approx-equivalence": _check_approx_equivalence,
    "endpoint/iff-zero-gap": _check_iff,
    "solver/oracle-agreement": _check_oracle_agreement,
    "solver/trace-monotone": _check_trace_monotone,
    "solver/banach-rate": _check_banach_rate,
})

ALL_CHECKS = tuple(CHECKS)


def default_suite(instances=None, checks=None, sample_seed: int = 0,
                  budgets: Budgets | None = None) -> SuiteSpec:
    return SuiteSpec(
        instances=tuple(instances) if instances else DEFAULT_INSTANCES,
        checks=tuple(checks) if checks else ALL_CHECKS,
        sample_seed=sample_seed,
        budgets=budgets or Budgets(),
    )


def run_suite(spec: SuiteSpec, bundles: dict[str, InstanceBundle] | None = None) -> TraceabilityReport:
    """Execute every (instance, check) cell deterministically.

    A check that raises is recorded as a failing row carrying the error;
    remaining cells still run.
    """
    bundles = bundles if bundles is not None else builtin_bundles()
    rows = []
    for name in spec.instances:
        bundle = bundles.get(name)
        if bundle is None:
            for check in spec.checks:
                rows.append(CheckRow(check, name, "fail", "instance failed to load", 0.0))
            continue
        seed = spec.sample_seed ^ zlib.crc32(name.encode())
        ctx = _Ctx(SamplePlan(seed=seed, count=spec.budgets.samples), spec.budgets)
        for check in spec.checks:
            fn = CHECKS.get(check)
            t0 = time.perf_counter()
            if fn is None:
                rows.append(CheckRow(check, name, "fail", "unknown check id", 0.0))
                continue
            try:
                outcome, witness = fn(bundle, ctx)
            except Exception as exc:  # noqa: BLE001 - reported, not swallowed
                outcome, witness = "fail", f"error: {exc}"
            rows.append(CheckRow(check, name, outcome, witness,
                                 time.perf_counter() - t0))
    return TraceabilityReport(tuple(rows))


# ---------------------------------------------------------------------------
# fault injection

FAULT_NAMES = ("identity", "break-g1", "break-t3", "break-d2",
               "break-phi-bound", "add-second-endpoint")

# each fault is engineered to flip this check on a suitable bundle
FAULT_TARGETS = {
    "break-g1": "group/g1",
    "break-t3": "topo/t3",
    "break-d2": "metric/d2",
    "break-phi-bound": "map/phi-strictly-below",
    "add-second-endpoint": "map/weak-contraction",
}


def fault_inject(bundle: InstanceBundle, mutation: str) -> InstanceBundle:
    """Return a mutated copy whose targeted check must fail."""
    if mutation == "identity":
        return bundle
    if mutation == "break-g1":
        return _break_g1(bundle)
    if mutation == "break-t3":
        return _break_t3(bundle)
    if mutation == "break-d2":
        return _break_d2(bundle)
    if mutation == "break-phi-bound":
        return _break_phi_bound(bundle)
    if mutation == "add-second-endpoint":
        return _add_second_endpoint(bundle)
    raise ValueError(f"unknown mutation {mutation!r}")


def _break_g1(bundle: InstanceBundle) -> InstanceBundle:
    g = bundle.module.group
    if isinstance(g.identity, tuple):
        bad = tuple(Fraction(1) if i == 0 else Fraction(-1) for i in range(len(g.identity)))
    else:
        bad = Fraction(-1)
    orig = g.cmp

    def cmp(a, b):
        if a == g.identity and b == bad:
            return Order.LESS
        if a == bad and b == g.identity:
            return Order.GREATER
        return orig(a, b)

    corrupt_group = dataclasses.replace(g, cmp=cmp, name=g.name + "!g1")
    module = dataclasses.replace(bundle.module, group=corrupt_group)
    return bundle.replace(module=module)


def _break_t3(bundle: InstanceBundle) -> InstanceBundle:
    t = bundle.structure
    g = t.group
    if isinstance(g.identity, tuple):
        bad = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(len(g.identity)))
    else:
        bad = Fraction(0)
    orig = t.strictly_below

    def strictly_below(a, b):
        if a == g.identity and b == bad:
            return True
        return orig(a, b)

    corrupt = dataclasses.replace(t, strictly_below=strictly_below, name=t.name + "!t3")
    return bundle.replace(structure=corrupt)


def _break_d2(bundle: InstanceBundle) -> InstanceBundle:
    if bundle.space is None:
        raise ValueError("break-d2 needs a metric space")
    space = bundle.space
    g = space.group
    if isinstance(g.identity, tuple):
        bump = tuple(Fraction(1, 3) for _ in g.identity)
    else:
        bump = Fraction(1, 3)
    orig = space.metric

    def metric(x, y):
        d = orig(x, y)
        if x != y and space.key(x) < space.key(y):
            return g.add(d, bump)
        return d

    corrupt = dataclasses.replace(space, metric=metric, name=space.name + "!d2")
    return bundle.replace(space=corrupt)


def _break_phi_bound(bundle: InstanceBundle) -> InstanceBundle:
    if bundle.space is None or not bundle.space.finite or bundle.witness is None:
        raise ValueError("break-phi-bound needs a finite mapped space with a witness")
    space, w = bundle.space, bundle.witness
    pts = space.points
    x0, y0 = pts[0], pts[-1]
    table = {}
    for x in pts:
        for y in pts:
            if x == y:
                continue
            table[(x, y)] = w.phi(space, x, y)
    table[(x0, y0)] = space.distance(x0, y0)  # no longer strictly below
    corrupt = ContractionWitness(WitnessClass.PHI_TABLE, phi_table=table,
                                 label=(w.describe() + " with one saturated entry"))
    return bundle.replace(witness=corrupt)


def _add_second_endpoint(bundle: InstanceBundle) -> InstanceBundle:
    if bundle.space is None or not bundle.space.finite or bundle.map_ is None:
        raise ValueError("add-second-endpoint needs a finite mapped space")
    space, T = bundle.space, bundle.map_
    ends = endpoints_bruteforce(T)
    candidates = [p for p in space.points if p not in ends.members]
    if not candidates:
        raise ValueError("no non-endpoint available to pin")
    pinned = max(candidates, key=space.key)
    table = {p: ((p,) if p == pinned else T.images(p)) for p in space.points}
    corrupt = SetValuedMap.from_table(space, table, name=T.name + "!second-endpoint")
    return bundle.replace(map_=corrupt)


@dataclass(frozen=True)
class SensitivityResult:
    mutation: str
    instance: str
    target: str
    before: str
    after: str

    @property
    def flipped(self) -> bool:
        return self.before == "pass" and self.after == "fail"


def run_fault_sensitivity(sample_seed: int = 0,
                          budgets: Budgets | None = None) -> list[SensitivityResult]:
    """Apply every registered mutation to a suitable bundle and record
    whether its targeted check flipped from pass to fail."""
    budgets = budgets or Budgets(samples=300, n_max=100)
    bundles = builtin_bundles()
    assignments = {
        "break-g1": "cone-2",
        "break-t3": "cone-2",
        "break-d2": "three-point",
        "break-phi-bound": "three-point",
        "add-second-endpoint": "three-point",
    }
    results = []
    for mutation, inst in assignments.items():
        target = FAULT_TARGETS[mutation]
        spec = SuiteSpec(instances=(inst,), checks=(target,),
                         sample_seed=sample_seed, budgets=budgets)
        before = run_suite(spec, bundles).row(target, inst).outcome
        mutated = {inst: fault_inject(bundles[inst], mutation)}
        after = run_suite(spec, mutated).row(target, inst).outcome
        results.append(SensitivityResult(mutation, inst, target, before, after))
    return results
