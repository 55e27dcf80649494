from fractions import Fraction

import pytest

from ordermetric import (
    ConeMetricSpace,
    ContractionWitness,
    SelectionRule,
    SetValuedMap,
    SolverConfig,
    SolverOutcome,
    WitnessClass,
    banach_iterate,
    endpoint_iff_report,
    endpoints_bruteforce,
    global_alpha_corpus,
    iterate_endpoint,
    min_positive_distance,
    single_valued_fixed_point_report,
)

HALF = ContractionWitness(WitnessClass.ALPHA_CONSTANT, alpha_const=Fraction(1, 2))


@pytest.fixture
def grid64(rstruct):
    pts = tuple(Fraction(k, 64) for k in range(65))
    return ConeMetricSpace("grid64", rstruct, lambda x, y: abs(x - y), points=pts)


@pytest.fixture
def floor_halving(grid64):
    def rule(x):
        k = int(x * 64)
        return (Fraction(k // 2, 64),)

    return SetValuedMap.from_rule(grid64, rule, name="floor-halving")


@pytest.fixture
def dilation(rstruct):
    pts = (Fraction(0), Fraction(1, 4), Fraction(1))
    space = ConeMetricSpace("three-point", rstruct, lambda x, y: abs(x - y), points=pts)
    T = SetValuedMap.from_table(space, {
        Fraction(0): (Fraction(0),),
        Fraction(1, 4): (Fraction(0),),
        Fraction(1): (Fraction(0), Fraction(1, 4)),
    })
    return space, T


def test_floor_halving_walks_to_zero_best_effort(floor_halving):
    """Grid rounding breaks the exact ratio on adjacent points, so the
    hypotheses fail and the solver degrades to best effort, yet the walk
    from 1 still collapses at 0 in ceil(log2(64)) + 1 = 7 steps."""
    cfg = SolverConfig(eps=Fraction(1, 1024), seed_point=Fraction(1), max_iter=50)
    rep = iterate_endpoint(floor_halving, HALF, cfg)
    assert rep.outcome is SolverOutcome.ENDPOINT_FOUND
    assert rep.endpoint == Fraction(0)
    assert rep.best_effort
    assert rep.iterations == 7


def test_seed_at_endpoint_returns_immediately(floor_halving):
    cfg = SolverConfig(eps=Fraction(1, 1024), seed_point=Fraction(0), max_iter=50)
    rep = iterate_endpoint(floor_halving, HALF, cfg)
    assert rep.outcome is SolverOutcome.ENDPOINT_FOUND
    assert rep.endpoint == Fraction(0)
    assert rep.iterations == 0


def test_dilation_agrees_with_bruteforce_both_rules(dilation):
    space, T = dilation
    target = endpoints_bruteforce(T).members[0]
    for rule in SelectionRule:
        for seed in space.points:
            cfg = SolverConfig(eps=Fraction(1, 16), seed_point=seed,
                               max_iter=50, selection_rule=rule)
            rep = iterate_endpoint(T, HALF, cfg)
            assert rep.outcome is SolverOutcome.ENDPOINT_FOUND
            assert rep.endpoint == target == Fraction(0)
            assert not rep.best_effort


def test_trace_obeys_consumed_bounds(dilation):
    space, T = dilation
    g = space.group
    cfg = SolverConfig(eps=Fraction(1, 16), seed_point=Fraction(1), max_iter=50)
    rep = iterate_endpoint(T, HALF, cfg)
    for prev, cur in zip(rep.trace, rep.trace[1:]):
        assert g.leq(cur.step_distance, prev.bound)
        assert g.lt(prev.bound, prev.step_distance)  # bound strictly below step


def test_approximate_certificate_on_continuum(real_line_space, rmod):
    T = SetValuedMap.from_rule(real_line_space, lambda x: (x / 2,), name="halve")
    cfg = SolverConfig(eps=Fraction(1, 100), seed_point=Fraction(1), max_iter=100)
    rep = iterate_endpoint(T, HALF, cfg)
    assert rep.outcome is SolverOutcome.APPROX_ENDPOINT_SEQUENCE
    assert not rep.best_effort
    g = real_line_space.group
    # the emitted pair really is a witness: image distances within bounds
    for x, a in zip(rep.witness_points, rep.witness_bounds):
        for xp in T.images(x):
            assert g.leq(real_line_space.distance(x, xp), a)
    # bounds vanish geometrically
    for b1, b2 in zip(rep.witness_bounds, rep.witness_bounds[1:]):
        assert b2 <= b1 / 2


def test_budget_exhaustion(real_line_space):
    T = SetValuedMap.from_rule(real_line_space, lambda x: (x / 2,))
    cfg = SolverConfig(eps=Fraction(1, 2 ** 40), seed_point=Fraction(1), max_iter=5)
    rep = iterate_endpoint(T, HALF, cfg)
    assert rep.outcome is SolverOutcome.BUDGET_EXHAUSTED
    assert rep.iterations == 5


def test_chain_with_saturating_image_best_effort(rstruct):
    """T1 contains 1/2 whose own image {0} sits exactly at distance
    d(1, 1/2) * 1, so no valid bound exists and hypotheses fail; the walk
    still collapses at 0 and matches the exhaustive scan."""
    pts = (Fraction(0), Fraction(1, 2), Fraction(1))
    space = ConeMetricSpace("chain", rstruct, lambda x, y: abs(x - y), points=pts)
    T = SetValuedMap.from_table(space, {
        Fraction(0): (Fraction(0),),
        Fraction(1, 2): (Fraction(0),),
        Fraction(1): (Fraction(1, 2), Fraction(0)),
    })
    witness = ContractionWitness(WitnessClass.ALPHA_CONSTANT, alpha_const=Fraction(3, 4))
    from ordermetric import is_weak_contraction

    assert not is_weak_contraction(T, witness).passed
    for rule in SelectionRule:
        cfg = SolverConfig(eps=Fraction(1, 16), seed_point=Fraction(1),
                           max_iter=20, selection_rule=rule)
        rep = iterate_endpoint(T, witness, cfg)
        assert rep.outcome is SolverOutcome.ENDPOINT_FOUND
        assert rep.best_effort
        assert rep.endpoint == endpoints_bruteforce(T).members[0] == Fraction(0)


def test_expanding_map_flags_hypothesis_violation(rstruct):
    pts = tuple(Fraction(k, 8) for k in range(9))
    space = ConeMetricSpace("grid8", rstruct, lambda x, y: abs(x - y), points=pts)

    def rule(x):
        return (min(2 * x, Fraction(1)),) if x != 0 else (Fraction(1, 8),)

    T = SetValuedMap.from_rule(space, rule, name="double")
    cfg = SolverConfig(eps=Fraction(1, 64), seed_point=Fraction(1, 8), max_iter=30)
    rep = iterate_endpoint(T, HALF, cfg)
    assert rep.outcome is SolverOutcome.HYPOTHESIS_VIOLATION
    assert rep.best_effort


# -- ratio iteration ---------------------------------------------------------


def test_banach_halving_exact_rates(real_line_space):
    cfg = SolverConfig(eps=Fraction(1, 1024), seed_point=Fraction(1), max_iter=50)
    rep = banach_iterate(real_line_space, lambda x: x / 2, Fraction(1, 2), cfg)
    assert rep.outcome is SolverOutcome.APPROX_ENDPOINT_SEQUENCE
    assert rep.iterations <= 12
    for step in rep.trace:
        # measured distance to the fixed point 0 is exactly 2^{-n}
        assert step.point == Fraction(1, 2 ** step.n)
        assert step.apriori_bound == Fraction(1, 2 ** step.n)
        assert abs(step.point - 0) <= step.apriori_bound
    # termination guarantee: the final point sits strictly within eps of 0
    assert abs(rep.final_point) < Fraction(1, 1024)


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(2, 5), Fraction(3, 4)])
def test_banach_linear_map_exact_rate(real_line_space, alpha):
    """For x -> alpha * x the measured distance to 0 is exactly alpha^n
    times the start, and the a-priori bound dominates it at every step."""
    cfg = SolverConfig(eps=Fraction(1, 10 ** 6), seed_point=Fraction(1), max_iter=200)
    rep = banach_iterate(real_line_space, lambda x: alpha * x, alpha, cfg)
    assert rep.outcome is SolverOutcome.APPROX_ENDPOINT_SEQUENCE
    for step in rep.trace:
        assert abs(step.point - 0) == alpha ** step.n
        assert abs(step.point - 0) <= step.apriori_bound


def test_banach_exact_fixed_point_on_singleton(rstruct):
    space = ConeMetricSpace("one", rstruct, lambda x, y: abs(x - y),
                            points=(Fraction(5),))
    cfg = SolverConfig(eps=Fraction(1), seed_point=Fraction(5), max_iter=5)
    rep = banach_iterate(space, lambda x: x, Fraction(0), cfg)
    assert rep.outcome is SolverOutcome.ENDPOINT_FOUND
    assert rep.fixed_point == Fraction(5)
    assert rep.iterations == 1  # the single probing step


def test_banach_constant_map_one_step(real_line_space):
    p = Fraction(1, 3)
    cfg = SolverConfig(eps=Fraction(1, 128), seed_point=Fraction(1), max_iter=10)
    rep = banach_iterate(real_line_space, lambda x: p, Fraction(0), cfg)
    assert rep.outcome is SolverOutcome.ENDPOINT_FOUND
    assert rep.fixed_point == p
    assert rep.iterations <= 2


def test_banach_vector_componentwise_rates(box2_space):
    cfg = SolverConfig(eps=(Fraction(1, 512), Fraction(1, 512)),
                       seed_point=(Fraction(1), Fraction(1)), max_iter=60)
    rep = banach_iterate(box2_space, lambda x: (x[0] / 2, x[1] / 3),
                         Fraction(1, 2), cfg)
    assert rep.outcome is SolverOutcome.APPROX_ENDPOINT_SEQUENCE
    g = box2_space.group
    for step in rep.trace:
        assert step.point == (Fraction(1, 2 ** step.n), Fraction(1, 3 ** step.n))
        assert g.leq(step.step_distance, step.apriori_bound)


def test_banach_rejects_non_contraction(real_line_space):
    cfg = SolverConfig(eps=Fraction(1, 64), seed_point=Fraction(1, 2), max_iter=10)
    rep = banach_iterate(real_line_space, lambda x: 1 - x, Fraction(1, 2), cfg)
    assert rep.outcome is SolverOutcome.HYPOTHESIS_VIOLATION
    assert "exceeds" in rep.message


# -- equivalence reports ------------------------------------------------------


def test_iff_report_endpoint_instance(dilation):
    _, T = dilation
    rep = endpoint_iff_report(T, HALF)
    assert rep.status == "checked"
    assert rep.endpoint_exists and rep.infsup_is_zero and rep.equivalent
    assert not rep.solver_defect


def test_iff_report_both_sides_false(rstruct):
    space = ConeMetricSpace("two", rstruct, lambda x, y: abs(x - y),
                            points=(Fraction(0), Fraction(1)))
    both = (Fraction(0), Fraction(1))
    T = SetValuedMap.from_table(space, {Fraction(0): both, Fraction(1): both})
    rep = endpoint_iff_report(T, HALF)
    assert rep.status == "checked"
    assert rep.endpoint_exists is False and rep.infsup_is_zero is False
    assert rep.equivalent
    assert rep.infsup_value == Fraction(1)


def test_iff_report_skips_non_contraction(rstruct):
    space = ConeMetricSpace("two", rstruct, lambda x, y: abs(x - y),
                            points=(Fraction(0), Fraction(1)))
    swap = SetValuedMap.from_table(space, {Fraction(0): (Fraction(1),),
                                           Fraction(1): (Fraction(0),)})
    rep = endpoint_iff_report(swap, HALF)
    assert rep.status == "skipped"
    assert "bound check failed" in rep.reason


def test_iff_report_skips_unknown_convergence_class(dilation):
    _, T = dilation
    table = {}
    for x in T.space.points:
        for y in T.space.points:
            if x != y:
                table[(x, y)] = HALF.phi(T.space, x, y)
    w = ContractionWitness(WitnessClass.PHI_TABLE, phi_table=table)
    rep = endpoint_iff_report(T, w)
    assert rep.status == "skipped"
    assert "convergence condition" in rep.reason


def test_single_valued_report_agrees_with_scan(dilation):
    space, _ = dilation
    f = {Fraction(0): Fraction(0), Fraction(1, 4): Fraction(0),
         Fraction(1): Fraction(1, 4)}.get
    cfg = SolverConfig(eps=Fraction(1, 16), seed_point=Fraction(1), max_iter=50)
    rep = single_valued_fixed_point_report(space, f, HALF, cfg)
    assert rep.status == "checked"
    assert rep.brute_fixed_points == (Fraction(0),)
    assert rep.agrees


def test_single_valued_report_rejects_two_fixed_points(rstruct):
    space = ConeMetricSpace("two", rstruct, lambda x, y: abs(x - y),
                            points=(Fraction(0), Fraction(1)))
    cfg = SolverConfig(eps=Fraction(1, 16), seed_point=Fraction(0), max_iter=10)
    rep = single_valued_fixed_point_report(space, lambda x: x, HALF, cfg)
    assert rep.status == "skipped"
    assert "bound check failed" in rep.reason


def test_point_dependent_ratio_route(dilation):
    """A ratio that varies with the pair but is declared bounded below one
    drives the same walk and equivalence check as a constant ratio."""
    space, T = dilation
    w = ContractionWitness(
        WitnessClass.ALPHA_FUNCTION,
        alpha_fn=lambda x, y: Fraction(1, 2) + abs(x - y) / 8,
        alpha_bound=Fraction(5, 8))
    from ordermetric import c_condition_status, CStatus, is_global_weak_contraction

    assert c_condition_status(w).status is CStatus.HOLDS_BY_THEOREM
    assert is_global_weak_contraction(T, w).passed
    cfg = SolverConfig(eps=Fraction(1, 16), seed_point=Fraction(1), max_iter=30)
    rep = iterate_endpoint(T, w, cfg)
    assert rep.outcome is SolverOutcome.ENDPOINT_FOUND
    assert rep.endpoint == Fraction(0)
    assert not rep.best_effort
    iff = endpoint_iff_report(T, w)
    assert iff.status == "checked" and iff.equivalent


def test_scalar_function_route(dilation):
    """A scalar shrinking function of the distance with the declared
    analytic properties supports the equivalence check on finite spaces."""
    space, T = dilation
    from ordermetric import PsiProperties, c_condition_status, CStatus

    w = ContractionWitness(WitnessClass.PSI_ON_DISTANCE,
                           psi=lambda t: t / 2,
                           psi_properties=PsiProperties())
    assert c_condition_status(w).status is CStatus.HOLDS_BY_THEOREM
    iff = endpoint_iff_report(T, w)
    assert iff.status == "checked" and iff.equivalent
    cfg = SolverConfig(eps=Fraction(1, 16), seed_point=Fraction(1), max_iter=30)
    rep = iterate_endpoint(T, w, cfg)
    assert rep.outcome is SolverOutcome.ENDPOINT_FOUND
    assert rep.endpoint == Fraction(0)


# -- corpus agreement ---------------------------------------------------------


def test_solver_matches_oracle_on_global_corpus_sample():
    insts = global_alpha_corpus(count=60, minimum=10)[:12]
    for inst in insts:
        target = endpoints_bruteforce(inst.map_).members
        assert len(target) == 1, inst.name
        eps = min_positive_distance(inst.space) / 2
        for rule in SelectionRule:
            for seed in inst.space.points:
                cfg = SolverConfig(eps=eps, seed_point=seed, max_iter=300,
                                   selection_rule=rule)
                rep = iterate_endpoint(inst.map_, inst.alpha_witness, cfg)
                assert rep.outcome is SolverOutcome.ENDPOINT_FOUND, inst.name
                assert rep.endpoint == target[0], inst.name
