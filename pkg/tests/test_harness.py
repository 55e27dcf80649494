import pytest

from ordermetric import (
    ALL_CHECKS,
    Budgets,
    SuiteSpec,
    builtin_bundles,
    default_suite,
    fault_inject,
    run_fault_sensitivity,
    run_suite,
)
from ordermetric.harness import DEFAULT_INSTANCES, FAULT_TARGETS

FAST = Budgets(samples=150, n_max=120)


@pytest.fixture(scope="module")
def fast_report():
    return run_suite(default_suite(budgets=FAST))


def test_default_suite_is_green(fast_report):
    assert fast_report.ok, fast_report.to_text()


def test_coverage_every_check_on_every_instance(fast_report):
    seen = {(r.check, r.instance) for r in fast_report.rows}
    for inst in DEFAULT_INSTANCES:
        for check in ALL_CHECKS:
            assert (check, inst) in seen


def test_skips_carry_reasons(fast_report):
    for row in fast_report.rows:
        if row.outcome == "skip":
            assert row.witness, f"silent skip at {row.check}/{row.instance}"


def test_reports_are_byte_identical_across_runs():
    spec = default_suite(instances=["three-point"], budgets=FAST, sample_seed=42)
    a = run_suite(spec).to_text("machine-rows")
    b = run_suite(spec).to_text("machine-rows")
    assert a == b


def test_different_seeds_still_green():
    spec = default_suite(instances=["real-line"], budgets=FAST, sample_seed=2026)
    assert run_suite(spec).ok


def test_empty_check_list_is_success():
    spec = SuiteSpec(instances=("real-line",), checks=(), budgets=FAST)
    report = run_suite(spec)
    assert report.rows == ()
    assert report.ok


def test_missing_instance_reported_per_row():
    spec = SuiteSpec(instances=("no-such",), checks=("group/assoc",), budgets=FAST)
    report = run_suite(spec)
    assert report.rows[0].outcome == "fail"
    assert "load" in report.rows[0].witness


def test_unknown_mutation_rejected():
    with pytest.raises(ValueError):
        fault_inject(builtin_bundles()["three-point"], "no-such-mutation")


def test_identity_mutation_keeps_suite_green():
    bundles = builtin_bundles()
    bundle = fault_inject(bundles["three-point"], "identity")
    spec = default_suite(instances=["three-point"], budgets=FAST)
    assert run_suite(spec, {"three-point": bundle}).ok


def test_every_fault_flips_its_target():
    results = run_fault_sensitivity()
    assert {r.mutation for r in results} == set(FAULT_TARGETS)
    for r in results:
        assert r.before == "pass", f"{r.mutation}: target not green before injection"
        assert r.after == "fail", f"{r.mutation}: target survived the fault"
        assert r.flipped


def test_fault_rows_carry_witnesses():
    bundles = builtin_bundles()
    mutated = fault_inject(bundles["three-point"], "break-d2")
    spec = SuiteSpec(instances=("three-point",), checks=("metric/d2",), budgets=FAST)
    row = run_suite(spec, {"three-point": mutated}).row("metric/d2", "three-point")
    assert row.outcome == "fail"
    assert row.witness
