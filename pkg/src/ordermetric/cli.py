"""Command-line entry point.

    ordermetric verify <instance> [--seed N] [--samples N] [--n-max N]
                                  [--checks LIST] [--format text|machine-rows]
    ordermetric solve <instance>  [--seed-point P] [--eps E] [--max-iter N]
                                  [--rule min-dist|lex]
    ordermetric hausdorff <instance> --set-a "p; q" --set-b "r; s"
    ordermetric export <instance> [--out FILE]

<instance> is a description file path or a built-in name (r1-banach,
three-point, cone2-shrink). Exit status contract: 0 all checks pass or the
solver certifies; 1 check failures or exhausted budgets; 2 violated
hypotheses or order errors; 3 parse errors.
"""

from __future__ import annotations

import argparse
import sys

from .order_core import DomainError, IncomparableError, format_element
from .cone_metric import hausdorff
from .contraction import validate_witness
from .harness import ALL_CHECKS, Budgets, SuiteSpec, run_suite
from .instance_files import (
    InstanceFileError,
    build_bundle,
    export_instance_text,
    load_instance,
    parse_element,
    parse_element_list,
)
from .solver import SelectionRule, SolverConfig, SolverOutcome, banach_iterate, iterate_endpoint

EXIT_OK = 0
EXIT_CHECK_FAILURES = 1
EXIT_HYPOTHESIS_VIOLATION = 2
EXIT_PARSE_ERROR = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordermetric",
        description="exact checks and solvers for ordered-group-valued metrics")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the law suite on one instance")
    p_verify.add_argument("instance")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--samples", type=int, default=1000)
    p_verify.add_argument("--n-max", type=int, default=200)
    p_verify.add_argument("--checks", default="",
                          help="comma-separated check ids or prefixes (default: all)")
    p_verify.add_argument("--format", choices=("text", "machine-rows"), default="text")

    p_solve = sub.add_parser("solve", help="run the endpoint solver on one instance")
    p_solve.add_argument("instance")
    p_solve.add_argument("--seed-point", default=None,
                         help="starting point, e.g. 1 or (1, 1)")
    p_solve.add_argument("--eps", default=None,
                         help="target scale, e.g. 1/1024 or (1/1024, 1/1024)")
    p_solve.add_argument("--max-iter", type=int, default=400)
    p_solve.add_argument("--rule", choices=("min-dist", "lex"), default="min-dist")
    p_solve.add_argument("--seed", type=int, default=0)

    p_h = sub.add_parser("hausdorff", help="exact set distance between finite subsets")
    p_h.add_argument("instance")
    p_h.add_argument("--set-a", required=True)
    p_h.add_argument("--set-b", required=True)

    p_export = sub.add_parser("export", help="canonical serialization of an instance")
    p_export.add_argument("instance")
    p_export.add_argument("--out", default=None)
    return parser


def _select_checks(spec_text: str) -> tuple[str, ...]:
    if not spec_text.strip():
        return ALL_CHECKS
    wanted = [w.strip() for w in spec_text.split(",") if w.strip()]
    out = []
    for check in ALL_CHECKS:
        if any(check == w or check.startswith(w.rstrip("/") + "/") for w in wanted):
            out.append(check)
    if not out:
        raise InstanceFileError(f"no checks match {spec_text!r}")
    return tuple(out)


def cmd_verify(args) -> int:
    desc = load_instance(args.instance)
    bundle = build_bundle(desc)
    spec = SuiteSpec(
        instances=(bundle.name,),
        checks=_select_checks(args.checks),
        sample_seed=args.seed,
        budgets=Budgets(samples=args.samples, n_max=args.n_max),
    )
    report = run_suite(spec, {bundle.name: bundle})
    sys.stdout.write(report.to_text(args.format))
    return EXIT_OK if report.ok else EXIT_CHECK_FAILURES


def cmd_solve(args) -> int:
    desc = load_instance(args.instance)
    bundle = build_bundle(desc)
    if bundle.map_ is None or bundle.witness is None:
        print("instance has no [map] / [witness] section to solve", file=sys.stderr)
        return EXIT_PARSE_ERROR
    seed_point = bundle.solver_seed if args.seed_point is None \
        else parse_element(args.seed_point)
    eps = bundle.solver_eps if args.eps is None else parse_element(args.eps)
    rule = SelectionRule.LEX_FIRST if args.rule == "lex" else SelectionRule.MIN_DISTANCE
    cfg = SolverConfig(eps=eps, seed_point=seed_point, max_iter=args.max_iter,
                       selection_rule=rule)

    wit_report = validate_witness(bundle.map_, bundle.witness)
    if not wit_report.passed:
        bad = wit_report.failures()[0]
        print("hypothesis violated: the bound must sit strictly below the distance "
              "at every pair of distinct points", file=sys.stderr)
        print(f"witness: {bad.witness}", file=sys.stderr)
        return EXIT_HYPOTHESIS_VIOLATION

    if bundle.banach_map is not None and bundle.banach_alpha is not None:
        report = banach_iterate(bundle.space, bundle.banach_map, bundle.banach_alpha, cfg)
    else:
        report = iterate_endpoint(bundle.map_, bundle.witness, cfg)
    sys.stdout.write(report.render() + "\n")
    if report.outcome in (SolverOutcome.ENDPOINT_FOUND,
                          SolverOutcome.APPROX_ENDPOINT_SEQUENCE):
        return EXIT_OK
    if report.outcome is SolverOutcome.HYPOTHESIS_VIOLATION:
        return EXIT_HYPOTHESIS_VIOLATION
    return EXIT_CHECK_FAILURES


def cmd_hausdorff(args) -> int:
    desc = load_instance(args.instance)
    bundle = build_bundle(desc)
    set_a = parse_element_list(args.set_a)
    set_b = parse_element_list(args.set_b)
    value = hausdorff(bundle.space, set_a, set_b)
    print(format_element(value))
    return EXIT_OK


def cmd_export(args) -> int:
    desc = load_instance(args.instance)
    text = export_instance_text(desc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"verify": cmd_verify, "solve": cmd_solve,
                "hausdorff": cmd_hausdorff, "export": cmd_export}
    try:
        return handlers[args.command](args)
    except InstanceFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except IncomparableError as exc:
        print(f"order error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS_VIOLATION
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
