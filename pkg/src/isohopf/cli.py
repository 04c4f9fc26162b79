"""Command line: compute, validate, cone, degree, paper-suite."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import IsoHopfError
from .groebner import BUDGET_ENV
from .specfile import ROUTES, fixture_path, parse_spec


def _load(path: str):
    if not os.path.exists(path) and not path.endswith(".json"):
        try:
            fp = fixture_path(path)
            if fp.exists():
                path = str(fp)
        except (ModuleNotFoundError, FileNotFoundError):
            pass
    return parse_spec(path)


def _routes(text: str | None):
    if not text:
        return None
    out = [r.strip() for r in text.split(",") if r.strip()]
    bad = [r for r in out if r not in ROUTES + ("all",)]
    if bad:
        raise SystemExit(f"unknown routes: {bad}; choose from {', '.join(ROUTES)}")
    return out


def cmd_compute(args) -> int:
    from .suite import compute_spec

    spec = _load(args.spec)
    report = compute_spec(spec, _routes(args.routes), args.seed, args.samples)
    print(report.to_json() if args.json else report.table())
    if args.report_dir:
        from .report import write_report

        for p in write_report(report, args.report_dir):
            print(f"wrote {p}", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_validate(args) -> int:
    spec = _load(args.spec)
    s = spec.section()
    info = {
        "name": spec.name,
        "section": str(s),
        "n": s.n,
        "colength": s.colength,
        "homogeneous_degree": s.homogeneous_degree(),
        "rationally_split": s.space.rationally_split,
        "torus": s.torus is not None,
    }
    print(json.dumps(info, indent=2) if args.json else "\n".join(f"{k}: {v}" for k, v in info.items()))
    return 0


def cmd_cone(args) -> int:
    from .cone import cone_bidegree_n2, normal_cone_ideal, segre_class

    spec = _load(args.spec)
    s = spec.section()
    C = normal_cone_ideal(s)
    out = {"variables": list(C.ideal.variables), "cone_ideal": C.generators(), "segre": segre_class(s, C)}
    if s.n == 2:
        r = cone_bidegree_n2(s, C)
        out.update(alpha=r.diagnostics["alpha"], beta=r.diagnostics["beta"], sqrt_e=r.sqrt_e)
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print("cone ideal in", ", ".join(out["variables"]))
        for g in out["cone_ideal"]:
            print("  ", g)
        for k in ("segre", "alpha", "beta", "sqrt_e"):
            if k in out:
                print(f"{k}: {out[k]}")
    return 0


def cmd_degree(args) -> int:
    from .winding import oh1_check

    spec = _load(args.spec)
    s = spec.section()
    seed = spec.seed if args.seed is None else args.seed
    samples = spec.samples if args.samples is None else args.samples
    r = oh1_check(s, samples=samples, seed=seed)
    out = {"degree": r.sqrt_e, **r.diagnostics}
    print(json.dumps(out, indent=2) if args.json else "\n".join(f"{k}: {v}" for k, v in out.items()))
    return 0


def cmd_suite(args) -> int:
    from .suite import paper_suite

    progress = None if args.json else (lambda line: print(line, flush=True))
    rows = paper_suite(
        samples=args.samples or 200_000,
        max_d=args.max_d,
        orientation=-1 if (args.flip_orientation or args.inject_orientation_fault) else 1,
        progress=progress,
        expected_orientation=1 if args.inject_orientation_fault else None,
    )
    failed = [r for r in rows if not r.ok]
    if args.json:
        print(json.dumps([r.__dict__ for r in rows], indent=2, default=str))
    else:
        print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
        for r in failed:
            print(f"FAIL {r.instance} {r.route}: expected {r.expected}, got {r.got}")
    if args.report_dir:
        from .report import write_suite

        for p in write_suite(rows, args.report_dir):
            print(f"wrote {p}", file=sys.stderr)
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isohopf", description="Square-root Euler multiplicities of isotropic sections.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True):
        if spec:
            sp.add_argument("spec", help="JSON section file, or the name of a bundled example")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--samples", type=int, default=None, help="quadrature samples for the winding verifier")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--step-budget", type=int, default=None, help="cap on S-pair reductions per Groebner basis")

    c = sub.add_parser("compute", help="run and cross-validate routes")
    common(c)
    c.add_argument("--routes", help=f"comma-separated subset of {','.join(ROUTES)}")
    c.add_argument("--report-dir", help="write CSV and PNG output here")
    c.set_defaults(func=cmd_compute)
    v = sub.add_parser("validate", help="parse and check a section file")
    common(v)
    v.set_defaults(func=cmd_validate)
    k = sub.add_parser("cone", help="print the normal cone ideal and its classes")
    common(k)
    k.set_defaults(func=cmd_cone)
    d = sub.add_parser("degree", help="winding number of the real part")
    common(d)
    d.set_defaults(func=cmd_degree)
    s = sub.add_parser("paper-suite", help="run the regression grid of worked examples")
    common(s, spec=False)
    s.add_argument("--max-d", type=int, default=4)
    s.add_argument("--flip-orientation", action="store_true", help="run the grid with the opposite orientation")
    s.add_argument(
        "--inject-orientation-fault",
        action="store_true",
        help="flip the grid orientation but keep the standard expectations; the suite must fail",
    )
    s.add_argument("--report-dir", help="write CSV and PNG output here")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get(BUDGET_ENV)
    if args.step_budget:
        os.environ[BUDGET_ENV] = str(args.step_budget)
    try:
        return args.func(args)
    except IsoHopfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if saved is None:
            os.environ.pop(BUDGET_ENV, None)
        else:
            os.environ[BUDGET_ENV] = saved


if __name__ == "__main__":
    sys.exit(main())
