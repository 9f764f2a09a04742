"""Command-line entry point: ``clspace <command> [flags]``.

Exit codes: 0 ok, 1 malformed or invalid descriptor, 2 precondition or
unsupported combination, 3 nothing found within the horizon, 4 a suite
criterion or an --audit re-check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import report as rpt
from .indices import (DEFAULT_GRID, DegenerateRegime, PreconditionError, Regime, check_delta2,
                      check_delta_2str, check_delta_epsilon, estimate_lower_index)
from .modular import CLSpace, luxemburg_norm, mazur_orlicz_f_norm, modular
from .orlicz import OrliczError, from_dict
from .spaces import SpaceError, space_from_dict
from .suite import CRITERIA, reverify_eps_witness, run_suite
from .vectors import SimpleVector, VectorError
from .witnesses import (VARIANTS, HorizonError, blowup_search, build_nonatomic_witness,
                        build_nonatomic_zero_witness, build_sequence_witness, default_z_samples, reverify,
                        verify_linf_copy)

EXIT_OK, EXIT_MALFORMED, EXIT_PRECONDITION, EXIT_NOT_FOUND, EXIT_FAILED = 0, 1, 2, 3, 4
REGIMES = {"zero": Regime.ZERO, "inf": Regime.INFINITY, "all": Regime.ALL}
CONDITIONS = ("delta2", "delta_eps", "delta_2str")


class DescriptorError(Exception):
    pass


# --- descriptors ------------------------------------------------------------------------------


def _load_json(text: str, flag: str):
    """Inline JSON, or a path to a JSON file."""
    src, origin = text, "inline"
    if not text.lstrip().startswith(("{", "[")):
        p = Path(text)
        if not p.is_file():
            raise DescriptorError(f"{flag}: no such file {text!r}")
        src, origin = p.read_text(), str(p)
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{flag}: malformed JSON in {origin} at line {exc.lineno}, "
                              f"column {exc.colno}: {exc.msg}") from None


def _parse(loader, text, flag):
    if text is None:
        raise DescriptorError(f"{flag} is required for this command")
    d = _load_json(text, flag)
    if not isinstance(d, dict):
        raise DescriptorError(f"{flag}: expected a JSON object")
    try:
        return loader(d)
    except (OrliczError, SpaceError, VectorError, KeyError, TypeError, ValueError) as exc:
        raise DescriptorError(f"{flag}: invalid descriptor: {exc}") from None


def load_function(text):
    return _parse(from_dict, text, "--function")


def load_space(text):
    return _parse(space_from_dict, text, "--space")


def load_vector(text):
    return _parse(SimpleVector.from_dict, text, "--vector")


def _plots():
    # matplotlib is only imported when figures are requested
    from . import plots

    return plots


# --- commands -----------------------------------------------------------------------------------


def _certification(cl: CLSpace, eps) -> dict:
    r = cl.regime
    return {
        "space": cl.describe(),
        "delta2": check_delta2(cl.phi, r, cl.grid).holds,
        "delta_eps": check_delta_epsilon(cl.phi, r, eps, cl.grid).holds,
        "delta_2str": check_delta_2str(cl.phi, r, eps, cl.grid).holds,
    }


def _gauge_audit(cl, x, value, level_is_lambda, tol):
    if value == 0 or not math.isfinite(value):
        return [{"check": "degenerate gauge, nothing to re-check", "ok": True}]
    absx = abs(x)
    at = modular(cl, absx / value)
    below = value * (1 - 2 * tol)
    rb = modular(cl, absx / below)
    lvl_at = value if level_is_lambda else 1.0
    lvl_below = below if level_is_lambda else 1.0
    return [{"check": "feasible at the reported value", "rho": at, "ok": at <= lvl_at},
            {"check": "infeasible just below", "rho": rb, "ok": rb > lvl_below}]


def cmd_gauge(args, kind):
    phi, E, x = load_function(args.function), load_space(args.space), load_vector(args.vector)
    cl = CLSpace(E, phi)
    tol = args.tol
    if kind == "modular":
        value = modular(cl, x)
        result = {"modular": value}
        audit = [{"check": "recomputed", "ok": modular(cl, x) == value}]
    else:
        fn = luxemburg_norm if kind == "norm" else mazur_orlicz_f_norm
        res = fn(cl, x, tol)
        value = res.norm
        result = res.to_dict()
        audit = _gauge_audit(cl, x, value, kind == "fnorm", tol) if "JUMP" not in res.flags else \
            [{"check": "gauge sits on a jump of the modular", "ok": modular(cl, abs(x) / value) <= 1.0}]
    report = {"command": kind, "descriptors": {"function": phi.to_dict(), "space": E.to_dict(),
                                               "vector": x.to_dict()},
              "certification": _certification(cl, args.eps), "result": result}
    rows = rpt.key_value_rows({kind: result})
    figs = lambda d: _plots().gauge_curve(cl, x, value if kind != "modular" else 1.0, d, kind,  # noqa: E731
                                          kind == "fnorm")
    return report, rows, ["key", "value"], audit, EXIT_OK, figs


def cmd_index(args):
    phi = load_function(args.function)
    regime = REGIMES[args.regime]
    est = estimate_lower_index(phi, regime)
    again = estimate_lower_index(phi, regime)
    audit = [{"check": "recomputed bracket", "ok": (again.lo, again.hi) == (est.lo, est.hi)}]
    report = {"command": "index", "descriptors": {"function": phi.to_dict()}, "result": est.to_dict()}
    row = {"regime": est.regime, "lo": est.lo, "hi": est.hi, "K": est.K, "u0": est.u0,
           "flags": ";".join(est.flags)}
    figs = lambda d: _plots().function_curve(phi, d)  # noqa: E731
    return report, [row], list(row), audit, EXIT_OK, figs


def _rows_reverify(phi, cond, rows) -> bool:
    if not rows:
        return True
    if cond == "delta_eps":
        return reverify_eps_witness(phi, rows)
    for r in rows:
        factor = 2.0 if cond == "delta2" else 1.0 + r["delta"]
        again = phi(factor * r["u"]) / phi(r["u"])
        if abs(again - r["ratio"]) > 1e-12 * abs(r["ratio"]):
            return False
    return True


def cmd_check(args):
    phi = load_function(args.function)
    regime = REGIMES[args.regime]
    conds = CONDITIONS if args.condition == "all" else (args.condition,)
    fns = {"delta2": lambda: check_delta2(phi, regime),
           "delta_eps": lambda: check_delta_epsilon(phi, regime, args.eps),
           "delta_2str": lambda: check_delta_2str(phi, regime, args.eps)}
    verdicts = {c: fns[c]() for c in conds}
    audit = []
    for c, v in verdicts.items():
        again = fns[c]()
        audit.append({"check": f"{c} verdict recomputed", "ok": again.holds == v.holds})
        audit.append({"check": f"{c} witness rows re-evaluated", "ok": _rows_reverify(phi, c, v.witness)})
    rows = [{"condition": c, "regime": v.regime, "holds": v.holds, "reason": v.reason,
             "constants": v.constants, "witness_rows": len(v.witness or [])} for c, v in verdicts.items()]
    report = {"command": "check", "descriptors": {"function": phi.to_dict()},
              "result": {c: v.to_dict() for c, v in verdicts.items()}}
    figs = lambda d: _plots().function_curve(phi, d)  # noqa: E731
    return report, rows, list(rows[0]), audit, EXIT_OK, figs


def cmd_witness(args):
    phi, E = load_function(args.function), load_space(args.space)
    cl = CLSpace(E, phi)
    if args.variant == "interval_infinity":
        bundle = build_nonatomic_witness(cl, args.N, args.schedule, args.M)
    elif args.variant == "interval_zero":
        bundle = build_nonatomic_zero_witness(cl, args.N, args.schedule, args.M)
    else:
        bundle = build_sequence_witness(cl, args.variant, args.N, args.schedule, args.M, int(args.horizon))
    zs = default_z_samples(len(bundle.ys), 10, args.seed)
    ver = verify_linf_copy(cl, bundle, zs)
    bad = reverify(cl, bundle)
    audit = [{"check": "inequality rows re-evaluated", "bad_rows": len(bad), "ok": not bad},
             {"check": "l_inf copy re-verified", "ok": verify_linf_copy(cl, bundle, zs)["passed"] == ver["passed"]}]
    report = {"command": "witness", "descriptors": {"function": phi.to_dict(), "space": E.to_dict()},
              "certification": cl.describe(), "result": {"bundle": bundle.to_dict(), "verification": ver}}
    cols = ["n", "ineq", "u_n", "measure_n", "lhs", "rhs", "ok"]
    code = EXIT_OK if (ver["passed"] and bundle.checks["rows_ok"]) else EXIT_FAILED
    figs = lambda d: _plots().witness_panels(bundle, d)  # noqa: E731
    return report, bundle.summary_rows(), cols, audit, code, figs


def cmd_blowup(args):
    phi, E = load_function(args.function), load_space(args.space)
    res = blowup_search(E, phi, args.target, args.horizon, keep_curve=bool(args.figures))
    curve = res.pop("curve", None)
    audit = []
    if res["measure_A"] is not None:
        def nrm(m):
            return 1.0 / phi.inverse(1.0 / E.char_norm(m))
        a, b = res["measure_A"], res["measure_B"]
        r = nrm(a + b) / (nrm(a) + nrm(b))
        audit.append({"check": "ratio recomputed at the reported sets", "ratio": r,
                      "ok": abs(r - res["ratio"]) <= 1e-12 * res["ratio"]})
    report = {"command": "blowup", "descriptors": {"function": phi.to_dict(), "space": E.to_dict()}, "result": res}
    row = {k: res[k] for k in ("ratio", "measure_A", "measure_B", "target", "exceeded", "outcome", "grid_points")}
    code = EXIT_OK if res["exceeded"] else EXIT_NOT_FOUND
    figs = lambda d: _plots().blowup_curve({**res, "curve": curve}, d)  # noqa: E731
    return report, [row], list(row), audit, code, figs


def cmd_suite(args):
    ids = [int(s) for s in args.only.split(",")] if args.only else None
    results = run_suite(ids, args.jobs, args.seed)
    rows = [{"id": r.id, "criterion": r.name, "status": r.status, "seconds": round(r.seconds, 2),
             "budget_s": r.budget if r.budget is not None else ""} for r in results]
    # wall-clock times stay out of report.json so reruns are byte-identical
    report = {"command": "suite",
              "result": [{"id": r.id, "name": r.name, "status": r.status, "budget_s": r.budget,
                          "detail": r.detail} for r in results],
              "passed": sum(r.passed for r in results), "total": len(results)}
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAILED
    figs = lambda d: _plots().suite_bars(results, d)  # noqa: E731
    return report, rows, ["id", "criterion", "status", "seconds", "budget_s"], [], code, figs


COMMANDS = {
    "norm": lambda a: cmd_gauge(a, "norm"),
    "modular": lambda a: cmd_gauge(a, "modular"),
    "fnorm": lambda a: cmd_gauge(a, "fnorm"),
    "index": cmd_index,
    "check": cmd_check,
    "witness": cmd_witness,
    "blowup": cmd_blowup,
    "suite": cmd_suite,
}


# --- argument parsing -------------------------------------------------------------------------


def _eps_list(s: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in s.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {s!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty eps list")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--function", help="Orlicz function descriptor (JSON file or inline JSON)")
    common.add_argument("--space", help="space descriptor (JSON file or inline JSON)")
    common.add_argument("--vector", help="simple vector descriptor (JSON file or inline JSON)")
    common.add_argument("--tol", type=float, default=1e-10, help="relative bisection tolerance")
    common.add_argument("--regime", choices=sorted(REGIMES), default="all")
    common.add_argument("--N", type=int, default=10, help="witness depth")
    common.add_argument("--eps", type=_eps_list, default=(0.5,), help="comma-separated epsilons")
    common.add_argument("--horizon", type=float, default=1e6)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--audit", action="store_true", help="re-check the reported numbers")
    common.add_argument("--out", default=".", help="directory for report.json and summary.csv")
    common.add_argument("--figures", metavar="DIR", help="also write PNG figures to DIR")

    p = argparse.ArgumentParser(prog="clspace", description="Quasi-Banach Calderon-Lozanovskii space toolkit.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("norm", "modular", "fnorm", "index"):
        sub.add_parser(name, parents=[common])
    c = sub.add_parser("check", parents=[common])
    c.add_argument("condition", nargs="?", choices=CONDITIONS + ("all",), default="all")
    w = sub.add_parser("witness", parents=[common])
    w.add_argument("--variant", choices=VARIANTS, required=True)
    w.add_argument("--schedule", choices=("sharp", "proof"), default="sharp")
    w.add_argument("--M", type=int, default=None, help="number of interleaved sets")
    b = sub.add_parser("blowup", parents=[common])
    b.add_argument("--target", type=float, default=10.0)
    s = sub.add_parser("suite", parents=[common])
    s.add_argument("--only", help="comma-separated criterion ids (default: all %d)" % len(CRITERIA))
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, rows, cols, audit, code, figs = COMMANDS[args.command](args)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except HorizonError as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except (PreconditionError, DegenerateRegime, SpaceError, VectorError, OrliczError, ValueError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    report["provenance"] = rpt.provenance(args.command, DEFAULT_GRID, args.tol, args.seed,
                                          eps=list(args.eps), horizon=args.horizon, N=args.N)
    if args.audit:
        report["audit"] = {"checks": audit, "passed": all(a["ok"] for a in audit)}
        if not report["audit"]["passed"]:
            code = max(code, EXIT_FAILED)
    rj, sc = rpt.write_outputs(args.out, report, rows, cols)
    sys.stdout.write(rpt.table(rows, cols))
    if args.audit:
        sys.stdout.write("audit: %s\n" % ("PASS" if report["audit"]["passed"] else "FAIL"))
    if args.figures:
        path = figs(args.figures)
        print(f"figure: {path}")
    print(f"wrote {rj} and {sc}")
    return code


if __name__ == "__main__":
    sys.exit(main())
