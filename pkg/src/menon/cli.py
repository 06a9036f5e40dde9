"""Command-line front end.

Exit codes: 0 success, 1 verification failure or benchmark mismatch,
2 parse/validation error, 3 budget exceeded or 128-bit overflow.
"""

import argparse
import sys
import time

from . import groups
from .congruence import parse_poly, parse_system
from .errors import BUDGET_ENV, BudgetExceeded, MenonError, RangeOverflow, ValidationError
from .identities import CATALOG, named_identity
from .multifunc import parse_funcspec
from .records import RunRecord, format_value
from .sums import MenonInstance, sum_R_direct, sum_R_formula, sum_S_direct, sum_S_formula
from .verify import SUITES, run_suite


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ValidationError(f"expected a comma-separated list of integers, got {text!r}") from None


def _broadcast(items: list, r: int, what: str) -> list:
    if len(items) == 1 and r > 1:
        return items * r
    if len(items) != r:
        raise ValidationError(f"{what}: expected 1 or {r} entries, got {len(items)}")
    return items


def build_instance(args) -> MenonInstance:
    moduli = _int_list(args.moduli)
    r = len(moduli)
    polys = _broadcast(list(parse_system(args.polys)), r, "--polys")
    funcs = _broadcast([parse_funcspec(t) for t in args.funcs.split(",")], r, "--funcs")
    return MenonInstance(tuple(funcs), tuple(polys), tuple(moduli), args.M or 0)


def _instance_inputs(inst: MenonInstance) -> dict:
    return {"moduli": list(inst.moduli), "polys": [str(g) for g in inst.polys],
            "funcs": [str(f) for f in inst.funcs], "M": inst.big_modulus}


def _timed(fn, *args):
    start = time.perf_counter_ns()
    value = fn(*args)
    return value, time.perf_counter_ns() - start


SUM_PATHS = {
    "s-sum": (sum_S_formula, sum_S_direct),
    "r-sum": (sum_R_formula, sum_R_direct),
}


def cmd_sum(args) -> tuple[RunRecord, int]:
    inst = build_instance(args)
    formula, direct = SUM_PATHS[args.command]
    rec = RunRecord(args.command, _instance_inputs(inst))
    value, rec.timing_ns["formula"] = _timed(formula, inst)
    rec.outputs["value"] = value
    if args.check:
        check, rec.timing_ns["direct"] = _timed(direct, inst)
        rec.outputs["direct"] = check
        rec.outputs["agree"] = check == value
        return rec, 0 if check == value else 1
    return rec, 0


def _parse_identity_param(key: str, raw: str):
    if key == "g":
        return parse_poly(raw)
    if key == "f":
        return parse_funcspec(raw)
    if key in ("moduli", "a", "t"):
        return tuple(_int_list(raw))
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"parameter {key} expects an integer, got {raw!r}") from None


def cmd_identity(args) -> tuple[RunRecord, int]:
    params = {}
    for item in args.params:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ValidationError(f"identity parameters are key=value, got {item!r}")
        params[key] = _parse_identity_param(key, raw)
    start = time.perf_counter_ns()
    report = named_identity(args.name, **params)
    elapsed = time.perf_counter_ns() - start
    rec = RunRecord("identity", {"name": args.name, **report.parameters},
                    {"lhs": report.lhs, "rhs": report.rhs, "match": report.match},
                    {"total": elapsed})
    return rec, 0 if report.match else 1


def cmd_cyclic(args) -> tuple[RunRecord, int]:
    orders = _int_list(args.orders)
    methods = list(groups.METHODS) if args.method == "all" else [args.method]
    rec = RunRecord("cyclic-count", {"orders": orders, "method": args.method})
    for name in methods:
        rec.outputs[name], rec.timing_ns[name] = _timed(groups.METHODS[name], orders)
    if len(methods) > 1:
        rec.outputs["agree"] = len({rec.outputs[m] for m in methods}) == 1
        return rec, 0 if rec.outputs["agree"] else 1
    return rec, 0


def cmd_verify(args) -> tuple[RunRecord, int]:
    start = time.perf_counter_ns()
    results = run_suite(args.suite, args.limit)
    elapsed = time.perf_counter_ns() - start
    rec = RunRecord("verify", {"suite": args.suite, "limit": args.limit})
    failures = []
    for res in results:
        rec.tallies[res.name] = {"checked": res.checked, "failed": len(res.failures)}
        failures.extend({"suite": res.name, **f} for f in res.failures)
    rec.outputs["failures"] = sorted(failures, key=lambda f: repr(sorted(f.items())))
    rec.outputs["passed"] = not failures
    rec.timing_ns["total"] = elapsed
    return rec, 0 if not failures else 1


def cmd_bench(args) -> tuple[RunRecord, int]:
    repeat = max(1, args.repeat)
    if args.target == "cyclic-count":
        orders = _int_list(args.orders)
        rec = RunRecord("bench", {"target": "cyclic-count", "orders": orders, "repeat": repeat})
        paths = {"formula": lambda: groups.cyclic_count_formula(orders),
                 "enumerate": lambda: groups.cyclic_count_enumerate(orders)}
    else:
        inst = build_instance(args)
        formula, direct = SUM_PATHS[args.target]
        rec = RunRecord("bench", {"target": args.target, **_instance_inputs(inst), "repeat": repeat})
        paths = {"formula": lambda: formula(inst), "direct": lambda: direct(inst)}
    values = {}
    for name, fn in paths.items():
        best = None
        for _ in range(repeat):
            values[name], ns = _timed(fn)
            best = ns if best is None else min(best, ns)
        rec.timing_ns[name] = best
    rec.outputs.update(values)
    agree = len(set(values.values())) == 1
    rec.outputs["agree"] = agree
    if not agree:
        return rec, 1
    names = list(paths)
    slow, fast = rec.timing_ns[names[1]], rec.timing_ns["formula"]
    rec.outputs["speedup"] = f"{slow / max(fast, 1):.2f}x"
    return rec, 0


def render_text(rec: RunRecord) -> str:
    lines = []
    out = rec.outputs
    if rec.command == "verify":
        for name in sorted(rec.tallies):
            t = rec.tallies[name]
            status = "PASS" if t["failed"] == 0 else "FAIL"
            lines.append(f"{status} {name}: {t['checked']} checks, {t['failed']} failures")
        for f in out["failures"]:
            lines.append("  " + " ".join(f"{k}={format_value(v)}" for k, v in sorted(f.items())))
        lines.append("passed" if out["passed"] else "FAILED")
        return "\n".join(lines)
    if rec.command == "identity":
        lines.append(f"{rec.inputs['name']}: lhs={format_value(out['lhs'])} "
                     f"rhs={format_value(out['rhs'])} match={str(out['match']).lower()}")
        return "\n".join(lines)
    if rec.command == "bench":
        for name in sorted(rec.timing_ns):
            lines.append(f"{name}: value={format_value(out[name])} time_ns={rec.timing_ns[name]}")
        lines.append(f"agree={str(out['agree']).lower()}"
                     + (f" speedup={out['speedup']}" if "speedup" in out else ""))
        return "\n".join(lines)
    if rec.command == "cyclic-count" and len(out) > 1:
        values = [format_value(out[m]) for m in groups.METHODS]
        return f"{','.join(values)} agree={str(out['agree']).lower()}"
    for key in ("value", "direct", "agree", *groups.METHODS):
        if key in out:
            v = out[key]
            if isinstance(v, bool):
                lines.append(f"{key}={str(v).lower()}")
            elif key == "value" or len(out) == 1:
                lines.append(format_value(v))
            else:
                lines.append(f"{key}={format_value(v)}")
    return "\n".join(lines)


def _add_instance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--moduli", required=True, help="comma list m_1,...,m_r")
    p.add_argument("--polys", default="x", help="comma list of polynomials in x (one is broadcast)")
    p.add_argument("--funcs", default="id",
                   help="comma list of id, id^t, one, phi, tau, sigma_k, table:<path>")
    p.add_argument("--M", type=int, default=0, help="outer modulus, a multiple of lcm (default lcm)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="menon", description="Exact Menon-type sums, identities and cyclic subgroup counts.",
        epilog=f"Set {BUDGET_ENV} to override the default brute-force budget.")
    parser.add_argument("--json", action="store_true", help="emit one JSON record")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, what in (("s-sum", "S sum (average over all k)"), ("r-sum", "R sum (average over units)")):
        p = sub.add_parser(name, help=f"evaluate the {what}")
        _add_instance_flags(p)
        p.add_argument("--check", action="store_true", help="also run the direct sum and compare")
        p.set_defaults(handler=cmd_sum)

    p = sub.add_parser("identity", help="evaluate both sides of a named identity")
    p.add_argument("name", choices=sorted(CATALOG))
    p.add_argument("params", nargs="*", metavar="key=value",
                   help="e.g. n=12, moduli=4,6, a=1,1, g=x^2-1, f=sigma_1")
    p.set_defaults(handler=cmd_identity)

    p = sub.add_parser("cyclic-count", help="count cyclic subgroups of C_m1 x ... x C_mr")
    p.add_argument("--orders", required=True)
    p.add_argument("--method", choices=[*groups.METHODS, "all"], default="formula")
    p.set_defaults(handler=cmd_cyclic)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--limit", type=int, default=200)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("bench", help="time the formula path against the direct path")
    p.add_argument("target", choices=["s-sum", "r-sum", "cyclic-count"])
    p.add_argument("--moduli")
    p.add_argument("--polys", default="x")
    p.add_argument("--funcs", default="id")
    p.add_argument("--M", type=int, default=0)
    p.add_argument("--orders")
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(handler=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench":
        needed = "orders" if args.target == "cyclic-count" else "moduli"
        if getattr(args, needed) is None:
            parser.error(f"bench {args.target} requires --{needed}")
    try:
        rec, code = args.handler(args)
    except (BudgetExceeded, RangeOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, MenonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(rec.to_json() if args.json else render_text(rec))
    return code


if __name__ == "__main__":
    sys.exit(main())
