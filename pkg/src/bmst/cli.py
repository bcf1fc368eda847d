"""Command-line front end: ``bmst solve | reduce | verify | generate``.

Exit codes: 0 success, 1 verification mismatch, 2 unreadable input,
3 infeasible, 4 incompatible flags or precondition failure, 5 cap or
budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .approx import approx_contraction, approx_fpt2
from .core import (
    BudgetExceeded,
    CapExceeded,
    Form,
    Infeasible,
    InstanceError,
    ObjectiveSpec,
    ParseError,
    Scope,
    Tie,
    evaluate,
    parse_instance,
    write_instance,
)
from .follower import preference, respond
from .generators import (
    TOPOLOGIES,
    gen_bmstr_from_vdst,
    gen_bnbn_opt_from_vdst,
    gen_from_steiner_forest,
    gen_from_svdst,
    gen_random,
    gen_sum_bn_pess_from_sf,
    parse_stf,
    svdst_constants,
)
from .reductions import REDUCTIONS, chain
from .solvers import solve_bn_sum, solve_bnbn_pess, solve_bruteforce, solve_uniform_fpt

EXIT_MISMATCH, EXIT_READ, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_CAP = 1, 2, 3, 4, 5

OBJECTIVES = {
    "sum-sum": (Form.SUM, Form.SUM),
    "sum-bn": (Form.SUM, Form.BOTTLENECK),
    "bn-sum": (Form.BOTTLENECK, Form.SUM),
    "bn-bn": (Form.BOTTLENECK, Form.BOTTLENECK),
}
METHODS = ("brute", "uniform-fpt", "bn-sum", "bnbn-pess", "approx", "fpt2")
CHAINS = {"eftree": ["efconn", "elconn", "efforest"], "elconn-efmatching": ["elconn", "efforest", "efmatching"]}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    try:
        return parse_instance(_read(path))
    except InstanceError as exc:
        # any failure while building the instance counts as unreadable input
        raise ParseError(str(exc)) from None


def _spec(args) -> ObjectiveSpec:
    leader, follower = OBJECTIVES[args.objective]
    return ObjectiveSpec(leader, follower, Scope(args.scope), Tie(args.tie))


def _ids(edges) -> str:
    return " ".join(map(str, sorted(edges)))


def _print_report(report, out) -> None:
    print(f"method {report.method}", file=out)
    print(f"leader_value {report.leader_value}", file=out)
    print(f"follower_value {report.follower_value}", file=out)
    print(f"leader {_ids(report.choice)}".rstrip(), file=out)
    print(f"follower {_ids(report.response)}".rstrip(), file=out)
    if "ratio_bound" in report.info:
        print(f"ratio_bound {report.info['ratio_bound']}", file=out)


def _sum_follower_order(inst, spec):
    """A sum follower's tie mode is just a scan order; bake it into ``pref``."""
    return inst if spec.tie_mode is Tie.FIXED else inst.with_pref(preference(inst, spec.tie_mode))


def cmd_solve(args, out) -> int:
    inst = _load(args.file)
    spec = _spec(args)
    method = args.method
    if method == "brute":
        report = solve_bruteforce(inst, spec)
    elif method in ("uniform-fpt", "approx", "fpt2"):
        if args.objective != "sum-sum":
            raise UsageError(f"--method {method} requires --objective sum-sum")
        work = _sum_follower_order(inst, spec)
        solver = {"uniform-fpt": solve_uniform_fpt, "approx": approx_contraction, "fpt2": approx_fpt2}[method]
        report = solver(work)
    elif method == "bn-sum":
        if args.objective != "bn-sum":
            raise UsageError("--method bn-sum requires --objective bn-sum")
        report = solve_bn_sum(inst, spec.tie_mode)
    else:
        if args.objective != "bn-bn" or spec.tie_mode is not Tie.PESSIMISTIC:
            raise UsageError("--method bnbn-pess requires --objective bn-bn --tie pess")
        report = solve_bnbn_pess(inst, spec.follower_scope)
    # values are always reported under the requested objective
    report.leader_value, report.follower_value = evaluate(inst, report.choice, report.response, spec)
    _print_report(report, out)
    return 0


def cmd_reduce(args, out) -> int:
    inst = _load(args.file)
    steps = CHAINS.get(args.to, [args.to])
    target, _ = chain(inst, steps)
    out.write(write_instance(target))
    return 0


def parse_solution(text: str) -> tuple[list[int], list[int]]:
    """``leader``/``follower`` id lines; other keys (as printed by ``solve``) are skipped."""
    found: dict[str, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split("#", 1)[0].split()
        if not tok or tok[0] not in ("leader", "follower"):
            continue
        if tok[0] in found:
            raise ParseError(f"repeated '{tok[0]}' line", lineno)
        try:
            found[tok[0]] = [int(t, 10) for t in tok[1:]]
        except ValueError:
            raise ParseError("edge ids must be integers", lineno) from None
    return found.get("leader", []), found.get("follower", [])


def cmd_verify(args, out) -> int:
    inst = _load(args.file)
    X, Y = parse_solution(_read(args.solution))
    if any(not 0 <= e < inst.m for e in X + Y):
        raise ParseError("solution mentions an unknown edge id")
    spec = _spec(args)
    try:
        X = inst.check_choice(X)
    except InstanceError as exc:
        raise Infeasible(str(exc)) from None
    expected = respond(inst, X, spec)
    if expected is None:
        raise Infeasible("the leader choice admits no spanning completion")
    Y = frozenset(Y)
    if Y != expected:
        print("mismatch", file=out)
        print(f"- follower {_ids(Y)}".rstrip(), file=out)
        print(f"+ follower {_ids(expected)}".rstrip(), file=out)
        return EXIT_MISMATCH
    leader, follower = evaluate(inst, X, Y, spec)
    print("ok", file=out)
    print(f"leader_value {leader}", file=out)
    print(f"follower_value {follower}", file=out)
    return 0


def cmd_generate(args, out) -> int:
    kind = args.kind
    if kind == "random":
        inst = gen_random(args.seed, args.n, args.ml, args.mf, args.cmax, args.dmax)
        out.write(write_instance(inst))
        return 0
    src = parse_stf(_read(args.file))
    trailer = []
    if kind == "sf":
        gen = gen_sum_bn_pess_from_sf if args.sum_bn_pess else gen_from_steiner_forest
        inst = gen(src, args.topology, args.seed)
    elif kind == "bmstr":
        inst, target = gen_bmstr_from_vdst(src)
        trailer.append(f"# target-response {_ids(target)}")
    elif kind == "svdst":
        inst = gen_from_svdst(src)
        M, offset, floor = svdst_constants(src)
        trailer.append(f"# big-m {M} offset {offset} infeasible-floor {floor}")
    else:
        inst = gen_bnbn_opt_from_vdst(src)
    out.write(write_instance(inst))
    for line in trailer:
        print(line, file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bmst", description="Bilevel minimum spanning tree toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def objective_flags(sp):
        sp.add_argument("--objective", choices=sorted(OBJECTIVES), default="sum-sum")
        sp.add_argument("--scope", choices=[s.value for s in Scope], default="own")
        sp.add_argument("--tie", choices=[t.value for t in Tie], default="fixed")

    sp = sub.add_parser("solve", help="solve an instance")
    sp.add_argument("file")
    sp.add_argument("--method", choices=METHODS, default="brute")
    objective_flags(sp)

    sp = sub.add_parser("reduce", help="transform an instance into a restricted class")
    sp.add_argument("file")
    sp.add_argument("--to", required=True, choices=[*REDUCTIONS, *CHAINS])

    sp = sub.add_parser("verify", help="check a solution against the follower's response")
    sp.add_argument("file")
    sp.add_argument("solution")
    objective_flags(sp)

    gp = sub.add_parser("generate", help="emit a generated instance").add_subparsers(dest="kind", required=True)
    sp = gp.add_parser("sf", help="from a Steiner forest input")
    sp.add_argument("file")
    sp.add_argument("--topology", choices=TOPOLOGIES, default="path")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--sum-bn-pess", action="store_true", help="zero follower costs")
    for kind in ("bmstr", "svdst", "bnbn"):
        gp.add_parser(kind, help="from a disjoint Steiner trees input").add_argument("file")
    sp = gp.add_parser("random", help="seeded random instance")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--ml", type=int, default=6)
    sp.add_argument("--mf", type=int, default=4)
    sp.add_argument("--cmax", type=int, default=9)
    sp.add_argument("--dmax", type=int, default=9)
    return p


COMMANDS = {"solve": cmd_solve, "reduce": cmd_reduce, "verify": cmd_verify, "generate": cmd_generate}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        code, msg = EXIT_READ, exc
    except Infeasible as exc:
        code, msg = EXIT_INFEASIBLE, exc
    except (UsageError, InstanceError) as exc:
        code, msg = EXIT_USAGE, exc
    except (CapExceeded, BudgetExceeded) as exc:
        code, msg = EXIT_CAP, exc
    print(f"bmst: error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
