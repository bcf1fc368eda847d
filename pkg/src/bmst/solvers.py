"""Exact solvers.

``solve_bruteforce`` handles every objective combination and is the oracle
the other solvers are tested against.  The enforceable-response
enumeration is exponential only in the number of follower edges; the two
bottleneck-leader solvers run in polynomial time.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from . import speedups
from .core import (
    BmstInstance,
    CapExceeded,
    Form,
    Infeasible,
    InstanceError,
    ObjectiveSpec,
    Scope,
    SolveReport,
    SUM_SUM,
    Tie,
    evaluate,
)
from .follower import bottleneck_response, greedy_response, preference, respond
from .kernels import UnionFind, disjoint_connecting_forests, kruskal, set_partitions

BRUTE_CAP = 24
RESPONSE_CAP = 8


def _report(inst, X, Y, spec, method, **info) -> SolveReport:
    leader, follower = evaluate(inst, X, Y, spec)
    return SolveReport(frozenset(X), frozenset(Y), leader, follower, method, True, dict(info))


def _greedy_follower(spec: ObjectiveSpec) -> bool:
    return spec.follower_form is Form.SUM or spec.tie_mode is Tie.FIXED


def solve_bruteforce(inst: BmstInstance, spec: ObjectiveSpec = SUM_SUM, cap: int = BRUTE_CAP) -> SolveReport:
    """Try every acyclic leader choice; ties go to the lexicographically
    smallest choice (as a sorted id tuple)."""
    leader = inst.leader_edges
    if len(leader) > cap:
        raise CapExceeded(f"{len(leader)} leader edges exceed the cap of {cap}")
    ends = inst.graph.ends
    lu = [ends[e][0] for e in leader]
    lv = [ends[e][1] for e in leader]
    if _greedy_follower(spec):
        order = preference(inst, spec.tie_mode) if spec.follower_form is Form.SUM else inst.pref
        found = speedups.brute_force_greedy(
            inst.n, lu, lv, [inst.c[e] for e in leader],
            [ends[e][0] for e in order], [ends[e][1] for e in order], [inst.c[e] for e in order],
            spec.leader_form is Form.BOTTLENECK,
        )
        if found is None:
            raise Infeasible("no leader choice admits a spanning completion")
        _, xs, ys = found
        X = [leader[i] for i in xs]
        Y = [order[i] for i in ys]
        return _report(inst, X, Y, spec, "brute")
    best = None
    for xs in speedups.acyclic_subsets(inst.n, lu, lv):
        X = [leader[i] for i in xs]
        Y = respond(inst, X, spec)
        if Y is None:
            continue
        value = evaluate(inst, X, Y, spec)[0]
        if best is None or value < best[0]:
            best = (value, X, Y)
    if best is None:
        raise Infeasible("no leader choice admits a spanning completion")
    return _report(inst, best[1], best[2], spec, "brute")


def follower_vertices(inst: BmstInstance) -> list[int]:
    return sorted({v for e in inst.follower_edges for v in inst.graph.ends[e]})


def extend_cover(inst: BmstInstance, trees: Iterable[Iterable[int]], covered: Iterable[int]) -> frozenset[int]:
    """Grow disjoint leader trees until every vertex lies in one of them.

    An uncovered vertex is attached through the cheapest (then lowest id)
    leader edge that has exactly one covered endpoint; if there is none a
    new tree is started at the lowest uncovered vertex.
    """
    X = set().union(*map(set, trees))
    seen = [False] * inst.n
    for v in covered:
        seen[v] = True
    for e in X:
        for v in inst.graph.ends[e]:
            seen[v] = True
    order = sorted(inst.leader_edges, key=lambda e: (inst.c[e], e))
    ends = inst.graph.ends
    while not all(seen):
        for e in order:
            u, v = ends[e]
            if seen[u] != seen[v]:
                X.add(e)
                seen[u] = seen[v] = True
                break
        else:
            seen[seen.index(False)] = True
    return frozenset(X)


def enforceable_choices(inst: BmstInstance, cap: int = RESPONSE_CAP) -> Iterator[tuple[frozenset[int], frozenset[int]]]:
    """``(response, witness)`` per partition of the follower vertices that the
    leader can realise; responses may repeat."""
    if len(inst.follower_edges) > cap:
        raise CapExceeded(f"{len(inst.follower_edges)} follower edges exceed the cap of {cap}")
    vf = follower_vertices(inst)
    for blocks in set_partitions(vf):
        trees = disjoint_connecting_forests(inst.graph, blocks, edges=inst.leader_edges)
        if trees is None:
            continue
        X = extend_cover(inst, trees, vf)
        Y = greedy_response(inst, X)
        if Y is not None:
            yield Y, X


def enumerate_enforceable(inst: BmstInstance, cap: int = RESPONSE_CAP) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Every response the leader can enforce, each with its first witness."""
    out: dict[frozenset[int], frozenset[int]] = {}
    for Y, X in enforceable_choices(inst, cap):
        out.setdefault(Y, X)
    return list(out.items())


def bmstr_decide(inst: BmstInstance, target: Iterable[int], cap: int = RESPONSE_CAP) -> frozenset[int] | None:
    """A leader choice whose response is exactly ``target``, or ``None``."""
    target = frozenset(target)
    for Y, X in enforceable_choices(inst, cap):
        if Y == target:
            return X
    return None


def solve_uniform_fpt(inst: BmstInstance, cap: int = RESPONSE_CAP) -> SolveReport:
    costs = {inst.c[e] for e in inst.leader_edges}
    if len(costs) > 1:
        raise InstanceError("leader costs are not uniform")
    cbar = costs.pop() if costs else 0
    best = None
    for Y, X in enumerate_enforceable(inst, cap):
        # every spanning tree has n-1 edges, so |X| is fixed by |Y|
        value = cbar * (inst.n - 1 - len(Y)) + sum(inst.c[e] for e in Y)
        if best is None or value < best[0]:
            best = (value, X, Y)
    if best is None:
        raise Infeasible("no leader choice admits a spanning completion")
    return _report(inst, best[1], best[2], SUM_SUM, "uniform-fpt")


def _bottleneck(inst, edges) -> int:
    return max((inst.c[e] for e in edges), default=0)


def solve_bn_sum(inst: BmstInstance, tie: Tie = Tie.FIXED) -> SolveReport:
    """Bottleneck leader against a sum follower: one candidate per threshold."""
    spec = ObjectiveSpec(Form.BOTTLENECK, Form.SUM, Scope.OWN, tie)
    order = preference(inst, tie)
    by_cost = sorted(inst.leader_edges, key=lambda e: (inst.c[e], e))
    best = None
    for gamma in sorted({0, *(inst.c[e] for e in inst.leader_edges)}):
        X = kruskal(inst.graph, (e for e in by_cost if inst.c[e] <= gamma))
        Y = greedy_response(inst, X, order)
        if Y is None:
            continue
        value = _bottleneck(inst, [*X, *Y])
        if best is None or value < best[0]:
            best = (value, X, Y, gamma)
    if best is None:
        raise Infeasible("no threshold admits a spanning completion")
    return _report(inst, best[1], best[2], spec, "bn-sum", gamma=best[3])


def solve_bnbn_pess(inst: BmstInstance, scope: Scope = Scope.OWN) -> SolveReport:
    """Both objectives bottleneck, pessimistic follower.

    One candidate per admissible pair ``(e_c, e_d)``: a maximal forest of the
    leader edges no costlier than ``e_c`` for the leader and ``e_d`` for the
    follower, seeded with both edges; plus the empty choice unless a pair
    with ``c(e_c) = d(e_d) = 0`` exists.
    """
    spec = ObjectiveSpec(Form.BOTTLENECK, Form.BOTTLENECK, scope, Tie.PESSIMISTIC)
    c, d, ends = inst.c, inst.d, inst.graph.ends
    leader = inst.leader_edges
    by_cost = sorted(leader, key=lambda e: (c[e], e))
    candidates: list[tuple[list[int], tuple]] = []
    zero_pair = False
    for ec in leader:
        for ed in leader:
            if c[ec] < c[ed] or d[ec] > d[ed]:
                continue
            if ec != ed and set(ends[ec]) == set(ends[ed]):
                continue
            zero_pair |= c[ec] == 0 and d[ed] == 0
            uf = UnionFind(inst.n)
            seed = [ec] if ec == ed else [ec, ed]
            for e in seed:
                uf.union(*ends[e])
            pool = (e for e in by_cost if c[e] <= c[ec] and d[e] <= d[ed] and e not in seed)
            candidates.append((seed + kruskal(inst.graph, pool, uf), (ec, ed)))
    if not zero_pair:
        candidates.insert(0, ([], None))
    best = None
    for X, pair in candidates:
        Y = bottleneck_response(inst, X, scope, Tie.PESSIMISTIC, Form.BOTTLENECK)
        if Y is None:
            continue
        value = _bottleneck(inst, [*X, *Y])
        if best is None or value < best[0]:
            best = (value, X, Y, pair)
    if best is None:
        raise Infeasible("no candidate admits a spanning completion")
    return _report(inst, best[1], best[2], spec, "bnbn-pess", pair=best[3])
