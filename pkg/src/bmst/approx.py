"""Approximation algorithms for the sum/sum problem.

``approx_contraction`` is polynomial with ratio ``n - 1``;
``approx_fpt2`` has ratio 2 and is exponential only in the number of
follower edges.
"""

from __future__ import annotations

from .core import BmstInstance, CapExceeded, Infeasible, Owner, SolveReport, evaluate
from .follower import greedy_response
from .kernels import SteinerSolver, UnionFind, set_partitions
from .reductions import _elconn, in_elconn, pull_back
from .solvers import follower_vertices

FPT2_CAP = 7


def approx_contraction(inst: BmstInstance) -> SolveReport:
    """Grow the leader's choice from repeated minimum spanning trees.

    Each round reduces the follower's edges to their greedy forest on the
    contracted graph, takes an MST under ``c`` (ties: cost, leader edges
    first, id), keeps its leader part and contracts it.  Stops once the MST
    is all-leader or leader-free.
    """
    ends, c = inst.graph.ends, inst.c
    uf = UnionFind(inst.n)  # current contraction
    X: list[int] = []
    trace = []
    leader_first = sorted(range(inst.m), key=lambda e: (c[e], inst.owner[e] is not Owner.LEADER, e))
    while uf.count > 1:
        scan = uf.copy()
        forest = {e for e in inst.pref if scan.union(*ends[e])}
        tree_uf = uf.copy()
        T = [e for e in leader_first
             if (inst.owner[e] is Owner.LEADER or e in forest) and tree_uf.union(*ends[e])]
        TL = [e for e in T if inst.owner[e] is Owner.LEADER]
        trace.append((sum(c[e] for e in TL), sum(c[e] for e in T)))
        X.extend(TL)
        if not TL or len(TL) == len(T):
            break
        for e in TL:
            uf.union(*ends[e])
    Y = greedy_response(inst, X)
    if Y is None:  # cannot happen on a connected instance
        raise Infeasible("contraction heuristic produced an infeasible choice")
    leader, follower = evaluate(inst, X, Y)
    info = {"ratio_bound": max(inst.n - 1, 1), "iterations": len(trace), "trace": trace}
    return SolveReport(frozenset(X), Y, leader, follower, "approx", True, info)


def approx_fpt2(inst: BmstInstance, cap: int = FPT2_CAP, keep_candidates: bool = False) -> SolveReport:
    """Best SF+ leader choice over all partitions of the follower vertices.

    A disconnected leader graph is first joined with fresh leader edges so
    expensive that no candidate within the ratio bound ever uses them.
    """
    if len(inst.follower_edges) > cap:
        raise CapExceeded(f"{len(inst.follower_edges)} follower edges exceed the cap of {cap}")
    mapping = None
    work = inst
    if not in_elconn(inst):
        big = 2 * sum(max(a, b) for a, b in zip(inst.c, inst.d)) + 1
        work, mapping = _elconn(inst, big)
    lengths = {e: work.c[e] for e in work.leader_edges}
    vf = follower_vertices(work)
    solver = SteinerSolver(work.graph, lengths, vf, cap=2 * cap)
    best = None
    candidates = []
    tried = 0
    for blocks in set_partitions(vf):
        tried += 1
        X = solver.sf_plus(blocks)
        if X is None:
            continue
        Y = greedy_response(work, X)
        if Y is None:
            continue
        value = sum(work.c[e] for e in X) + sum(work.c[e] for e in Y)
        if keep_candidates:
            candidates.append((blocks, X, Y, value))
        if best is None or value < best[0]:
            best = (value, X, Y)
    if best is None:
        raise Infeasible("no partition yields a feasible leader choice")
    _, X, Y = best
    leader, follower = evaluate(work, X, Y)
    info = {"ratio_bound": 2, "partitions": tried}
    if keep_candidates:
        info["candidates"] = candidates
    report = SolveReport(X, Y, leader, follower, "fpt2", True, info)
    return report if mapping is None else pull_back(mapping, report)
