"""Structure-normalising instance transformations with solution pull-back.

Every ``to_*`` function returns ``(target, mapping)``.  The target keeps the
source's edge ids wherever an edge survives unchanged; fresh edges are
appended.  :func:`pull_back` turns a report on the target into a report on
the source, recomputing the follower's response there.  All reductions
assume the sum/sum objective with the instance's own preference order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import (
    BmstInstance,
    BudgetExceeded,
    Infeasible,
    InstanceError,
    Owner,
    SolveReport,
    evaluate,
)
from .follower import greedy_forest, greedy_response
from .kernels import kruskal

L, F = Owner.LEADER, Owner.FOLLOWER

UNIFORM_BUDGET = 2_000


@dataclass(frozen=True)
class SolutionMapping:
    """How to carry a leader choice on ``target`` back to ``source``.

    ``provenance[e]`` is the source id of target edge ``e`` or ``None`` for
    fresh edges.  With ``threshold`` set, values agree only while they stay
    below it.
    """

    source: BmstInstance
    target: BmstInstance
    pull_choice: Callable[[frozenset[int]], frozenset[int]]
    provenance: tuple[int | None, ...]
    added_vertices: int = 0
    threshold: int | None = None
    name: str = "identity"
    info: dict = field(default_factory=dict, compare=False)

    @property
    def relation(self) -> str:
        return "equal" if self.threshold is None else f"equal-below {self.threshold}"


def identity(inst: BmstInstance) -> SolutionMapping:
    return SolutionMapping(inst, inst, frozenset, tuple(range(inst.m)))


def pull_back(mapping: SolutionMapping | Sequence[SolutionMapping], report: SolveReport) -> SolveReport:
    """Source report for a feasible target report.

    A list of mappings (as produced by :func:`chain`) is unwound last to
    first.
    """
    if not isinstance(mapping, SolutionMapping):
        for m in reversed(list(mapping)):
            report = pull_back(m, report)
        return report
    src = mapping.source
    X = frozenset(mapping.pull_choice(frozenset(report.choice)))
    Y = greedy_response(src, X)
    if Y is None:
        raise Infeasible("pulled-back choice has no completion in the source instance")
    leader, follower = evaluate(src, X, Y)
    return SolveReport(X, Y, leader, follower, report.method, True, dict(report.info))


# --- class membership ------------------------------------------------------

def in_efconn(inst: BmstInstance) -> bool:
    return inst.graph.is_connected(inst.follower_edges)


def in_elconn(inst: BmstInstance) -> bool:
    return inst.graph.is_connected(inst.leader_edges)


def in_efforest(inst: BmstInstance) -> bool:
    return inst.graph.is_forest(inst.follower_edges)


def in_elforest(inst: BmstInstance) -> bool:
    return inst.graph.is_forest(inst.leader_edges)


def in_efmatching(inst: BmstInstance) -> bool:
    deg = [0] * inst.n
    for e in inst.follower_edges:
        for v in inst.graph.ends[e]:
            deg[v] += 1
    return max(deg, default=0) <= 1


def in_efall(inst: BmstInstance) -> bool:
    """Every leader edge has a parallel follower edge of equal leader cost."""
    shadows = {(frozenset(inst.graph.ends[e]), inst.c[e]) for e in inst.follower_edges}
    return all((frozenset(inst.graph.ends[e]), inst.c[e]) in shadows for e in inst.leader_edges)


# --- helpers ---------------------------------------------------------------

def _big_m(inst: BmstInstance) -> int:
    return sum(max(c, d) for c, d in zip(inst.c, inst.d)) + 1


def _connect_components(inst: BmstInstance, owned: Iterable[int]) -> list[tuple[int, int]]:
    comps = inst.graph.components(owned)
    return [(comps[0][0], comp[0]) for comp in comps[1:]]


def _append(inst: BmstInstance, rows, n: int | None = None, pref_tail=()) -> BmstInstance:
    return BmstInstance.build(inst.n if n is None else n, [*inst.rows(), *rows], [*inst.pref, *pref_tail])


# --- reductions ------------------------------------------------------------

def to_efconn(inst: BmstInstance) -> tuple[BmstInstance, SolutionMapping]:
    """Make the follower's graph connected with expensive fresh follower edges."""
    if in_efconn(inst):
        return inst, identity(inst)
    M = _big_m(inst)
    links = _connect_components(inst, inst.follower_edges)
    rows = [(u, v, F, M, M) for u, v in links]
    fresh = range(inst.m, inst.m + len(rows))
    target = _append(inst, rows, pref_tail=fresh)
    keep = frozenset(inst.leader_edges)
    return target, SolutionMapping(
        inst, target, lambda X: X & keep, (*range(inst.m), *[None] * len(rows)),
        threshold=M, name="efconn",
    )


def to_elconn(inst: BmstInstance) -> tuple[BmstInstance, SolutionMapping]:
    """Make the leader's graph connected with expensive fresh leader edges."""
    if in_elconn(inst):
        return inst, identity(inst)
    return _elconn(inst, _big_m(inst))


def _elconn(inst: BmstInstance, M: int) -> tuple[BmstInstance, SolutionMapping]:
    links = _connect_components(inst, inst.leader_edges)
    rows = [(u, v, L, M, M) for u, v in links]
    target = _append(inst, rows)
    keep = frozenset(inst.leader_edges)
    return target, SolutionMapping(
        inst, target, lambda X: X & keep, (*range(inst.m), *[None] * len(rows)),
        threshold=M, name="elconn",
    )


def to_efforest(inst: BmstInstance) -> tuple[BmstInstance, SolutionMapping]:
    """Drop the follower edges the empty-choice greedy scan rejects."""
    Ystar, _ = greedy_forest(inst, ())
    if len(Ystar) == len(inst.follower_edges):
        return inst, identity(inst)
    kept = [e for e in range(inst.m) if inst.owner[e] is L or e in Ystar]
    new_id = {e: i for i, e in enumerate(kept)}
    rows = [inst.rows()[e] for e in kept]
    target = BmstInstance.build(inst.n, rows, [new_id[e] for e in inst.pref if e in new_id])
    return target, SolutionMapping(
        inst, target, lambda X: frozenset(kept[e] for e in X), tuple(kept), name="efforest",
    )


def to_efmatching(inst: BmstInstance) -> tuple[BmstInstance, SolutionMapping]:
    """Split every follower edge of a non-trivial follower tree in two.

    The half nearer the root (the least vertex of the tree) becomes a free
    leader edge; the far half keeps the edge's id, costs and preference
    position.  One new vertex per split edge, numbered in edge-id order.
    """
    if not in_efforest(inst):
        raise InstanceError("follower edges must form a forest")
    ends = inst.graph.ends
    fol = inst.follower_edges
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in fol:
        u, v = ends[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    child: dict[int, tuple[int, int]] = {}  # edge -> (parent side, child side)
    for comp in inst.graph.components(fol):
        edges_in = [e for e in fol if ends[e][0] in comp]
        if len(edges_in) < 2:
            continue
        stack, seen = [comp[0]], {comp[0]}
        while stack:
            p = stack.pop()
            for q, e in adj.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    child[e] = (p, q)
                    stack.append(q)
    if not child:
        return inst, identity(inst)
    split = sorted(child)
    mid = {e: inst.n + i for i, e in enumerate(split)}
    rows = inst.rows()
    for e in split:
        _, q = child[e]
        rows[e] = (mid[e], q, F, inst.c[e], inst.d[e])
    fresh = [(child[e][0], mid[e], L, 0, 0) for e in split]
    target = BmstInstance.build(inst.n + len(split), [*rows, *fresh], inst.pref)
    keep = frozenset(inst.leader_edges)
    return target, SolutionMapping(
        inst, target, lambda X: X & keep, (*range(inst.m), *[None] * len(fresh)),
        added_vertices=len(split), name="efmatching",
    )


def to_efall(inst: BmstInstance) -> tuple[BmstInstance, SolutionMapping]:
    """Shadow every leader edge with a follower copy the follower never wants."""
    if not in_efconn(inst):
        raise InstanceError("follower edges must connect the graph")
    shadows = {(frozenset(inst.graph.ends[e]), inst.c[e]) for e in inst.follower_edges}
    M = sum(inst.d) + 1
    rows = []
    for e, u, v in inst.graph.edges(inst.leader_edges):
        if (frozenset((u, v)), inst.c[e]) not in shadows:
            rows.append((u, v, F, inst.c[e], M))
    if not rows:
        return inst, identity(inst)
    target = _append(inst, rows, pref_tail=range(inst.m, inst.m + len(rows)))
    return target, SolutionMapping(
        inst, target, frozenset, (*range(inst.m), *[None] * len(rows)), name="efall",
    )


def to_uniform(inst: BmstInstance, budget: int = UNIFORM_BUDGET) -> tuple[BmstInstance, SolutionMapping]:
    """Give every leader edge cost 1.

    Free leader edges are contracted; a leader edge of cost ``k >= 2`` becomes
    a path of ``k`` unit edges whose interior vertices hang off the path's
    first endpoint by fresh follower edges of cost 0 and prohibitive
    follower cost.
    """
    if not in_efconn(inst):
        raise InstanceError("follower edges must connect the graph")
    total = sum(inst.c[e] for e in inst.leader_edges)
    if total > budget:
        raise BudgetExceeded(f"total leader cost {total} exceeds the budget of {budget}")
    zero = [e for e in inst.leader_edges if inst.c[e] == 0]
    quotient = inst.graph.union_find(zero).labels()
    n = max(quotient) + 1
    M = sum(inst.d) + 1
    rows, origin = [], []
    paths: dict[int, list[int]] = {}
    hangers = []
    for e, u, v in inst.graph.edges():
        a, b = quotient[u], quotient[v]
        if a == b:
            continue
        k = inst.c[e]
        if inst.owner[e] is F or k == 1:
            paths[e] = [len(rows)]
            rows.append((a, b, inst.owner[e], k, inst.d[e]))
            origin.append(e)
            continue
        chain_ = [a, *range(n, n + k - 1), b]
        hangers.extend((a, w) for w in chain_[1:-1])
        n += k - 1
        paths[e] = []
        for x, y in zip(chain_, chain_[1:]):
            paths[e].append(len(rows))
            rows.append((x, y, L, 1, inst.d[e]))
            origin.append(e)
    new_id = {e: ids[0] for e, ids in paths.items() if inst.owner[e] is F}
    first_fresh = len(rows)
    rows.extend((a, w, F, 0, M) for a, w in hangers)
    origin.extend([None] * len(hangers))
    pref = [new_id[e] for e in inst.pref if e in new_id]
    target = BmstInstance.build(n, rows, [*pref, *range(first_fresh, len(rows))])

    leader_paths = {e: frozenset(ids) for e, ids in paths.items() if inst.owner[e] is L}
    zero_forest = kruskal(inst.graph, zero)

    def pull(X: frozenset[int]) -> frozenset[int]:
        whole = [e for e, ids in leader_paths.items() if ids <= X]
        return frozenset([*whole, *zero_forest])

    return target, SolutionMapping(
        inst, target, pull, tuple(origin), added_vertices=n - (max(quotient) + 1), name="uniform",
        info={"quotient": quotient, "paths": leader_paths},
    )


REDUCTIONS = {
    "efconn": to_efconn,
    "elconn": to_elconn,
    "efforest": to_efforest,
    "efmatching": to_efmatching,
    "efall": to_efall,
    "uniform": to_uniform,
}


def chain(inst: BmstInstance, steps: Iterable[str]) -> tuple[BmstInstance, list[SolutionMapping]]:
    """Apply named reductions in order; pull back with the returned list."""
    maps = []
    for name in steps:
        inst, m = REDUCTIONS[name](inst)
        maps.append(m)
    return inst, maps


def to_eftree(inst: BmstInstance):
    """Connected leader graph and a spanning follower tree."""
    return chain(inst, ["efconn", "elconn", "efforest"])


def to_elconn_efmatching(inst: BmstInstance):
    """Connected leader graph and a follower matching."""
    return chain(inst, ["elconn", "efforest", "efmatching"])
