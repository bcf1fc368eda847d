"""Follower responses to a leader choice.

A sum follower is always the greedy Kruskal scan over ``inst.pref`` after
contracting ``X``; optimistic and pessimistic ties are just different scan
orders (see :func:`preference`).  A bottleneck follower with an explicit tie
mode goes through :func:`bottleneck_response`.  Every function returns
``None`` when ``X ∪ E^f`` does not span the graph.
"""

from __future__ import annotations

from typing import Iterable

from . import speedups
from ._uf import UnionFind
from .core import BmstInstance, Form, ObjectiveSpec, Scope, SUM_SUM, Tie, default_pref


def preference(inst: BmstInstance, tie: Tie) -> tuple[int, ...]:
    """Scan order realising ``tie`` for a sum follower."""
    if tie is Tie.FIXED:
        return inst.pref
    return default_pref(inst.c, inst.d, inst.follower_edges, tie)


def greedy_forest(inst: BmstInstance, X: Iterable[int], order: Iterable[int] | None = None) -> tuple[frozenset[int], bool]:
    """Greedy completion of ``X`` and whether ``X`` plus it spans.

    The scan runs even when the result cannot span, which the forest
    normalisation relies on.
    """
    ends = inst.graph.ends
    X = sorted(X)
    order = inst.pref if order is None else tuple(order)
    accepted, comps = speedups.greedy_scan(
        inst.n,
        [ends[e][0] for e in X],
        [ends[e][1] for e in X],
        [ends[e][0] for e in order],
        [ends[e][1] for e in order],
    )
    return frozenset(order[i] for i in accepted), comps <= 1


def greedy_response(inst: BmstInstance, X: Iterable[int], order: Iterable[int] | None = None) -> frozenset[int] | None:
    Y, spans = greedy_forest(inst, X, order)
    return Y if spans else None


def feasible(inst: BmstInstance, X: Iterable[int]) -> bool:
    uf = inst.graph.union_find(X)
    for _, u, v in inst.graph.edges(inst.follower_edges):
        uf.union(u, v)
    return uf.count <= 1


def _complete(uf: UnionFind, ends, edges) -> list[int]:
    out = []
    for e in edges:
        u, v = ends[e]
        if uf.union(u, v):
            out.append(e)
    return out


def bottleneck_response(
    inst: BmstInstance,
    X: Iterable[int],
    scope: Scope = Scope.OWN,
    tie: Tie = Tie.OPTIMISTIC,
    leader_form: Form = Form.SUM,
) -> frozenset[int] | None:
    """Bottleneck-optimal completion, extremal for the leader.

    Among the completions minimising the follower's bottleneck, return one
    that is best (optimistic) or worst (pessimistic) for the leader's
    objective.  Remaining ties go by position in ``inst.pref``.  With
    ``Tie.FIXED`` the plain greedy scan is used, which is bottleneck-optimal
    as well.
    """
    X = sorted(X)
    if tie is Tie.FIXED:
        return greedy_response(inst, X)
    ends, c, d = inst.graph.ends, inst.c, inst.d
    base = inst.graph.union_find(X)
    cands = [e for e in inst.pref if not base.connected(*ends[e])]

    # smallest threshold whose edges complete X; cands are d-sorted
    uf = base.copy()
    beta = 0
    for e in cands:
        if uf.count <= 1:
            break
        if uf.union(*ends[e]):
            beta = d[e]
    if uf.count > 1:
        return None
    if scope is Scope.ALL:
        beta = max(beta, max((d[e] for e in X), default=0))
    rank = {e: i for i, e in enumerate(inst.pref)}
    pool = [e for e in cands if d[e] <= beta]

    if tie is Tie.OPTIMISTIC:
        # min-sum and min-bottleneck completions coincide for a Kruskal scan
        pool.sort(key=lambda e: (c[e], rank[e]))
        return frozenset(_complete(base.copy(), ends, pool))

    pool.sort(key=lambda e: (-c[e], rank[e]))
    if leader_form is Form.SUM:
        return frozenset(_complete(base.copy(), ends, pool))
    # bottleneck leader: seed with the costliest edge some completion can use
    for e in pool:
        if _usable(base, ends, pool, e):
            uf = base.copy()
            uf.union(*ends[e])
            return frozenset([e, *_complete(uf, ends, pool)])
    return frozenset()


def _usable(base: UnionFind, ends, pool, e) -> bool:
    """Whether some spanning completion inside ``pool`` contains ``e``."""
    uf = base.copy()
    if not uf.union(*ends[e]):
        return False
    _complete(uf, ends, pool)
    return uf.count <= 1


def respond(inst: BmstInstance, X: Iterable[int], spec: ObjectiveSpec = SUM_SUM) -> frozenset[int] | None:
    """The follower's response to ``X`` under ``spec``."""
    if spec.follower_form is Form.SUM:
        return greedy_response(inst, X, preference(inst, spec.tie_mode))
    return bottleneck_response(inst, X, spec.follower_scope, spec.tie_mode, spec.leader_form)
