"""Exhaustive reference solvers for the tests.

Deliberately naive: everything enumerates edge subsets with itertools and
checks connectivity from scratch, sharing no code with the package beyond
the instance types.
"""

from itertools import combinations

from bmst.core import Form, Owner, Scope, Tie


def components(n, ends, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    acyclic = True
    for e in edges:
        a, b = find(ends[e][0]), find(ends[e][1])
        if a == b:
            acyclic = False
        else:
            parent[a] = b
    return [find(v) for v in range(n)], acyclic


def is_spanning_tree(n, ends, edges):
    edges = list(edges)
    if len(edges) != n - 1:
        return False
    roots, acyclic = components(n, ends, edges)
    return acyclic and len(set(roots)) == 1


def is_forest(n, ends, edges):
    return components(n, ends, edges)[1]


def subsets(items, max_size=None):
    items = list(items)
    top = len(items) if max_size is None else min(max_size, len(items))
    for k in range(top + 1):
        yield from combinations(items, k)


def min_spanning_tree_weight(graph, w):
    best = None
    for T in combinations(range(graph.m), graph.n - 1):
        if is_spanning_tree(graph.n, graph.ends, T):
            val = sum(w[e] for e in T)
            best = val if best is None else min(best, val)
    return best


def min_steiner_forest(graph, lengths, blocks, plus=False):
    """Cheapest edge set connecting each block; with ``plus`` every vertex must
    also reach a terminal."""
    usable = sorted(lengths) if isinstance(lengths, dict) else range(graph.m)
    terminals = {v for b in blocks for v in b}
    best = None
    for F in subsets(usable, graph.n - 1):
        roots, _ = components(graph.n, graph.ends, F)
        if any(len({roots[v] for v in b}) > 1 for b in blocks):
            continue
        if plus:
            good = {roots[t] for t in terminals}
            if any(roots[v] not in good for v in range(graph.n)):
                continue
        val = sum(lengths[e] for e in F)
        best = val if best is None else min(best, val)
    return best


def min_disjoint_trees(graph, lengths, classes):
    """Cheapest edge set whose components hold each class entirely and keep
    different classes apart; ``None`` if impossible."""
    usable = sorted(lengths) if isinstance(lengths, dict) else range(graph.m)
    best = None
    for F in subsets(usable, graph.n - 1):
        roots, _ = components(graph.n, graph.ends, F)
        tags = [{roots[v] for v in s} for s in classes if s]
        if any(len(t) > 1 for t in tags):
            continue
        if len({next(iter(t)) for t in tags}) != len(tags):
            continue
        val = sum(lengths[e] for e in F)
        best = val if best is None else min(best, val)
    return best


def completions(inst, X):
    """All follower sets Y with X ∪ Y a spanning tree."""
    need = inst.n - 1 - len(X)
    if need < 0:
        return
    for Y in combinations(inst.follower_edges, need):
        if is_spanning_tree(inst.n, inst.graph.ends, list(X) + list(Y)):
            yield frozenset(Y)


def follower_value(inst, X, Y, form, scope):
    if form is Form.SUM:
        return sum(inst.d[e] for e in Y)
    pool = Y if scope is Scope.OWN else set(X) | set(Y)
    return max((inst.d[e] for e in pool), default=0)


def leader_value(inst, X, Y, form):
    vals = [inst.c[e] for e in set(X) | set(Y)]
    return sum(vals) if form is Form.SUM else max(vals, default=0)


def kruskal_scan(inst, X, order):
    roots = list(range(inst.n))

    def find(x):
        while roots[x] != x:
            x = roots[x]
        return x

    for e in X:
        a, b = find(inst.graph.ends[e][0]), find(inst.graph.ends[e][1])
        roots[a] = b
    Y = []
    for e in order:
        a, b = find(inst.graph.ends[e][0]), find(inst.graph.ends[e][1])
        if a != b:
            roots[a] = b
            Y.append(e)
    return frozenset(Y)


def leader_choices(inst):
    for X in subsets(inst.leader_edges, inst.n - 1):
        if is_forest(inst.n, inst.graph.ends, X):
            yield X


def response(inst, X, spec):
    """Follower reaction computed straight from the definition.

    Fixed tie mode is the greedy scan; otherwise the follower-optimal
    completions are enumerated and the leader's best or worst one is kept.
    """
    if spec.tie_mode is Tie.FIXED:
        Y = kruskal_scan(inst, X, inst.pref)
        return Y if is_spanning_tree(inst.n, inst.graph.ends, list(X) + list(Y)) else None
    comps = list(completions(inst, X))
    if not comps:
        return None
    fv = {Y: follower_value(inst, X, Y, spec.follower_form, spec.follower_scope) for Y in comps}
    low = min(fv.values())
    good = [Y for Y in comps if fv[Y] == low]
    lv = {Y: leader_value(inst, X, Y, spec.leader_form) for Y in good}
    target = min(lv.values()) if spec.tie_mode is Tie.OPTIMISTIC else max(lv.values())
    return next(Y for Y in good if lv[Y] == target)


def bilevel_opt(inst, spec):
    """Optimal leader value (None if no choice is feasible)."""
    best = None
    for X in leader_choices(inst):
        Y = response(inst, X, spec)
        if Y is None:
            continue
        val = leader_value(inst, X, Y, spec.leader_form)
        best = val if best is None else min(best, val)
    return best


def enforceable(inst):
    out = set()
    for X in leader_choices(inst):
        Y = kruskal_scan(inst, X, inst.pref)
        if is_spanning_tree(inst.n, inst.graph.ends, list(X) + list(Y)):
            out.add(Y)
    return out


def leader_owned(inst):
    return [e for e in range(inst.m) if inst.owner[e] is Owner.LEADER]
