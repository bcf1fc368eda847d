"""Connectivity subroutines: MST, contraction, partitions, Steiner trees and
forests, the SF+ 2-approximation and disjoint connecting trees.

Functions that take ``lengths``/``weights`` accept either a mapping
``edge id -> int`` (only those edges are usable) or a sequence indexed by
edge id (every edge is usable).
"""

from __future__ import annotations

from itertools import chain
from typing import Iterable, Iterator, Mapping, Sequence

from . import speedups
from ._uf import UnionFind
from .core import BudgetExceeded, CapExceeded, InstanceError, Multigraph

__all__ = [
    "UnionFind",
    "kruskal",
    "mst",
    "contract",
    "set_partitions",
    "shortest_paths",
    "SteinerSolver",
    "steiner_tree",
    "steiner_forest",
    "sf_plus_2approx",
    "disjoint_connecting_forests",
    "length_of",
]

INF = speedups.INF


def _usable(graph: Multigraph, weights) -> list[int]:
    if isinstance(weights, Mapping):
        return sorted(weights)
    if len(weights) != graph.m:
        raise InstanceError("weights must have one entry per edge")
    return list(range(graph.m))


def length_of(edges: Iterable[int], weights) -> int:
    return sum(weights[e] for e in edges)


def kruskal(graph: Multigraph, order: Iterable[int], uf: UnionFind | None = None) -> list[int]:
    """Edges of ``order`` accepted by a Kruskal scan, in scan order."""
    uf = UnionFind(graph.n) if uf is None else uf
    ends = graph.ends
    return [e for e in order if uf.union(*ends[e])]


def mst(graph: Multigraph, weights, tie_order: Sequence[int] | None = None) -> frozenset[int]:
    """Minimum spanning tree; equal weights are resolved by ``tie_order``
    (default: edge id)."""
    usable = _usable(graph, weights)
    if tie_order is None:
        key = lambda e: (weights[e], e)  # noqa: E731
    else:
        pos = {e: i for i, e in enumerate(tie_order)}
        key = lambda e: (weights[e], pos.get(e, len(pos)), e)  # noqa: E731
    uf = UnionFind(graph.n)
    tree = kruskal(graph, sorted(usable, key=key), uf)
    if uf.count > 1:
        raise InstanceError("graph disconnected")
    return frozenset(tree)


def contract(graph: Multigraph, edges: Iterable[int]) -> tuple[Multigraph, list[int], list[int]]:
    """Merge the endpoints of ``edges``.

    Returns the contracted graph, the vertex quotient (old vertex -> new
    vertex, numbered by smallest member) and, for each surviving edge, its
    id in ``graph``.  Parallel edges survive; loops are dropped.
    """
    quotient = graph.union_find(edges).labels()
    n2 = max(quotient, default=-1) + 1
    ends, origin = [], []
    for e, u, v in graph.edges():
        a, b = quotient[u], quotient[v]
        if a != b:
            ends.append((a, b))
            origin.append(e)
    return Multigraph(n2, tuple(ends)), quotient, origin


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All partitions of ``items`` as lists of blocks.

    Restricted-growth strings are produced in lexicographic order, so the
    first partition is the single block and the last is all singletons.
    """
    items = list(items)
    n = len(items)
    if n == 0:
        yield []
        return
    rgs = [0] * n

    def emit():
        blocks: list[list] = [[] for _ in range(max(rgs) + 1)]
        for item, b in zip(items, rgs):
            blocks[b].append(item)
        return blocks

    def rec(i, top):
        if i == n:
            yield emit()
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def shortest_paths(graph: Multigraph, lengths) -> tuple[list[int], list[list[int]]]:
    """All-pairs shortest paths over the usable edges.

    Returns the flat ``n*n`` distance list (``INF`` if unreachable) and a
    next-edge table: ``nxt[u][v]`` is the first edge on the chosen u-v path.
    """
    n = graph.n
    dist = [INF] * (n * n)
    nxt = [[-1] * n for _ in range(n)]
    for v in range(n):
        dist[v * n + v] = 0
    for e in _usable(graph, lengths):
        u, v = graph.ends[e]
        w = lengths[e]
        if w < dist[u * n + v]:
            dist[u * n + v] = dist[v * n + u] = w
            nxt[u][v] = nxt[v][u] = e
    for k in range(n):
        kn = k * n
        for i in range(n):
            dik = dist[i * n + k]
            if dik >= INF:
                continue
            row = i * n
            nk = nxt[i][k]
            for j in range(n):
                alt = dik + dist[kn + j]
                if alt < dist[row + j]:
                    dist[row + j] = alt
                    nxt[i][j] = nk
    return dist, nxt


def _path_edges(graph: Multigraph, nxt, u: int, v: int) -> list[int]:
    out = []
    while u != v:
        e = nxt[u][v]
        out.append(e)
        a, b = graph.ends[e]
        u = b if a == u else a
    return out


class SteinerSolver:
    """Exact Steiner trees for every subset of a fixed terminal universe.

    One Dreyfus-Wagner table is built over ``universe``; trees and forests
    for any subsets are read back from it.
    """

    def __init__(self, graph: Multigraph, lengths, universe: Iterable[int], cap: int = 14):
        self.graph = graph
        self.lengths = lengths
        self.universe = sorted(set(universe))
        if len(self.universe) > cap:
            raise CapExceeded(f"{len(self.universe)} terminals exceed the cap of {cap}")
        self.index = {t: i for i, t in enumerate(self.universe)}
        self.dist, self.nxt = shortest_paths(graph, lengths)
        self.cost, self.split, self.pred = speedups.dreyfus_wagner(graph.n, self.dist, self.universe)
        self._trees: dict[int, frozenset[int] | None] = {}

    def _mask(self, terminals: Iterable[int]) -> int:
        mask = 0
        for t in terminals:
            if t not in self.index:
                raise InstanceError(f"vertex {t} is not in the terminal universe")
            mask |= 1 << self.index[t]
        return mask

    def tree(self, terminals: Iterable[int]) -> frozenset[int] | None:
        """Minimum tree joining ``terminals``; ``None`` if they are disconnected."""
        mask = self._mask(terminals)
        if mask not in self._trees:
            self._trees[mask] = self._build(mask)
        return self._trees[mask]

    def _build(self, mask: int) -> frozenset[int] | None:
        if mask & (mask - 1) == 0:
            return frozenset()
        n = self.graph.n
        root = self.universe[(mask & -mask).bit_length() - 1]
        if self.cost[mask * n + root] >= INF:
            return None
        edges: set[int] = set()
        stack = [(mask, root)]
        while stack:
            sub, v = stack.pop()
            u = self.pred[sub * n + v]
            edges.update(_path_edges(self.graph, self.nxt, u, v))
            s = self.split[sub * n + v]
            if s:
                stack.append((s, u))
                stack.append((sub ^ s, u))
        # zero-length edges can close cycles in the union of paths
        order = sorted(edges, key=lambda e: (self.lengths[e], e))
        return frozenset(kruskal(self.graph, order))

    def forest(self, blocks: Sequence[Iterable[int]]) -> frozenset[int] | None:
        """Minimum forest in which each block lies inside one component."""
        blocks = [sorted(set(b)) for b in blocks]
        blocks = [b for b in blocks if len(b) > 1]
        best, best_len = None, None
        for part in set_partitions(range(len(blocks))):
            trees = []
            for cls in part:
                t = self.tree(chain.from_iterable(blocks[i] for i in cls))
                if t is None:
                    break
                trees.append(t)
            else:
                value = sum(length_of(t, self.lengths) for t in trees)
                if best_len is None or value < best_len:
                    best_len = value
                    best = frozenset().union(*trees)
        if best is None:
            return None
        order = sorted(best, key=lambda e: (self.lengths[e], e))
        return frozenset(kruskal(self.graph, order))

    def sf_plus(self, blocks: Sequence[Iterable[int]]) -> frozenset[int] | None:
        """SF+ solution of length at most twice the optimum.

        Exact Steiner forest first; then every terminal and every vertex the
        forest attaches to one is merged into a single vertex and an MST of
        the merged graph is added.
        """
        F = self.forest(blocks)
        if F is None:
            return None
        graph = self.graph
        uf = UnionFind(graph.n)
        for e in F:
            uf.union(*graph.ends[e])
        terminals = sorted(set(chain.from_iterable(blocks)))
        for t in terminals[1:]:
            uf.union(terminals[0], t)
        order = sorted(_usable(graph, self.lengths), key=lambda e: (self.lengths[e], e))
        T = kruskal(graph, order, uf)
        if uf.count > 1:
            return None
        return F | frozenset(T)


def steiner_tree(graph: Multigraph, lengths, terminals: Iterable[int], cap: int = 10) -> frozenset[int]:
    terminals = sorted(set(terminals))
    tree = SteinerSolver(graph, lengths, terminals, cap).tree(terminals)
    if tree is None:
        raise InstanceError("terminals disconnected")
    return tree


def steiner_forest(graph: Multigraph, lengths, blocks: Sequence[Iterable[int]], cap: int = 10) -> frozenset[int]:
    blocks = [list(b) for b in blocks]
    solver = SteinerSolver(graph, lengths, chain.from_iterable(b for b in blocks if len(set(b)) > 1), cap)
    forest = solver.forest(blocks)
    if forest is None:
        raise InstanceError("some terminal set is disconnected")
    return forest


def sf_plus_2approx(graph: Multigraph, lengths, blocks: Sequence[Iterable[int]], cap: int = 10) -> frozenset[int]:
    blocks = [list(b) for b in blocks]
    solver = SteinerSolver(graph, lengths, chain.from_iterable(b for b in blocks if len(set(b)) > 1), cap)
    out = solver.sf_plus(blocks)
    if out is None:
        raise InstanceError("graph disconnected")
    return out


def disjoint_connecting_forests(
    graph: Multigraph,
    classes: Sequence[Iterable[int]],
    lengths=None,
    *,
    edges: Iterable[int] | None = None,
    budget: int = 2_000_000,
) -> list[frozenset[int]] | None:
    """Vertex-disjoint trees, the i-th spanning ``classes[i]``.

    Without ``lengths`` the first feasible assignment is returned; with
    ``lengths`` the total length is minimised.  Exhaustive backtracking
    assigns every non-terminal to one class or to none, pruning as soon as a
    class can no longer be connected.  Returns ``None`` when no disjoint
    trees exist and raises :class:`BudgetExceeded` after ``budget`` search
    nodes.
    """
    n = graph.n
    classes = [sorted(set(s)) for s in classes]
    k = len(classes)
    label = [-2] * n  # -2 undecided, -1 unused
    for i, s in enumerate(classes):
        for v in s:
            if label[v] != -2:
                raise InstanceError("terminal sets must be pairwise disjoint")
            label[v] = i
    if edges is not None:
        usable = sorted(set(edges))
    elif lengths is not None:
        usable = _usable(graph, lengths)
    else:
        usable = list(range(graph.m))
    weight = (lambda e: lengths[e]) if lengths is not None else (lambda e: 0)
    order = sorted(usable, key=lambda e: (weight(e), e))
    ends = graph.ends
    free = [v for v in range(n) if label[v] == -2]
    nodes = 0

    def connectable(i: int) -> bool:
        uf = UnionFind(n)
        for e in usable:
            u, v = ends[e]
            if label[u] in (i, -2) and label[v] in (i, -2):
                uf.union(u, v)
        members = [v for v in range(n) if label[v] == i]
        return not members or all(uf.connected(members[0], v) for v in members[1:])

    def trees() -> list[frozenset[int]]:
        out = []
        for i in range(k):
            picked = [e for e in order if label[ends[e][0]] == i and label[ends[e][1]] == i]
            out.append(frozenset(kruskal(graph, picked)))
        return out

    best: list = [None, None]

    def visit(pos: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"search exceeded {budget} nodes")
        if pos == len(free):
            found = trees()
            if lengths is None:
                best[0] = found
                return True
            value = sum(length_of(t, lengths) for t in found)
            if best[1] is None or value < best[1]:
                best[0], best[1] = found, value
            return False
        v = free[pos]
        for lab in [*range(k), -1]:
            label[v] = lab
            if all(connectable(i) for i in range(k)) and visit(pos + 1):
                return True
        label[v] = -2
        return False

    if all(connectable(i) for i in range(k)):
        visit(0)
    return best[0]
