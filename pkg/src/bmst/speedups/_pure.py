"""Reference implementations of the hot kernels.

Every function here has a twin in ``_native.pyx`` with the identical
signature and identical output, including iteration order.  Vertices and
edges are passed as parallel integer sequences so both backends share one
calling convention.
"""

INF = 1 << 62


def greedy_scan(n, xu, xv, fu, fv):
    """Kruskal scan of the candidate edges after merging the fixed edges.

    Returns the positions (into ``fu``/``fv``) of the accepted candidates and
    the number of components left afterwards.  Fixed edges that close a cycle
    are skipped silently.
    """
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for a, b in zip(xu, xv):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    accepted = []
    for i, (a, b) in enumerate(zip(fu, fv)):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
            accepted.append(i)
    return accepted, comps


class _RollbackDSU:
    __slots__ = ("parent", "size", "history")

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history = []

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append(rb)
        return True

    def undo(self):
        rb = self.history.pop()
        ra = self.parent[rb]
        self.size[ra] -= self.size[rb]
        self.parent[rb] = rb


def acyclic_subsets(n, lu, lv):
    """Yield every acyclic subset of the given edges as a sorted index tuple.

    Order is lexicographic on the sorted tuples, starting with ``()``.  A
    subtree is pruned as soon as its newest edge closes a cycle.
    """
    m = len(lu)
    dsu = _RollbackDSU(n)
    chosen = []

    def visit(start):
        yield tuple(chosen)
        for j in range(start, m):
            if dsu.union(lu[j], lv[j]):
                chosen.append(j)
                yield from visit(j + 1)
                chosen.pop()
                dsu.undo()

    yield from visit(0)


def brute_force_greedy(n, lu, lv, lc, fu, fv, fc, bottleneck):
    """Best acyclic leader subset against a greedy follower.

    The follower edges must already be in scan order.  The leader value is the
    sum (or, with ``bottleneck``, the maximum) of ``lc``/``fc`` over the final
    spanning tree.  Ties keep the lexicographically first subset.  Returns
    ``None`` when no subset can be completed, else ``(value, leader_indices,
    follower_positions)``.
    """
    m = len(lu)
    mf = len(fu)
    dsu = _RollbackDSU(n)
    chosen = []
    best = [None, (), ()]

    def evaluate(x_value):
        parent = dsu.parent[:]

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        need = n - 1 - len(chosen)
        value = x_value
        taken = []
        for i in range(mf):
            if len(taken) == need:
                break
            ra, rb = find(fu[i]), find(fv[i])
            if ra != rb:
                parent[ra] = rb
                taken.append(i)
                if bottleneck:
                    if fc[i] > value:
                        value = fc[i]
                else:
                    value += fc[i]
        if len(taken) != need:
            return
        if best[0] is None or value < best[0]:
            best[0] = value
            best[1] = tuple(chosen)
            best[2] = tuple(taken)

    def visit(start, x_value):
        evaluate(x_value)
        for j in range(start, m):
            if dsu.union(lu[j], lv[j]):
                chosen.append(j)
                if bottleneck:
                    visit(j + 1, lc[j] if lc[j] > x_value else x_value)
                else:
                    visit(j + 1, x_value + lc[j])
                chosen.pop()
                dsu.undo()

    visit(0, 0)
    if best[0] is None:
        return None
    return best[0], best[1], best[2]


def dreyfus_wagner(n, dist, terminals):
    """Dreyfus-Wagner table over all terminal subsets.

    ``dist`` is the flat ``n*n`` shortest-path matrix (``INF`` = unreachable).
    Returns flat lists ``cost``, ``split`` and ``pred`` indexed by
    ``mask * n + v``: ``cost`` is the cheapest tree joining the terminals in
    ``mask`` and vertex ``v``; it is reached from vertex ``pred`` by a
    shortest path, and at ``pred`` the tree splits into submask ``split``
    and its complement (``split == 0`` marks a single terminal sitting at
    ``pred``).
    """
    t = len(terminals)
    full = 1 << t
    cost = [INF] * (full * n)
    split = [0] * (full * n)
    pred = [-1] * (full * n)
    merged = [INF] * n
    merged_split = [0] * n
    for mask in range(1, full):
        low = mask & -mask
        base = mask * n
        if mask == low:
            term = terminals[low.bit_length() - 1]
            for v in range(n):
                merged[v] = INF
                merged_split[v] = 0
            merged[term] = 0
        else:
            for v in range(n):
                best = INF
                best_sub = 0
                sub = (mask - 1) & mask
                while sub:
                    if sub & low:
                        a = cost[sub * n + v]
                        b = cost[(mask ^ sub) * n + v]
                        if a < INF and b < INF and a + b < best:
                            best = a + b
                            best_sub = sub
                    sub = (sub - 1) & mask
                merged[v] = best
                merged_split[v] = best_sub
        for v in range(n):
            best = INF
            best_u = -1
            for u in range(n):
                a = merged[u]
                duv = dist[u * n + v]
                if a < INF and duv < INF and a + duv < best:
                    best = a + duv
                    best_u = u
            cost[base + v] = best
            pred[base + v] = best_u
            if best_u >= 0:
                split[base + v] = merged_split[best_u]
    return cost, split, pred
