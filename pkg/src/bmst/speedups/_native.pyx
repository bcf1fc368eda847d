# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pure.py``.

Signatures, return shapes and iteration orders match the pure-Python module
exactly; the test suite runs both backends against each other.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef long long CINF = 4611686018427387904  # 1 << 62

INF = CINF


cdef inline int _find_compress(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef inline int _find(int* parent, int x) nogil:
    while parent[x] != x:
        x = parent[x]
    return x


cdef int* _int_buffer(object seq, Py_ssize_t n) except NULL:
    cdef int* buf = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


cdef long long* _ll_buffer(object seq, Py_ssize_t n) except NULL:
    cdef long long* buf = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


def greedy_scan(int n, xu, xv, fu, fv):
    cdef Py_ssize_t mx = len(xu), mf = len(fu), i
    cdef int* parent = _int_buffer(range(n), n)
    cdef int ra, rb, comps = n
    accepted = []
    try:
        for i in range(mx):
            ra = _find_compress(parent, xu[i])
            rb = _find_compress(parent, xv[i])
            if ra != rb:
                parent[ra] = rb
                comps -= 1
        for i in range(mf):
            ra = _find_compress(parent, fu[i])
            rb = _find_compress(parent, fv[i])
            if ra != rb:
                parent[ra] = rb
                comps -= 1
                accepted.append(i)
    finally:
        free(parent)
    return accepted, comps


cdef struct RollbackDSU:
    int* parent
    int* size
    int* history
    int depth


cdef int _dsu_init(RollbackDSU* d, int n, int max_depth) except -1:
    d.parent = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    d.size = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    d.history = <int*> malloc((max_depth if max_depth > 0 else 1) * sizeof(int))
    if d.parent == NULL or d.size == NULL or d.history == NULL:
        _dsu_free(d)
        raise MemoryError()
    cdef int i
    for i in range(n):
        d.parent[i] = i
        d.size[i] = 1
    d.depth = 0
    return 0


cdef void _dsu_free(RollbackDSU* d) nogil:
    free(d.parent)
    free(d.size)
    free(d.history)
    d.parent = NULL
    d.size = NULL
    d.history = NULL


cdef inline bint _dsu_union(RollbackDSU* d, int a, int b) nogil:
    cdef int ra = _find(d.parent, a), rb = _find(d.parent, b), tmp
    if ra == rb:
        return False
    if d.size[ra] < d.size[rb]:
        tmp = ra
        ra = rb
        rb = tmp
    d.parent[rb] = ra
    d.size[ra] += d.size[rb]
    d.history[d.depth] = rb
    d.depth += 1
    return True


cdef inline void _dsu_undo(RollbackDSU* d) nogil:
    d.depth -= 1
    cdef int rb = d.history[d.depth]
    cdef int ra = d.parent[rb]
    d.size[ra] -= d.size[rb]
    d.parent[rb] = rb


def acyclic_subsets(int n, lu, lv):
    cdef int m = len(lu)
    cdef int* us = _int_buffer(lu, m)
    cdef int* vs = _int_buffer(lv, m)
    cdef int* nxt = <int*> malloc((m + 1) * sizeof(int))
    cdef int* chosen = <int*> malloc((m + 1) * sizeof(int))
    cdef RollbackDSU dsu
    cdef int depth = 0, j, k
    try:
        if nxt == NULL or chosen == NULL:
            raise MemoryError()
        _dsu_init(&dsu, n, m)
        try:
            yield ()
            nxt[0] = 0
            while depth >= 0:
                j = nxt[depth]
                while j < m and not _dsu_union(&dsu, us[j], vs[j]):
                    j += 1
                if j < m:
                    nxt[depth] = j + 1
                    chosen[depth] = j
                    depth += 1
                    nxt[depth] = j + 1
                    yield tuple([chosen[k] for k in range(depth)])
                else:
                    depth -= 1
                    if depth >= 0:
                        _dsu_undo(&dsu)
        finally:
            _dsu_free(&dsu)
    finally:
        free(us)
        free(vs)
        free(nxt)
        free(chosen)


cdef struct BruteState:
    int n
    int m
    int mf
    int* lu
    int* lv
    long long* lc
    int* fu
    int* fv
    long long* fc
    bint bottleneck
    RollbackDSU dsu
    int* chosen
    int depth
    int* scratch
    int* taken
    long long best_value
    bint has_best
    int* best_chosen
    int best_depth
    int* best_taken
    int best_ntaken


cdef void _bf_evaluate(BruteState* s, long long x_value) nogil:
    cdef int need = s.n - 1 - s.depth
    cdef int ntaken = 0, i, ra, rb
    cdef long long value = x_value
    memcpy(s.scratch, s.dsu.parent, s.n * sizeof(int))
    for i in range(s.mf):
        if ntaken == need:
            break
        ra = _find_compress(s.scratch, s.fu[i])
        rb = _find_compress(s.scratch, s.fv[i])
        if ra != rb:
            s.scratch[ra] = rb
            s.taken[ntaken] = i
            ntaken += 1
            if s.bottleneck:
                if s.fc[i] > value:
                    value = s.fc[i]
            else:
                value += s.fc[i]
    if ntaken != need:
        return
    if not s.has_best or value < s.best_value:
        s.has_best = True
        s.best_value = value
        s.best_depth = s.depth
        s.best_ntaken = ntaken
        memcpy(s.best_chosen, s.chosen, s.depth * sizeof(int))
        memcpy(s.best_taken, s.taken, ntaken * sizeof(int))


cdef void _bf_visit(BruteState* s, int start, long long x_value) nogil:
    _bf_evaluate(s, x_value)
    cdef int j
    cdef long long nv
    for j in range(start, s.m):
        if _dsu_union(&s.dsu, s.lu[j], s.lv[j]):
            s.chosen[s.depth] = j
            s.depth += 1
            if s.bottleneck:
                nv = s.lc[j] if s.lc[j] > x_value else x_value
            else:
                nv = x_value + s.lc[j]
            _bf_visit(s, j + 1, nv)
            s.depth -= 1
            _dsu_undo(&s.dsu)


def brute_force_greedy(int n, lu, lv, lc, fu, fv, fc, bint bottleneck):
    cdef BruteState s
    s.n = n
    s.m = len(lu)
    s.mf = len(fu)
    s.bottleneck = bottleneck
    s.depth = 0
    s.has_best = False
    s.best_value = 0
    s.best_depth = 0
    s.best_ntaken = 0
    s.lu = _int_buffer(lu, s.m)
    s.lv = _int_buffer(lv, s.m)
    s.lc = _ll_buffer(lc, s.m)
    s.fu = _int_buffer(fu, s.mf)
    s.fv = _int_buffer(fv, s.mf)
    s.fc = _ll_buffer(fc, s.mf)
    cdef int width = (n if n > 0 else 1) + s.m + s.mf + 1
    s.chosen = <int*> malloc(width * sizeof(int))
    s.best_chosen = <int*> malloc(width * sizeof(int))
    s.taken = <int*> malloc(width * sizeof(int))
    s.best_taken = <int*> malloc(width * sizeof(int))
    s.scratch = <int*> malloc(width * sizeof(int))
    cdef int k
    try:
        if (s.chosen == NULL or s.best_chosen == NULL or s.taken == NULL
                or s.best_taken == NULL or s.scratch == NULL):
            raise MemoryError()
        _dsu_init(&s.dsu, n, s.m)
        try:
            with nogil:
                _bf_visit(&s, 0, 0)
        finally:
            _dsu_free(&s.dsu)
        if not s.has_best:
            return None
        return (
            s.best_value,
            tuple([s.best_chosen[k] for k in range(s.best_depth)]),
            tuple([s.best_taken[k] for k in range(s.best_ntaken)]),
        )
    finally:
        free(s.lu)
        free(s.lv)
        free(s.lc)
        free(s.fu)
        free(s.fv)
        free(s.fc)
        free(s.chosen)
        free(s.best_chosen)
        free(s.taken)
        free(s.best_taken)
        free(s.scratch)


def dreyfus_wagner(int n, dist, terminals):
    cdef int t = len(terminals)
    cdef long long full = 1LL << t
    cdef long long size = full * n
    cdef long long* d = _ll_buffer(dist, n * n)
    cdef int* terms = _int_buffer(terminals, t)
    cdef long long* cost = <long long*> malloc((size if size > 0 else 1) * sizeof(long long))
    cdef long long* split = <long long*> malloc((size if size > 0 else 1) * sizeof(long long))
    cdef int* pred = <int*> malloc((size if size > 0 else 1) * sizeof(int))
    cdef long long* merged = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    cdef long long* merged_split = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    cdef long long mask, low, sub, best, best_sub, a, b, duv, base, i
    cdef int v, u, best_u, term, bit
    try:
        if cost == NULL or split == NULL or pred == NULL or merged == NULL or merged_split == NULL:
            raise MemoryError()
        with nogil:
            for i in range(size):
                cost[i] = CINF
                split[i] = 0
                pred[i] = -1
            for mask in range(1, full):
                low = mask & -mask
                base = mask * n
                if mask == low:
                    bit = 0
                    while (1LL << bit) != low:
                        bit += 1
                    term = terms[bit]
                    for v in range(n):
                        merged[v] = CINF
                        merged_split[v] = 0
                    merged[term] = 0
                else:
                    for v in range(n):
                        best = CINF
                        best_sub = 0
                        sub = (mask - 1) & mask
                        while sub:
                            if sub & low:
                                a = cost[sub * n + v]
                                b = cost[(mask ^ sub) * n + v]
                                if a < CINF and b < CINF and a + b < best:
                                    best = a + b
                                    best_sub = sub
                            sub = (sub - 1) & mask
                        merged[v] = best
                        merged_split[v] = best_sub
                for v in range(n):
                    best = CINF
                    best_u = -1
                    for u in range(n):
                        a = merged[u]
                        duv = d[u * n + v]
                        if a < CINF and duv < CINF and a + duv < best:
                            best = a + duv
                            best_u = u
                    cost[base + v] = best
                    pred[base + v] = best_u
                    if best_u >= 0:
                        split[base + v] = merged_split[best_u]
        return (
            [cost[i] for i in range(size)],
            [split[i] for i in range(size)],
            [pred[i] for i in range(size)],
        )
    finally:
        free(d)
        free(terms)
        free(cost)
        free(split)
        free(pred)
        free(merged)
        free(merged_split)
