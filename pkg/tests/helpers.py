"""Random inputs for the tests (independent of the package's generators)."""

import random

from hypothesis import strategies as st

from bmst.core import BmstInstance, Multigraph


def random_instance(rng, n=None, mL=None, mF=None, cmax=4, dmax=3, shuffle_pref=True):
    """Connected instance: a random spanning tree plus random extra edges,
    with ownership dealt out at random.  Edge counts are raised when they
    cannot connect ``n`` vertices."""
    n = n or rng.randint(2, 6)
    kL = mL if mL is not None else rng.randint(0, 6)
    kF = mF if mF is not None else rng.randint(0, 5)
    while kL + kF < n - 1:
        if rng.random() < 0.5:
            kL += 1
        else:
            kF += 1
    ends = [(rng.randrange(v), v) for v in range(1, n)]
    ends += [tuple(rng.sample(range(n), 2)) for _ in range(kL + kF - len(ends))]
    owners = ["L"] * kL + ["F"] * kF
    rng.shuffle(ends)
    rng.shuffle(owners)
    rows = [(u, v, o, rng.randint(0, cmax), rng.randint(0, dmax)) for (u, v), o in zip(ends, owners)]
    inst = BmstInstance.build(n, rows)
    if shuffle_pref:
        # any order consistent with d is a legal preference
        keys = {e: (inst.d[e], rng.random()) for e in inst.follower_edges}
        inst = inst.with_pref(sorted(inst.follower_edges, key=keys.get))
    return inst


def random_graph(rng, n, extra, max_len=5):
    """Connected multigraph: random tree plus ``extra`` random edges."""
    ends = [(rng.randrange(v), v) for v in range(1, n)]
    ends += [tuple(rng.sample(range(n), 2)) for _ in range(extra)]
    rng.shuffle(ends)
    return Multigraph(n, tuple(ends)), [rng.randint(0, max_len) for _ in ends]


def random_classes(rng, n, sizes):
    pool = rng.sample(range(n), sum(sizes))
    out, at = [], 0
    for s in sizes:
        out.append(pool[at:at + s])
        at += s
    return out


@st.composite
def instances(draw, max_n=6, max_leader=6, max_follower=5, cmax=5, dmax=3):
    n = draw(st.integers(2, max_n))
    tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    extra = draw(st.lists(pair, max_size=max_leader + max_follower - len(tree)))
    ends = tree + extra
    owners = draw(st.lists(st.sampled_from("LF"), min_size=len(ends), max_size=len(ends)))
    if owners.count("L") > max_leader or owners.count("F") > max_follower:
        owners = ["L" if i < max_leader else "F" for i in range(len(ends))]
    rows = [(u, v, o, draw(st.integers(0, cmax)), draw(st.integers(0, dmax))) for (u, v), o in zip(ends, owners)]
    perm = draw(st.permutations(range(len(rows))))
    return BmstInstance.build(n, [rows[i] for i in perm])


def seeded(seed):
    return random.Random(seed)


def random_sizes(rng, n, kmax=3, smax=3):
    """Between 1 and ``kmax`` class sizes that fit into ``n`` vertices."""
    sizes = [rng.randint(1, smax) for _ in range(rng.randint(1, kmax))]
    while sum(sizes) > n:
        if sizes[-1] > 1:
            sizes[-1] -= 1
        else:
            sizes.pop()
    return sizes
