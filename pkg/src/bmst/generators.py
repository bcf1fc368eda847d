"""Instance generators.

The constructive reductions turn Steiner-forest and disjoint-Steiner-tree
inputs into bilevel instances whose optimum is tied to the source problem
by a checkable identity.  ``gen_random`` and friends draw seeded random
inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import BmstInstance, InstanceError, Multigraph, Owner, ParseError

L, F = Owner.LEADER, Owner.FOLLOWER

TOPOLOGIES = ("path", "star", "arbitrary")


@dataclass(frozen=True)
class TerminalInstance:
    """Graph, edge lengths and disjoint terminal classes (``.stf`` files)."""

    graph: Multigraph
    lengths: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.lengths) != self.graph.m:
            raise InstanceError("one length per edge required")
        if any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in self.lengths):
            raise InstanceError("lengths must be non-negative integers")
        seen: set[int] = set()
        for cls in self.classes:
            for v in cls:
                if not 0 <= v < self.graph.n:
                    raise InstanceError(f"terminal {v} outside 0..{self.graph.n - 1}")
                if v in seen:
                    raise InstanceError(f"vertex {v} appears in two terminal sets")
                seen.add(v)
        if not self.graph.is_connected():
            raise InstanceError("graph disconnected")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def terminals(self) -> set[int]:
        return {v for cls in self.classes for v in cls}


def parse_stf(text: str) -> TerminalInstance:
    n = None
    ends, lengths = [], []
    classes: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            nums = [int(t, 10) for t in tok[1:]]
        except ValueError:
            raise ParseError("expected integers", lineno) from None
        if tok[0] == "vertices" and len(nums) == 1 and n is None:
            n = nums[0]
        elif tok[0] == "edge" and len(nums) == 3 and n is not None:
            u, v, w = nums
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParseError("bad edge endpoints", lineno)
            if w < 0:
                raise ParseError("negative length", lineno)
            ends.append((u, v))
            lengths.append(w)
        elif tok[0] == "terminals" and len(nums) >= 1 and n is not None:
            if nums[0] in classes:
                raise ParseError(f"terminal class {nums[0]} repeated", lineno)
            if any(not 0 <= v < n for v in nums[1:]):
                raise ParseError("terminal outside the vertex range", lineno)
            classes[nums[0]] = nums[1:]
        else:
            raise ParseError(f"malformed line {line!r}", lineno)
    if n is None:
        raise ParseError("missing 'vertices' line")
    try:
        return TerminalInstance(Multigraph(n, tuple(ends)), tuple(lengths),
                                tuple(tuple(classes[k]) for k in sorted(classes)))
    except InstanceError as exc:
        raise ParseError(str(exc)) from None


def write_stf(sf: TerminalInstance) -> str:
    lines = [f"vertices {sf.n}"]
    lines += [f"edge {u} {v} {w}" for (u, v), w in zip(sf.graph.ends, sf.lengths)]
    lines += [" ".join(map(str, ["terminals", i, *cls])) for i, cls in enumerate(sf.classes)]
    return "\n".join(lines) + "\n"


# --- follower tree shapes --------------------------------------------------

def _class_tree(cls: Sequence[int], topology: str, rng: random.Random) -> list[tuple[int, int]]:
    if topology == "path":
        return list(zip(cls, cls[1:]))
    if topology == "star":
        return [(cls[0], v) for v in cls[1:]]
    order = list(cls)
    rng.shuffle(order)
    return [(order[rng.randrange(i)], v) for i, v in enumerate(order) if i]


def _joining_edges(n: int, classes, topology: str, rng: random.Random) -> list[tuple[int, int]]:
    """Edges that join the class trees and the remaining vertices into one tree."""
    covered = {v for cls in classes for v in cls}
    groups = [list(c) for c in classes if c] + [[v] for v in range(n) if v not in covered]
    if topology == "path":
        walk = [v for g in groups for v in g]
        return [(g_prev[-1], g[0]) for g_prev, g in zip(groups, groups[1:])] if walk else []
    if topology == "star":
        hub = groups[0][0]
        return [(hub, g[0]) for g in groups[1:]]
    order = groups[:]
    rng.shuffle(order)
    return [(rng.choice(order[rng.randrange(i)]), rng.choice(g)) for i, g in enumerate(order) if i]


def _from_sf(sf: TerminalInstance, topology: str, seed: int, zero_d: bool) -> BmstInstance:
    if topology not in TOPOLOGIES:
        raise ValueError(f"topology must be one of {TOPOLOGIES}")
    rng = random.Random(seed)
    M = sum(sf.lengths) + 1
    rows = [(u, v, L, w, 0) for (u, v), w in zip(sf.graph.ends, sf.lengths)]
    for cls in sf.classes:
        rows += [(u, v, F, M, 0) for u, v in _class_tree(cls, topology, rng)]
    link_d = 0 if zero_d else 1
    rows += [(u, v, F, 0, link_d) for u, v in _joining_edges(sf.n, sf.classes, topology, rng)]
    return BmstInstance.build(sf.n, rows)


def gen_from_steiner_forest(sf: TerminalInstance, topology: str = "path", seed: int = 0) -> BmstInstance:
    """Bilevel instance whose sum/sum optimum equals the Steiner-forest optimum.

    The leader owns the input graph at cost ``length``.  The follower owns a
    spanning tree: expensive-for-the-leader edges (cost ``M``, follower cost
    0) inside each terminal class, free edges (follower cost 1) joining the
    rest.  ``topology`` shapes that tree; a star is centred at the first
    listed terminal.
    """
    return _from_sf(sf, topology, seed, zero_d=False)


def gen_sum_bn_pess_from_sf(sf: TerminalInstance, topology: str = "path", seed: int = 0) -> BmstInstance:
    """As :func:`gen_from_steiner_forest` with every follower cost 0; the
    optimum is kept under a pessimistic bottleneck follower."""
    return _from_sf(sf, topology, seed, zero_d=True)


def _two_classes(vdst: TerminalInstance) -> tuple[Sequence[int], Sequence[int]]:
    if len(vdst.classes) != 2 or not all(vdst.classes):
        raise InstanceError("exactly two non-empty terminal sets required")
    return vdst.classes


def gen_bmstr_from_vdst(vdst: TerminalInstance) -> tuple[BmstInstance, frozenset[int]]:
    """Instance and target response: enforceable iff disjoint trees exist.

    Follower paths run through each terminal set in listed order at
    follower cost 0; a bridge between the two first-listed terminals costs
    the follower 1 and is the target response.
    """
    S, T = _two_classes(vdst)
    rows = [(u, v, L, 1, 0) for u, v in vdst.graph.ends]
    rows += [(u, v, F, 0, 0) for u, v in [*zip(S, S[1:]), *zip(T, T[1:])]]
    bridge = len(rows)
    rows.append((S[0], T[0], F, 0, 1))
    return BmstInstance.build(vdst.n, rows), frozenset([bridge])


def svdst_constants(svdst: TerminalInstance) -> tuple[int, int, int]:
    """``(M, offset, floor)``: feasible inputs score ``optimum + offset``,
    infeasible ones at least ``floor``."""
    M = sum(svdst.lengths) + 1
    n, k = svdst.n, len(svdst.classes)
    return M, M * (n - k), M * (n - k + 1)


def gen_from_svdst(svdst: TerminalInstance) -> BmstInstance:
    """Bilevel instance whose optimum exceeds the shortest disjoint trees by
    a fixed offset (see :func:`svdst_constants`).

    Adds a hub vertex ``n``.  Leader edges: the input graph at
    ``length + M`` and hub spokes to every non-terminal at ``M``.  Follower
    edges: a path through each terminal set (cost ``M * n``, follower cost
    0) and a chain hub, s_1, s_2, ... through the first-listed terminals
    (cost 0, follower cost 1).
    """
    if not svdst.classes or not all(svdst.classes):
        raise InstanceError("terminal sets must be non-empty")
    M, _, _ = svdst_constants(svdst)
    n = svdst.n
    hub = n
    terms = svdst.terminals
    rows = [(u, v, L, w + M, 0) for (u, v), w in zip(svdst.graph.ends, svdst.lengths)]
    rows += [(hub, v, L, M, 0) for v in range(n) if v not in terms]
    for cls in svdst.classes:
        rows += [(u, v, F, M * n, 0) for u, v in zip(cls, cls[1:])]
    heads = [hub, *(cls[0] for cls in svdst.classes)]
    rows += [(u, v, F, 0, 1) for u, v in zip(heads, heads[1:])]
    return BmstInstance.build(n + 1, rows)


def gen_bnbn_opt_from_vdst(vdst: TerminalInstance) -> BmstInstance:
    """Bottleneck/bottleneck instance with optimistic optimum 0 iff disjoint
    trees exist, and 1 otherwise."""
    S, T = _two_classes(vdst)
    hub = vdst.n
    rows = [(u, v, L, 0, 0) for u, v in vdst.graph.ends]
    rows += [(u, v, F, 1, 0) for u, v in [*zip(S, S[1:]), *zip(T, T[1:])]]
    rows += [(S[0], T[0], F, 0, 1), (hub, S[0], F, 0, 1), (hub, T[0], F, 1, 0)]
    return BmstInstance.build(vdst.n + 1, rows)


# --- random inputs ---------------------------------------------------------

def _random_tree(rng: random.Random, n: int) -> list[tuple[int, int]]:
    order = list(range(n))
    rng.shuffle(order)
    return [(order[rng.randrange(i)], v) for i, v in enumerate(order) if i]


def _random_pair(rng: random.Random, n: int) -> tuple[int, int]:
    u, v = rng.sample(range(n), 2)
    return u, v


def gen_random(
    seed: int,
    n: int,
    mL: int,
    mF: int,
    c_max: int = 9,
    d_max: int = 9,
    spanning_owner: Owner | None = None,
) -> BmstInstance:
    """Seeded connected instance with ``mL`` leader and ``mF`` follower edges.

    A random spanning tree is drawn first, extra edges are sprinkled on top,
    then ownership is dealt out uniformly.  With ``spanning_owner`` the
    spanning tree goes to that side (which must then have at least
    ``n - 1`` edges).
    """
    if n < 1 or mL < 0 or mF < 0 or c_max < 0 or d_max < 0:
        raise InstanceError("parameters must be non-negative and n positive")
    if mL + mF < n - 1:
        raise InstanceError(f"{mL + mF} edges cannot connect {n} vertices")
    if n == 1 and mL + mF:
        raise InstanceError("a single vertex admits no edges")
    rng = random.Random(seed)
    tree = _random_tree(rng, n)
    extra = [_random_pair(rng, n) for _ in range(mL + mF - len(tree))]
    if spanning_owner is None:
        owners = [L] * mL + [F] * mF
        rng.shuffle(owners)
        pairs = list(zip(tree + extra, owners))
    else:
        other = F if spanning_owner is L else L
        own_count = mL if spanning_owner is L else mF
        if own_count < len(tree):
            raise InstanceError("too few edges for the spanning side")
        rest = [spanning_owner] * (own_count - len(tree)) + [other] * (mL + mF - own_count)
        rng.shuffle(rest)
        pairs = [(e, spanning_owner) for e in tree] + list(zip(extra, rest))
    rng.shuffle(pairs)
    rows = [(u, v, o, rng.randint(0, c_max), rng.randint(0, d_max)) for (u, v), o in pairs]
    return BmstInstance.build(n, rows)


def random_graph(rng: random.Random, n: int, m: int, max_len: int = 5) -> tuple[Multigraph, tuple[int, ...]]:
    """Connected multigraph with ``max(m, n-1)`` edges and random lengths."""
    ends = _random_tree(rng, n)
    ends += [_random_pair(rng, n) for _ in range(m - len(ends))]
    rng.shuffle(ends)
    return Multigraph(n, tuple(ends)), tuple(rng.randint(0, max_len) for _ in ends)


def random_terminal_instance(
    rng: random.Random, n: int, m: int, sizes: Iterable[int], max_len: int = 5
) -> TerminalInstance:
    """Random connected graph with disjoint terminal classes of the given sizes."""
    sizes = list(sizes)
    if sum(sizes) > n:
        raise InstanceError("terminal classes do not fit")
    graph, lengths = random_graph(rng, n, m, max_len)
    pool = rng.sample(range(n), sum(sizes))
    classes, at = [], 0
    for s in sizes:
        classes.append(tuple(pool[at:at + s]))
        at += s
    return TerminalInstance(graph, lengths, tuple(classes))
