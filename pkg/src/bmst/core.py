"""Multigraph and instance model, objective variants, `.bmst` I/O, evaluation.

Vertices are ``0..n-1`` and edge ids are dense ``0..m-1``; an edge id is
its index into :attr:`Multigraph.ends`.  Costs are non-negative Python
integers so threshold constants built by the reductions compare exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Iterable, Iterator

from ._uf import UnionFind


class InstanceError(ValueError):
    """An instance violates one of the model invariants."""


class ParseError(InstanceError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Infeasible(Exception):
    """No leader choice (or no follower completion) exists."""


class CapExceeded(Exception):
    """Input is larger than the configured enumeration budget."""


class BudgetExceeded(CapExceeded):
    """A search ran past its node limit."""


class Owner(enum.Enum):
    LEADER = "L"
    FOLLOWER = "F"


class Form(enum.Enum):
    SUM = "sum"
    BOTTLENECK = "bn"


class Scope(enum.Enum):
    OWN = "own"
    ALL = "all"


class Tie(enum.Enum):
    OPTIMISTIC = "opt"
    PESSIMISTIC = "pess"
    FIXED = "fixed"


@dataclass(frozen=True)
class ObjectiveSpec:
    """One of the leader/follower objective combinations.

    ``follower_scope`` only matters for a bottleneck follower.  ``tie_mode``
    picks among equally good follower responses: ``FIXED`` scans the
    instance's own preference order.
    """

    leader_form: Form = Form.SUM
    follower_form: Form = Form.SUM
    follower_scope: Scope = Scope.OWN
    tie_mode: Tie = Tie.FIXED


SUM_SUM = ObjectiveSpec()


@dataclass(frozen=True)
class Multigraph:
    n: int
    ends: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError("negative vertex count")
        for i, (u, v) in enumerate(self.ends):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InstanceError(f"edge {i} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InstanceError(f"edge {i} is a loop")

    @property
    def m(self) -> int:
        return len(self.ends)

    def edges(self, ids: Iterable[int] | None = None) -> Iterator[tuple[int, int, int]]:
        ids = range(len(self.ends)) if ids is None else ids
        for e in ids:
            u, v = self.ends[e]
            yield e, u, v

    def union_find(self, ids: Iterable[int] | None = None) -> UnionFind:
        uf = UnionFind(self.n)
        for _, u, v in self.edges(ids):
            uf.union(u, v)
        return uf

    def components(self, ids: Iterable[int] | None = None) -> list[list[int]]:
        """Vertex sets of the components of ``(V, ids)``, ordered by least vertex."""
        labels = self.union_find(ids).labels()
        out: list[list[int]] = [[] for _ in range(max(labels, default=-1) + 1)]
        for v, lab in enumerate(labels):
            out[lab].append(v)
        return out

    def is_connected(self, ids: Iterable[int] | None = None) -> bool:
        return self.n <= 1 or self.union_find(ids).count == 1

    def is_forest(self, ids: Iterable[int] | None = None) -> bool:
        uf = UnionFind(self.n)
        return all(uf.union(u, v) for _, u, v in self.edges(ids))

    def is_spanning_tree(self, ids: Iterable[int]) -> bool:
        ids = list(ids)
        return len(ids) == max(self.n - 1, 0) and len(set(ids)) == len(ids) and self.is_forest(ids)


def _check_cost(value, what: str, e: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError(f"{what}({e}) must be an integer")
    if value < 0:
        raise InstanceError(f"negative cost {what}({e}) = {value}")
    return value


@dataclass(frozen=True)
class BmstInstance:
    """A bilevel MST instance.

    ``owner``, ``c`` and ``d`` are indexed by edge id.  ``pref`` lists every
    follower edge once, in the order the follower scans them; it must be
    consistent with ``d``.
    """

    graph: Multigraph
    owner: tuple[Owner, ...]
    c: tuple[int, ...]
    d: tuple[int, ...]
    pref: tuple[int, ...] = field(default=())

    def __post_init__(self):
        m = self.graph.m
        if not (len(self.owner) == len(self.c) == len(self.d) == m):
            raise InstanceError("owner/c/d must have one entry per edge")
        for e in range(m):
            _check_cost(self.c[e], "c", e)
            _check_cost(self.d[e], "d", e)
        if not self.graph.is_connected():
            raise InstanceError("graph disconnected")
        follower = [e for e in range(m) if self.owner[e] is Owner.FOLLOWER]
        if not self.pref and follower:
            object.__setattr__(self, "pref", default_pref(self.c, self.d, follower))
        if sorted(self.pref) != follower:
            raise InstanceError("pref must list every follower edge exactly once")
        for a, b in zip(self.pref, self.pref[1:]):
            if self.d[a] > self.d[b]:
                raise InstanceError(f"pref inconsistent with d: edge {a} (d={self.d[a]}) before edge {b} (d={self.d[b]})")

    @classmethod
    def build(cls, n: int, edges: Iterable[tuple], pref: Iterable[int] | None = None) -> "BmstInstance":
        """Instance from ``(u, v, owner, c, d)`` rows; edge ids follow row order."""
        rows = list(edges)
        graph = Multigraph(n, tuple((int(u), int(v)) for u, v, *_ in rows))
        owner = tuple(o if isinstance(o, Owner) else Owner(o) for _, _, o, _, _ in rows)
        return cls(graph, owner, tuple(r[3] for r in rows), tuple(r[4] for r in rows), tuple(pref or ()))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @cached_property
    def leader_edges(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.m) if self.owner[e] is Owner.LEADER)

    @cached_property
    def follower_edges(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.m) if self.owner[e] is Owner.FOLLOWER)

    def rows(self) -> list[tuple[int, int, Owner, int, int]]:
        return [(u, v, self.owner[e], self.c[e], self.d[e]) for e, u, v in self.graph.edges()]

    def with_pref(self, pref: Iterable[int]) -> "BmstInstance":
        return BmstInstance(self.graph, self.owner, self.c, self.d, tuple(pref))

    def check_choice(self, X: Iterable[int]) -> frozenset[int]:
        """Validate a leader choice: leader-owned and acyclic."""
        X = frozenset(X)
        for e in X:
            if not 0 <= e < self.m or self.owner[e] is not Owner.LEADER:
                raise InstanceError(f"edge {e} is not a leader edge")
        if not self.graph.is_forest(sorted(X)):
            raise InstanceError("leader choice contains a cycle")
        return X


def default_pref(c, d, follower: Iterable[int], tie: Tie = Tie.OPTIMISTIC) -> tuple[int, ...]:
    """Follower scan order ``(d, c, id)``; ``(d, -c, id)`` when pessimistic."""
    sign = -1 if tie is Tie.PESSIMISTIC else 1
    return tuple(sorted(follower, key=lambda e: (d[e], sign * c[e], e)))


@dataclass
class SolveReport:
    choice: frozenset[int]
    response: frozenset[int]
    leader_value: int
    follower_value: int
    method: str
    feasible: bool = True
    info: dict = field(default_factory=dict)


# --- `.bmst` text format ---------------------------------------------------

def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token, 10)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", lineno) from None
    return value


def parse_instance(text: str) -> BmstInstance:
    header = False
    n = None
    rows: dict[int, tuple] = {}
    pref = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if not header:
            if tok != ["bmst", "1"]:
                raise ParseError("expected header 'bmst 1'", lineno)
            header = True
        elif tok[0] == "vertices":
            if n is not None or len(tok) != 2:
                raise ParseError("malformed or repeated 'vertices' line", lineno)
            n = _parse_int(tok[1], lineno, "vertex count")
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
        elif tok[0] == "edge":
            if n is None:
                raise ParseError("'edge' before 'vertices'", lineno)
            if len(tok) != 7:
                raise ParseError("expected 'edge <id> <u> <v> <L|F> <c> <d>'", lineno)
            eid, u, v = (_parse_int(t, lineno, "edge field") for t in tok[1:4])
            if tok[4] not in ("L", "F"):
                raise ParseError(f"owner must be L or F, got {tok[4]!r}", lineno)
            c = _parse_int(tok[5], lineno, "leader cost")
            d = _parse_int(tok[6], lineno, "follower cost")
            if c < 0 or d < 0:
                raise ParseError("negative cost", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"endpoint outside 0..{n - 1}", lineno)
            if u == v:
                raise ParseError("loops are not allowed", lineno)
            if eid in rows:
                raise ParseError(f"duplicate edge id {eid}", lineno)
            rows[eid] = (u, v, Owner(tok[4]), c, d)
        elif tok[0] == "pref":
            if pref is not None:
                raise ParseError("repeated 'pref' line", lineno)
            pref = [_parse_int(t, lineno, "edge id") for t in tok[1:]]
        else:
            raise ParseError(f"unknown keyword {tok[0]!r}", lineno)
    if not header:
        raise ParseError("empty input")
    if n is None:
        raise ParseError("missing 'vertices' line")
    if sorted(rows) != list(range(len(rows))):
        raise ParseError("edge ids must be exactly 0..m-1")
    return BmstInstance.build(n, (rows[i] for i in range(len(rows))), pref)


def write_instance(inst: BmstInstance) -> str:
    lines = ["bmst 1", f"vertices {inst.n}"]
    for e, u, v in inst.graph.edges():
        lines.append(f"edge {e} {u} {v} {inst.owner[e].value} {inst.c[e]} {inst.d[e]}")
    lines.append(" ".join(["pref", *map(str, inst.pref)]))
    return "\n".join(lines) + "\n"


def read_instance(path) -> BmstInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def load_fixture(name: str) -> str:
    """Text of a bundled fixture such as ``fig1.bmst``."""
    return resources.files("bmst").joinpath("data", name).read_text(encoding="utf-8")


# --- evaluation ------------------------------------------------------------

def evaluate(inst: BmstInstance, X: Iterable[int], Y: Iterable[int], spec: ObjectiveSpec = SUM_SUM) -> tuple[int, int]:
    """Leader and follower objective values of the spanning tree ``X ∪ Y``."""
    X, Y = frozenset(X), frozenset(Y)
    if any(inst.owner[e] is not Owner.LEADER for e in X) or any(inst.owner[e] is not Owner.FOLLOWER for e in Y):
        raise InstanceError("X must hold leader edges and Y follower edges")
    tree = sorted(X | Y)
    if not inst.graph.is_spanning_tree(tree):
        raise InstanceError("X ∪ Y is not a spanning tree")
    if spec.leader_form is Form.SUM:
        leader = sum(inst.c[e] for e in tree)
    else:
        leader = max((inst.c[e] for e in tree), default=0)
    if spec.follower_form is Form.SUM:
        follower = sum(inst.d[e] for e in Y)
    else:
        scope = Y if spec.follower_scope is Scope.OWN else X | Y
        follower = max((inst.d[e] for e in scope), default=0)
    return leader, follower
