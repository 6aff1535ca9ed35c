"""Digraphs, terminal instances and the structural checks everything else relies on.

Vertices are plain hashable, totally ordered labels (strings in practice).  Every
iteration that can influence an output walks vertices in sorted order, so results
are a pure function of the input.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import CyclicGraph, GraphError, UnknownVertex

Vertex = Hashable
Edge = tuple


class Direction(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class Mode(Enum):
    STRICT = "strict"
    RELAXED = "relaxed"


class Digraph:
    """Immutable loop-free digraph without parallel edges.

    Adjacency is stored as sorted tuples; derived graphs are produced by
    :meth:`edit`, which copies the top-level maps and touches only the
    vertices whose neighbourhoods change.
    """

    __slots__ = ("_succ", "_pred", "_m", "_topo", "_verts", "_hash")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Edge] = ()):
        succ: dict = {v: [] for v in vertices}
        pred: dict = {v: [] for v in succ}
        seen = set()
        for u, w in edges:
            if u not in succ:
                raise UnknownVertex(u)
            if w not in succ:
                raise UnknownVertex(w)
            if u == w:
                raise GraphError(f"loop at {u!r}")
            if (u, w) in seen:
                raise GraphError(f"parallel edge {u!r}->{w!r}")
            seen.add((u, w))
            succ[u].append(w)
            pred[w].append(u)
        self._init(
            {v: tuple(sorted(ns)) for v, ns in succ.items()},
            {v: tuple(sorted(ns)) for v, ns in pred.items()},
            len(seen),
        )

    def _init(self, succ, pred, m):
        self._succ = succ
        self._pred = pred
        self._m = m
        self._topo = None
        self._verts = None
        self._hash = None

    @classmethod
    def _raw(cls, succ: dict, pred: dict, m: int) -> "Digraph":
        g = cls.__new__(cls)
        g._init(succ, pred, m)
        return g

    # -- queries -----------------------------------------------------------

    @property
    def vertices(self) -> tuple:
        if self._verts is None:
            self._verts = tuple(sorted(self._succ))
        return self._verts

    def edges(self) -> Iterator[Edge]:
        for u in self.vertices:
            for w in self._succ[u]:
                yield (u, w)

    def succ(self, v: Vertex) -> tuple:
        try:
            return self._succ[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def pred(self, v: Vertex) -> tuple:
        try:
            return self._pred[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def out_degree(self, v: Vertex) -> int:
        return len(self.succ(v))

    def in_degree(self, v: Vertex) -> int:
        return len(self.pred(v))

    def has_edge(self, u: Vertex, w: Vertex) -> bool:
        ns = self._succ.get(u)
        return ns is not None and w in ns

    def __contains__(self, v) -> bool:
        return v in self._succ

    def __len__(self) -> int:
        return len(self._succ)

    @property
    def num_edges(self) -> int:
        return self._m

    @property
    def size(self) -> int:
        """|V| + |E|, the quantity every reduction step must shrink."""
        return len(self._succ) + self._m

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._m == other._m and self._succ == other._succ

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self):
        return f"Digraph(|V|={len(self)}, |E|={self._m})"

    # -- derivation --------------------------------------------------------

    def edit(
        self,
        *,
        drop_vertices: Iterable[Vertex] = (),
        drop_edges: Iterable[Edge] = (),
        add_vertices: Iterable[Vertex] = (),
        add_edges: Iterable[Edge] = (),
    ) -> "Digraph":
        """Return a new digraph with the given changes applied in argument order.

        Dropping a vertex drops its incident edges.  Dropping an absent edge is an
        error; adding an existing edge or a loop is an error.
        """
        succ = dict(self._succ)
        pred = dict(self._pred)
        m = self._m
        s_touch: dict = {}
        p_touch: dict = {}

        def s_of(v):
            if v not in s_touch:
                s_touch[v] = set(succ[v])
            return s_touch[v]

        def p_of(v):
            if v not in p_touch:
                p_touch[v] = set(pred[v])
            return p_touch[v]

        for v in drop_vertices:
            if v not in succ:
                raise UnknownVertex(v)
            outs = s_touch.pop(v, succ[v])
            ins = p_touch.pop(v, pred[v])
            for w in outs:
                p_of(w).discard(v)
            for u in ins:
                s_of(u).discard(v)
            m -= len(outs) + len(ins)
            del succ[v], pred[v]
        for u, w in drop_edges:
            if u not in succ or w not in s_of(u):
                raise GraphError(f"no edge {u!r}->{w!r} to drop")
            s_of(u).discard(w)
            p_of(w).discard(u)
            m -= 1
        for v in add_vertices:
            if v in succ:
                raise GraphError(f"vertex {v!r} already present")
            succ[v] = ()
            pred[v] = ()
        for u, w in add_edges:
            if u not in succ:
                raise UnknownVertex(u)
            if w not in succ:
                raise UnknownVertex(w)
            if u == w:
                raise GraphError(f"loop at {u!r}")
            su = s_of(u)
            if w in su:
                raise GraphError(f"parallel edge {u!r}->{w!r}")
            su.add(w)
            p_of(w).add(u)
            m += 1
        for v, ns in s_touch.items():
            succ[v] = tuple(sorted(ns))
        for v, ns in p_touch.items():
            pred[v] = tuple(sorted(ns))
        return Digraph._raw(succ, pred, m)

    def induced(self, keep: Iterable[Vertex]) -> "Digraph":
        keep = set(keep)
        for v in keep:
            if v not in self._succ:
                raise UnknownVertex(v)
        succ = {v: tuple(w for w in self._succ[v] if w in keep) for v in keep}
        pred = {v: tuple(u for u in self._pred[v] if u in keep) for v in keep}
        return Digraph._raw(succ, pred, sum(map(len, succ.values())))

    def reversed(self) -> "Digraph":
        return Digraph._raw(dict(self._pred), dict(self._succ), self._m)

    def relabel(self, mapping: Mapping) -> "Digraph":
        return Digraph(
            (mapping.get(v, v) for v in self._succ),
            ((mapping.get(u, u), mapping.get(w, w)) for u, w in self.edges()),
        )


def topological_order(g: Digraph) -> tuple:
    """Kahn's algorithm; among ready vertices the smallest label goes first."""
    if g._topo is not None:
        return g._topo
    indeg = {v: len(g._pred[v]) for v in g._succ}
    ready = [v for v in g.vertices if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in g._succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != len(g):
        raise CyclicGraph(_find_cycle(g, {v for v, d in indeg.items() if d > 0}))
    g._topo = tuple(order)
    return g._topo


def _find_cycle(g: Digraph, stuck: set) -> list:
    # Every stuck vertex keeps a stuck in-neighbour, so walking backwards must repeat.
    v = min(stuck)
    walk, pos = [], {}
    while v not in pos:
        pos[v] = len(walk)
        walk.append(v)
        v = min(u for u in g._pred[v] if u in stuck)
    cycle = walk[pos[v]:][::-1]
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def is_acyclic(g: Digraph) -> bool:
    try:
        topological_order(g)
    except CyclicGraph:
        return False
    return True


def reach_set(g: Digraph, roots: Iterable[Vertex], direction: Direction = Direction.FORWARD) -> frozenset:
    """Vertices joined to ``roots`` by a dipath of length >= 0 in ``direction``."""
    adj = g._succ if direction is Direction.FORWARD else g._pred
    seen = set()
    for r in roots:
        if r not in adj:
            raise UnknownVertex(r)
        seen.add(r)
    stack = list(seen)
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


@dataclass(frozen=True)
class Report:
    """Outcome of a validation or verification: a list of problems, empty on success."""

    problems: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.problems


@dataclass(frozen=True)
class Instance:
    """A digraph with an ordered source sequence and an ordered sink sequence."""

    graph: Digraph
    sources: tuple
    sinks: tuple
    mode: Mode = Mode.STRICT
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "sinks", tuple(self.sinks))

    @cached_property
    def source_index(self) -> dict:
        """1-based position of each source."""
        return {s: i for i, s in enumerate(self.sources, 1)}

    @cached_property
    def sink_index(self) -> dict:
        return {t: j for j, t in enumerate(self.sinks, 1)}

    @cached_property
    def core(self) -> frozenset:
        """Vertices that are neither sources nor sinks."""
        terminals = set(self.sources) | set(self.sinks)
        return frozenset(v for v in self.graph._succ if v not in terminals)

    @property
    def size(self) -> int:
        return self.graph.size

    @property
    def rim(self) -> tuple:
        """Prescribed boundary order: sources forwards, then sinks backwards."""
        return self.sources + self.sinks[::-1]

    def relaxed(self) -> "Instance":
        return Instance(self.graph, self.sources, self.sinks, Mode.RELAXED)


def validate_instance(inst: Instance) -> Report:
    """List every way ``inst`` fails its declared mode; an empty report means valid."""
    g = inst.graph
    problems = []
    for name, seq in (("source", inst.sources), ("sink", inst.sinks)):
        seen = set()
        for x in seq:
            if x in seen:
                problems.append(f"duplicate {name} {x}")
            seen.add(x)
            if x not in g:
                problems.append(f"{name} {x} is not a vertex")
    try:
        topological_order(g)
    except CyclicGraph as exc:
        problems.append(f"graph is cyclic: {' -> '.join(map(str, exc.cycle))}")

    relaxed = inst.mode is Mode.RELAXED
    srcs, snks = set(inst.sources), set(inst.sinks)
    for x in sorted(srcs & snks):
        problems.append(f"{x} is both a source and a sink, S and T overlap")
    for v in g.vertices:
        din, dout = len(g._pred[v]), len(g._succ[v])
        if relaxed and din == 0 and dout == 0 and (v in srcs or v in snks):
            continue
        if v in srcs:
            if din:
                problems.append(f"source {v} has in-degree {din}")
            if dout == 0 and v not in snks:
                problems.append(f"source {v} has out-degree 0, so {v} is also a sink, S and T overlap")
        elif v in snks:
            if dout:
                problems.append(f"sink {v} has out-degree {dout}")
            if din == 0:
                problems.append(f"sink {v} has in-degree 0, so {v} is also a source, S and T overlap")
        else:
            if din < 2:
                problems.append(f"internal vertex {v} has in-degree {din}")
            if dout < 2:
                problems.append(f"internal vertex {v} has out-degree {dout}")
    return Report(tuple(problems))


def is_dipath(g: Digraph, path) -> bool:
    if not path or len(set(path)) != len(path):
        return False
    if any(v not in g for v in path):
        return False
    return all(g.has_edge(u, w) for u, w in zip(path, path[1:]))
