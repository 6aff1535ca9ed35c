"""The inductive cross-or-disc algorithm.

``solve`` repeatedly applies one of three reductions to an instance:

* an edge from a source s_i straight to a sink t_j splits the instance into a
  left part (s_1..s_i, t_1..t_j) and a right part (s_i..s_k, t_j..t_l), unless a
  dipath through the rest of the graph crosses that edge;
* with no such edge and no internal vertex the graph is edgeless (base case);
* otherwise an internal vertex v fed only by sources is pulled onto the source
  sequence (the sources strictly between its outermost feeders must only feed v,
  or a cross is extracted).

Every reduction shrinks |V| + |E|.  The recursion runs on an explicit stack so
deep fan chains do not hit Python's recursion limit; continuation frames only
keep terminal sequences, never whole parent graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

from .certificates import (
    CrossCertificate,
    DiscEmbedding,
    base_embedding,
    extend_embedding_fan,
    glue_embeddings,
)
from .errors import EmptyCore, Infeasible, InvalidInstance, MissingEdge, NotLiftable
from .graph import Instance, Mode, validate_instance

SolveOutcome = Union[CrossCertificate, DiscEmbedding]


class FanDirection(Enum):
    TO_SINKS = "to-sinks"
    FROM_SOURCES = "from-sources"


@dataclass(frozen=True)
class SplitParts:
    """Partition produced by an S-T edge s_i->t_j (indices are 1-based).

    ``early_reach``/``late_reach`` are internal vertices reachable from sources
    before/after s_i; ``early_coreach``/``late_coreach`` are internal vertices
    reaching sinks before/after t_j.  ``left`` and ``right`` are the two vertex
    sides, excluding s_i and t_j.
    """

    i: int
    j: int
    early_reach: frozenset
    late_reach: frozenset
    early_coreach: frozenset
    late_coreach: frozenset
    left: frozenset
    right: frozenset


@dataclass(frozen=True)
class FanStructure:
    """Internal vertex fed only by sources; ``low``/``high`` bound its feeder indices."""

    vertex: object
    indices: tuple
    low: int
    high: int


# -- flow helper -------------------------------------------------------------


def two_disjoint_fan(inst: Instance, u, v, direction: FanDirection = FanDirection.TO_SINKS) -> tuple:
    """Two dipaths joining {u, v} with the sinks (or the sources with {u, v}).

    The paths are vertex-disjoint when u != v and share only v when u == v.
    Computed as a two-unit flow with unit vertex capacities; returns the path
    through u first.
    """
    g = inst.graph
    if direction is FanDirection.TO_SINKS:
        targets = set(inst.sinks)
        a, b = _fan_paths(g._succ, u, v, targets)
        return a, b
    targets = set(inst.sources)
    a, b = _fan_paths(g._pred, u, v, targets)
    return a[::-1], b[::-1]


def _fan_paths(adj, u, v, targets) -> tuple:
    for x in (u, v):
        if x not in adj:
            raise Infeasible(f"{x} is not a vertex")
    if u == v and v in targets:
        return (v,), (v,)

    src, snk = ("src",), ("snk",)
    cap: dict = {src: {}, snk: {}}

    def arc(x, y, c):
        cap.setdefault(x, {})[y] = cap.get(x, {}).get(y, 0) + c
        cap.setdefault(y, {}).setdefault(x, 0)

    # restrict the network to what {u, v} can reach
    seen = {u, v}
    order = [u] if u == v else [u, v]
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                order.append(y)
    if u == v:
        arc(src, ("i", v), 2)
    else:
        arc(src, ("i", u), 1)
        arc(src, ("i", v), 1)
    for x in order:
        arc(("i", x), ("o", x), 2 if x == u == v else 1)
        if x in targets:
            arc(("o", x), snk, 1)
        else:
            for y in adj[x]:
                arc(("o", x), ("i", y), 1)

    for _ in range(2):
        parent = {src: None}
        queue = deque([src])
        while queue and snk not in parent:
            x = queue.popleft()
            for y, c in cap[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if snk not in parent:
            raise Infeasible(f"fewer than two disjoint dipaths leave {{{u}, {v}}}")
        y = snk
        while parent[y] is not None:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x

    def walk(start):
        path = [start]
        x = start
        while x not in targets:
            out = ("o", x)
            for y, c in cap[out].items():
                # residual back-capacity on a forward arc equals the flow carried
                if y[0] == "i" and cap[y][out] > 0 and y[1] != x:
                    cap[y][out] -= 1
                    x = y[1]
                    break
            else:
                raise Infeasible(f"flow decomposition stalled at {x}")
            path.append(x)
        return tuple(path)

    if u == v:
        return tuple(sorted((walk(v), walk(v))))
    return walk(u), walk(v)


# -- edges from a source straight to a sink ----------------------------------


def _bfs_tree(adj, roots) -> dict:
    parent = {r: None for r in roots}
    queue = deque(roots)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return parent


def _trail(parent: dict, z) -> list:
    out = []
    while z is not None:
        out.append(z)
        z = parent[z]
    return out


def first_st_edge(inst: Instance) -> Optional[tuple]:
    """Lexicographically least (i, j) with an edge s_i -> t_j, or None."""
    sink_index = inst.sink_index
    succ = inst.graph._succ
    for i, s in enumerate(inst.sources, 1):
        js = [sink_index[w] for w in succ[s] if w in sink_index]
        if js:
            return i, min(js)
    return None


def st_edge_reduce(inst: Instance, i: int, j: int) -> Union[SplitParts, CrossCertificate]:
    """Split along the edge s_i -> t_j or return a dipath crossing it."""
    g = inst.graph
    s, t = inst.sources[i - 1], inst.sinks[j - 1]
    if not g.has_edge(s, t):
        raise MissingEdge(f"no edge {s}->{t}")
    core = inst.core
    fwd_early = _bfs_tree(g._succ, inst.sources[: i - 1])
    fwd_late = _bfs_tree(g._succ, inst.sources[i:])
    bwd_early = _bfs_tree(g._pred, inst.sinks[: j - 1])
    bwd_late = _bfs_tree(g._pred, inst.sinks[j:])
    a = core.intersection(fwd_early)
    a2 = core.intersection(fwd_late)
    b = core.intersection(bwd_early)
    b2 = core.intersection(bwd_late)

    def crossing(fwd, bwd, x, y=None):
        head = _trail(fwd, x)[::-1]
        tail = _trail(bwd, x if y is None else y)
        return CrossCertificate.between(inst, head + (tail[1:] if y is None else tail), (s, t))

    if a & b2:
        z = min(a & b2)
        return crossing(fwd_early, bwd_late, z)
    if a2 & b:
        z = min(a2 & b)
        return crossing(fwd_late, bwd_early, z)
    if a | a2 != core or b | b2 != core:
        raise Infeasible("some internal vertex misses the sources or sinks; instance is not valid")

    left = a.union(inst.sources[: i - 1], inst.sinks[: j - 1])
    right = a2.union(inst.sources[i:], inst.sinks[j:])
    for x in sorted(left | right):
        for y in g._succ[x]:
            if x in left and y in right:
                return crossing(fwd_early, bwd_late, x, y)
            if x in right and y in left:
                return crossing(fwd_late, bwd_early, x, y)
    return SplitParts(i, j, a, a2, b, b2, left, right)


def recurse_split(inst: Instance, parts: SplitParts) -> tuple:
    """The two sub-instances of a split, with the S-T edge deleted from both."""
    i, j = parts.i, parts.j
    s, t = inst.sources[i - 1], inst.sinks[j - 1]
    g = inst.graph
    sides = []
    for side, srcs, snks in (
        (parts.left, inst.sources[:i], inst.sinks[:j]),
        (parts.right, inst.sources[i - 1:], inst.sinks[j - 1:]),
    ):
        sub = g.induced(side | {s, t}).edit(drop_edges=[(s, t)])
        sides.append(Instance(sub, srcs, snks, Mode.RELAXED))
    return sides[0], sides[1], (s, t)


# -- fan vertices --------------------------------------------------------------


def pick_fan_vertex(inst: Instance) -> FanStructure:
    """First internal vertex (label order) whose in-neighbours are all sources."""
    core = inst.core
    if not core:
        raise EmptyCore("no internal vertices")
    g = inst.graph
    index = inst.source_index
    for v in g.vertices:
        if v in core and all(u in index for u in g._pred[v]):
            feeders = tuple(sorted(index[u] for u in g._pred[v]))
            if len(feeders) < 2:
                raise Infeasible(f"internal vertex {v} has in-degree {len(feeders)}")
            return FanStructure(v, feeders, feeders[0], feeders[-1])
    raise Infeasible("every internal vertex has an internal in-neighbour; graph is cyclic")


def fan_check(inst: Instance, fan: FanStructure) -> Optional[CrossCertificate]:
    """None if the sources strictly inside the fan feed only the fan vertex, else a cross."""
    g = inst.graph
    v = fan.vertex
    for i in range(fan.low + 1, fan.high):
        s = inst.sources[i - 1]
        for u in g._succ[s]:
            if u == v:
                continue
            p, q = two_disjoint_fan(inst, u, v, FanDirection.TO_SINKS)
            lead = (s,) + p
            if inst.sink_index[p[-1]] > inst.sink_index[q[-1]]:
                other = (inst.sources[fan.high - 1],) + q
            else:
                other = (inst.sources[fan.low - 1],) + q
            return CrossCertificate.between(inst, lead, other)
    return None


def contract_fan(inst: Instance, fan: FanStructure) -> Instance:
    """Delete the inner fan sources and the two outer fan edges; v becomes a source."""
    lo, hi = fan.low, fan.high
    srcs = inst.sources
    g = inst.graph.edit(
        drop_vertices=srcs[lo: hi - 1],
        drop_edges=[(srcs[lo - 1], fan.vertex), (srcs[hi - 1], fan.vertex)],
    )
    return Instance(g, srcs[:lo] + (fan.vertex,) + srcs[hi - 1:], inst.sinks, Mode.RELAXED)


def lift_cross_through_fan(inst: Instance, fan: FanStructure, cross: CrossCertificate) -> CrossCertificate:
    """Turn a cross of the contracted instance into a cross of ``inst``."""
    return _lift_fan(inst.sources, inst.sinks, fan, cross)


def _lift_fan(sources, sinks, fan, cross) -> CrossCertificate:
    v = fan.vertex
    p, q = cross.p, cross.q
    if q[0] == v:
        p, q = q, p
    if p[0] == v:
        lead = sources[fan.high - 1] if q[0] == sources[fan.low - 1] else sources[fan.low - 1]
        p = (lead,) + p
    try:
        lifted = CrossCertificate.indexed(sources, sinks, p, q)
    except ValueError:
        raise NotLiftable("cross endpoints are not terminals of the original instance") from None
    if not lifted.inverted or set(lifted.p) & set(lifted.q):
        raise NotLiftable("lifted paths do not form a cross")
    return lifted


# -- driver ------------------------------------------------------------------


def solve(inst: Instance, on_step: Optional[Callable] = None) -> SolveOutcome:
    """Return a cross or a disc embedding for ``inst``.

    ``on_step(kind, parent_size, child_size)`` is called for every recursive
    sub-instance, where sizes are |V| + |E|.
    """
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstance(report)
    return _run(inst, on_step)


def _run(root: Instance, on_step) -> SolveOutcome:
    stack: list = [("solve", root)]
    result = None
    while stack:
        frame = stack.pop()
        tag = frame[0]
        if tag == "solve":
            inst = frame[1]
            st = first_st_edge(inst)
            if st is not None:
                parts = st_edge_reduce(inst, *st)
                if isinstance(parts, CrossCertificate):
                    result = parts
                    continue
                left, right, shared = recurse_split(inst, parts)
                if on_step is not None:
                    on_step("split", inst.size, left.size)
                    on_step("split", inst.size, right.size)
                stack.append(("left-done", inst.sources, inst.sinks, shared, right))
                stack.append(("solve", left))
            elif not inst.core:
                result = base_embedding(inst)
            else:
                fan = pick_fan_vertex(inst)
                cross = fan_check(inst, fan)
                if cross is not None:
                    result = cross
                    continue
                child = contract_fan(inst, fan)
                if on_step is not None:
                    on_step("fan", inst.size, child.size)
                fed = tuple((u, fan.vertex) for u in inst.graph.pred(fan.vertex))
                inner = inst.sources[fan.low: fan.high - 1]
                stack.append(("fan-done", inst.sources, inst.sinks, fan, inner, fed))
                stack.append(("solve", child))
        elif tag == "left-done":
            _, sources, sinks, shared, right = frame
            if isinstance(result, CrossCertificate):
                result = CrossCertificate.indexed(sources, sinks, result.p, result.q)
                continue
            stack.append(("right-done", sources, sinks, shared, result))
            stack.append(("solve", right))
        elif tag == "right-done":
            _, sources, sinks, shared, left_emb = frame
            if isinstance(result, CrossCertificate):
                result = CrossCertificate.indexed(sources, sinks, result.p, result.q)
            else:
                result = glue_embeddings(left_emb, result, shared, True)
        else:
            _, sources, sinks, fan, inner, fed = frame
            if isinstance(result, CrossCertificate):
                result = _lift_fan(sources, sinks, fan, result)
            else:
                result = extend_embedding_fan(result, fan, inner, fed)
    return result
