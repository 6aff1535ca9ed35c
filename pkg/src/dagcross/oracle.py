"""Ground truth that shares no code path with the engine.

``brute_force_cross`` enumerates every source-to-sink dipath; ``dag_two_disjoint_paths``
is the classic two-pebble search for acyclic digraphs, where the pebble sitting on
the topologically earlier vertex is the one that moves.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .certificates import CrossCertificate
from .errors import CapExceeded, LinkageError
from .graph import Digraph, Direction, Instance, reach_set, topological_order

DEFAULT_CAP = 100_000


def enumerate_dipaths(g: Digraph, start, end, cap: int = DEFAULT_CAP) -> list:
    """All dipaths from ``start`` to ``end`` in lexicographic order."""
    useful = reach_set(g, [end], Direction.BACKWARD)
    if start not in useful:
        return []
    out: list = []
    path = [start]

    def extend(x):
        if x == end:
            if len(out) >= cap:
                raise CapExceeded(f"more than {cap} dipaths from {start} to {end}")
            out.append(tuple(path))
            return
        for y in g.succ(x):
            if y in useful:
                path.append(y)
                extend(y)
                path.pop()

    extend(start)
    return out


def brute_force_cross(inst: Instance, cap: int = DEFAULT_CAP) -> Optional[CrossCertificate]:
    """Lexicographically least cross (P from the smaller source index), or None."""
    g = inst.graph
    bit = {v: 1 << k for k, v in enumerate(g.vertices)}
    paths = []
    total = 0
    for i, s in enumerate(inst.sources, 1):
        for j, t in enumerate(inst.sinks, 1):
            found = enumerate_dipaths(g, s, t, cap - total)
            total += len(found)
            for p in found:
                mask = 0
                for x in p:
                    mask |= bit[x]
                paths.append((p, i, j, mask))
    paths.sort()
    for p, i, j, mask in paths:
        for q, i2, j2, mask2 in paths:
            if i2 > i and j2 < j and not mask & mask2:
                return CrossCertificate(p, q, (i, j), (i2, j2))
    return None


def dag_two_disjoint_paths(g: Digraph, a, b, c, d) -> Optional[tuple]:
    """Vertex-disjoint dipaths a->c and b->d, or None if none exist."""
    if len({a, b, c, d}) != 4:
        raise LinkageError("terminals must be distinct")
    rank = {v: k for k, v in enumerate(topological_order(g))}
    start, goal = (a, b), (c, d)
    parent = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        x, y = state
        # move the pebble that is topologically earlier, unless it already arrived
        if x == c or (y != d and rank[y] < rank[x]):
            moves = [(x, y2) for y2 in g.succ(y) if y2 != x]
        else:
            moves = [(x2, y) for x2 in g.succ(x) if x2 != y]
        for nxt in moves:
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    if goal not in parent:
        return None
    first, second = [], []
    state = goal
    while state is not None:
        x, y = state
        if not first or first[-1] != x:
            first.append(x)
        if not second or second[-1] != y:
            second.append(y)
        state = parent[state]
    return tuple(first[::-1]), tuple(second[::-1])
