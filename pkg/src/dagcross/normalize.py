"""Reduce a general acyclic 2-linkage question to a canonical cross instance.

Given an acyclic digraph and distinct terminals a, b, c, d, the question is whether
vertex-disjoint dipaths a->c and b->d exist.  Three answer-preserving rules are
applied to a fixpoint:

1. delete vertices that are not reachable from {a, b} or cannot reach {c, d};
2. delete edges into a or b and edges out of c or d;
3. contract the only in-edge of an internal vertex of in-degree 1 (or the only
   out-edge of an internal vertex of out-degree 1), merging parallel edges.

What remains is a canonical instance with sources (a, b) and sinks (d, c); a cross
there is exactly the pair a->c, b->d.  Every step is recorded so that paths found
in the kernel can be expanded back into the original graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .certificates import CrossCertificate, DiscEmbedding, verify_embedding
from .engine import solve
from .errors import CyclicGraph, CyclicInput, LinkageError, NonDistinctTerminals, TraceMismatch
from .graph import Digraph, Instance, Mode, Report, is_dipath, topological_order, validate_instance

UNREACHABLE = "unreachable"
TERMINAL_EDGE = "terminal-edge"


@dataclass(frozen=True)
class GeneralInstance:
    graph: Digraph
    a: object
    b: object
    c: object
    d: object

    @property
    def terminals(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class DeleteVertex:
    vertex: object
    reason: str


@dataclass(frozen=True)
class DeleteEdge:
    tail: object
    head: object
    reason: str


@dataclass(frozen=True)
class ContractEdge:
    """Contract tail->head; the endpoint other than ``survivor`` disappears."""

    tail: object
    head: object
    survivor: object


Step = Union[DeleteVertex, DeleteEdge, ContractEdge]


@dataclass(frozen=True)
class Kernel:
    original: GeneralInstance
    instance: Optional[Instance]
    trace: tuple
    no_linkage: Optional[str] = None


@dataclass(frozen=True)
class LinkageResult:
    linked: bool
    paths: Optional[tuple]
    kernel: Kernel
    certificate: Optional[Union[CrossCertificate, DiscEmbedding]]


class _Work:
    """Mutable adjacency used while reducing or replaying."""

    def __init__(self, g: Digraph):
        self.succ = {v: set(g.succ(v)) for v in g.vertices}
        self.pred = {v: set(g.pred(v)) for v in g.vertices}

    def delete_vertex(self, v):
        for w in self.succ.pop(v):
            self.pred[w].discard(v)
        for u in self.pred.pop(v):
            self.succ[u].discard(v)

    def delete_edge(self, u, w):
        if w not in self.succ.get(u, ()):
            raise TraceMismatch(f"edge {u}->{w} is absent")
        self.succ[u].discard(w)
        self.pred[w].discard(u)

    def contract(self, tail, head, survivor) -> frozenset:
        """Merge the non-survivor into the survivor; return the neighbours that gained an edge."""
        if head not in self.succ.get(tail, ()):
            raise TraceMismatch(f"edge {tail}->{head} is absent")
        gone = head if survivor == tail else tail
        if survivor not in (tail, head):
            raise TraceMismatch(f"survivor {survivor} is not an endpoint")
        self.delete_edge(tail, head)
        if survivor == tail:
            fresh = self.succ[gone] - self.succ[tail]
            for w in fresh:
                self.succ[tail].add(w)
                self.pred[w].add(tail)
        else:
            fresh = self.pred[gone] - self.pred[head]
            for u in fresh:
                self.pred[head].add(u)
                self.succ[u].add(head)
        self.delete_vertex(gone)
        return frozenset(fresh)

    def reach(self, roots, adj):
        seen = {r for r in roots if r in adj}
        stack = list(seen)
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def graph(self) -> Digraph:
        return Digraph(self.succ, ((u, w) for u in self.succ for w in self.succ[u]))


def _check_general(gi: GeneralInstance):
    if len(set(gi.terminals)) != 4:
        raise NonDistinctTerminals(f"terminals {gi.terminals} are not distinct")
    for x in gi.terminals:
        if x not in gi.graph:
            raise NonDistinctTerminals(f"terminal {x} is not a vertex")
    try:
        topological_order(gi.graph)
    except CyclicGraph as exc:
        raise CyclicInput(exc.cycle) from None


def normalize(gi: GeneralInstance) -> Kernel:
    _check_general(gi)
    a, b, c, d = gi.terminals
    terminals = set(gi.terminals)
    work = _Work(gi.graph)
    trace: list = []

    def verdict(reason):
        return Kernel(gi, None, tuple(trace), reason)

    while True:
        fwd = work.reach((a, b), work.succ)
        bwd = work.reach((c, d), work.pred)
        dead = sorted(v for v in work.succ if v not in fwd or v not in bwd)
        if dead:
            for v in dead:
                work.delete_vertex(v)
                trace.append(DeleteVertex(v, UNREACHABLE))
            hit = sorted(terminals.intersection(dead))
            if hit:
                return verdict(f"terminal {hit[0]} is cut off from the other side")
            continue
        stale = sorted(
            {(u, w) for w in (a, b) for u in work.pred[w]}
            | {(u, w) for u in (c, d) for w in work.succ[u]}
        )
        if stale:
            for u, w in stale:
                work.delete_edge(u, w)
                trace.append(DeleteEdge(u, w, TERMINAL_EDGE))
            continue
        step = None
        for v in sorted(work.succ):
            if v in terminals:
                continue
            if len(work.pred[v]) == 1:
                (u,) = work.pred[v]
                step = ContractEdge(u, v, u)
                break
            if len(work.succ[v]) == 1:
                (w,) = work.succ[v]
                step = ContractEdge(v, w, w)
                break
        if step is None:
            break
        work.contract(step.tail, step.head, step.survivor)
        trace.append(step)

    for x in (a, b):
        if not work.succ[x]:
            return verdict(f"terminal {x} has no out-edges")
    for x in (c, d):
        if not work.pred[x]:
            return verdict(f"terminal {x} has no in-edges")
    inst = Instance(work.graph(), (a, b), (d, c), Mode.STRICT)
    report = validate_instance(inst)
    if not report.ok:
        raise LinkageError("kernel is not canonical: " + "; ".join(report.problems))
    return Kernel(gi, inst, tuple(trace))


def replay_trace(gi: GeneralInstance, trace) -> tuple:
    """Apply ``trace`` to the original graph.

    Returns the resulting digraph, the per-step sets of neighbours that gained
    an edge through a contraction, and a report of steps whose justification
    does not hold at the moment they are applied.
    """
    a, b, c, d = gi.terminals
    terminals = set(gi.terminals)
    work = _Work(gi.graph)
    fresh: list = []
    problems: list = []
    fwd = bwd = None
    for n, step in enumerate(trace):
        if isinstance(step, DeleteVertex):
            if step.vertex not in work.succ:
                raise TraceMismatch(f"step {n}: vertex {step.vertex} is absent")
            # deletions only shrink reachability, so cached sets go stale one way
            if fwd is None or (step.vertex in fwd and step.vertex in bwd):
                fwd = work.reach((a, b), work.succ)
                bwd = work.reach((c, d), work.pred)
            if step.vertex in fwd and step.vertex in bwd:
                problems.append(f"step {n}: {step.vertex} is reachable both ways")
            work.delete_vertex(step.vertex)
            fresh.append(None)
            continue
        fwd = bwd = None
        if isinstance(step, DeleteEdge):
            if not (step.head in (a, b) or step.tail in (c, d)):
                problems.append(f"step {n}: edge {step.tail}->{step.head} neither enters a or b nor leaves c or d")
            work.delete_edge(step.tail, step.head)
            fresh.append(None)
        elif isinstance(step, ContractEdge):
            gone = step.head if step.survivor == step.tail else step.tail
            if gone in terminals:
                problems.append(f"step {n}: contraction removes terminal {gone}")
            elif gone == step.head and len(work.pred.get(gone, ())) != 1:
                problems.append(f"step {n}: {gone} does not have in-degree 1")
            elif gone == step.tail and len(work.succ.get(gone, ())) != 1:
                problems.append(f"step {n}: {gone} does not have out-degree 1")
            fresh.append(work.contract(step.tail, step.head, step.survivor))
        else:
            raise TraceMismatch(f"step {n}: unknown step {step!r}")
    return work.graph(), fresh, Report(tuple(problems))


def lift_linkage(kernel: Kernel, cross: CrossCertificate) -> tuple:
    """Expand a kernel cross into disjoint dipaths (a->c, b->d) of the original graph."""
    gi = kernel.original
    p, q = cross.p, cross.q
    if p[0] != gi.a:
        p, q = q, p
    if (p[0], p[-1], q[0], q[-1]) != (gi.a, gi.c, gi.b, gi.d):
        raise TraceMismatch("cross does not join a->c and b->d")
    _, fresh, _ = replay_trace(gi, kernel.trace)
    paths = [list(p), list(q)]
    for step, gained in zip(reversed(kernel.trace), reversed(fresh)):
        if not isinstance(step, ContractEdge):
            continue
        for n, path in enumerate(paths):
            out = [path[0]]
            for y, z in zip(path, path[1:]):
                if step.survivor == step.tail and y == step.tail and z in gained:
                    out.append(step.head)
                elif step.survivor == step.head and z == step.head and y in gained:
                    out.append(step.tail)
                out.append(z)
            paths[n] = out
    p2, q2 = tuple(paths[0]), tuple(paths[1])
    g = gi.graph
    if not (is_dipath(g, p2) and is_dipath(g, q2)) or set(p2) & set(q2):
        raise TraceMismatch("lifted paths are not disjoint dipaths of the original graph")
    return p2, q2


def decide_linkage(gi: GeneralInstance) -> LinkageResult:
    """Normalize, solve the kernel and lift any linkage back to the original graph."""
    kernel = normalize(gi)
    if kernel.instance is None:
        return LinkageResult(False, None, kernel, None)
    outcome = solve(kernel.instance)
    if isinstance(outcome, CrossCertificate):
        return LinkageResult(True, lift_linkage(kernel, outcome), kernel, outcome)
    return LinkageResult(False, None, kernel, outcome)


@dataclass(frozen=True)
class GeneralCertificate:
    """Verdict for a general instance.

    ``paths`` are the lifted linkage (a->c, b->d).  For a negative verdict either
    ``reason`` names a terminal that the trace cuts off, or ``embedding`` is a disc
    embedding of the kernel obtained by replaying ``trace``.
    """

    linked: bool
    trace: tuple
    paths: Optional[tuple] = None
    reason: Optional[str] = None
    embedding: Optional[DiscEmbedding] = None

    @classmethod
    def from_result(cls, res: LinkageResult) -> "GeneralCertificate":
        emb = res.certificate if isinstance(res.certificate, DiscEmbedding) else None
        return cls(res.linked, res.kernel.trace, res.paths, res.kernel.no_linkage, emb)


def verify_general(gi: GeneralInstance, cert: GeneralCertificate) -> Report:
    """Check a general verdict using only the original instance and the certificate."""
    problems: list = []
    a, b, c, d = gi.terminals
    if cert.linked:
        if not cert.paths or len(cert.paths) != 2:
            return Report(("a linkage needs two paths",))
        p, q = cert.paths
        for name, path, ends in (("a->c", p, (a, c)), ("b->d", q, (b, d))):
            if not is_dipath(gi.graph, path):
                problems.append(f"{name} path is not a dipath of the graph (paths not present in graph)")
            elif (path[0], path[-1]) != ends:
                problems.append(f"{name} path runs from {path[0]} to {path[-1]}")
        shared = set(p) & set(q)
        if shared:
            problems.append("paths share vertices " + ", ".join(map(str, sorted(shared))))
        return Report(tuple(problems))
    try:
        g, _, report = replay_trace(gi, cert.trace)
    except TraceMismatch as exc:
        return Report((f"trace does not replay: {exc}",))
    problems.extend(report.problems)
    if cert.embedding is None:
        cut = [x for x in gi.terminals if x not in g]
        cut += [x for x in (a, b) if x in g and not g.succ(x)]
        cut += [x for x in (c, d) if x in g and not g.pred(x)]
        if not cut:
            problems.append("no terminal is cut off after the trace, so a kernel embedding is required")
        return Report(tuple(problems))
    if any(x not in g for x in gi.terminals):
        problems.append("trace deletes a terminal but the certificate carries an embedding")
        return Report(tuple(problems))
    kernel = Instance(g, (a, b), (d, c), Mode.STRICT)
    problems.extend("kernel: " + x for x in validate_instance(kernel).problems)
    if not problems:
        problems.extend(verify_embedding(kernel, cert.embedding).problems)
    return Report(tuple(problems))
