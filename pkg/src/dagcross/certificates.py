"""Certificates for the two outcomes of the cross dichotomy, and their verifiers.

A cross is a pair of vertex-disjoint dipaths whose source and sink indices are
inversely ordered.  A disc embedding is a rotation system of the graph plus an
artificial *rim* cycle through the terminals; the graph lies in a closed disc with
the terminals on its boundary exactly when the rotation is planar and the rim
bounds a face.

Edge keys inside rotations are tuples: ``("g", u, w)`` for the graph edge u->w and
``("r", x, y)`` for the rim edge joining consecutive rim vertices x, y (in rim
order).  A rim of length two therefore has two distinct keys ``("r", s, t)`` and
``("r", t, s)``, and a rim edge never collides with a graph edge.

Rotation convention: for a vertex at rim position p the rotation is
``[rim edge to rim[p+1], interior edges..., rim edge from rim[p-1]]``; face
tracing leaves a vertex by the successor of the arriving edge, so the outer
face walks the rim forwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import MalformedRotation, NonemptyEdges, NotOnRim, RimMismatch
from .graph import Instance, Report, is_dipath

Dipath = tuple


def graph_edge(u, w) -> tuple:
    return ("g", u, w)


def rim_edge(x, y) -> tuple:
    return ("r", x, y)


def other_end(e: tuple, v):
    return e[2] if e[1] == v else e[1]


@dataclass(frozen=True)
class CrossCertificate:
    """Two disjoint dipaths; ``p_ends``/``q_ends`` are 1-based (source, sink) indices.

    Canonical form keeps the path from the smaller source index in ``p``.
    """

    p: Dipath
    q: Dipath
    p_ends: tuple
    q_ends: tuple

    @classmethod
    def between(cls, inst: Instance, a, b) -> "CrossCertificate":
        """Index two paths against ``inst``'s sequences and order them canonically."""
        return cls.indexed(inst.sources, inst.sinks, a, b)

    @classmethod
    def indexed(cls, sources, sinks, a, b) -> "CrossCertificate":
        a, b = tuple(a), tuple(b)
        ea = (sources.index(a[0]) + 1, sinks.index(a[-1]) + 1)
        eb = (sources.index(b[0]) + 1, sinks.index(b[-1]) + 1)
        if ea > eb:
            a, b, ea, eb = b, a, eb, ea
        return cls(a, b, ea, eb)

    @property
    def inverted(self) -> bool:
        (i, j), (i2, j2) = self.p_ends, self.q_ends
        return (i < i2 and j > j2) or (i > i2 and j < j2)

    def paths(self) -> tuple:
        return (self.p, self.q)


@dataclass(frozen=True)
class DiscEmbedding:
    """Rotation system over the graph edges plus the rim, and the rim order itself."""

    rotation: Mapping
    rim: tuple

    @property
    def rim_edges(self) -> tuple:
        m = len(self.rim)
        return tuple(rim_edge(self.rim[p], self.rim[(p + 1) % m]) for p in range(m))


def verify_cross(inst: Instance, c: CrossCertificate) -> Report:
    g = inst.graph
    problems = []
    for name, path, (i, j) in (("P", c.p, c.p_ends), ("P'", c.q, c.q_ends)):
        if not is_dipath(g, path):
            problems.append(f"{name} is not a dipath of the graph (paths not present in graph)")
            continue
        if not 1 <= i <= len(inst.sources) or inst.sources[i - 1] != path[0]:
            problems.append(f"{name} does not start at source index {i}")
        if not 1 <= j <= len(inst.sinks) or inst.sinks[j - 1] != path[-1]:
            problems.append(f"{name} does not end at sink index {j}")
    shared = set(c.p) & set(c.q)
    if shared:
        problems.append("paths share vertices " + ", ".join(map(str, sorted(shared))))
    if not c.inverted:
        problems.append(f"index pattern {c.p_ends}, {c.q_ends} is not inverted")
    return Report(tuple(problems))


def trace_faces(rotation: Mapping) -> list:
    """Partition all edge sides into face walks.

    A dart is ``(tail, edge)``.  After arriving at y along e the walk leaves y by
    the edge following e in y's rotation.  Returns a list of faces, each a tuple
    of darts, discovered in sorted-vertex order.
    """
    pos = {}
    for v, rot in rotation.items():
        for idx, e in enumerate(rot):
            if v not in (e[1], e[2]) or e[1] == e[2]:
                raise MalformedRotation(f"edge {e} listed at non-endpoint {v}")
            if (v, e) in pos:
                raise MalformedRotation(f"edge {e} appears twice at {v}")
            pos[(v, e)] = idx
    for v, e in pos:
        if (other_end(e, v), e) not in pos:
            raise MalformedRotation(f"edge {e} missing from rotation at {other_end(e, v)}")

    seen = set()
    faces = []
    for v in sorted(rotation):
        for e in rotation[v]:
            if (v, e) in seen:
                continue
            face = []
            x, d = v, e
            while (x, d) not in seen:
                seen.add((x, d))
                face.append((x, d))
                y = other_end(d, x)
                rot = rotation[y]
                d = rot[(pos[(y, d)] + 1) % len(rot)]
                x = y
            faces.append(tuple(face))
    return faces


def _components(rotation: Mapping) -> dict:
    parent = {v: v for v in rotation}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for v, rot in rotation.items():
        for e in rot:
            a, b = find(e[1]), find(e[2])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {v: find(v) for v in rotation}


def verify_embedding(inst: Instance, emb: DiscEmbedding) -> Report:
    g = inst.graph
    problems = []
    if tuple(emb.rim) != inst.rim:
        problems.append("rim order mismatch: expected " + ",".join(map(str, inst.rim)))
    if set(emb.rotation) != set(g.vertices):
        problems.append("rotation vertices differ from graph vertices")
        return Report(tuple(problems))
    expected = {graph_edge(u, w) for u, w in g.edges()}
    expected.update(emb.rim_edges)
    listed = {e for rot in emb.rotation.values() for e in rot}
    if listed != expected:
        extra, missing = listed - expected, expected - listed
        if extra:
            problems.append(f"rotation lists {len(extra)} unexpected edges, e.g. {min(extra)}")
        if missing:
            problems.append(f"rotation misses {len(missing)} edges, e.g. {min(missing)}")
    try:
        faces = trace_faces(emb.rotation)
    except MalformedRotation as exc:
        problems.append(f"malformed rotation: {exc}")
        return Report(tuple(problems))

    comp = _components(emb.rotation)
    tally: dict = {}
    for v in emb.rotation:
        c = tally.setdefault(comp[v], [0, 0, 0])
        c[0] += 1
        c[1] += len(emb.rotation[v])
    for face in faces:
        tally[comp[face[0][0]]][2] += 1
    for root in sorted(tally):
        nv, sides, nf = tally[root]
        ne = sides // 2
        if ne == 0:
            nf = 1
        chi = nv - ne + nf
        if chi != 2:
            problems.append(f"Euler check failed: component of {root} has V-E+F={chi}")

    m = len(emb.rim)
    fwd = {(emb.rim[p], rim_edge(emb.rim[p], emb.rim[(p + 1) % m])) for p in range(m)}
    bwd = {(emb.rim[(p + 1) % m], rim_edge(emb.rim[p], emb.rim[(p + 1) % m])) for p in range(m)}
    if not any(len(f) == m and set(f) in (fwd, bwd) for f in faces):
        problems.append("rim does not bound a face")
    return Report(tuple(problems))


def _rim_rotation(rim: tuple, interior: Mapping) -> dict:
    """Rotations for rim vertices given their interior edges (next-side to prev-side)."""
    m = len(rim)
    rot = {}
    for p, x in enumerate(rim):
        rot[x] = (
            (rim_edge(x, rim[(p + 1) % m]),)
            + tuple(interior.get(x, ()))
            + (rim_edge(rim[p - 1], x),)
        )
    return rot


def base_embedding(inst: Instance) -> DiscEmbedding:
    """The bare rim: an edgeless instance drawn with terminals around a circle."""
    if inst.graph.num_edges:
        raise NonemptyEdges(f"instance has {inst.graph.num_edges} edges")
    rim = inst.rim
    return DiscEmbedding(_rim_rotation(rim, {}), rim)


def glue_embeddings(left: DiscEmbedding, right: DiscEmbedding, shared: tuple, st_edge: bool) -> DiscEmbedding:
    """Identify two discs along the rim edge joining ``shared = (s, t)``.

    ``left`` must have t right after s on its rim, ``right`` must have t right
    before s.  The seam disappears; when ``st_edge`` is set the graph edge s->t
    is drawn where the seam was.
    """
    s, t = shared
    seam_l, seam_r = rim_edge(s, t), rim_edge(t, s)
    try:
        p = left.rim.index(s)
        q = right.rim.index(s)
    except ValueError:
        raise RimMismatch(f"{s} missing from a rim") from None
    if left.rim[(p + 1) % len(left.rim)] != t:
        raise RimMismatch(f"left rim does not continue {s} -> {t}")
    if right.rim[q - 1] != t:
        raise RimMismatch(f"right rim does not continue {t} -> {s}")
    common = set(left.rotation) & set(right.rotation)
    if common != {s, t}:
        raise RimMismatch(f"discs share vertices {sorted(common - {s, t})}")
    ls, lt, rs, rt = left.rotation[s], left.rotation[t], right.rotation[s], right.rotation[t]
    if ls[0] != seam_l or lt[-1] != seam_l or rs[-1] != seam_r or rt[0] != seam_r:
        raise RimMismatch("seam edge is not on the boundary side of the shared rotations")

    lrim = left.rim[p + 1:] + left.rim[:p + 1]  # t ... s
    rrim = right.rim[q:] + right.rim[:q]  # s ... t
    cyc = lrim + rrim[1:-1]
    k = cyc.index(left.rim[0])
    rim = cyc[k:] + cyc[:k]

    mid = (graph_edge(s, t),) if st_edge else ()
    rotation = dict(left.rotation)
    rotation.update(right.rotation)
    rotation[s] = rs[:-1] + mid + ls[1:]
    rotation[t] = lt[:-1] + mid + rt[1:]
    return DiscEmbedding(rotation, rim)


def extend_embedding_fan(emb: DiscEmbedding, fan, deleted_sources, deleted_edges) -> DiscEmbedding:
    """Undo a fan contraction on a disc.

    ``fan.vertex`` sits on the rim between the two outer fan sources.  It moves
    inside, the deleted sources take its place on the rim in order, and every edge
    of ``deleted_edges`` (all of the form s->vertex) is drawn as a fan into it.
    """
    v = fan.vertex
    deleted_sources = tuple(deleted_sources)
    deleted_edges = set(deleted_edges)
    rim = emb.rim
    if v not in rim:
        raise NotOnRim(f"{v} is not on the rim")
    p = rim.index(v)
    if p == 0 or p == len(rim) - 1:
        raise NotOnRim(f"{v} is not between two sources on the rim")
    lo, hi = rim[p - 1], rim[p + 1]
    if (lo, v) not in deleted_edges or (hi, v) not in deleted_edges:
        raise NotOnRim(f"rim neighbours {lo}, {hi} of {v} are not fan sources")
    allowed = {lo, hi, *deleted_sources}
    stray = [e for e in deleted_edges if e[1] != v or e[0] not in allowed]
    if stray:
        raise NotOnRim(f"edges {sorted(stray)} do not fan into {v}")

    old = emb.rotation
    if old[v][0] != rim_edge(v, hi) or old[v][-1] != rim_edge(lo, v):
        raise MalformedRotation(f"rotation at {v} is not in rim form")
    arc = (lo,) + deleted_sources + (hi,)
    rotation = dict(old)
    rotation[v] = old[v][1:-1] + tuple(graph_edge(s, v) for s in arc if (s, v) in deleted_edges)
    rotation[lo] = (rim_edge(lo, arc[1]), graph_edge(lo, v)) + old[lo][1:]
    rotation[hi] = old[hi][:-1] + (graph_edge(hi, v), rim_edge(arc[-2], hi))
    for a in range(1, len(arc) - 1):
        s = arc[a]
        mid = (graph_edge(s, v),) if (s, v) in deleted_edges else ()
        rotation[s] = (rim_edge(s, arc[a + 1]),) + mid + (rim_edge(arc[a - 1], s),)
    return DiscEmbedding(rotation, rim[:p] + deleted_sources + rim[p + 1:])
