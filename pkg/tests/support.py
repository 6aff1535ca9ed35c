"""Helpers shared by the test modules: embedding mutations and an independent planarity check."""

from __future__ import annotations

import random

import networkx as nx

from dagcross.certificates import DiscEmbedding, other_end
from dagcross.graph import Instance


def swap_rotation(emb: DiscEmbedding, rng: random.Random):
    """Swap two entries of one rotation that has at least three edges; None if impossible."""
    choices = sorted(v for v, rot in emb.rotation.items() if len(rot) >= 3)
    if not choices:
        return None
    v = rng.choice(choices)
    rot = list(emb.rotation[v])
    a, b = rng.sample(range(len(rot)), 2)
    rot[a], rot[b] = rot[b], rot[a]
    rotation = dict(emb.rotation)
    rotation[v] = tuple(rot)
    return DiscEmbedding(rotation, emb.rim)


def transpose_rim(emb: DiscEmbedding, rng: random.Random):
    """Exchange two rim neighbours; None when the rim is too short to change."""
    m = len(emb.rim)
    if m < 3:
        return None
    p = rng.randrange(m)
    rim = list(emb.rim)
    rim[p], rim[(p + 1) % m] = rim[(p + 1) % m], rim[p]
    return DiscEmbedding(emb.rotation, tuple(rim))


def _node(e: tuple, v):
    """Neighbour of ``v`` along edge key ``e``, with rim edges subdivided by a midpoint node."""
    if e[0] == "r":
        return ("mid", e[1], e[2])
    return ("v", other_end(e, v))


def networkx_disc_check(inst: Instance, emb: DiscEmbedding) -> bool:
    """Independent confirmation that ``emb`` draws ``inst`` in a disc with the prescribed rim.

    The rim edges are subdivided so that no parallel edges arise; networkx then
    checks the rotation system for planarity, and the rim cycle must be one of
    its faces, in the order the instance prescribes.
    """
    if tuple(emb.rim) != inst.rim:
        return False
    expected = {("g", u, w) for u, w in inst.graph.edges()} | set(emb.rim_edges)
    if {e for rot in emb.rotation.values() for e in rot} != expected:
        return False
    pe = nx.PlanarEmbedding()
    for v, rot in emb.rotation.items():
        pe.add_node(("v", v))
        nbrs = [_node(e, v) for e in rot]
        if len(set(nbrs)) != len(nbrs):
            return False
        prev = None
        for w in nbrs:
            pe.add_half_edge(("v", v), w, cw=prev) if prev is not None else pe.add_half_edge(("v", v), w)
            prev = w
    for e in emb.rim_edges:
        mid = ("mid", e[1], e[2])
        pe.add_half_edge(mid, ("v", e[1]))
        pe.add_half_edge(mid, ("v", e[2]), cw=("v", e[1]))
    try:
        pe.check_structure()
    except nx.NetworkXException:
        return False
    cycle = []
    for x, y in zip(emb.rim, emb.rim[1:] + emb.rim[:1]):
        cycle += [("v", x), ("mid", x, y)]
    first = cycle[0]
    for nxt in (cycle[1], cycle[-1]):
        face = pe.traverse_face(first, nxt)
        if len(face) == len(cycle):
            k = len(cycle)
            rotations = {tuple(cycle[i:] + cycle[:i]) for i in range(k)}
            rev = cycle[::-1]
            rotations |= {tuple(rev[i:] + rev[:i]) for i in range(k)}
            if tuple(face) in rotations:
                return True
    return False
