from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, i_fan, i_planar4, make
from dagcross.errors import CyclicGraph, GraphError, UnknownVertex
from dagcross.generator import GenConfig, GenMode, generate
from dagcross.graph import (
    Digraph,
    Direction,
    Instance,
    Mode,
    is_acyclic,
    reach_set,
    topological_order,
    validate_instance,
)
from dagcross.oracle import enumerate_dipaths


def test_topological_order_fan():
    assert topological_order(i_fan().graph) == ("s1", "s2", "v", "t1", "t2")


def test_topological_order_planar4_respects_edges():
    g = i_planar4().graph
    pos = {v: k for k, v in enumerate(topological_order(g))}
    assert all(pos[u] < pos[w] for u, w in g.edges())


def test_two_cycle_is_reported():
    g = Digraph(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(CyclicGraph) as info:
        topological_order(g)
    assert info.value.cycle == ["a", "b"]
    assert not is_acyclic(g)


def test_loops_parallel_and_dangling_edges_rejected():
    with pytest.raises(GraphError):
        Digraph(["a"], [("a", "a")])
    with pytest.raises(UnknownVertex):
        Digraph(["a"], [("a", "b")])


def test_reach_examples():
    fan = i_fan().graph
    assert reach_set(fan, ["s2"]) == {"s2", "v", "t1", "t2"}
    assert reach_set(fan, ["t1"], Direction.BACKWARD) == {"t1", "v", "s1", "s2"}
    assert reach_set(i_planar4().graph, ["s1"]) == {"s1", "u", "v", "t1", "t2"}


def test_validate_fan_ok_and_broken():
    assert validate_instance(i_fan()).ok
    broken = i_fan()
    broken = Instance(broken.graph.edit(drop_edges=[("s2", "v")]), broken.sources, broken.sinks)
    report = validate_instance(broken)
    assert "internal vertex v has in-degree 1" in report.problems


def test_validate_lists_every_problem():
    g = Digraph(["s1", "t1"], [("s1", "t1"), ("t1", "s1")])
    inst = Instance(g, ("s1", "s1", "zz"), ("t1", "s1"))
    problems = " | ".join(validate_instance(inst).problems)
    for needle in ("duplicate source s1", "source zz is not a vertex", "cyclic", "S and T overlap"):
        assert needle in problems


def test_relaxed_mode_allows_isolated_terminals():
    inst = make([("s1", "t1")], ("s0", "s1"), ("t1",), extra=["s0"])
    assert not validate_instance(inst).ok
    assert validate_instance(inst.relaxed()).ok


def test_edit_is_copy_on_write():
    g = i_fan().graph
    h = g.edit(drop_edges=[("s1", "v")], add_vertices=["w"], add_edges=[("w", "v")])
    assert g.has_edge("s1", "v") and not h.has_edge("s1", "v")
    assert h.has_edge("w", "v") and "w" not in g
    assert h.num_edges == g.num_edges


def _strict_instances():
    for name, build in FIXTURES.items():
        yield name, build()
    for seed in range(40):
        mode = GenMode.CANONICAL if seed % 2 else GenMode.DRAWABLE
        yield f"gen{seed}", generate(GenConfig(n=8 + seed % 5, seed=seed, mode=mode))


@pytest.mark.parametrize("name,inst", list(_strict_instances()), ids=lambda x: x if isinstance(x, str) else "")
def test_every_vertex_on_some_terminal_path(name, inst):
    assert validate_instance(inst).ok
    g = inst.graph
    fwd = reach_set(g, inst.sources)
    bwd = reach_set(g, inst.sinks, Direction.BACKWARD)
    assert set(g.vertices) == fwd == bwd
    pos = {v: k for k, v in enumerate(topological_order(g))}
    assert all(pos[u] < pos[w] for u, w in g.edges())


@st.composite
def dags(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a, b in itertools.combinations(range(n), 2)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(range(n)))
    names = [f"n{perm[k]}" for k in range(n)]
    return Digraph(names, [(names[a], names[b]) for a, b in chosen])


@settings(max_examples=150, deadline=None)
@given(dags())
def test_reach_duality(g):
    for u, w in itertools.product(g.vertices, repeat=2):
        forward = w in reach_set(g, [u])
        backward = u in reach_set(g, [w], Direction.BACKWARD)
        assert forward == backward
        if u != w:
            assert forward == bool(enumerate_dipaths(g, u, w))


@settings(max_examples=150, deadline=None)
@given(dags())
def test_topological_order_is_a_linear_extension(g):
    order = topological_order(g)
    assert sorted(order) == sorted(g.vertices)
    pos = {v: k for k, v in enumerate(order)}
    assert all(pos[u] < pos[w] for u, w in g.edges())


@settings(max_examples=100, deadline=None)
@given(dags(), st.data())
def test_adding_back_edge_makes_cycle(g, data):
    order = topological_order(g)
    edges = list(g.edges())
    if not edges:
        return
    u, w = data.draw(st.sampled_from(edges))
    h = g.edit(add_edges=[(w, u)])
    with pytest.raises(CyclicGraph) as info:
        topological_order(h)
    cyc = info.value.cycle
    assert all(h.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))
    assert order


def test_instance_modes_compare_by_value():
    a, b = i_fan(), i_fan()
    assert a == b and hash(a.graph) == hash(b.graph)
    assert a.relaxed().mode is Mode.RELAXED
    assert a.rim == ("s1", "s2", "t2", "t1")
