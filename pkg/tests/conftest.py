from __future__ import annotations

import pytest

from dagcross.graph import Digraph, Instance, Mode
from dagcross.normalize import GeneralInstance


def make(edges, sources, sinks, extra=(), mode=Mode.STRICT) -> Instance:
    verts = set(extra) | set(sources) | set(sinks) | {x for e in edges for x in e}
    return Instance(Digraph(sorted(verts), edges), tuple(sources), tuple(sinks), mode)


def i_fan() -> Instance:
    return make([("s1", "v"), ("s2", "v"), ("v", "t1"), ("v", "t2")], ("s1", "s2"), ("t1", "t2"))


def i_planar4() -> Instance:
    edges = [("s1", "u"), ("s2", "u"), ("u", "v"), ("s2", "v"), ("u", "t1"), ("v", "t1"), ("v", "t2")]
    return make(edges, ("s1", "s2"), ("t1", "t2"))


def i_cross() -> Instance:
    return make([("s1", "t2"), ("s2", "t1")], ("s1", "s2"), ("t1", "t2"))


def i_fan3() -> Instance:
    edges = [("s1", "v"), ("s3", "v"), ("v", "u"), ("v", "t1"), ("s2", "u"), ("u", "t1"), ("u", "t2")]
    return make(edges, ("s1", "s2", "s3"), ("t1", "t2"))


def i_glue() -> Instance:
    edges = [("s1", "t1"), ("s1", "v"), ("s2", "v"), ("v", "t1"), ("v", "t2")]
    return make(edges, ("s1", "s2"), ("t1", "t2"))


def i_k22() -> Instance:
    return make([("s1", "t1"), ("s1", "t2"), ("s2", "t1"), ("s2", "t2")], ("s1", "s2"), ("t1", "t2"))


def chain() -> GeneralInstance:
    g = Digraph(["a", "b", "c", "d", "x", "y"], [("a", "x"), ("x", "c"), ("b", "y"), ("y", "d")])
    return GeneralInstance(g, "a", "b", "c", "d")


FIXTURES = {
    "fan": i_fan,
    "planar4": i_planar4,
    "cross": i_cross,
    "fan3": i_fan3,
    "glue": i_glue,
    "k22": i_k22,
}


@pytest.fixture
def fan():
    return i_fan()


@pytest.fixture
def planar4():
    return i_planar4()


@pytest.fixture
def cross():
    return i_cross()


@pytest.fixture
def fan3():
    return i_fan3()


@pytest.fixture
def glue():
    return i_glue()


@pytest.fixture
def k22():
    return i_k22()
