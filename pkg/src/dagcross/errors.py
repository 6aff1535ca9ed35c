"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LinkageError(Exception):
    """Base class for all errors raised by dagcross."""


class GraphError(LinkageError):
    """Malformed digraph: loops, parallel edges, or dangling endpoints."""


class UnknownVertex(GraphError):
    def __init__(self, vertex):
        super().__init__(f"unknown vertex {vertex!r}")
        self.vertex = vertex


class CyclicGraph(GraphError):
    def __init__(self, cycle):
        super().__init__("directed cycle: " + " -> ".join(map(str, cycle)))
        self.cycle = list(cycle)


class InvalidInstance(LinkageError):
    def __init__(self, report):
        super().__init__("invalid instance: " + "; ".join(report.problems))
        self.report = report


class Infeasible(LinkageError):
    """Two disjoint fan paths do not exist, so a degree precondition is broken."""


class MissingEdge(LinkageError):
    pass


class EmptyCore(LinkageError):
    pass


class NotLiftable(LinkageError):
    pass


class MalformedRotation(LinkageError):
    pass


class NonemptyEdges(LinkageError):
    pass


class RimMismatch(LinkageError):
    pass


class NotOnRim(LinkageError):
    pass


class CapExceeded(LinkageError):
    pass


class CyclicInput(CyclicGraph):
    pass


class NonDistinctTerminals(LinkageError):
    pass


class TraceMismatch(LinkageError):
    pass


class InfeasibleConfig(LinkageError):
    pass


class DocumentError(LinkageError):
    """A graph or certificate document could not be parsed."""


class KindMismatch(DocumentError):
    pass
