"""Text formats for graphs and certificates.

Both document kinds are JSON objects written one top-level key per line, keys in
a fixed order, vertices and edges sorted.  Parsing a canonical document and
serializing it again gives back the same bytes.  Terminal sequences are kept in
the order given, since that order carries meaning.

Graph documents::

    {"format": "dagcross-graph/1",
     "mode": "strict",
     "vertices": ["s1", "s2", "t1", "t2", "v"],
     "edges": [["s1", "v"], ...],
     "sources": ["s1", "s2"],
     "sinks": ["t1", "t2"]}

A general document has ``"mode": "general"`` and ``"terminals": {"a": .., "b": ..,
"c": .., "d": ..}`` in place of the two sequences.
"""

from __future__ import annotations

import json
from typing import Union

from .certificates import CrossCertificate, DiscEmbedding
from .errors import DocumentError, KindMismatch
from .graph import Digraph, Instance, Mode
from .normalize import ContractEdge, DeleteEdge, DeleteVertex, GeneralCertificate, GeneralInstance

GRAPH_FORMAT = "dagcross-graph/1"
CERT_FORMAT = "dagcross-certificate/1"
STRICT_KINDS = ("cross", "embedding")
GENERAL_KINDS = ("linkage", "no-linkage")

GraphDocument = Union[Instance, GeneralInstance]


def _lines(fields: list) -> str:
    body = ",\n".join(f"{json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}" for k, v in fields)
    return "{" + body + "}\n"


def _load(text: str, what: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{what} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise DocumentError(f"{what} must be a JSON object")
    return data


def _labels(value, field: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"field {field!r} must be a list of labels")
    for x in value:
        if not isinstance(x, str) or not x:
            raise DocumentError(f"field {field!r} has malformed label {json.dumps(x)}")
    return value


# -- graph documents -----------------------------------------------------------


def dump_graph(doc: GraphDocument) -> str:
    g = doc.graph
    fields = [
        ("format", GRAPH_FORMAT),
        ("mode", "general" if isinstance(doc, GeneralInstance) else doc.mode.value),
        ("vertices", list(g.vertices)),
        ("edges", [list(e) for e in g.edges()]),
    ]
    if isinstance(doc, GeneralInstance):
        fields.append(("terminals", dict(zip("abcd", doc.terminals))))
    else:
        fields += [("sources", list(doc.sources)), ("sinks", list(doc.sinks))]
    return _lines(fields)


def load_graph(text: str) -> GraphDocument:
    data = _load(text, "graph document")
    if data.get("format") != GRAPH_FORMAT:
        raise DocumentError(f"unsupported graph format {data.get('format')!r}")
    vertices = _labels(data.get("vertices"), "vertices")
    declared = set(vertices)
    if len(declared) != len(vertices):
        dup = sorted(x for x in declared if vertices.count(x) > 1)
        raise DocumentError(f"duplicate vertex label {dup[0]!r}")
    edges = data.get("edges")
    if not isinstance(edges, list):
        raise DocumentError("field 'edges' must be a list of [from, to] pairs")
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise DocumentError(f"malformed edge {json.dumps(e)}")
        for x in e:
            if not isinstance(x, str) or x not in declared:
                raise DocumentError(f"edge {json.dumps(e)} references unknown label {json.dumps(x)}")
        if e[0] == e[1]:
            raise DocumentError(f"loop at {e[0]!r}")
    g = Digraph(vertices, map(tuple, edges))
    if g.num_edges != len(edges):
        raise DocumentError("parallel edges are not allowed")
    mode = data.get("mode")
    if mode == "general":
        t = data.get("terminals")
        if not isinstance(t, dict) or sorted(t) != ["a", "b", "c", "d"]:
            raise DocumentError("general documents need terminals a, b, c, d")
        for key in "abcd":
            if t[key] not in declared:
                raise DocumentError(f"terminal {key} references unknown label {json.dumps(t[key])}")
        return GeneralInstance(g, t["a"], t["b"], t["c"], t["d"])
    if mode not in ("strict", "relaxed"):
        raise DocumentError(f"unknown mode {mode!r}")
    sources = _labels(data.get("sources"), "sources")
    sinks = _labels(data.get("sinks"), "sinks")
    for x in sources + sinks:
        if x not in declared:
            raise DocumentError(f"terminal references unknown label {json.dumps(x)}")
    return Instance(g, sources, sinks, Mode(mode))


def load_dot(text: str) -> Instance:
    """Read a DOT digraph whose terminals carry ``role=source|sink`` and ``index=n``."""
    import pydot

    graphs = pydot.graph_from_dot_data(text)
    if not graphs:
        raise DocumentError("no graph found in DOT input")
    dot = graphs[0]
    names: set = set()
    roles: dict = {"source": [], "sink": []}

    def clean(name: str) -> str:
        name = name.strip()
        if len(name) >= 2 and name[0] == name[-1] == '"':
            name = name[1:-1]
        return name

    for node in dot.get_nodes():
        name = clean(node.get_name())
        if name in ("node", "edge", "graph", ""):
            continue
        names.add(name)
        attrs = {k: clean(str(v)) for k, v in node.get_attributes().items()}
        role = attrs.get("role")
        if role is None:
            continue
        if role not in roles:
            raise DocumentError(f"node {name!r} has unknown role {role!r}")
        try:
            index = int(attrs["index"])
        except (KeyError, ValueError):
            raise DocumentError(f"terminal {name!r} needs an integer index") from None
        roles[role].append((index, name))
    edges = []
    for edge in dot.get_edges():
        u, w = clean(str(edge.get_source())), clean(str(edge.get_destination()))
        names.update((u, w))
        edges.append((u, w))
    seqs = {}
    for role, items in roles.items():
        items.sort()
        if [i for i, _ in items] != list(range(1, len(items) + 1)):
            raise DocumentError(f"{role} indices must be 1..n without gaps")
        seqs[role] = [x for _, x in items]
    return Instance(Digraph(sorted(names), edges), seqs["source"], seqs["sink"], Mode.STRICT)


def read_graph(text: str) -> GraphDocument:
    """Accept either a JSON graph document or DOT text."""
    if text.lstrip().startswith("{"):
        return load_graph(text)
    return load_dot(text)


# -- certificate documents -----------------------------------------------------


def _edge_json(e: tuple) -> list:
    return list(e)


def _edge_key(e, where: str) -> tuple:
    if not isinstance(e, list) or len(e) != 3 or e[0] not in ("g", "r"):
        raise DocumentError(f"malformed edge key {json.dumps(e)} in {where}")
    return tuple(e)


def step_json(step) -> list:
    if isinstance(step, DeleteVertex):
        return ["delete-vertex", step.vertex, step.reason]
    if isinstance(step, DeleteEdge):
        return ["delete-edge", step.tail, step.head, step.reason]
    return ["contract", step.tail, step.head, step.survivor]


def _step(item):
    if isinstance(item, list) and item:
        if item[0] == "delete-vertex" and len(item) == 3:
            return DeleteVertex(item[1], item[2])
        if item[0] == "delete-edge" and len(item) == 4:
            return DeleteEdge(item[1], item[2], item[3])
        if item[0] == "contract" and len(item) == 4:
            return ContractEdge(item[1], item[2], item[3])
    raise DocumentError(f"malformed trace step {json.dumps(item)}")


Certificate = Union[CrossCertificate, DiscEmbedding, GeneralCertificate]


def _embedding_fields(emb: DiscEmbedding) -> list:
    return [
        ("rim", list(emb.rim)),
        ("rim_edges", [_edge_json(e) for e in emb.rim_edges]),
        ("rotation", {v: [_edge_json(e) for e in emb.rotation[v]] for v in sorted(emb.rotation)}),
    ]


def dump_certificate(cert: Certificate) -> str:
    fields: list = [("format", CERT_FORMAT)]
    if isinstance(cert, CrossCertificate):
        fields += [
            ("kind", "cross"),
            ("paths", [list(cert.p), list(cert.q)]),
            ("indices", [list(cert.p_ends), list(cert.q_ends)]),
        ]
    elif isinstance(cert, DiscEmbedding):
        fields += [("kind", "embedding")] + _embedding_fields(cert)
    else:
        fields.append(("kind", "linkage" if cert.linked else "no-linkage"))
        if cert.linked:
            fields.append(("paths", [list(p) for p in cert.paths]))
        elif cert.reason is not None:
            fields.append(("reason", cert.reason))
        else:
            fields += _embedding_fields(cert.embedding)
        fields.append(("trace", [step_json(s) for s in cert.trace]))
    return _lines(fields)


def _load_embedding(data: dict) -> DiscEmbedding:
    rim = tuple(_labels(data.get("rim"), "rim"))
    rot = data.get("rotation")
    if not isinstance(rot, dict):
        raise DocumentError("field 'rotation' must map vertices to edge lists")
    rotation = {}
    for v, seq in rot.items():
        if not isinstance(seq, list):
            raise DocumentError(f"rotation of {v!r} must be a list")
        rotation[v] = tuple(_edge_key(e, f"rotation of {v!r}") for e in seq)
    emb = DiscEmbedding(rotation, rim)
    if "rim_edges" in data and [list(e) for e in emb.rim_edges] != data["rim_edges"]:
        raise DocumentError("rim_edges do not follow the rim sequence")
    return emb


def load_certificate(text: str) -> Certificate:
    data = _load(text, "certificate document")
    if data.get("format") != CERT_FORMAT:
        raise DocumentError(f"unsupported certificate format {data.get('format')!r}")
    kind = data.get("kind")
    if kind == "cross":
        paths, idx = data.get("paths"), data.get("indices")
        if not (isinstance(paths, list) and len(paths) == 2 and isinstance(idx, list) and len(idx) == 2):
            raise DocumentError("a cross needs two paths and two index pairs")
        p, q = (tuple(_labels(x, "paths")) for x in paths)
        for pair in idx:
            if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(n, int) for n in pair)):
                raise DocumentError(f"malformed index pair {json.dumps(pair)}")
        return CrossCertificate(p, q, tuple(idx[0]), tuple(idx[1]))
    if kind == "embedding":
        return _load_embedding(data)
    if kind in GENERAL_KINDS:
        trace = data.get("trace")
        if not isinstance(trace, list):
            raise DocumentError("a general certificate needs a trace list")
        steps = tuple(_step(x) for x in trace)
        if kind == "linkage":
            paths = data.get("paths")
            if not isinstance(paths, list) or len(paths) != 2:
                raise DocumentError("a linkage needs two paths")
            return GeneralCertificate(True, steps, tuple(tuple(_labels(x, "paths")) for x in paths))
        if "reason" in data:
            return GeneralCertificate(False, steps, reason=str(data["reason"]))
        return GeneralCertificate(False, steps, embedding=_load_embedding(data))
    raise DocumentError(f"unknown certificate kind {kind!r}")


def check_kind(doc: GraphDocument, cert: Certificate) -> None:
    general = isinstance(doc, GeneralInstance)
    if general != isinstance(cert, GeneralCertificate):
        have = "general" if general else "strict"
        raise KindMismatch(f"certificate kind {certificate_kind(cert)!r} does not fit a {have} graph document")


def certificate_kind(cert: Certificate) -> str:
    if isinstance(cert, CrossCertificate):
        return "cross"
    if isinstance(cert, DiscEmbedding):
        return "embedding"
    return "linkage" if cert.linked else "no-linkage"
