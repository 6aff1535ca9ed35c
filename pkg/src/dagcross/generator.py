"""Seeded instance generators.

* ``gen_random_canonical`` samples a DAG over a random topological order and
  repairs degrees until the instance is canonical.  Dense outputs nearly always
  contain a cross.
* ``gen_drawable`` grows instances with the engine's reductions run backwards
  (gluing discs along a source/sink pair, pushing a source with a fan into the
  interior), so its outputs never contain a cross.
* ``gen_general`` samples an unrestricted 2-linkage question.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .errors import InfeasibleConfig
from .graph import Digraph, Instance, Mode, validate_instance
from .normalize import GeneralInstance


class GenMode(Enum):
    CANONICAL = "canonical"
    DRAWABLE = "drawable"
    GENERAL = "general"


@dataclass(frozen=True)
class GenConfig:
    n: int = 10
    density: float = 0.3
    k: int = 2
    ell: int = 2
    seed: int = 0
    mode: GenMode = GenMode.CANONICAL
    # drawable step mix
    fan_weight: float = 4.0
    glue_weight: float = 2.0
    seed_weight: float = 1.0
    st_edge_prob: float = 0.6


def generate(cfg: GenConfig):
    if cfg.mode is GenMode.CANONICAL:
        return gen_random_canonical(cfg)
    if cfg.mode is GenMode.DRAWABLE:
        return gen_drawable(cfg)
    return gen_general(cfg)


def _labelled(rng, edges, sources, sinks, internal) -> Instance:
    """Relabel to s1.., t1.. (by sequence position) and v1.. (random) and build the instance."""
    names = {x: f"s{i}" for i, x in enumerate(sources, 1)}
    names.update({x: f"t{j}" for j, x in enumerate(sinks, 1)})
    shuffled = list(internal)
    rng.shuffle(shuffled)
    names.update({x: f"v{n}" for n, x in enumerate(shuffled, 1)})
    g = Digraph(names.values(), ((names[u], names[w]) for u, w in edges))
    return Instance(g, [names[x] for x in sources], [names[x] for x in sinks], Mode.STRICT)


def gen_random_canonical(cfg: GenConfig) -> Instance:
    n, k, ell = cfg.n, cfg.k, cfg.ell
    inner = n - k - ell
    if k < 1 or ell < 1 or inner < 0:
        raise InfeasibleConfig(f"need k, l >= 1 and n >= k + l, got n={n} k={k} l={ell}")
    if inner and (k < 2 or ell < 2):
        raise InfeasibleConfig("an internal vertex needs two sources before it and two sinks after it")
    rng = random.Random(cfg.seed)
    # positions: sources first, then internal vertices, then sinks
    src = range(k)
    snk = range(k + inner, n)
    can_tail = lambda x: x < k + inner  # noqa: E731
    can_head = lambda y: y >= k  # noqa: E731
    succ = {x: set() for x in range(n)}
    pred = {x: set() for x in range(n)}

    def add(x, y):
        succ[x].add(y)
        pred[y].add(x)

    for x in range(k + inner):
        for y in range(max(x + 1, k), n):
            if rng.random() < cfg.density:
                add(x, y)
    for y in range(k, n):
        need = 2 if y < k + inner else 1
        while len(pred[y]) < need:
            add(rng.choice([x for x in range(y) if can_tail(x) and x not in pred[y]]), y)
    for x in range(k + inner):
        need = 2 if x >= k else 1
        while len(succ[x]) < need:
            add(x, rng.choice([y for y in range(x + 1, n) if can_head(y) and y not in succ[x]]))

    sources = list(src)
    sinks = list(snk)
    rng.shuffle(sources)
    rng.shuffle(sinks)
    edges = [(x, y) for x in range(n) for y in sorted(succ[x])]
    return _labelled(rng, edges, sources, sinks, range(k, k + inner))


# -- inverse reductions --------------------------------------------------------


def inverse_glue(left: Instance, right: Instance, st_edge: bool) -> Instance:
    """Glue ``right`` onto ``left``: left's last source/sink become right's first.

    ``right``'s first source and first sink are renamed to ``left``'s last
    source and sink; every other label must be distinct between the two.
    """
    s, t = left.sources[-1], left.sinks[-1]
    ren = {right.sources[0]: s, right.sinks[0]: t}
    clash = (set(right.graph._succ) - set(ren)) & set(left.graph._succ)
    if clash:
        raise ValueError(f"labels shared by both sides: {sorted(clash)[:5]}")
    succ = dict(left.graph._succ)
    pred = dict(left.graph._pred)
    m = left.graph.num_edges + right.graph.num_edges
    for v in right.graph._succ:
        nv = ren.get(v, v)
        outs = tuple(ren.get(w, w) for w in right.graph._succ[v])
        ins = tuple(ren.get(u, u) for u in right.graph._pred[v])
        if nv in succ:
            outs = tuple(sorted(set(succ[nv]) | set(outs)))
            ins = tuple(sorted(set(pred[nv]) | set(ins)))
        succ[nv] = outs
        pred[nv] = ins
    g = Digraph._raw(succ, pred, m)
    if st_edge and not g.has_edge(s, t):
        g = g.edit(add_edges=[(s, t)])
    return Instance(g, left.sources + right.sources[1:], left.sinks + right.sinks[1:], Mode.RELAXED)


def inverse_fan(inst: Instance, v, low=None, high=None, inner=()) -> Instance:
    """Push source ``v`` inside, fed by ``low``, ``inner`` sources and ``high``.

    ``low``/``high`` default to v's neighbours in the source sequence; passing a
    label not yet in the graph creates a new source at that side of v.
    """
    g = inst.graph
    p = inst.sources.index(v)
    if g.out_degree(v) < 2:
        raise ValueError(f"{v} needs out-degree at least 2 to become internal")
    before, after = inst.sources[:p], inst.sources[p + 1:]
    if low is None:
        if not before:
            raise ValueError(f"{v} has no source before it")
        low = before[-1]
    if high is None:
        if not after:
            raise ValueError(f"{v} has no source after it")
        high = after[0]
    fresh = [x for x in (low, *inner, high) if x not in g]
    arc = (() if low in g else (low,)) + tuple(inner) + (() if high in g else (high,))
    if low in g and (not before or before[-1] != low):
        raise ValueError(f"{low} is not the source just before {v}")
    if high in g and (not after or after[0] != high):
        raise ValueError(f"{high} is not the source just after {v}")
    g2 = g.edit(add_vertices=fresh, add_edges=[(x, v) for x in (low, *inner, high)])
    return Instance(g2, before + arc + after, inst.sinks, Mode.RELAXED)


def reverse_instance(inst: Instance) -> Instance:
    """Flip every edge; sinks become sources (same order) and vice versa."""
    return Instance(inst.graph.reversed(), inst.sinks, inst.sources, inst.mode)


def inverse_sink_fan(inst: Instance, w, low=None, high=None, inner=()) -> Instance:
    return reverse_instance(inverse_fan(reverse_instance(inst), w, low, high, inner))


def _isolated(g: Digraph, x) -> bool:
    return not g._succ[x] and not g._pred[x]


def gen_drawable(cfg: GenConfig) -> Instance:
    if cfg.k < 1 or cfg.ell < 1 or cfg.n < cfg.k + cfg.ell:
        raise InfeasibleConfig(f"need k, l >= 1 and n >= k + l, got n={cfg.n} k={cfg.k} l={cfg.ell}")
    rng = random.Random(cfg.seed)
    counter = iter(range(1, 1 << 62))

    def fresh():
        return f"x{next(counter)}"

    def base(k, ell):
        srcs = [fresh() for _ in range(k)]
        snks = [fresh() for _ in range(ell)]
        return Instance(Digraph(srcs + snks), srcs, snks, Mode.RELAXED)

    def active(inst):
        return len(inst.graph) - sum(_isolated(inst.graph, x) for x in inst.sources + inst.sinks)

    pool = [base(cfg.k, cfg.ell)]
    sizes = [0]
    weights = (cfg.fan_weight, cfg.glue_weight, cfg.seed_weight)
    while sum(sizes) < cfg.n:
        op = rng.choices(("fan", "glue", "seed"), weights)[0]
        if op == "seed":
            pool.append(base(rng.randint(1, 3), rng.randint(1, 3)))
            sizes.append(0)
            continue
        idx = rng.randrange(len(pool))
        piece = pool[idx]
        if op == "fan":
            sink_side = rng.random() < 0.5
            work = reverse_instance(piece) if sink_side else piece
            seq = work.sources
            cands = [x for x in seq if len(work.graph._succ[x]) >= 2]
            if cands:
                v = rng.choice(cands)
                pos = seq.index(v)
                low = None if pos > 0 and rng.random() < 0.7 else fresh()
                high = None if pos < len(seq) - 1 and rng.random() < 0.7 else fresh()
                inner = tuple(fresh() for _ in range(rng.choice((0, 0, 0, 1, 1, 2))))
                work = inverse_fan(work, v, low, high, inner)
                pool[idx] = reverse_instance(work) if sink_side else work
                sizes[idx] = active(pool[idx])
                continue
        # glue: with another piece, or with a fresh 1x1 disc (adds a rim-side S-T edge)
        if len(pool) > 1 and rng.random() < 0.5:
            jdx = rng.choice([x for x in range(len(pool)) if x != idx])
            other = pool[jdx]
        else:
            jdx = None
            other = base(1, 1) if rng.random() < 0.7 else base(rng.randint(1, 2), rng.randint(1, 2))
        left, right = (piece, other) if rng.random() < 0.5 else (other, piece)
        merged = inverse_glue(left, right, rng.random() < cfg.st_edge_prob)
        for x in sorted(x for x in (idx, jdx) if x is not None)[::-1]:
            del pool[x]
            del sizes[x]
        pool.append(merged)
        sizes.append(active(merged))

    rng.shuffle(pool)
    inst = pool[0]
    for piece in pool[1:]:
        inst = inverse_glue(inst, piece, rng.random() < cfg.st_edge_prob)
    if inst.graph.num_edges == 0:
        inst = inverse_glue(inst, base(1, 1), True)
    g = inst.graph
    dead = {x for x in inst.sources + inst.sinks if _isolated(g, x)}
    g = g.edit(drop_vertices=sorted(dead))
    sources = [x for x in inst.sources if x not in dead]
    sinks = [x for x in inst.sinks if x not in dead]
    internal = sorted(set(g.vertices) - set(sources) - set(sinks))
    out = _labelled(rng, list(g.edges()), sources, sinks, internal)
    report = validate_instance(out)
    if not report.ok:
        raise AssertionError("drawable generator produced an invalid instance: " + "; ".join(report.problems))
    return out


def gen_general(cfg: GenConfig) -> GeneralInstance:
    if cfg.n < 4:
        raise InfeasibleConfig("a general instance needs four distinct terminals")
    rng = random.Random(cfg.seed)
    order = list(range(cfg.n))
    rng.shuffle(order)
    names = [f"v{x}" for x in order]
    edges = [
        (names[x], names[y])
        for x in range(cfg.n)
        for y in range(x + 1, cfg.n)
        if rng.random() < cfg.density
    ]
    g = Digraph(names, edges)
    if rng.random() < 0.5:
        # terminals respecting the order make linkages likely
        half = cfg.n // 2
        a, b = rng.sample(names[:half], 2)
        c, d = rng.sample(names[half:], 2)
    else:
        a, b, c, d = rng.sample(names, 4)
    return GeneralInstance(g, a, b, c, d)
