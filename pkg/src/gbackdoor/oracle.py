"""Brute-force reference implementations and random graph generators.

Nothing here is used by the library proper; tests compare the fast code
paths against these.  CPDAG completion applies v-structures followed by
Meek's rules R1-R3 to a fixpoint (R4 only matters with background
knowledge).  MAG projection decides adjacency by exhaustive separation
search over observed subsets and sets marks by ancestry.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np

from .criterion import check_generalized_backdoor
from .graph import (
    ARROW,
    CIRCLE,
    TAIL,
    Edge,
    GraphError,
    GraphKind,
    MixedGraph,
    ancestors,
    has_directed_cycle,
    is_collider,
    possible_descendants,
)

MAX_CIRCLE_EDGES = 12
MAX_ORACLE_VERTICES = 9
MAX_RANDOM_VERTICES = 15


def unshielded_colliders(g: MixedGraph) -> frozenset:
    """Triples ``(a, b, c)`` with ``a < c`` non-adjacent and ``a *-> b <-* c``."""
    out = set()
    for b in g.vertices:
        for a, c in itertools.combinations(g.adjacent(b), 2):
            if not g.is_adjacent(a, c) and is_collider(g, a, b, c):
                out.add((a, b, c))
    return frozenset(out)


# ---------------------------------------------------------------------------
# CPDAG members


def enumerate_cpdag_members(c: MixedGraph) -> list:
    """Every DAG in the class of ``c``, sorted by serialized edge list."""
    if c.kind is not GraphKind.CPDAG:
        raise GraphError("expected a CPDAG")
    fixed = [e for e in c.edges if e.is_directed()]
    circles = [e for e in c.edges if not e.is_directed()]
    if len(circles) > MAX_CIRCLE_EDGES:
        raise GraphError(f"{len(circles)} circle edges exceed the enumeration bound {MAX_CIRCLE_EDGES}")
    target = unshielded_colliders(c)
    members = []
    for bits in itertools.product((0, 1), repeat=len(circles)):
        edges = list(fixed)
        for e, flip in zip(circles, bits):
            edges.append(Edge.directed(e.v, e.u) if flip else Edge.directed(e.u, e.v))
        d = MixedGraph(GraphKind.DAG, c.vertices, edges, validate=False)
        if has_directed_cycle(d) or unshielded_colliders(d) != target:
            continue
        members.append(d)
    members.sort(key=lambda d: [str(e) for e in d.edges])
    return members


# ---------------------------------------------------------------------------
# exhaustive searches


def oracle_backdoor_exists(g: MixedGraph, x, y):
    """Smallest, then lexicographically first, generalized back-door set, or None."""
    if len(g.vertices) > MAX_ORACLE_VERTICES:
        raise GraphError(f"oracle limited to {MAX_ORACLE_VERTICES} vertices")
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise GraphError("x and y must differ")
    # possible descendants of x can never appear (B-i)
    pool = [v for v in g.vertices if v not in (x, y) and v not in possible_descendants(g, x)]
    for k in range(len(pool) + 1):
        for combo in itertools.combinations(pool, k):
            if check_generalized_backdoor(g, x, y, combo).verdict:
                return frozenset(combo)
    return None


def dsep_moral_oracle(d: MixedGraph, x, y, z=frozenset()) -> bool:
    """d-separation by moralizing the ancestral subgraph of {x, y} | z."""
    if d.kind is not GraphKind.DAG:
        raise GraphError("moralization oracle needs a DAG")
    z = frozenset(z)
    keep = ancestors(d, {x, y} | z)
    nbr = {v: set() for v in keep}
    for v in keep:
        pa = [p for p in d.parents(v) if p in keep]
        for p in pa:
            nbr[v].add(p)
            nbr[p].add(v)
        for a, b in itertools.combinations(pa, 2):
            nbr[a].add(b)
            nbr[b].add(a)
    seen = {x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for w in nbr[u]:
            if w == y:
                return False
            if w not in seen and w not in z:
                seen.add(w)
                queue.append(w)
    return True


# ---------------------------------------------------------------------------
# conversions


def _meek(marks: dict, adj) -> None:
    # marks[(a, b)] is the mark at b on the edge a-b; iterate R1-R3 in place
    def undirected(a, b):
        return marks[(a, b)] is CIRCLE and marks[(b, a)] is CIRCLE

    def directed(a, b):
        return marks[(a, b)] is ARROW and marks[(b, a)] is TAIL

    def orient(a, b):
        marks[(a, b)] = ARROW
        marks[(b, a)] = TAIL

    changed = True
    while changed:
        changed = False
        for a, b in sorted(marks):
            if not undirected(a, b):
                continue
            # R1: c -> a - b, c and b not adjacent
            r1 = any(directed(c, a) and b not in adj[c] for c in adj[a] if c != b)
            # R2: a -> c -> b
            r2 = any(directed(a, c) and directed(c, b) for c in adj[a] & adj[b])
            # R3: a - c -> b, a - d -> b, c and d not adjacent
            r3 = any(
                d not in adj[c]
                for c, d in itertools.combinations(
                    sorted(c for c in adj[a] & adj[b] if undirected(a, c) and directed(c, b)), 2
                )
            )
            if r1 or r2 or r3:
                orient(a, b)
                changed = True


def cpdag_of(d: MixedGraph) -> MixedGraph:
    """Completed pattern of a DAG: v-structures, then Meek R1-R3."""
    if d.kind is not GraphKind.DAG:
        raise GraphError("expected a DAG")
    adj = {v: set(d.adjacent(v)) for v in d.vertices}
    marks = {}
    for e in d.edges:
        marks[(e.u, e.v)] = CIRCLE
        marks[(e.v, e.u)] = CIRCLE
    for a, b, c in unshielded_colliders(d):
        marks[(a, b)] = marks[(c, b)] = ARROW
        marks[(b, a)] = marks[(b, c)] = TAIL
    _meek(marks, adj)
    edges = [Edge(e.u, e.v, marks[(e.v, e.u)], marks[(e.u, e.v)]) for e in d.edges]
    return MixedGraph(GraphKind.CPDAG, d.vertices, edges)


def project_to_mag(d: MixedGraph, latent) -> MixedGraph:
    """MAG over the observed vertices of ``d``.

    Two observed vertices are adjacent iff no subset of the other observed
    vertices d-separates them; ``a --> b`` when ``a`` is an ancestor of
    ``b``, ``a <-> b`` when neither is an ancestor of the other.
    """
    if d.kind is not GraphKind.DAG:
        raise GraphError("expected a DAG")
    latent = d.check_vertices(latent)
    obs = [v for v in d.vertices if v not in latent]
    edges = []
    for a, b in itertools.combinations(obs, 2):
        rest = [v for v in obs if v not in (a, b)]
        separable = any(
            dsep_moral_oracle(d, a, b, z)
            for k in range(len(rest) + 1)
            for z in itertools.combinations(rest, k)
        )
        if separable:
            continue
        if a in ancestors(d, b):
            edges.append(Edge.directed(a, b))
        elif b in ancestors(d, a):
            edges.append(Edge.directed(b, a))
        else:
            edges.append(Edge.bidirected(a, b))
    return MixedGraph(GraphKind.MAG, obs, edges)


# ---------------------------------------------------------------------------
# random generators


def _labels(n):
    return [f"V{i}" for i in range(1, n + 1)]


def _check_params(n, density):
    if not 1 <= n <= MAX_RANDOM_VERTICES:
        raise GraphError(f"n must be between 1 and {MAX_RANDOM_VERTICES}")
    if not 0.0 <= density <= 1.0:
        raise GraphError("edge density must lie in [0, 1]")


def _random_dag(rng, labels, density) -> MixedGraph:
    order = [labels[i] for i in rng.permutation(len(labels))]
    edges = [
        Edge.directed(order[i], order[j])
        for i, j in itertools.combinations(range(len(order)), 2)
        if rng.random() < density
    ]
    return MixedGraph(GraphKind.DAG, labels, edges)


def random_graph(kind, n: int, density: float, seed: int) -> MixedGraph:
    """Seeded random DAG, CPDAG or MAG on vertices ``V1..Vn``.

    MAGs are latent projections of a DAG on ``n`` plus up to three extra
    vertices, the observed ones relabelled ``V1..Vn``.
    """
    kind = GraphKind(kind) if not isinstance(kind, GraphKind) else kind
    _check_params(n, density)
    rng = np.random.default_rng(seed)
    if kind is GraphKind.DAG:
        return _random_dag(rng, _labels(n), density)
    if kind is GraphKind.CPDAG:
        return cpdag_of(_random_dag(rng, _labels(n), density))
    if kind is GraphKind.MAG:
        n_lat = int(rng.integers(0, 4))
        full = _random_dag(rng, [f"U{i}" for i in range(1, n + n_lat + 1)], density)
        latent = [full.vertices[i] for i in sorted(rng.choice(n + n_lat, size=n_lat, replace=False))]
        m = project_to_mag(full, latent)
        rename = dict(zip(m.vertices, _labels(n)))
        return MixedGraph(
            GraphKind.MAG,
            [rename[v] for v in m.vertices],
            [Edge(rename[e.u], rename[e.v], e.mark_u, e.mark_v) for e in m.edges],
        )
    raise GraphError("random PAG generation is not supported")


def random_hidden_dag(n_obs: int, n_latent: int, density: float, seed: int):
    """A DAG on ``V1..Vn`` plus latent ``L1..Lk``; returns ``(dag, latent)``."""
    _check_params(n_obs + n_latent, density)
    rng = np.random.default_rng(seed)
    labels = _labels(n_obs) + [f"L{i}" for i in range(1, n_latent + 1)]
    return _random_dag(rng, labels, density), frozenset(labels[n_obs:])


def random_ancestral_graph(n: int, density: float, seed: int) -> MixedGraph:
    """Random ancestral graph with directed and bidirected edges; not
    necessarily maximal.  Labelled as a MAG since it satisfies the same
    structural checks."""
    _check_params(n, density)
    rng = np.random.default_rng(seed)
    labels = _labels(n)
    order = [labels[i] for i in rng.permutation(n)]
    directed, candidates = [], []
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < density:
            if rng.random() < 0.6:
                directed.append(Edge.directed(order[i], order[j]))
            else:
                candidates.append((order[i], order[j]))
    d = MixedGraph(GraphKind.DAG, labels, directed)
    an = {v: ancestors(d, v) for v in labels}
    bidirected = [
        Edge.bidirected(a, b) for a, b in candidates if a not in an[b] and b not in an[a]
    ]
    return MixedGraph(GraphKind.MAG, labels, directed + bidirected)


def random_subset(rng, pool, p: float = 0.5) -> tuple:
    """Each member of ``pool`` kept independently with probability ``p``."""
    pool = sorted(pool)
    keep = rng.random(len(pool)) < p
    return tuple(v for v, k in zip(pool, keep) if k)


__all__ = [
    "cpdag_of",
    "dsep_moral_oracle",
    "enumerate_cpdag_members",
    "oracle_backdoor_exists",
    "project_to_mag",
    "random_ancestral_graph",
    "random_graph",
    "random_hidden_dag",
    "random_subset",
    "unshielded_colliders",
]
