"""Existence and construction of a generalized back-door set for a single
treatment ``x`` and a single outcome ``y``.

The construction picks a representative DAG/MAG ``R`` of the input's
equivalence class that has no edge into ``x`` beyond those already in the
input, deletes from it the directed edges out of ``x`` that are visible in
the input, and reads off D-SEP(x, y, .) in the resulting graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .criterion import check_generalized_backdoor
from .graph import (
    ARROW,
    CIRCLE,
    TAIL,
    Edge,
    GraphError,
    GraphKind,
    InvalidGraphError,
    MixedGraph,
    descendants,
    possible_descendants,
)
from .separation import d_sep_set
from .visibility import is_visible


class NotChordalError(InvalidGraphError):
    pass


class NoBackdoorSetError(GraphError):
    pass


class InternalConsistencyError(AssertionError):
    pass


# ---------------------------------------------------------------------------
# chordal circle components


def _undirected_adjacency(g: MixedGraph) -> dict:
    adj: dict[str, set] = {}
    for e in g.edges:
        if e.mark_u is CIRCLE and e.mark_v is CIRCLE:
            adj.setdefault(e.u, set()).add(e.v)
            adj.setdefault(e.v, set()).add(e.u)
    return adj


def maximum_cardinality_search(adj: dict) -> list:
    """Visit order of maximum cardinality search, ties broken by label."""
    weight = {v: 0 for v in adj}
    order = []
    remaining = set(adj)
    while remaining:
        v = min(remaining, key=lambda u: (-weight[u], u))
        order.append(v)
        remaining.discard(v)
        for w in adj[v]:
            if w in remaining:
                weight[w] += 1
    return order


def is_chordal(adj: dict) -> bool:
    """Chordality via MCS: the reverse visit order must be a perfect
    elimination ordering."""
    order = maximum_cardinality_search(adj)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [w for w in adj[v] if pos[w] < pos[v]]
        if not earlier:
            continue
        last = max(earlier, key=pos.__getitem__)
        if not set(earlier) - {last} <= adj[last]:
            return False
    return True


def _orient_circle_component(adj: dict, keep_last) -> list:
    """Orient an undirected chordal graph by repeatedly eliminating the
    smallest simplicial vertex other than ``keep_last``; each eliminated vertex
    receives arrowheads on all its remaining edges.  Returns ``(tail, head)``
    pairs."""
    adj = {v: set(ws) for v, ws in adj.items()}
    oriented = []
    while any(adj.values()):
        live = sorted(v for v, ws in adj.items() if ws)
        pick = None
        for v in live:
            if v == keep_last:
                continue
            nb = adj[v]
            if all(b in adj[a] for a, b in itertools.combinations(sorted(nb), 2)):
                pick = v
                break
        if pick is None:
            raise InternalConsistencyError("no simplicial vertex other than the target")
        for w in sorted(adj[pick]):
            oriented.append((w, pick))
            adj[w].discard(pick)
        adj[pick] = set()
    return oriented


# ---------------------------------------------------------------------------
# representatives


@dataclass(frozen=True)
class RepresentativeGraph:
    """A member ``R`` of the input's class with no extra edge into ``target``,
    and ``R_lower``: ``R`` minus directed edges out of ``target`` that are
    visible in the input graph."""

    R: MixedGraph
    R_lower: MixedGraph
    source_kind: GraphKind
    target: str
    removed: tuple = field(default=())


def lower_graph(g: MixedGraph, r: MixedGraph, x) -> tuple:
    """Remove from ``r`` the directed edges out of ``x`` that are visible in ``g``."""
    drop = tuple(
        (x, v) for v in sorted(g.children(x)) if is_visible(g, x, v).visible
    )
    return r.without_edges(drop), drop


def representative_from(g: MixedGraph, x, r: MixedGraph) -> RepresentativeGraph:
    """Wrap a user-supplied member ``r``; visibility is still judged in ``g``.

    No membership check is made, which lets callers study representatives
    outside the admissible class.
    """
    g.check_vertex(x)
    if r.skeleton() != g.skeleton():
        raise GraphError("representative must share the input's skeleton")
    low, drop = lower_graph(g, r, x)
    return RepresentativeGraph(r, low, g.kind, x, drop)


def construct_representative(g: MixedGraph, x) -> RepresentativeGraph:
    """Build the representative and its lowered graph for target ``x``.

    DAGs and MAGs are their own representative.  For a CPDAG or PAG every
    ``o->`` becomes ``-->``, then the circle component is oriented along a
    perfect elimination ordering that keeps ``x`` last, so no circle edge at
    ``x`` is oriented into ``x``.
    """
    g.check_vertex(x)
    if g.kind in (GraphKind.DAG, GraphKind.MAG):
        return representative_from(g, x, g)

    edges = []
    for e in g.edges:
        if {e.mark_u, e.mark_v} == {CIRCLE, ARROW}:
            if e.mark_u is CIRCLE:
                edges.append(Edge(e.u, e.v, TAIL, ARROW))
            else:
                edges.append(Edge(e.u, e.v, ARROW, TAIL))
        elif e.mark_u is CIRCLE and e.mark_v is CIRCLE:
            continue
        else:
            edges.append(e)
    adj = _undirected_adjacency(g)
    if adj and not is_chordal(adj):
        raise NotChordalError("circle component is not chordal")
    edges.extend(Edge.directed(a, b) for a, b in _orient_circle_component(adj, x))

    kind = GraphKind.DAG if g.kind is GraphKind.CPDAG else GraphKind.MAG
    try:
        r = MixedGraph(kind, g.vertices, edges)
    except InvalidGraphError as exc:
        raise InvalidGraphError(f"orientation of {g.kind.value} is not a valid {kind.value}: {exc}") from None
    rep = representative_from(g, x, r)
    if r.num_edges_into(x) != g.num_edges_into(x):
        raise InternalConsistencyError("representative gained an edge into the target")
    return rep


# ---------------------------------------------------------------------------
# existence and construction


@dataclass(frozen=True)
class BackdoorResult:
    """Outcome of :func:`find_backdoor_set`.

    ``failure`` is ``None`` when ``backdoor_set`` is set, otherwise
    ``"adjacent"`` (y adjacent to x in the lowered graph) or
    ``"intersection"`` (D-SEP meets the possible descendants of x; the
    offending vertices are in ``intersection``).
    """

    x: str
    y: str
    backdoor_set: Optional[frozenset]
    failure: Optional[str]
    dsep: frozenset
    possible_descendants: frozenset
    intersection: frozenset
    representative: RepresentativeGraph

    @property
    def exists(self) -> bool:
        return self.backdoor_set is not None


def evaluate_representative(g: MixedGraph, x, y, rep: RepresentativeGraph) -> BackdoorResult:
    low = rep.R_lower
    dsep = d_sep_set(low, x, y)
    pde = possible_descendants(g, x) - {x}
    inter = dsep & pde
    if low.is_adjacent(x, y):
        failure = "adjacent"
    elif inter:
        failure = "intersection"
    else:
        failure = None
    return BackdoorResult(
        x=x,
        y=y,
        backdoor_set=dsep if failure is None else None,
        failure=failure,
        dsep=dsep,
        possible_descendants=pde,
        intersection=inter,
        representative=rep,
    )



def find_backdoor_set(g: MixedGraph, x, y) -> BackdoorResult:
    """Decide whether a generalized back-door set exists for ``(x, y)`` and
    return D-SEP(x, y, R_lower) when it does.

    The returned set is re-checked against the criterion, and for DAG, CPDAG
    and MAG inputs the matching closed-form corollary must agree on existence;
    either failure raises :class:`InternalConsistencyError`.
    """
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise GraphError("x and y must differ")
    res = evaluate_representative(g, x, y, construct_representative(g, x))
    if res.exists and not check_generalized_backdoor(g, x, y, res.backdoor_set).verdict:
        raise InternalConsistencyError(f"constructed set {sorted(res.backdoor_set)} fails the criterion")
    corollary = _COROLLARY.get(g.kind)
    if corollary is not None and (corollary(g, x, y) is not None) != res.exists:
        raise InternalConsistencyError(f"{g.kind.value} corollary disagrees on existence")
    return res


def find_backdoor_set_dag(d: MixedGraph, x, y) -> Optional[frozenset]:
    """``pa(x)`` unless ``y`` is a parent of ``x``."""
    if d.kind is not GraphKind.DAG:
        raise GraphError("expected a DAG")
    d.check_vertex(x)
    d.check_vertex(y)
    pa = d.parents(x)
    return None if y in pa else pa


def find_backdoor_set_cpdag(c: MixedGraph, x, y) -> Optional[frozenset]:
    """``pa(x, C)`` when ``y`` is neither a parent of ``x`` nor a possible
    descendant of ``x`` once the directed edges out of ``x`` are removed."""
    if c.kind is not GraphKind.CPDAG:
        raise GraphError("expected a CPDAG")
    c.check_vertex(x)
    c.check_vertex(y)
    pa = c.parents(x)
    c_low = c.without_edges((x, v) for v in c.children(x))
    if y in pa or y in possible_descendants(c_low, x):
        return None
    return pa


def find_backdoor_set_mag(m: MixedGraph, x, y) -> Optional[frozenset]:
    if m.kind is not GraphKind.MAG:
        raise GraphError("expected a MAG")
    m.check_vertex(x)
    m.check_vertex(y)
    low, _ = lower_graph(m, m, x)
    if low.is_adjacent(x, y):
        return None
    dsep = d_sep_set(low, x, y)
    if dsep & (descendants(m, x) - {x}):
        return None
    return dsep


_COROLLARY = {
    GraphKind.DAG: find_backdoor_set_dag,
    GraphKind.CPDAG: find_backdoor_set_cpdag,
    GraphKind.MAG: find_backdoor_set_mag,
}


def minimal_backdoor_sets(g: MixedGraph, x, y) -> list:
    """Inclusion-minimal subsets of the constructed set that still satisfy the
    criterion, by increasing size then lexicographically."""
    res = find_backdoor_set(g, x, y)
    if not res.exists:
        raise NoBackdoorSetError(f"no generalized back-door set exists for ({x}, {y})")
    pool = sorted(res.backdoor_set)
    found: list[frozenset] = []
    for k in range(len(pool) + 1):
        for combo in itertools.combinations(pool, k):
            s = frozenset(combo)
            if any(m <= s for m in found):
                continue
            if check_generalized_backdoor(g, x, y, s).verdict:
                found.append(s)
    return found
