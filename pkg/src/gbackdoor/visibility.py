"""Visible and invisible directed edges; back-door paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .graph import GraphError, GraphKind, MixedGraph, definite_status_paths, is_collider


@dataclass(frozen=True)
class Visibility:
    """Verdict for a directed edge ``a --> b``.

    For a visible edge of a MAG or PAG, ``witness`` is the vertex C and
    ``witness_path`` the path from C to ``a`` (two vertices when C has an
    edge into ``a`` directly).
    """

    edge: tuple
    visible: bool
    witness: Optional[str] = None
    witness_path: Optional[tuple] = None


def is_visible(g: MixedGraph, a, b) -> Visibility:
    if not g.is_directed(a, b):
        raise GraphError(f"{a} --> {b} is not a directed edge of the graph")
    if g.kind in (GraphKind.DAG, GraphKind.CPDAG):
        return Visibility((a, b), True)

    def eligible(c):
        return c != a and c != b and not g.is_adjacent(c, b)

    for c in g.adjacent(a):
        if eligible(c) and g.arrow_at(a, c):
            return Visibility((a, b), True, c, (c, a))

    # collider paths c *-> v_1 <-> ... <-> v_k <-> a, every v_i a parent of b
    pa_b = g.parents(b)
    prev = {}
    queue = deque()
    for v in g.adjacent(a):
        if v in pa_b and g.is_bidirected(v, a):
            prev[v] = a
            queue.append(v)
    while queue:
        v = queue.popleft()
        for u in g.adjacent(v):
            if u in prev or u == a or not g.arrow_at(v, u):
                continue
            if eligible(u):
                path = [u, v]
                while path[-1] != a:
                    path.append(prev[path[-1]])
                return Visibility((a, b), True, u, tuple(path))
            if u in pa_b and g.arrow_at(u, v):
                prev[u] = v
                queue.append(u)
    return Visibility((a, b), False)


def replay_visibility(g: MixedGraph, v: Visibility) -> bool:
    """Re-check a visibility witness directly against the definition."""
    a, b = v.edge
    if g.kind in (GraphKind.DAG, GraphKind.CPDAG):
        return v.visible
    if not v.visible:
        return False
    c, p = v.witness, v.witness_path
    if c is None or p is None or p[0] != c or p[-1] != a or len(set(p)) != len(p):
        return False
    if c == b or g.is_adjacent(c, b):
        return False
    if not all(g.is_adjacent(s, t) for s, t in zip(p, p[1:])):
        return False
    if not g.arrow_at(a, p[-2]):
        return False
    interior = p[1:-1]
    return all(is_collider(g, p[i - 1], p[i], p[i + 1]) for i in range(1, len(p) - 1)) and all(
        g.is_directed(w, b) for w in interior
    )


def visible_edges(g: MixedGraph) -> list:
    return [is_visible(g, a, b) for a, b in g.directed_edges()]


def starts_with_visible_edge_out(g: MixedGraph, p) -> bool:
    x, u = p[0], p[1]
    return g.is_directed(x, u) and is_visible(g, x, u).visible


def back_door_paths(g: MixedGraph, x, y) -> tuple:
    """Definite status paths between ``x`` and ``y`` that do not begin with a
    visible edge out of ``x``."""
    return tuple(p for p in definite_status_paths(g, x, y) if not starts_with_visible_edge_out(g, p))
