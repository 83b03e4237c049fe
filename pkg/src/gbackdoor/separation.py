"""m-connection over definite status paths, m-separation and D-SEP sets."""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .graph import (
    GraphError,
    GraphKind,
    MixedGraph,
    ancestors_of_set,
    definite_status_paths,
    is_ancestral,
    is_collider,
    is_definite_status_path,
    is_path,
)


class BlockReason(enum.Enum):
    NONCOLLIDER_IN_Z = "definite noncollider in Z"
    COLLIDER_NOT_ANCESTOR = "collider not an ancestor of Z"
    M_CONNECTING = "m-connecting"


@dataclass(frozen=True)
class BlockingWitness:
    path: tuple
    blocked: bool
    reason: BlockReason
    vertex: Optional[str] = None

    def __post_init__(self):
        if self.blocked == (self.reason is BlockReason.M_CONNECTING):
            raise ValueError("blocked flag inconsistent with reason")


def _check_query(g: MixedGraph, x, y, z) -> frozenset:
    g.check_vertex(x)
    g.check_vertex(y)
    z = g.check_vertices(z)
    if x == y:
        raise GraphError("x and y must differ")
    if x in z or y in z:
        raise GraphError("conditioning set must not contain the endpoints")
    return z


def blocking_vertex(g: MixedGraph, p, z: frozenset, an_z: frozenset):
    """``(reason, vertex)`` for the first vertex of ``p`` that blocks it, or None.

    ``an_z`` must be ``an(z, g)``.
    """
    for i in range(1, len(p) - 1):
        a, b, c = p[i - 1], p[i], p[i + 1]
        if is_collider(g, a, b, c):
            if b not in an_z:
                return BlockReason.COLLIDER_NOT_ANCESTOR, b
        elif b in z:
            return BlockReason.NONCOLLIDER_IN_Z, b
    return None


def is_m_connecting(g: MixedGraph, p, z=frozenset()) -> BlockingWitness:
    """Decide whether the definite status path ``p`` is m-connecting given ``z``.

    A collider counts as open when it is an ancestor (reflexively) of some
    member of ``z``.  The witness names the first vertex along ``p`` that
    blocks it.
    """
    p = tuple(p)
    z = frozenset(z)
    if not is_path(g, p):
        raise GraphError(f"{p} is not a path")
    if not is_definite_status_path(g, p):
        raise GraphError(f"{p} is not a definite status path")
    if p[0] in z or p[-1] in z:
        raise GraphError("path endpoint in conditioning set")
    g.check_vertices(z)
    hit = blocking_vertex(g, p, z, ancestors_of_set(g, z))
    if hit is None:
        return BlockingWitness(p, False, BlockReason.M_CONNECTING)
    return BlockingWitness(p, True, hit[0], hit[1])


def m_connecting_paths(g: MixedGraph, x, y, z=frozenset()) -> list:
    """All definite status paths between ``x`` and ``y`` that ``z`` leaves open."""
    z = _check_query(g, x, y, z)
    an_z = ancestors_of_set(g, z)
    return [p for p in definite_status_paths(g, x, y) if blocking_vertex(g, p, z, an_z) is None]


def m_connecting_path(g: MixedGraph, x, y, z=frozenset()) -> Optional[tuple]:
    z = _check_query(g, x, y, z)
    an_z = ancestors_of_set(g, z)
    for p in definite_status_paths(g, x, y):
        if blocking_vertex(g, p, z, an_z) is None:
            return p
    return None


def m_separated(g: MixedGraph, x, y, z=frozenset()) -> bool:
    """True iff no definite status path between ``x`` and ``y`` is m-connecting
    given ``z``.  On DAGs this is d-separation."""
    return m_connecting_path(g, x, y, z) is None


def d_sep_set(g: MixedGraph, x, y) -> frozenset:
    """D-SEP(x, y, g).

    Vertices ``v != x`` joined to ``x`` by a collider path on which every vertex
    is an ancestor of ``x`` or ``y``.  Searched over (vertex, arrowhead-into)
    states; collider walks shorten to collider paths, so the state search is
    exact.
    """
    if g.kind in (GraphKind.CPDAG, GraphKind.PAG):
        raise GraphError("D-SEP is defined for mixed graphs (DAG or MAG), not CPDAG/PAG")
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise GraphError("x and y must differ")
    an_xy = ancestors_of_set(g, (x, y))
    found = set()
    # state (v, into): v reached, `into` = last edge has an arrowhead at v
    seen = set()
    queue = deque()
    for v in g.adjacent(x):
        if v in an_xy:
            found.add(v)
            state = (v, g.arrow_at(v, x))
            seen.add(state)
            queue.append(state)
    while queue:
        v, into = queue.popleft()
        if not into:
            continue
        for w in g.adjacent(v):
            if w == x or w not in an_xy or not g.arrow_at(v, w):
                continue
            found.add(w)
            state = (w, g.arrow_at(w, v))
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return frozenset(found)


@dataclass(frozen=True)
class DSepLemmaReport:
    """Clauses of the D-SEP lemma for one pair.

    ``separable``: some subset of the other vertices m-separates x and y.
    ``y_not_in_dsep``: y is not in D-SEP(x, y, g).
    ``dsep_separates``: D-SEP(x, y, g) m-separates x and y.
    ``not_adjacent``: x and y are not adjacent; only part of the
    equivalence when ``maximal`` is set.
    """

    separable: bool
    y_not_in_dsep: bool
    dsep_separates: bool
    not_adjacent: bool
    maximal: bool
    dsep: frozenset

    @property
    def consistent(self) -> bool:
        core = {self.separable, self.y_not_in_dsep, self.dsep_separates}
        if self.maximal:
            core.add(self.not_adjacent)
        return len(core) == 1


def is_separable(g: MixedGraph, x, y) -> bool:
    """Exhaustive search for any m-separating subset of the other vertices."""
    rest = [v for v in g.vertices if v not in (x, y)]
    for k in range(len(rest) + 1):
        for z in itertools.combinations(rest, k):
            if m_separated(g, x, y, z):
                return True
    return False


def is_maximal(g: MixedGraph) -> bool:
    """Every non-adjacent pair can be m-separated."""
    for a, b in itertools.combinations(g.vertices, 2):
        if not g.is_adjacent(a, b) and not is_separable(g, a, b):
            return False
    return True


def check_dsep_lemma(g: MixedGraph, x, y, maximal: Optional[bool] = None) -> DSepLemmaReport:
    """Evaluate the four D-SEP lemma clauses for ``(x, y)`` on an ancestral graph.

    ``maximal`` defaults to True for DAGs and to an exhaustive check for MAGs.
    """
    if not is_ancestral(g):
        raise GraphError("D-SEP lemma needs an ancestral graph")
    dsep = d_sep_set(g, x, y)
    y_out = y not in dsep
    if maximal is None:
        maximal = g.kind is GraphKind.DAG or is_maximal(g)
    return DSepLemmaReport(
        separable=is_separable(g, x, y),
        y_not_in_dsep=y_out,
        dsep_separates=y_out and m_separated(g, x, y, dsep),
        not_adjacent=not g.is_adjacent(x, y),
        maximal=maximal,
        dsep=dsep,
    )
