"""Partial mixed graphs: representation, file format and reachability.

A single class, :class:`MixedGraph`, carries DAGs, CPDAGs, MAGs and PAGs.
Every edge has a mark at each endpoint (tail, arrowhead or circle) and there
is at most one edge per vertex pair.  Graphs are immutable; derived graphs
are built with :meth:`MixedGraph.without_edges` and friends.

Paths are plain tuples of vertex labels.
"""

from __future__ import annotations

import enum
import functools
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

Path = tuple  # tuple[str, ...]


class GraphError(ValueError):
    """Base class for invalid graphs and invalid graph queries."""


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class InvalidGraphError(GraphError):
    pass


class UnknownVertexError(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex!r}")


class Mark(enum.Enum):
    TAIL = "-"
    ARROW = ">"
    CIRCLE = "o"


TAIL, ARROW, CIRCLE = Mark.TAIL, Mark.ARROW, Mark.CIRCLE


class GraphKind(enum.Enum):
    DAG = "DAG"
    CPDAG = "CPDAG"
    MAG = "MAG"
    PAG = "PAG"


# unordered mark pairs allowed per kind; tail-tail and circle-tail never are
_LEGAL_MARKS = {
    GraphKind.DAG: {frozenset([TAIL, ARROW])},
    GraphKind.CPDAG: {frozenset([TAIL, ARROW]), frozenset([CIRCLE])},
    GraphKind.MAG: {frozenset([TAIL, ARROW]), frozenset([ARROW])},
    GraphKind.PAG: {
        frozenset([TAIL, ARROW]),
        frozenset([ARROW]),
        frozenset([CIRCLE, ARROW]),
        frozenset([CIRCLE]),
    },
}

_LABEL_RE = re.compile(r"^[^\s<>o\-#]+$")


@dataclass(frozen=True)
class Edge:
    """An edge ``u *-* v``; ``mark_u`` sits at ``u`` and ``mark_v`` at ``v``.

    Construction normalizes the endpoint order so that ``u < v``.
    """

    u: str
    v: str
    mark_u: Mark
    mark_v: Mark

    def __post_init__(self):
        if self.u == self.v:
            raise InvalidGraphError(f"self-loop at {self.u!r}")
        if self.v < self.u:
            u, v, mu, mv = self.v, self.u, self.mark_v, self.mark_u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)
            object.__setattr__(self, "mark_u", mu)
            object.__setattr__(self, "mark_v", mv)

    @classmethod
    def directed(cls, a: str, b: str) -> "Edge":
        """``a --> b``."""
        return cls(a, b, TAIL, ARROW)

    @classmethod
    def bidirected(cls, a: str, b: str) -> "Edge":
        return cls(a, b, ARROW, ARROW)

    @classmethod
    def nondirected(cls, a: str, b: str) -> "Edge":
        return cls(a, b, CIRCLE, CIRCLE)

    @property
    def pair(self) -> frozenset:
        return frozenset((self.u, self.v))

    def mark_at(self, vertex: str) -> Mark:
        if vertex == self.u:
            return self.mark_u
        if vertex == self.v:
            return self.mark_v
        raise UnknownVertexError(vertex)

    def is_directed(self) -> bool:
        return {self.mark_u, self.mark_v} == {TAIL, ARROW}

    def sort_key(self):
        return (self.u, self.v)

    def __str__(self):
        return f"{self.u} {edge_token(self.mark_u, self.mark_v)} {self.v}"


_TOKENS = {
    (TAIL, ARROW): "-->",
    (ARROW, TAIL): "<--",
    (ARROW, ARROW): "<->",
    (CIRCLE, ARROW): "o->",
    (ARROW, CIRCLE): "<-o",
    (CIRCLE, CIRCLE): "o-o",
}
_TOKEN_MARKS = {tok: marks for marks, tok in _TOKENS.items()}


def edge_token(mark_left: Mark, mark_right: Mark) -> str:
    try:
        return _TOKENS[(mark_left, mark_right)]
    except KeyError:
        raise InvalidGraphError(
            f"no file token for marks ({mark_left.name}, {mark_right.name})"
        ) from None


class MixedGraph:
    """Immutable partial mixed graph of a given :class:`GraphKind`.

    Parameters
    ----------
    kind : GraphKind or str
    vertices : iterable of str
        Extra vertices; endpoints of ``edges`` are added automatically.
    edges : iterable of Edge or (u, v, mark_u, mark_v) tuples
    validate : bool
        Run the kind-specific checks (legal marks, acyclicity, ancestrality).
    """

    __slots__ = ("kind", "vertices", "edges", "_nbr", "_hash", "__weakref__")

    def __init__(self, kind, vertices=(), edges=(), *, validate: bool = True):
        kind = GraphKind(kind) if not isinstance(kind, GraphKind) else kind
        nbr: dict[str, dict[str, tuple[Mark, Mark]]] = {}
        for v in vertices:
            _check_label(v)
            nbr.setdefault(v, {})
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            _check_label(e.u)
            _check_label(e.v)
            nu = nbr.setdefault(e.u, {})
            if e.v in nu:
                raise InvalidGraphError(f"duplicate edge for pair {{{e.u},{e.v}}}")
            nu[e.v] = (e.mark_u, e.mark_v)
            nbr.setdefault(e.v, {})[e.u] = (e.mark_v, e.mark_u)
        edges = tuple(
            Edge(u, v, mu, mv)
            for u in sorted(nbr)
            for v, (mu, mv) in sorted(nbr[u].items())
            if u < v
        )
        _set = object.__setattr__
        _set(self, "kind", kind)
        _set(self, "vertices", tuple(sorted(nbr)))
        _set(self, "_nbr", nbr)
        _set(self, "edges", edges)
        _set(self, "_hash", hash((kind, self.vertices, edges)))
        if validate:
            self._validate()

    # -- basic queries -------------------------------------------------

    def __contains__(self, v) -> bool:
        return v in self._nbr

    def __len__(self) -> int:
        return len(self.vertices)

    def check_vertex(self, v) -> None:
        if v not in self._nbr:
            raise UnknownVertexError(v)

    def check_vertices(self, vs: Iterable) -> frozenset:
        vs = frozenset(vs)
        for v in sorted(vs, key=str):
            self.check_vertex(v)
        return vs

    def adjacent(self, v) -> tuple:
        """Sorted neighbours of ``v``."""
        return tuple(sorted(self._nbr[v]))

    def is_adjacent(self, a, b) -> bool:
        return b in self._nbr.get(a, ())

    def mark_at(self, at, other) -> Mark:
        """Mark at ``at`` on the edge between ``at`` and ``other``."""
        try:
            return self._nbr[at][other][0]
        except KeyError:
            raise GraphError(f"{at} and {other} are not adjacent") from None

    def arrow_at(self, at, other) -> bool:
        return self._nbr[at][other][0] is ARROW

    def is_directed(self, a, b) -> bool:
        """True iff ``a --> b``."""
        m = self._nbr[a].get(b)
        return m is not None and m == (TAIL, ARROW)

    def is_bidirected(self, a, b) -> bool:
        m = self._nbr[a].get(b)
        return m is not None and m == (ARROW, ARROW)

    def is_nondirected(self, a, b) -> bool:
        m = self._nbr[a].get(b)
        return m is not None and m == (CIRCLE, CIRCLE)

    def parents(self, v) -> frozenset:
        return frozenset(u for u, m in self._nbr[v].items() if m == (ARROW, TAIL))

    def children(self, v) -> frozenset:
        return frozenset(u for u, m in self._nbr[v].items() if m == (TAIL, ARROW))

    def edge(self, a, b) -> Edge:
        ma, mb = self._nbr[a][b]
        return Edge(a, b, ma, mb)

    def directed_edges(self) -> Iterator[tuple]:
        """Yield ``(a, b)`` for every ``a --> b``, in sorted order."""
        for e in self.edges:
            if (e.mark_u, e.mark_v) == (TAIL, ARROW):
                yield (e.u, e.v)
            elif (e.mark_u, e.mark_v) == (ARROW, TAIL):
                yield (e.v, e.u)

    def skeleton(self) -> frozenset:
        return frozenset(e.pair for e in self.edges)

    def num_edges_into(self, v) -> int:
        return sum(1 for u in self._nbr[v] if self._nbr[v][u][0] is ARROW)

    # -- derived graphs ------------------------------------------------

    def replace(self, *, kind=None, edges=None, validate: bool = True) -> "MixedGraph":
        return MixedGraph(
            self.kind if kind is None else kind,
            self.vertices,
            self.edges if edges is None else edges,
            validate=validate,
        )

    def without_edges(self, pairs: Iterable, *, kind=None, validate=True) -> "MixedGraph":
        drop = {frozenset(p) for p in pairs}
        return self.replace(
            kind=kind,
            edges=[e for e in self.edges if e.pair not in drop],
            validate=validate,
        )

    def with_edges(self, new_edges: Iterable, *, kind=None, validate=True) -> "MixedGraph":
        """Copy with ``new_edges`` added, replacing any edge on the same pair."""
        new_edges = [e if isinstance(e, Edge) else Edge(*e) for e in new_edges]
        drop = {e.pair for e in new_edges}
        kept = [e for e in self.edges if e.pair not in drop]
        return self.replace(kind=kind, edges=kept + new_edges, validate=validate)

    def induced_subgraph(self, vs: Iterable) -> "MixedGraph":
        vs = set(vs)
        return MixedGraph(
            self.kind,
            sorted(vs),
            [e for e in self.edges if e.u in vs and e.v in vs],
            validate=False,
        )

    # -- identity ------------------------------------------------------

    def _key(self):
        return (self.kind, self.vertices, self.edges)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return self._hash

    def __setattr__(self, name, value):
        raise AttributeError("MixedGraph is immutable")

    def __delattr__(self, name):
        raise AttributeError("MixedGraph is immutable")

    def __repr__(self):
        body = ", ".join(str(e) for e in self.edges)
        return f"MixedGraph({self.kind.value}: {body})"

    # -- validation ----------------------------------------------------

    def _validate(self) -> None:
        legal = _LEGAL_MARKS[self.kind]
        for e in self.edges:
            if frozenset([e.mark_u, e.mark_v]) not in legal:
                raise InvalidGraphError(
                    f"edge {e.u} {_TOKENS.get((e.mark_u, e.mark_v), '?')} {e.v}"
                    f" is not allowed in a {self.kind.value}"
                )
        if has_directed_cycle(self):
            raise InvalidGraphError(f"{self.kind.value} has a directed cycle")
        if self.kind is GraphKind.MAG and has_almost_directed_cycle(self):
            raise InvalidGraphError("MAG has an almost directed cycle")


def _check_label(v) -> None:
    if not isinstance(v, str) or not _LABEL_RE.match(v):
        raise InvalidGraphError(f"illegal vertex label {v!r}")


# ---------------------------------------------------------------------------
# file format

_EDGE_LINE = re.compile(r"^(\S+)\s+(\S+)\s+(\S+)$")


def parse_graph(text: str) -> MixedGraph:
    """Parse the line-oriented graph format.

    >>> parse_graph("kind: DAG\\nX --> Y").edges
    (Edge(u='X', v='Y', mark_u=<Mark.TAIL: '-'>, mark_v=<Mark.ARROW: '>'>),)
    """
    kind = None
    vertices: list[str] = []
    edges: dict[frozenset, Edge] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if kind is None:
            head, sep, rest = line.partition(":")
            if not sep or head.strip() != "kind":
                raise GraphParseError(lineno, "expected 'kind: DAG|CPDAG|MAG|PAG'")
            try:
                kind = GraphKind(rest.strip())
            except ValueError:
                raise GraphParseError(lineno, f"unknown kind {rest.strip()!r}") from None
            continue
        if line.startswith("vertex:"):
            name = line[len("vertex:"):].strip()
            if not _LABEL_RE.match(name):
                raise GraphParseError(lineno, f"illegal vertex label {name!r}")
            vertices.append(name)
            continue
        m = _EDGE_LINE.match(line)
        if not m or m.group(2) not in _TOKEN_MARKS:
            raise GraphParseError(lineno, f"cannot parse edge line {raw.strip()!r}")
        a, tok, b = m.groups()
        for lab in (a, b):
            if not _LABEL_RE.match(lab):
                raise GraphParseError(lineno, f"illegal vertex label {lab!r}")
        if a == b:
            raise GraphParseError(lineno, f"self-loop at {a}")
        ma, mb = _TOKEN_MARKS[tok]
        e = Edge(a, b, ma, mb)
        if e.pair in edges:
            raise GraphParseError(lineno, f"duplicate edge for pair {{{e.u},{e.v}}}")
        edges[e.pair] = e
    if kind is None:
        raise GraphParseError(1, "empty graph file (missing kind header)")
    return MixedGraph(kind, vertices, edges.values())


def serialize_graph(g: MixedGraph) -> str:
    """Canonical text form: isolated vertices, then edges sorted by endpoints."""
    lines = [f"kind: {g.kind.value}"]
    for v in g.vertices:
        if not g.adjacent(v):
            lines.append(f"vertex: {v}")
    lines.extend(str(e) for e in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path) -> MixedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------------------
# reachability


def _reach(g: MixedGraph, sources: frozenset, step) -> frozenset:
    seen = set(sources)
    queue = deque(sorted(sources))
    while queue:
        u = queue.popleft()
        for w in g.adjacent(u):
            if w not in seen and step(u, w):
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def descendants(g: MixedGraph, s) -> frozenset:
    """Vertices reachable from ``s`` along directed paths, ``s`` included."""
    s = g.check_vertices(_as_set(s))
    return _reach(g, s, g.is_directed)


def ancestors(g: MixedGraph, s) -> frozenset:
    s = g.check_vertices(_as_set(s))
    return _reach(g, s, lambda u, w: g.is_directed(w, u))


def possible_descendants(g: MixedGraph, s) -> frozenset:
    """Vertices reachable by a possibly directed path: no edge points back."""
    s = g.check_vertices(_as_set(s))
    return _reach(g, s, lambda u, w: not g.arrow_at(u, w))


def possible_ancestors(g: MixedGraph, s) -> frozenset:
    s = g.check_vertices(_as_set(s))
    return _reach(g, s, lambda u, w: not g.arrow_at(w, u))


@functools.lru_cache(maxsize=2048)
def ancestor_map(g: MixedGraph) -> dict:
    """``{v: an(v, g)}`` for every vertex; cached per graph."""
    return {v: ancestors(g, v) for v in g.vertices}


def ancestors_of_set(g: MixedGraph, s) -> frozenset:
    amap = ancestor_map(g)
    out = set()
    for v in s:
        out |= amap[v]
    return frozenset(out)


def _as_set(s) -> frozenset:
    if isinstance(s, str):
        return frozenset((s,))
    return frozenset(s)


def has_directed_cycle(g: MixedGraph) -> bool:
    indeg = {v: len(g.parents(v)) for v in g.vertices}
    queue = deque(v for v in g.vertices if indeg[v] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for c in g.children(u):
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    return seen != len(g.vertices)


def has_almost_directed_cycle(g: MixedGraph) -> bool:
    for e in g.edges:
        if (e.mark_u, e.mark_v) == (ARROW, ARROW):
            if e.u in ancestors(g, e.v) or e.v in ancestors(g, e.u):
                return True
    return False


def is_ancestral(g: MixedGraph) -> bool:
    """No directed cycle, no almost directed cycle, no circle marks."""
    for e in g.edges:
        if CIRCLE in (e.mark_u, e.mark_v):
            return False
    return not has_directed_cycle(g) and not has_almost_directed_cycle(g)


# ---------------------------------------------------------------------------
# path predicates


def is_path(g: MixedGraph, p) -> bool:
    if len(p) < 2 or len(set(p)) != len(p):
        return False
    return all(v in g for v in p) and all(
        g.is_adjacent(a, b) for a, b in zip(p, p[1:])
    )


def is_collider(g: MixedGraph, a, b, c) -> bool:
    """``b`` is a collider on ``<a, b, c>``: ``a *-> b <-* c``."""
    return g.arrow_at(b, a) and g.arrow_at(b, c)


def is_definite_noncollider(g: MixedGraph, a, b, c) -> bool:
    """Tail at ``b``, or ``a *-o b o-* c`` with ``a`` and ``c`` not adjacent."""
    mba, mbc = g.mark_at(b, a), g.mark_at(b, c)
    if mba is TAIL or mbc is TAIL:
        return True
    return mba is CIRCLE and mbc is CIRCLE and not g.is_adjacent(a, c)


def is_definite_status_vertex(g: MixedGraph, a, b, c) -> bool:
    return is_collider(g, a, b, c) or is_definite_noncollider(g, a, b, c)


def is_definite_status_path(g: MixedGraph, p) -> bool:
    return all(
        is_definite_status_vertex(g, p[i - 1], p[i], p[i + 1])
        for i in range(1, len(p) - 1)
    )


def is_possibly_directed(g: MixedGraph, p) -> bool:
    """No edge on ``p`` is into its earlier endpoint."""
    return all(not g.arrow_at(a, b) for a, b in zip(p, p[1:]))


def is_directed_path(g: MixedGraph, p) -> bool:
    return all(g.is_directed(a, b) for a, b in zip(p, p[1:]))


def is_collider_path(g: MixedGraph, p) -> bool:
    return all(is_collider(g, p[i - 1], p[i], p[i + 1]) for i in range(1, len(p) - 1))


def format_path(g: MixedGraph, p) -> str:
    """Render a path with its edge tokens, e.g. ``X <-> V2 --> Y``."""
    parts = [p[0]]
    for a, b in zip(p, p[1:]):
        parts.append(edge_token(g.mark_at(a, b), g.mark_at(b, a)))
        parts.append(b)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# path enumeration


def _dfs_paths(g: MixedGraph, x, y, extend_ok, max_length) -> list:
    out = []
    path = [x]
    on_path = {x}

    def visit(u):
        if max_length is not None and len(path) - 1 >= max_length:
            return
        for w in g.adjacent(u):
            if w in on_path:
                continue
            if len(path) >= 2 and not extend_ok(path[-2], u, w):
                continue
            if w == y:
                out.append(tuple(path) + (w,))
                continue
            path.append(w)
            on_path.add(w)
            visit(w)
            path.pop()
            on_path.discard(w)

    visit(x)
    out.sort()
    return out


@functools.lru_cache(maxsize=8192)
def _all_paths_cached(g, x, y, max_length):
    return tuple(_dfs_paths(g, x, y, lambda a, b, c: True, max_length))


@functools.lru_cache(maxsize=8192)
def _definite_paths_cached(g, x, y, max_length):
    return tuple(_dfs_paths(g, x, y, functools.partial(is_definite_status_vertex, g), max_length))


def all_paths(g: MixedGraph, x, y, max_length: Optional[int] = None) -> tuple:
    """Every path between ``x`` and ``y``, in lexicographic order."""
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise GraphError("path endpoints must differ")
    return _all_paths_cached(g, x, y, max_length)


def definite_status_paths(g: MixedGraph, x, y, max_length: Optional[int] = None) -> tuple:
    """Paths between ``x`` and ``y`` whose interior vertices all have definite
    status (collider or definite noncollider), in lexicographic order."""
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise GraphError("path endpoints must differ")
    return _definite_paths_cached(g, x, y, max_length)


class LemmaViolation(AssertionError):
    """A structural property guaranteed for valid inputs does not hold."""


def possibly_directed_definite_status_path(g: MixedGraph, x, y) -> Optional[tuple]:
    """Shortest possibly directed path from ``x`` to ``y``, or ``None``.

    On valid graphs such a shortest path is of definite status, and once an
    arrowhead appears along it every later edge is directed.  Both facts are
    checked; a failure raises :class:`LemmaViolation`.
    """
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise GraphError("path endpoints must differ")
    prev = {x: None}
    queue = deque([x])
    while queue and y not in prev:
        u = queue.popleft()
        for w in g.adjacent(u):
            if w not in prev and not g.arrow_at(u, w):
                prev[w] = u
                queue.append(w)
    if y not in prev:
        return None
    p = [y]
    while prev[p[-1]] is not None:
        p.append(prev[p[-1]])
    p = tuple(reversed(p))
    if not is_definite_status_path(g, p):
        raise LemmaViolation(f"shortest possibly directed path {p} is not of definite status")
    seen_arrow = False
    for a, b in zip(p, p[1:]):
        if seen_arrow and not g.is_directed(a, b):
            raise LemmaViolation(f"edge {a}-{b} after an arrowhead on {p} is not directed")
        seen_arrow = seen_arrow or g.arrow_at(b, a)
    return p
