"""Generalized back-door criterion, Pearl's criterion and invariance conditions.

All checks take vertex *sets* for the treatment and outcome and report the
first violation found, scanning treatments, outcomes and paths in sorted
order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .graph import (
    GraphError,
    GraphKind,
    MixedGraph,
    ancestors_of_set,
    definite_status_paths,
    descendants,
    is_definite_status_vertex,
    possible_ancestors,
    possible_descendants,
)
from .separation import blocking_vertex
from .visibility import back_door_paths, starts_with_visible_edge_out


class Condition(enum.Enum):
    B_I = "B-i"
    B_II = "B-ii"
    P_I = "P-i"
    P_II = "P-ii"
    I_1 = "I-1"
    I_2 = "I-2"
    I_3 = "I-3"


@dataclass(frozen=True)
class CriterionReport:
    verdict: bool
    failed_condition: Optional[Condition] = None
    witness_vertex: Optional[str] = None
    witness_path: Optional[tuple] = None
    source: Optional[str] = None

    def __post_init__(self):
        if self.verdict != (self.failed_condition is None):
            raise ValueError("verdict must be False exactly when a condition failed")

    def __bool__(self):
        return self.verdict

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "failed_condition": self.failed_condition.value if self.failed_condition else None,
            "witness_vertex": self.witness_vertex,
            "witness_path": list(self.witness_path) if self.witness_path else None,
            "source": self.source,
        }


PASS = CriterionReport(True)


def _as_set(s) -> frozenset:
    return frozenset((s,)) if isinstance(s, str) else frozenset(s)


def _check_sets(g: MixedGraph, x, y, w):
    x, y, w = _as_set(x), _as_set(y), _as_set(w)
    for s in (x, y, w):
        g.check_vertices(s)
    if not x or not y:
        raise GraphError("treatment and outcome sets must be nonempty")
    if x & y or x & w or y & w:
        raise GraphError("treatment, outcome and adjustment sets must be pairwise disjoint")
    return x, y, w


def _open_path(g, paths, z):
    an_z = ancestors_of_set(g, z)
    for p in paths:
        if blocking_vertex(g, p, z, an_z) is None:
            return p
    return None


def check_generalized_backdoor(g: MixedGraph, x, y, w=frozenset()) -> CriterionReport:
    """Check whether ``w`` is a generalized back-door set relative to ``(x, y)``.

    (B-i): ``w`` holds no possible descendant of ``x``.
    (B-ii): for each treatment ``t``, ``w`` together with the other
    treatments blocks every definite status back-door path from ``t`` to ``y``.
    """
    x, y, w = _check_sets(g, x, y, w)
    bad = sorted(w & possible_descendants(g, x))
    if bad:
        return CriterionReport(False, Condition.B_I, witness_vertex=bad[0])
    for t in sorted(x):
        z = w | (x - {t})
        for target in sorted(y):
            p = _open_path(g, back_door_paths(g, t, target), z)
            if p is not None:
                return CriterionReport(False, Condition.B_II, witness_path=p, source=t)
    return PASS


def _possibly_directed_definite_reach(g: MixedGraph, x) -> frozenset:
    # DFS over simple paths that are possibly directed and of definite status
    reached = set()

    def visit(path, on_path):
        u = path[-1]
        for v in g.adjacent(u):
            if v in on_path or g.arrow_at(u, v):
                continue
            if len(path) >= 2 and not is_definite_status_vertex(g, path[-2], u, v):
                continue
            reached.add(v)
            path.append(v)
            on_path.add(v)
            visit(path, on_path)
            path.pop()
            on_path.discard(v)

    visit([x], {x})
    return frozenset(reached)


def check_b_i_prime(g: MixedGraph, x, w) -> bool:
    """True iff no member of ``w`` is reachable from ``x`` by a possibly
    directed path of definite status."""
    x, w = _as_set(x), _as_set(w)
    g.check_vertices(x)
    g.check_vertices(w)
    if x & w:
        raise GraphError("x and w must be disjoint")
    for t in x:
        if w & _possibly_directed_definite_reach(g, t):
            return False
    return True


def check_pearl_backdoor(d: MixedGraph, x, y, w=frozenset()) -> CriterionReport:
    """Pearl's back-door criterion on a DAG, required for every pair in x * y."""
    if d.kind is not GraphKind.DAG:
        raise GraphError("Pearl's back-door criterion is defined for DAGs")
    x, y, w = _check_sets(d, x, y, w)
    for t in sorted(x):
        bad = sorted(w & descendants(d, t))
        if bad:
            return CriterionReport(False, Condition.P_I, witness_vertex=bad[0], source=t)
    for t in sorted(x):
        for target in sorted(y):
            into = [p for p in definite_status_paths(d, t, target) if d.arrow_at(t, p[1])]
            p = _open_path(d, into, w)
            if p is not None:
                return CriterionReport(False, Condition.P_II, witness_path=p, source=t)
    return PASS


def check_invariance_graphical(g: MixedGraph, x, y, z=frozenset()) -> CriterionReport:
    """Graphical conditions for ``f(y | z)`` to be invariant under interventions on ``x``.

    ``x`` may overlap ``z``; ``y`` must be disjoint from both.  Each treatment
    falls under exactly one clause depending on whether it is in ``z``, a
    possible ancestor of ``z``, or neither.
    """
    x, y, z = _as_set(x), _as_set(y), _as_set(z)
    for s in (x, y, z):
        g.check_vertices(s)
    if x & y or y & z:
        raise GraphError("y must be disjoint from x and z")
    pan_z = possible_ancestors(g, z) if z else frozenset()
    for t in sorted(x):
        for target in sorted(y):
            if t in z:
                cond = z - {t}
                for p in definite_status_paths(g, t, target):
                    if _open_path(g, [p], cond) and not starts_with_visible_edge_out(g, p):
                        return CriterionReport(False, Condition.I_1, witness_path=p, source=t)
            elif t in pan_z:
                p = _open_path(g, definite_status_paths(g, t, target), z)
                if p is not None:
                    return CriterionReport(False, Condition.I_2, witness_path=p, source=t)
            else:
                for p in definite_status_paths(g, t, target):
                    if not g.arrow_at(t, p[1]) and _open_path(g, [p], z):
                        return CriterionReport(False, Condition.I_3, witness_path=p, source=t)
    return PASS


def backdoor_via_invariance(g: MixedGraph, x, y, w=frozenset()) -> bool:
    """The generalized back-door criterion restated as two invariance checks:
    ``f(w)`` unaffected by ``do(x)`` and ``f(y | x, w)`` unaffected by ``do(x)``."""
    x, y, w = _check_sets(g, x, y, w)
    first = check_invariance_graphical(g, x, w, frozenset()).verdict if w else True
    return first and check_invariance_graphical(g, x, y, x | w).verdict
