import itertools

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gbackdoor.criterion import check_generalized_backdoor
from gbackdoor.graph import (
    GraphError,
    GraphKind,
    all_paths,
    is_ancestral,
    parse_graph,
    possible_descendants,
)
from gbackdoor.oracle import MAX_CIRCLE_EDGES, enumerate_cpdag_members, oracle_backdoor_exists, unshielded_colliders
from gbackdoor.search import (
    NoBackdoorSetError,
    NotChordalError,
    construct_representative,
    evaluate_representative,
    find_backdoor_set,
    find_backdoor_set_cpdag,
    find_backdoor_set_dag,
    find_backdoor_set_mag,
    is_chordal,
    maximum_cardinality_search,
    minimal_backdoor_sets,
    representative_from,
)
from gbackdoor.separation import is_m_connecting, m_separated
from gbackdoor.visibility import back_door_paths
from helpers import KINDS, instance, subsets

seeds = st.integers(0, 10**6)


def test_dag_representative_drops_edges_out_of_x():
    d = parse_graph("kind: DAG\nA --> X\nX --> B\nX --> Y\nB --> Y")
    rep = construct_representative(d, "X")
    assert rep.R == d
    assert rep.removed == (("X", "B"), ("X", "Y"))
    assert rep.R_lower.adjacent("X") == ("A",)


def test_cpdag_3a_representative_is_d3(fig):
    c = fig("fig3a")
    rep = construct_representative(c, "X")
    assert rep.R.kind is GraphKind.DAG
    assert rep.R.is_directed("X", "V2") and rep.R.is_directed("V2", "Y")
    assert rep.R in enumerate_cpdag_members(c)
    # X o-o V2 is not a directed edge of the CPDAG, so nothing is removed
    assert rep.R_lower == rep.R and rep.removed == ()


def test_pag_5a_representative(fig):
    rep = construct_representative(fig("fig5a"), "X")
    assert rep.R == fig("fig5b")
    assert rep.R.num_edges_into("X") == 2
    assert rep.removed == (("X", "Y"),)


def test_golden_find(fig):
    r = find_backdoor_set(fig("fig3a"), "X", "Y")
    assert not r.exists and r.failure == "intersection" and r.intersection == {"V2"}
    assert r.dsep == {"V1", "V2", "V3"} and r.possible_descendants == {"V2", "Y"}

    r = find_backdoor_set(fig("fig3b"), "X", "Y")
    assert r.backdoor_set == {"V1", "V3"} and r.possible_descendants == {"V2", "V4"}

    r = find_backdoor_set(fig("fig4a"), "X", "Y")
    assert not r.exists and r.failure == "adjacent"

    r = find_backdoor_set(fig("fig4b"), "X", "Y")
    assert not r.exists and r.dsep == {"V1", "V2", "V3"} and {"V3"} <= r.intersection

    assert find_backdoor_set(fig("fig5a"), "X", "Y").backdoor_set == {"V1", "V2"}
    assert find_backdoor_set(fig("fig5b"), "X", "Y").backdoor_set == {"V1", "V2"}


def test_corollaries(fig):
    assert find_backdoor_set_dag(parse_graph("kind: DAG\nX --> Y"), "X", "Y") == frozenset()
    assert find_backdoor_set_dag(parse_graph("kind: DAG\nY --> X"), "X", "Y") is None
    assert find_backdoor_set_cpdag(fig("fig3b"), "X", "Y") == {"V1", "V3"}
    assert find_backdoor_set_cpdag(fig("fig3a"), "X", "Y") is None
    assert find_backdoor_set_mag(fig("fig4a"), "X", "Y") is None
    assert find_backdoor_set_mag(fig("fig4b"), "X", "Y") is None
    assert find_backdoor_set_mag(fig("fig5b"), "X", "Y") == {"V1", "V2"}
    with pytest.raises(GraphError):
        find_backdoor_set_dag(fig("fig3a"), "X", "Y")
    with pytest.raises(GraphError):
        find_backdoor_set_cpdag(fig("fig4b"), "X", "Y")
    with pytest.raises(GraphError):
        find_backdoor_set_mag(fig("fig2a"), "X1", "Y")


def test_minimal_sets(fig):
    assert minimal_backdoor_sets(fig("fig5a"), "X", "Y") == [frozenset()]
    assert minimal_backdoor_sets(parse_graph("kind: DAG\nW --> X\nW --> Y\nX --> Y"), "X", "Y") == [{"W"}]
    with pytest.raises(NoBackdoorSetError):
        minimal_backdoor_sets(fig("fig3a"), "X", "Y")


def test_wrong_representative_gives_wrong_answer(fig):
    rep = representative_from(fig("fig5a"), "X", fig("fig5b_wrong"))
    assert rep.R.num_edges_into("X") == 3
    r = evaluate_representative(fig("fig5a"), "X", "Y", rep)
    assert r.dsep == {"V1", "V2", "V3"} and r.intersection == {"V3"}


def test_x_equals_y_rejected(fig):
    with pytest.raises(GraphError):
        find_backdoor_set(fig("fig3a"), "X", "X")


def test_chordality():
    square = {"A": {"B", "D"}, "B": {"A", "C"}, "C": {"B", "D"}, "D": {"A", "C"}}
    assert not is_chordal(square)
    square["A"].add("C")
    square["C"].add("A")
    assert is_chordal(square)
    assert maximum_cardinality_search(square)[0] == "A"
    bad = parse_graph("kind: CPDAG\nA o-o B\nB o-o C\nC o-o D\nD o-o A")
    with pytest.raises(NotChordalError):
        construct_representative(bad, "A")


# -- sweeps -----------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(KINDS), seeds)
def test_existence_matches_oracle(kind, seed):
    g = instance(kind, seed)
    for x, y in itertools.permutations(g.vertices, 2):
        r = find_backdoor_set(g, x, y)
        o = oracle_backdoor_exists(g, x, y)
        assert r.exists == (o is not None)
        if r.exists:
            assert check_generalized_backdoor(g, x, y, r.backdoor_set).verdict


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_cpdag_representative_is_member(seed):
    c = instance(GraphKind.CPDAG, seed)
    assume(sum(not e.is_directed() for e in c.edges) <= MAX_CIRCLE_EDGES)
    members = enumerate_cpdag_members(c)
    for x in c.vertices:
        rep = construct_representative(c, x)
        assert rep.R in members
        assert rep.R.skeleton() == c.skeleton()
        assert rep.R.num_edges_into(x) == c.num_edges_into(x)
        assert unshielded_colliders(rep.R) == unshielded_colliders(c)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), seeds)
def test_lowered_graph_is_ancestral(kind, seed):
    g = instance(kind, seed)
    for x in g.vertices:
        assert is_ancestral(construct_representative(g, x).R_lower)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), seeds)
def test_separation_transfers_to_lowered_graph(kind, seed):
    # an m-connecting definite status back-door path given z exists in g
    # iff x and y are m-connected given z in R_lower
    g = instance(kind, seed, n_max=6)
    rng = np.random.default_rng(seed)
    for x, y in itertools.permutations(g.vertices, 2):
        low = construct_representative(g, x).R_lower
        pool = [v for v in g.vertices if v not in (x, y) and v not in possible_descendants(g, x)]
        z = tuple(v for v in pool if rng.random() < 0.5)
        open_bd = any(not is_m_connecting(g, p, z).blocked for p in back_door_paths(g, x, y))
        assert open_bd == (not m_separated(low, x, y, z))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), seeds)
def test_minimal_sets_are_minimal(kind, seed):
    g = instance(kind, seed, n_max=6)
    for x, y in itertools.permutations(g.vertices, 2):
        if not find_backdoor_set(g, x, y).exists:
            continue
        found = minimal_backdoor_sets(g, x, y)
        assert found
        for s in found:
            assert check_generalized_backdoor(g, x, y, s).verdict
            for t in subsets(s):
                if len(t) < len(s):
                    assert not check_generalized_backdoor(g, x, y, t).verdict


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([GraphKind.CPDAG, GraphKind.MAG, GraphKind.DAG]), seeds)
def test_no_possibly_directed_path_against_an_edge(kind, seed):
    # if v *-> u then u has no possibly directed path to v
    g = instance(kind, seed, n_max=6)
    for u, v in itertools.permutations(g.vertices, 2):
        if g.is_adjacent(u, v) and g.arrow_at(u, v):
            assert not any(
                all(not g.arrow_at(a, b) for a, b in zip(p, p[1:])) for p in all_paths(g, u, v)
            )
