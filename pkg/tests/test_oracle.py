import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gbackdoor.graph import (
    Edge,
    GraphError,
    GraphKind,
    MixedGraph,
    is_ancestral,
    parse_graph,
    serialize_graph,
)
from gbackdoor.oracle import (
    MAX_CIRCLE_EDGES,
    cpdag_of,
    dsep_moral_oracle,
    enumerate_cpdag_members,
    oracle_backdoor_exists,
    project_to_mag,
    random_ancestral_graph,
    random_graph,
    random_hidden_dag,
    unshielded_colliders,
)
from helpers import instance

seeds = st.integers(0, 10**6)


def test_member_counts(fig):
    members = enumerate_cpdag_members(fig("fig3a"))
    assert len(members) == 3
    assert sum(d.is_directed("X", "V2") and d.is_directed("V2", "Y") for d in members) == 1
    members = enumerate_cpdag_members(fig("fig3b"))
    assert len(members) == 2
    assert {d.is_directed("X", "V2") for d in members} == {True, False}


def test_fully_directed_cpdag_is_its_only_member():
    c = parse_graph("kind: CPDAG\nA --> C\nB --> C")
    (d,) = enumerate_cpdag_members(c)
    assert d.kind is GraphKind.DAG and d.edges == c.edges


def test_enumeration_bound():
    vs = [f"V{i}" for i in range(6)]
    full = MixedGraph(GraphKind.CPDAG, vs, [Edge.nondirected(a, b) for a, b in itertools.combinations(vs, 2)])
    with pytest.raises(GraphError):
        enumerate_cpdag_members(full)


def test_oracle_golden(fig):
    assert oracle_backdoor_exists(fig("fig5a"), "X", "Y") == frozenset()
    assert oracle_backdoor_exists(fig("fig4b"), "X", "Y") is None
    assert oracle_backdoor_exists(fig("fig3b"), "X", "Y") == {"V1", "V3"}


def test_oracle_size_bound():
    g = random_graph(GraphKind.DAG, 10, 0.3, 0)
    with pytest.raises(GraphError):
        oracle_backdoor_exists(g, "V1", "V2")


def test_moral_oracle_basics():
    chain = parse_graph("kind: DAG\nA --> B\nB --> C")
    assert dsep_moral_oracle(chain, "A", "C", {"B"})
    coll = parse_graph("kind: DAG\nA --> B\nC --> B")
    assert dsep_moral_oracle(coll, "A", "C", set())
    assert not dsep_moral_oracle(coll, "A", "C", {"B"})
    with pytest.raises(GraphError):
        dsep_moral_oracle(parse_graph("kind: MAG\nA <-> B"), "A", "B")


@pytest.mark.parametrize("kind", [GraphKind.DAG, GraphKind.CPDAG, GraphKind.MAG])
def test_generator_is_deterministic(kind):
    a = serialize_graph(random_graph(kind, 7, 0.5, 42))
    b = serialize_graph(random_graph(kind, 7, 0.5, 42))
    assert a == b
    assert random_graph(kind, 7, 0.5, 42).vertices == tuple(sorted(f"V{i}" for i in range(1, 8)))


def test_generator_errors():
    with pytest.raises(GraphError):
        random_graph(GraphKind.PAG, 4, 0.5, 0)
    with pytest.raises(GraphError):
        random_graph(GraphKind.DAG, 16, 0.5, 0)
    with pytest.raises(GraphError):
        random_graph(GraphKind.DAG, 4, 1.5, 0)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_generated_mags_are_ancestral(seed):
    assert is_ancestral(instance(GraphKind.MAG, seed))
    assert is_ancestral(random_ancestral_graph(6, 0.5, seed))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_projection_without_latents_is_identity(seed):
    d = instance(GraphKind.DAG, seed)
    m = project_to_mag(d, set())
    assert m.kind is GraphKind.MAG and m.edges == d.edges


def test_projection_of_hidden_confounder():
    d = parse_graph("kind: DAG\nL --> X\nL --> Y\nX --> Y")
    m = project_to_mag(d, {"L"})
    assert m.vertices == ("X", "Y") and m.is_directed("X", "Y")
    d2 = parse_graph("kind: DAG\nL --> X\nL --> Y")
    assert project_to_mag(d2, {"L"}).is_bidirected("X", "Y")


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_cpdag_round_trip(seed):
    d = instance(GraphKind.DAG, seed)
    c = cpdag_of(d)
    assume(sum(not e.is_directed() for e in c.edges) <= MAX_CIRCLE_EDGES)
    members = enumerate_cpdag_members(c)
    assert d in members
    for m in members:
        assert m.skeleton() == d.skeleton()
        assert unshielded_colliders(m) == unshielded_colliders(d)
        assert cpdag_of(m) == c


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_cpdag_orientation_closure(seed):
    # A *-> B o-o C implies an edge A -> C
    c = instance(GraphKind.CPDAG, seed)
    for b in c.vertices:
        for a, cc in itertools.permutations(c.adjacent(b), 2):
            if c.arrow_at(b, a) and c.is_nondirected(b, cc):
                assert c.is_adjacent(a, cc) and c.arrow_at(cc, a)


def test_hidden_dag_labels():
    d, latent = random_hidden_dag(4, 2, 0.5, 3)
    assert latent == {"L1", "L2"}
    assert set(d.vertices) == {"V1", "V2", "V3", "V4", "L1", "L2"}
