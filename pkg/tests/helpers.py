"""Shared generators and brute-force references for the test suite."""

import itertools

import numpy as np

from gbackdoor.graph import GraphKind
from gbackdoor.oracle import random_ancestral_graph, random_graph

KINDS = (GraphKind.DAG, GraphKind.CPDAG, GraphKind.MAG)


def instance(kind, seed, n_min=2, n_max=7):
    """Random graph of ``kind`` with size and density drawn from ``seed``."""
    rng = np.random.default_rng([seed, 7919])
    n = int(rng.integers(n_min, n_max + 1))
    density = float(rng.uniform(0.2, 0.8))
    if kind == "ancestral":
        return random_ancestral_graph(n, density, seed)
    return random_graph(kind, n, density, seed)


def subsets(pool):
    pool = sorted(pool)
    for k in range(len(pool) + 1):
        yield from itertools.combinations(pool, k)


def closure_descendants(g, s):
    """Reflexive-transitive closure of the directed-edge relation by repeated
    boolean matrix products."""
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(idx)
    a = np.eye(n, dtype=bool)
    for p, c in g.directed_edges():
        a[idx[p], idx[c]] = True
    while True:
        nxt = (a.astype(int) @ a.astype(int)) > 0
        if (nxt == a).all():
            break
        a = nxt
    rows = a[[idx[v] for v in s]].any(axis=0)
    return frozenset(v for v in g.vertices if rows[idx[v]])


def figure_file(name):
    from gbackdoor.figures import figure_path

    return str(figure_path(name))


def cli_cases():
    """(argv, expected exit code) for every bundled example."""
    f = figure_file
    return [
        (["check", "-g", f("fig2a"), "-x", "X1,X3,X4", "-y", "Y", "-w", ""], 0),
        (["check", "-g", f("fig2b"), "-x", "X1,X2", "-y", "Y"], 1),
        (["find", "-g", f("fig3a"), "-x", "X", "-y", "Y"], 1),
        (["find", "-g", f("fig3b"), "-x", "X", "-y", "Y"], 0),
        (["find", "-g", f("fig4a"), "-x", "X", "-y", "Y"], 1),
        (["find", "-g", f("fig4b"), "-x", "X", "-y", "Y", "--json"], 1),
        (["find", "-g", f("fig5a"), "-x", "X", "-y", "Y", "--json", "--minimal"], 0),
        (["find", "-g", f("fig5a"), "-x", "X", "-y", "Y", "--minimal"], 0),
        (["find", "-g", f("fig5b"), "-x", "X", "-y", "Y"], 0),
        (["dsep", "-g", f("fig4b"), "-x", "X", "-y", "Y"], 0),
        (["dsep", "-g", f("fig3a"), "-x", "X", "-y", "Y", "--lowered"], 0),
        (["visible", "-g", f("fig4b")], 0),
        (["visible", "-g", f("fig5a")], 0),
        (["paths", "-g", f("fig4b"), "-x", "X", "-y", "Y", "--backdoor"], 0),
        (["paths", "-g", f("fig3a"), "-x", "X", "-y", "Y"], 0),
        (["validate-gaussian", "--kind", "dag", "--seeds", "3"], 0),
    ]
