"""Linear-Gaussian structural equation models.

For a DAG with weight matrix ``B`` (``B[j, i]`` is the weight of ``i -> j``)
and diagonal noise covariance ``Omega`` the observed covariance is
``(I - B)^-1 Omega (I - B)^-T``.  Interventional effects are sums of path
products; adjusted effects are population regression coefficients read off
the covariance.  Both are exact up to rounding, which makes the adjustment
identity checkable to ~1e-12.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .criterion import check_generalized_backdoor
from .graph import Edge, GraphError, GraphKind, MixedGraph, possible_descendants
from .oracle import MAX_CIRCLE_EDGES, cpdag_of, enumerate_cpdag_members, project_to_mag, random_graph, random_hidden_dag
from .search import construct_representative, find_backdoor_set

WEIGHT_RANGE = (0.1, 1.0)
NOISE_RANGE = (0.5, 1.5)


@dataclass(frozen=True)
class LinearSEM:
    dag: MixedGraph
    weights: dict  # (tail, head) -> coefficient
    noise_variances: dict

    def __post_init__(self):
        if self.dag.kind is not GraphKind.DAG:
            raise GraphError("a linear SEM needs a DAG")
        if set(self.weights) != set(self.dag.directed_edges()):
            raise GraphError("weights must be keyed exactly by the DAG's edges")
        if set(self.noise_variances) != set(self.dag.vertices):
            raise GraphError("one noise variance per vertex")
        if any(s <= 0 for s in self.noise_variances.values()):
            raise GraphError("noise variances must be positive")

    @property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.dag.vertices)}

    def weight_matrix(self) -> np.ndarray:
        idx = self.index
        b = np.zeros((len(idx), len(idx)))
        for (a, c), w in self.weights.items():
            b[idx[c], idx[a]] = w
        return b

    def mutilate(self, xs) -> "LinearSEM":
        """The SEM after ``do(xs)``: edges into ``xs`` removed, unit noise on
        the intervened vertices so regression on them stays well posed."""
        xs = self.dag.check_vertices(xs)
        drop = [(a, c) for (a, c) in self.weights if c in xs]
        dag = self.dag.without_edges(drop)
        weights = {k: w for k, w in self.weights.items() if k[1] not in xs}
        noise = {v: (1.0 if v in xs else s) for v, s in self.noise_variances.items()}
        return LinearSEM(dag, weights, noise)


def random_sem(dag: MixedGraph, seed) -> LinearSEM:
    """Weights uniform on +-[0.1, 1] and noise variances uniform on [0.5, 1.5]."""
    rng = np.random.default_rng(seed)
    weights = {}
    for a, c in dag.directed_edges():
        sign = 1.0 if rng.random() < 0.5 else -1.0
        weights[(a, c)] = sign * rng.uniform(*WEIGHT_RANGE)
    noise = {v: rng.uniform(*NOISE_RANGE) for v in dag.vertices}
    return LinearSEM(dag, weights, noise)


def implied_covariance(sem: LinearSEM) -> np.ndarray:
    """Covariance over ``sem.dag.vertices`` (in that order)."""
    n = len(sem.dag.vertices)
    a = np.eye(n) - sem.weight_matrix()
    inv = np.linalg.inv(a)
    omega = np.diag([sem.noise_variances[v] for v in sem.dag.vertices])
    sigma = inv @ omega @ inv.T
    sigma = (sigma + sigma.T) / 2
    if n and np.linalg.eigvalsh(sigma)[0] <= 0:
        raise ArithmeticError("implied covariance is not positive definite")
    return sigma


def _directed_walks(sem, x, y, avoid=frozenset()):
    # DFS over directed paths x -> ... -> y; DAG so no revisits possible
    out = []

    def visit(u, prod):
        if u == y:
            out.append(prod)
            return
        for c in sorted(sem.dag.children(u)):
            if c not in avoid:
                visit(c, prod * sem.weights[(u, c)])

    visit(x, 1.0)
    return out


def interventional_effect(sem: LinearSEM, x, y) -> float:
    """d E[y | do(x)] / dx: sum over directed paths of weight products."""
    sem.dag.check_vertex(x)
    sem.dag.check_vertex(y)
    if x == y:
        raise GraphError("x and y must differ")
    return float(sum(_directed_walks(sem, x, y)))


def joint_interventional_effect(sem: LinearSEM, xs, y) -> dict:
    """Effect of each ``x`` in ``xs`` on ``y`` under a joint ``do(xs)``:
    directed paths that avoid the other intervened vertices."""
    xs = sorted(sem.dag.check_vertices(xs))
    sem.dag.check_vertex(y)
    if y in xs:
        raise GraphError("y must not be intervened on")
    return {
        x: float(sum(_directed_walks(sem, x, y, frozenset(xs) - {x}))) for x in xs
    }


def regression_coefficients(sem: LinearSEM, y, regressors) -> dict:
    """Population least-squares coefficients of ``y`` on ``regressors``."""
    regressors = list(regressors)
    if not regressors:
        return {}
    idx = sem.index
    sigma = implied_covariance(sem)
    r = [idx[v] for v in regressors]
    beta = np.linalg.solve(sigma[np.ix_(r, r)], sigma[r, idx[y]])
    return dict(zip(regressors, beta.tolist()))


def adjusted_effect(sem: LinearSEM, x, y, w=()) -> float:
    """Coefficient of ``x`` in the regression of ``y`` on ``{x} | w``, the
    linear-Gaussian form of adjusting for ``w``."""
    w = sorted(sem.dag.check_vertices(w))
    if x in w or y in w:
        raise GraphError("x and y must not be in the adjustment set")
    return regression_coefficients(sem, y, [x] + w)[x]


def joint_adjusted_effect(sem: LinearSEM, xs, y, w=()) -> dict:
    xs = sorted(sem.dag.check_vertices(xs))
    w = sorted(sem.dag.check_vertices(w))
    coef = regression_coefficients(sem, y, xs + w)
    return {x: coef[x] for x in xs}


def mutilated_effect(sem: LinearSEM, x, y) -> float:
    """Interventional effect by regression in the mutilated model."""
    return adjusted_effect(sem.mutilate({x}), x, y)


def sequential_g_formula(sem: LinearSEM, x1, x2, z, y) -> dict:
    """Effects of ``(x1, x2)`` from ``E_z|x1 [ E(y | x2, z) ]``.

    Valid when ``z`` sits between two sequential treatments: ``x1`` before
    ``z`` before ``x2``.
    """
    z_on_x1 = regression_coefficients(sem, z, [x1])[x1]
    y_coef = regression_coefficients(sem, y, [x2, z])
    return {x1: y_coef[z] * z_on_x1, x2: y_coef[x2]}


# ---------------------------------------------------------------------------
# validation sweeps


def _pair_deviation(g, sem, x, y) -> tuple:
    """Max |adjusted - interventional| over every W passing the criterion on ``g``."""
    truth = interventional_effect(sem, x, y)
    rest = [v for v in g.vertices if v not in (x, y)]
    worst, count = 0.0, 0
    for k in range(len(rest) + 1):
        for w in itertools.combinations(rest, k):
            if check_generalized_backdoor(g, x, y, w).verdict:
                count += 1
                worst = max(worst, abs(adjusted_effect(sem, x, y, w) - truth))
    return worst, count


def _cpdag_models(c, dag) -> list:
    # all members when enumerable, else the generating DAG plus one
    # representative per vertex
    if sum(1 for e in c.edges if not e.is_directed()) <= MAX_CIRCLE_EDGES:
        return enumerate_cpdag_members(c)
    out = [dag]
    for v in c.vertices:
        r = construct_representative(c, v).R
        if r not in out:
            out.append(r)
    return out


def validate_seed(kind, seed: int, n_max: int = 8) -> dict:
    """One random instance of the adjustment identity.

    ``dag``: criterion and numbers on the same DAG.  ``cpdag``: criterion on
    the CPDAG, numbers on every member DAG (or, past the
    enumeration bound, on the generating DAG and the per-vertex representatives).  ``mag``: criterion on the latent
    projection, numbers on the full DAG including latents.
    """
    kind = GraphKind(kind) if not isinstance(kind, GraphKind) else kind
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, n_max + 1))
    density = float(rng.uniform(0.2, 0.7))
    if kind is GraphKind.MAG:
        n_lat = int(rng.integers(1, 3))
        n = min(n, n_max - n_lat)
        full, latent = random_hidden_dag(n, n_lat, density, seed)
        g = project_to_mag(full, latent)
        models = [full]
    else:
        dag = random_graph(GraphKind.DAG, n, density, seed)
        if kind is GraphKind.DAG:
            g, models = dag, [dag]
        elif kind is GraphKind.CPDAG:
            g = cpdag_of(dag)
            models = _cpdag_models(g, dag)
        else:
            raise GraphError("validation supports dag, cpdag and mag")
    # prefer pairs with a possibly directed path so the effect is not trivially zero
    pairs = [(a, b) for a in g.vertices for b in sorted(possible_descendants(g, a)) if b != a]
    if not pairs:
        pairs = list(itertools.permutations(g.vertices, 2))
    x, y = pairs[int(rng.integers(len(pairs)))]
    worst, count = 0.0, 0
    for k, d in enumerate(models):
        sem = random_sem(d, [seed, k])
        dev, c = _pair_deviation(g, sem, x, y)
        worst, count = max(worst, dev), count + c
    found = find_backdoor_set(g, x, y)
    return {
        "seed": seed,
        "kind": kind.value,
        "n": len(g.vertices),
        "x": x,
        "y": y,
        "valid_sets": count,
        "constructed": sorted(found.backdoor_set) if found.exists else None,
        "max_deviation": worst,
    }


def figure_edges_sem(edges, weights, noise=None) -> LinearSEM:
    """Convenience constructor from ``[(tail, head), ...]`` and matching weights."""
    dag = MixedGraph(GraphKind.DAG, (), [Edge.directed(a, b) for a, b in edges])
    noise = noise or {v: 1.0 for v in dag.vertices}
    return LinearSEM(dag, dict(zip(edges, weights)), noise)
