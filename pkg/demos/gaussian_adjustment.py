"""
Adjustment in a linear-Gaussian model
=====================================

In a linear SEM the effect of do(X) on Y is a sum of path products, and
adjusting for W is a regression coefficient.  When W passes the criterion
the two agree to rounding; when it fails they generally do not.
"""

import itertools

import numpy as np

from gbackdoor import load_figure
from gbackdoor.criterion import check_generalized_backdoor
from gbackdoor.gaussian import (
    adjusted_effect,
    figure_edges_sem,
    interventional_effect,
    random_sem,
    regression_coefficients,
    validate_seed,
)
from gbackdoor.oracle import random_graph

# %%
# A confounded triangle: W -> X, W -> Y, X -> Y.
sem = figure_edges_sem([("W", "X"), ("W", "Y"), ("X", "Y")], [0.8, -0.6, 0.5])
print("truth:", interventional_effect(sem, "X", "Y"))
print("no adjustment:", adjusted_effect(sem, "X", "Y"))
print("adjust for W:", adjusted_effect(sem, "X", "Y", ["W"]))

# %%
# Three treatments with nothing to adjust for.  Regressing Y on X1, X3 and
# X4 recovers the direct weight of X3 and zero for the other two.
rng = np.random.default_rng(0)
edges = [("X1", "X2"), ("X2", "X3"), ("X2", "X4"), ("X3", "Y")]
sem = figure_edges_sem(edges, rng.uniform(0.5, 1.5, size=4))
print(regression_coefficients(sem, "Y", ["X1", "X3", "X4"]))
print("X3 -> Y weight:", sem.weights[("X3", "Y")])

# %%
# Every subset on a random DAG: valid sets give the truth, others drift.
d = random_graph("DAG", 6, 0.5, seed=11)
sem = random_sem(d, seed=11)
x, y = "V2", "V6"
truth = interventional_effect(sem, x, y)
rest = [v for v in d.vertices if v not in (x, y)]
for k in range(len(rest) + 1):
    for w in itertools.combinations(rest, k):
        ok = check_generalized_backdoor(d, x, y, w).verdict
        err = adjusted_effect(sem, x, y, w) - truth
        print(f"{sorted(w)!s:28} valid={ok!s:5} error={err:+.2e}")

# %%
# The same check on CPDAGs and on MAGs with latents, a few seeds each.
for kind in ("DAG", "CPDAG", "MAG"):
    worst = max(validate_seed(kind, s)["max_deviation"] for s in range(10))
    print(kind, f"max deviation over 10 seeds: {worst:.1e}")
