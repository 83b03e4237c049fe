"""
Finding adjustment sets in graphs with hidden variables
=======================================================

A tour of the bundled example graphs: checking a candidate set, asking
whether any set exists, and seeing why the answer is sometimes no.
"""

from gbackdoor import load_figure
from gbackdoor.criterion import check_generalized_backdoor, check_pearl_backdoor
from gbackdoor.graph import format_path, serialize_graph
from gbackdoor.search import find_backdoor_set, minimal_backdoor_sets
from gbackdoor.visibility import back_door_paths, visible_edges

# %%
# Several treatments at once.  X1 causes X2, which feeds both X3 and X4;
# only X3 reaches Y.  Adjusting for nothing works for the joint effect of
# X1, X3 and X4, while Pearl's version of the criterion finds no set at all.
d = load_figure("fig2a")
print(serialize_graph(d))
print("empty set:", check_generalized_backdoor(d, {"X1", "X3", "X4"}, "Y").verdict)
print("Pearl, {}:", check_pearl_backdoor(d, {"X1", "X3", "X4"}, "Y").verdict)
print("Pearl, {X2}:", check_pearl_backdoor(d, {"X1", "X3", "X4"}, "Y", {"X2"}).verdict)

# %%
# Sequential treatments with a mediator-confounder in between: Z is a
# descendant of X1 and a confounder of X2, so no set can work.
d = load_figure("fig2b")
for w in ([], ["Z"]):
    rep = check_generalized_backdoor(d, {"X1", "X2"}, "Y", w)
    print(w, rep.verdict, rep.failed_condition.value, rep.witness_vertex or rep.witness_path)

# %%
# A CPDAG.  The circle edge X o-o V2 means V2 might be a descendant of X in
# some member DAG, and it is also needed to block a path.  No set exists.
c = load_figure("fig3a")
res = find_backdoor_set(c, "X", "Y")
print("exists:", res.exists, "D-SEP:", sorted(res.dsep), "clash:", sorted(res.intersection))

# the second CPDAG orients every edge at X, so the parents do the job
print(sorted(find_backdoor_set(load_figure("fig3b"), "X", "Y").backdoor_set))

# %%
# MAGs.  A visible edge X --> V3 carries no hidden confounding and can be
# ignored; invisible edges stay in the graph as back-door paths.
m = load_figure("fig4b")
for v in visible_edges(m):
    print(v.edge, "visible" if v.visible else "invisible")
res = find_backdoor_set(m, "X", "Y")
print("D-SEP:", sorted(res.dsep), "descendants of X:", sorted(res.possible_descendants))

# a single edge X --> Y in a MAG may hide a confounder, so nothing can help
print(find_backdoor_set(load_figure("fig4a"), "X", "Y").failure)

# %%
# A PAG.  The search picks a MAG in the class with no extra edge into X;
# the set it reads off works for every member.  Smaller sets may also work.
p = load_figure("fig5a")
res = find_backdoor_set(p, "X", "Y")
print(serialize_graph(res.representative.R))
print("set:", sorted(res.backdoor_set))
print("minimal:", [sorted(s) for s in minimal_backdoor_sets(p, "X", "Y")])
# the back-door paths that the set has to block
for path in back_door_paths(p, "X", "Y"):
    print(format_path(p, path))
