# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Median graphs, hyperplanes and path moves
#
# A small tour on the 3-cube and the integer grid: medians, hyperplane
# classes, separation counts and the move sequence that turns one path
# into another.

# %%
from medianlab.graphs import Lattice, cycle_graph, hypercube_graph
from medianlab.hyperplanes import carrier, halfspaces, hyperplane_classes, separating_hyperplanes
from medianlab.median import check_median, median
from medianlab.rewriting import normalize_to_geodesic, transform_path

q3 = hypercube_graph(3)
print(check_median(q3).is_median, check_median(cycle_graph(6)))
print("median of 000, 011, 101:", median(q3, "000", "011", "101"))

# %% [markdown]
# Edges of the cube fall into three parallel classes of four, one per
# coordinate. Each class cuts the cube into two halves.

# %%
classes = hyperplane_classes(q3)
for J in sorted(set(classes.values())):
    near, far = halfspaces(q3, J)
    print(J, "->", sorted(near.vertices), "|", sorted(far.vertices))

# %%
grid = Lattice(2)
seps = separating_hyperplanes(grid, (0, 0), (2, 3), 10)
print(len(seps), "hyperplanes separate (0,0) from (2,3)")
print("carrier of one class in Q3 has", len(carrier(q3, next(iter(classes.values()))).vertices), "vertices")

# %% [markdown]
# A path that crosses the same hyperplane twice gets pushed across it with
# flips, then loses a backtrack.

# %%
t = normalize_to_geodesic(q3, ("000", "100", "110", "010"))
for m in t.moves:
    print(m)
print("end:", t.end)

# %%
a = ((0, 0), (1, 0), (1, 1), (0, 1), (0, 2))
b = ((0, 0), (0, 1), (0, 2))
trace = transform_path(grid, a, b)
for p in trace.replay(grid):
    print(p)
