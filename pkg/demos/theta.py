# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # From group actions to right-angled Artin groups
#
# Three actions: the integers on a line, the plane lattice on itself and
# the free group on its Cayley tree. Hyperplane orbits become generators and
# a group element maps to the label of a path from the basepoint to its image.

# %%
from medianlab.action import (
    ActionSpec, build_orbit_labeling, check_no_inversion, left_multiply, permutation, theta, translate,
)
from medianlab.graphs import ExplicitGraph, FreeGroupTree, Lattice
from medianlab.raag import abelianize, format_word, parse_word

z2 = ActionSpec(Lattice(2), {"x": translate((1, 0)), "y": translate((0, 1))})
free = ActionSpec(FreeGroupTree(2), {"a": left_multiply(("a", 1)), "b": left_multiply(("b", 1))})

for a in (z2, free):
    lab = build_orbit_labeling(a, 5)
    print(a, "-> generators", lab.gamma.generators, "commuting pairs", lab.gamma.edges())

# %%
lab = build_orbit_labeling(free, 5)
for text in ["a b a^-1", "a a^-1 b", "b b a"]:
    print(text, "->", format_word(theta(free, lab, parse_word(text), 5)))

# %%
lab2 = build_orbit_labeling(z2, 5)
w = parse_word("x y x y^-1 y^-1")
print(format_word(theta(z2, lab2, w, 5)), abelianize(lab2.gamma, theta(z2, lab2, w, 5)))

# %% [markdown]
# Swapping the two ends of a single edge fixes its hyperplane and swaps the
# sides: no labeling exists. The reflection of a 3-vertex path is fine, and
# as a finite-order element it maps to the identity.

# %%
k2 = ExplicitGraph("ab", [("a", "b")])
print(check_no_inversion(ActionSpec(k2, {"s": permutation({"a": "b", "b": "a"})}, "a")))
p3 = ExplicitGraph("lmr", [("l", "m"), ("m", "r")])
refl = ActionSpec(p3, {"r": permutation({"l": "r", "m": "m", "r": "l"})}, "m")
print(check_no_inversion(refl), theta(refl, build_orbit_labeling(refl), parse_word("r")))
