# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Divisor-class bookkeeping
#
# Each formal map lists the divisor classes it contracts (H) and the ones
# its inverse contracts (K). Its class vector is the K count minus the H
# count, read off as a path label in a finite subset cube.

# %%
from medianlab.cremona import check_witness, example_ledger, generation_obstruction, phi, phi_via_cube_path

ledger = example_ledger()
for f in ledger.maps.values():
    path, vec = phi_via_cube_path(f)
    print(f"{f.name:22s} {str(phi(f)):40s} path length {len(path) - 1}")

# %%
for w in ledger.witnesses:
    rep = check_witness(w)
    print("ok  " if rep else "FAIL", w.f.name, "o", w.g.name, "=", w.composite.name)

# %% [markdown]
# Maps with no codimension-one exceptional locus all have zero vector, so
# anything with a nonzero vector lies outside the group they generate.

# %%
pr = [m for m in ledger.maps.values() if m.is_pseudo_regularisable]
print(generation_obstruction(pr, ledger["exotic"]))
