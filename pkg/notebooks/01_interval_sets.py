# %% [markdown]
# # Interval sets
#
# Finite unions of intervals are the only sets the library works with.
# Everything is normalized on construction, so set algebra is exact up to
# floating point endpoints.

# %%
from truncfourier.interval_sets import (
    IntervalSet, format_set, measure, negate, parse_set, periodic_set,
    sparse_spikes, unit_cells,
)

E = parse_set("[0,1]∪[0.5,2]∪[3,3.25]")
print(E, measure(E))

# %% [markdown]
# Reflection and the symmetric difference decide normality later on.

# %%
D = E ^ negate(E)
print("E ∆ (-E) =", D, " measure", measure(D))

# %% [markdown]
# Unit cells `E ∩ [j - 1/2, j + 1/2]` feed the trace-class criterion.

# %%
for j, cell in unit_cells(E):
    print(f"{j:3d}  {format_set(cell):28s}  {measure(cell):.4f}")

# %%
# the periodic set used by the isometric/null construction, |p| <= 2
print(periodic_set(0.5, 2))
print(sparse_spikes(6))

# %%
# literals round-trip exactly
assert parse_set(format_set(E)) == E
print(E.as_lists())
