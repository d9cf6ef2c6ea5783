# %% [markdown]
# # Concentration ratios and the implied constant
#
# For a test function `x` with `y = F x`, the ratio
# `||y||^2 / (||y||_{R\E}^2 + ||x||_{R\F}^2)` bounds `A e^{A mes E mes F}`
# from below. The largest ratio over a family gives the smallest admissible
# constant consistent with that family.

# %%
from truncfourier.bounds import (
    bfu_violations, bound_crossover, heldout_vectors, nazarov_contraction_bound, nazarov_empirical,
)
from truncfourier.interval_sets import parse_set
from truncfourier.spectral import analyze

E = parse_set("[-0.5,0.5]")
est = nazarov_empirical(E, n=50)
print(f"family max ratio {est.family_max_ratio:.4f}, extremal {est.extremal_ratio:.4f}")
print(f"A* = {est.a_star:.4f}, usable A = {est.a_lower}")

# %%
q, X = heldout_vectors(E, 50)
print("held-out violations:", len(bfu_violations(E, est.a_lower, q, X)))
print("||F_E||^2 =", analyze(E).operator_norm ** 2, " bound:", nazarov_contraction_bound(E, est.a_lower))

# %% [markdown]
# The squared Hilbert-Schmidt bound `mes^2 / 2 pi` wins for small sets and
# loses for large ones; with `A = 1` the switch happens once.

# %%
grid, diff, changes = bound_crossover(1.0)
print("sign change near mes E =", changes)
