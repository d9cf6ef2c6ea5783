# %% [markdown]
# # Trace norms and the unit-cell criterion
#
# The nuclear norm of `F_E` (no `2 pi` factors) sits below
# `e^{1/4} (sum_j sqrt(mes E_j))^2`. The literal lower bound `(mes E)^2`
# only holds while all singular values stay below one.

# %%
import math

from truncfourier.bounds import (
    converged_nuclear_norm, criterion_sum, trace_norm_lower_consistent, trace_norm_upper,
)
from truncfourier.interval_sets import measure, parse_set, sparse_spikes

print(f"{'set':22s} {'(mes)^2':>8} {'mes^2/sqrt(2pi)':>15} {'nuclear':>8} {'upper':>8}")
for lit in ["[0,0.5]", "[0,1]", "[-1,1]", "[-2,2]", "[0,0.3]∪[4,4.3]"]:
    S = parse_set(lit)
    print(f"{lit:22s} {measure(S)**2:8.3f} {trace_norm_lower_consistent(S):15.3f} "
          f"{converged_nuclear_norm(S):8.3f} {trace_norm_upper(S):8.3f}")

# %% [markdown]
# Sparse spikes `[j - j^-2, j + j^-2]`: bounded measure, growing criterion
# sum, growing nuclear norm.

# %%
for J in (4, 8, 16, 32):
    E = sparse_spikes(J)
    print(f"J={J:3d} mes={measure(E):.4f} (pi^2/3={math.pi**2/3:.4f}) "
          f"sum={criterion_sum(E):.3f} nuclear={converged_nuclear_norm(E):.3f}")
