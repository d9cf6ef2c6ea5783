# %% [markdown]
# # Singular spectrum and normality
#
# `analyze` discretizes `F_E` with composite Gauss-Legendre quadrature and
# refines until the nuclear and operator norms settle.

# %%
import math

import numpy as np

from truncfourier import analyze, commutator_defect, parse_set

for lit in ["[-1,1]", "[0,1]", "[-3,3]", "[-2,-1]∪[1,2]"]:
    r = analyze(parse_set(lit))
    print(f"{lit:16s} ||F_E||={r.operator_norm:.6f}  HS={r.hs_norm:.6f}  "
          f"mes/sqrt(2pi)={r.measure / math.sqrt(2 * math.pi):.6f}  nuclear={r.nuclear_norm:.4f}")

# %% [markdown]
# The decay of the singular values: the first few are close to one on long
# sets and the tail falls off super-exponentially.

# %%
s = analyze(parse_set("[-3,3]")).singular_values
print(np.array2string(s[:12], precision=3))

# %% [markdown]
# Symmetric sets give normal operators, the commutator defect is at rounding
# level. Breaking the symmetry makes it order one.

# %%
for lit in ["[-1,1]", "[-2,-1]∪[1,2]", "[0,1]", "[-1,1.5]", "[-1,1]∪[2,2.1]"]:
    print(f"{lit:18s} defect = {commutator_defect(parse_set(lit)):.3e}")
