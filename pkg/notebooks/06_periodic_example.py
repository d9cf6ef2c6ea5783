# %% [markdown]
# # Isometric and null vectors on a periodic set
#
# On `E = U_p ([-a, a] + p sqrt(2 pi))` the vector `x = sqrt(2 pi) v phi`
# is mapped by `F` to a function supported in `E` again. Modulating `x`
# moves `F x` into the gaps.

# %%
import numpy as np

from truncfourier.constructions import (
    BumpSpec, build_isometric_vector, build_null_vector, certification_sweep,
    independence_gram, parseval_defect, shift_identity_error,
)

iso = build_isometric_vector(BumpSpec(a=0.5, P=6), dual_check=True)
print(iso.to_json())

# %%
null = build_null_vector(BumpSpec(a=0.5, P=6))
print("null ratio", null.ratio)
print("shift identity error", shift_identity_error(BumpSpec(a=0.5, P=6)))
print("Parseval defect", parseval_defect(iso))

# %% [markdown]
# Truncation to `|p| <= P` is the only approximation left; both ratios
# improve with `P`.

# %%
for mode in ("isometric", "null"):
    print(mode, [(r["P"], round(r["ratio"], 5)) for r in certification_sweep([1, 2, 4, 6], mode=mode)])

# %%
G = independence_gram([0.3, 0.4, 0.5])
print("Gram determinant", np.linalg.det(G).real)
