# %% [markdown]
# # The sinc kernel and its top eigenvalue
#
# For `E = [-l, l]` the operator `F_E^* F_E` has kernel
# `sin l(t - s) / (pi (t - s))`. Its largest eigenvalue is `||F_E||^2`.

# %%
from truncfourier.interval_sets import IntervalSet
from truncfourier.spectral import analyze, fuchs_table, sinc_lambda0

for l in (0.5, 1.0, 2.0, 3.0):
    lam = sinc_lambda0(l, 400)
    nrm = analyze(IntervalSet([(-l, l)])).operator_norm
    print(f"l={l}: lambda0={lam:.15f}  ||F_E||^2={nrm**2:.15f}")

# %% [markdown]
# Compare `1 - lambda0` with two asymptotic formulas: the one stated in terms
# of `sqrt(l) e^{-2l}` and the classical prolate form with time-bandwidth
# product `c = l^2`. Only the second tracks the computed values; by `l = 5`
# the gap is below double precision.

# %%
print(f"{'l':>4} {'1-lambda0':>12} {'sqrt(l) form':>13} {'ratio':>10} {'c=l^2 form':>12} {'ratio':>7}")
for row in fuchs_table([1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0], 400):
    print(f"{row['l']:4.1f} {row['one_minus_lambda0']:12.3e} {row['prediction']:13.3e} "
          f"{row['ratio']:10.2e} {row['bandwidth_prediction']:12.3e} {row['bandwidth_ratio']:7.3f}")
