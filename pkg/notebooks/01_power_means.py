# %% [markdown]
# # Generalized weighted means
#
# `gwa(x, y, GwaParams(alpha, m))` blends two nonnegative numbers. The
# exponent `m` moves the result from the smaller argument (very negative m)
# to the larger one (large m); `alpha` is the weight of the second argument.

# %%
import numpy as np

from gwabandit.means import GwaParams, gwa

x, y = 0.2, 0.8
for m in (-2.0, -1.0, 0.0, 1.0, 2.0, 4.0):
    row = [gwa(x, y, GwaParams(alpha, m)) for alpha in (0.1, 0.21, 0.5, 0.9)]
    print(f"m={m:+.1f}  " + "  ".join(f"{v:.4f}" for v in row))

# %% [markdown]
# Familiar special cases: m=1 is the weighted arithmetic mean, m=0 the
# weighted geometric mean, m=-1 the weighted harmonic mean.

# %%
a = 0.3
print(gwa(x, y, GwaParams(a, 1.0)), (1 - a) * x + a * y)
print(gwa(x, y, GwaParams(a, 0.0)), x ** (1 - a) * y**a)
print(gwa(x, y, GwaParams(a, -1.0)), 1 / ((1 - a) / x + a / y))

# %% [markdown]
# The mean is continuous through m = 0; tiny exponents are evaluated in a
# cancellation-free form, so the transition is smooth to rounding error.

# %%
for m in np.array([-1e-3, -1e-7, 0.0, 1e-7, 1e-3]):
    print(f"m={m:+.0e}  {gwa(x, y, GwaParams(a, float(m))):.15f}")

# %% [markdown]
# A zero argument with a negative exponent forces the mean to 0.

# %%
print(gwa(0.0, 0.9, GwaParams(0.3, -1.0)), gwa(0.0, 0.9, GwaParams(0.3, 2.0)))
