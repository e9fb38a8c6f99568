"""
Counting x . y = t, two ways
============================

For weight functions f and g on F_q^d, nu(t) adds f(x) g(y) over pairs
with x . y = t. Pairwise enumeration gives it exactly. A character sum over
the Fourier transform of g gives it again, in floating point, and it rounds
back to the same integers.
"""

# %%
from fqlab import make_field, nu_pairwise, nu_via_fourier
from fqlab.pointsets import WeightFn

F = make_field(7)
f = WeightFn.random(F, 3, seed=1, density=0.3, exclude_origin=True)
g = WeightFn.random(F, 3, seed=2, density=0.4)

exact = nu_pairwise(f, g)
spectral = nu_via_fourier(f, g)
print("pairwise:", exact.nu)
print("fourier: ", spectral.nu)
print("main term |f|_1 |g|_1 / q =", float(exact.main))

# %%
# The pointwise bound is checked in integers by squaring both sides, so no
# square roots enter.
from fqlab import pointwise_bound_check

rep = pointwise_bound_check(f, g, profile=exact)
print(rep)
print(f"lhs/rhs = {rep.ratio:.4f}")

# %%
# The L2 bound needs the spectrum of g and the number of points of
# supp(f) on each punctured line {s k : s != 0}.
from fqlab import l2_bound_check

print(l2_bound_check(f, g, profile=exact))
