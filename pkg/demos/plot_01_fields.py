"""
Arithmetic in GF(p^n)
=====================

Elements of a finite field are plain integers. The base-p digits of a code
are the coefficients of a polynomial, lowest degree first, reduced modulo a
fixed irreducible polynomial.
"""

# %%
# Build F_9 and look at its modulus.
from fqlab import make_field

F = make_field(3, 2)
print(F)
print(F.describe())

# %%
# The code for x + 1 is 1 + 1*3 = 4 and x + 2 is 2 + 1*3 = 5. Since
# x^2 = -1 here, their product is x^2 + 2 = 1.
a, b = F.from_coeffs([1, 1]), F.from_coeffs([2, 1])
print(a, "*", b, "=", F.mul(a, b))

# %%
# Every operation also works on numpy arrays, which is how the rest of the
# library evaluates millions of determinants at once.
import numpy as np

t = F.elements
table = F.mul(t[:, None], t[None, :])
print(table)

# %%
# The additive character chi(a) = exp(2 pi i Tr(a) / p) sums to zero over
# the field.
print("trace of each element:", [F.trace(int(a)) for a in t])
print("sum of chi:", np.round(F.chi_table.sum(), 12))
