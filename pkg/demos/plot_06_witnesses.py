"""
Explicit matrices with entries from A
=====================================

For origin-free A with |A|^2 > q, every t in F_q is the determinant of some
4x4 matrix with entries from A. The construction pins the last two columns
of rows 1, 2 and 3, 4 to the same values, so the determinant factors as a
2x2 minor of A times a 2x2 determinant of differences from A - A.
"""

# %%
from fqlab import WitnessFactory, make_field
from fqlab.sumprod import det2_cover_check, glibichuk_search

F = make_field(7)
A = [1, 2, 3]
fac = WitnessFactory(F, A)
for t in range(F.q):
    w = fac.det4(t)
    print(t, w.rows)

# %%
# The 3x3 construction relies on a pair alpha, beta in A - A for which
# alpha A - beta A is more than half the field.
print(glibichuk_search(F, A))
reached = []
for t in range(F.q):
    try:
        fac.det3(t)
        reached.append(t)
    except Exception:
        pass
print("3x3 targets reached:", reached)

# %%
# All 2x2 determinants with entries in A - A.
print(det2_cover_check(F, A))

# %%
# Sums of two products a a' from a set of six elements in F_9.
from fqlab import verify_kickass

print(verify_kickass(make_field(3, 2), [1, 2, 3, 4, 5, 6], 2))
