"""
Which determinants can a point set produce?
===========================================

vol(E) is the set of determinants of d-tuples of points of E. The first row
enters linearly: det(x1, ..., xd) = x1 . (x2 ^ ... ^ xd). Counting wedges of
(d-1)-tuples first turns the volume profile into an incidence count.
"""

# %%
from fqlab import make_field, nu_vol, vol_set
from fqlab.pointsets import random_set
from fqlab.volumes import nu_vol_direct, wedge_counts

F = make_field(5)
E = random_set(F, 3, 20, seed=4)
w = wedge_counts(E)
print("pairs:", w.g0.l1, "dependent pairs g0(0):", w.origin_mass)
print("factored:", nu_vol(E, w).nu)
print("direct:  ", nu_vol_direct(E).nu)

# %%
# With early exit, random tuples are drawn until every value has shown up.
from fqlab.pointsets import product_set

rep = vol_set(product_set(F, [1, 2, 3], 4), early_exit=True, seed=0)
print(rep.method, rep.tuples_examined, "tuples ->", rep.vol_set)

# %%
# Large sets in general position produce many volumes.
from fqlab import verify_mainvolume

F7 = make_field(7)
for seed in range(3):
    r = verify_mainvolume(random_set(F7, 3, 98, seed=seed), C=2, c=0.5, seed=seed)
    print(seed, r.in_hypothesis, r.details["num_volumes"])
