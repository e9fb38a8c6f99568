"""
Subfields produce only subfield volumes
=======================================

A product set A^4 with |A| > sqrt(q) gives every element of F_q as a
determinant. At |A| = sqrt(q) this can fail: if A is a subfield, every
determinant stays inside that subfield.
"""

# %%
from fqlab import make_field, verify_product4d
from fqlab.pointsets import subfield_elements

for p, n in [(2, 2), (3, 2)]:
    F = make_field(p, n)
    A = [int(a) for a in subfield_elements(F, 1)]
    rep = verify_product4d(F, A)
    print(f"q={F.q}, A={A}: in hypothesis={rep.in_hypothesis}, vol={rep.volumes.vol_set}")

# %%
# One element more than sqrt(q) is enough to cover everything.
F = make_field(3, 2)
rep = verify_product4d(F, [1, 2, 3, 4])
print(rep.in_hypothesis, rep.volumes.vol_set)
