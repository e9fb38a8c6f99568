"""
Planes through the origin in F_q^3
==================================

Summing |E cap H|^2 over all 2-dimensional subspaces H can be done plane by
plane, or through normal vectors: each plane has q - 1 nonzero normals x,
and |E cap H| is the number of y in E with x . y = 0.
"""

# %%
from fqlab import make_field, plane_sum_identity, plane_sum_bound_check
from fqlab.pointsets import full_space, product_set

F = make_field(7)
E = product_set(F, [1, 2, 3, 4], 3)
print(plane_sum_identity(E))

# %%
# For a product set the sum stays within a small multiple of |E|^2.
for c in (1, 2, 4):
    rep = plane_sum_bound_check(E, "product-like", c=c)
    print(f"c={c}: total={rep.total}, |E|^2={len(E) ** 2}, ratio={rep.ratio:.3f}, pass={rep.passed}")

# %%
# The punctured full space, for comparison: every plane holds q^2 - 1 points.
for q in (3, 5, 7):
    from fqlab import field_of_order

    S = full_space(field_of_order(q), 3, exclude_origin=True)
    rep = plane_sum_bound_check(S, "generic", c=4)
    print(q, rep.total, f"{rep.ratio:.3f}")
