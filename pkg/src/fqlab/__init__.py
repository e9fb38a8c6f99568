"""Exact incidence counts, determinant volumes and sum-product sets over F_q."""

from .errors import BudgetExceeded, FqlabError, HypothesisViolated, Unreached
from .field import FieldSpec, field_of_order, make_field, parse_field
from .geometry import BilinForm, Subspace, enumerate_subspaces, vol
from .incidence import (
    IncidenceProfile,
    l2_bound_check,
    nu_pairwise,
    nu_via_fourier,
    plane_sum_bound_check,
    plane_sum_identity,
    pointwise_bound_check,
)
from .pointsets import PointSet, WeightFn, is_general_position, is_product_like, product_set
from .sumprod import WitnessFactory, dA2, glibichuk_search, verify_kickass, witness_det3, witness_det4
from .volumes import (
    g_l2_check,
    nu_vol,
    vol_set,
    verify_mainproductvolume,
    verify_mainvolume,
    verify_product3d,
    verify_product4d,
)

__version__ = "0.1.0"
