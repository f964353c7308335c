"""Exact finite-type cluster algebras, ABHY associahedra and their moment-map construction."""

from abhy.cluster import (
    Atlas,
    CapExceeded,
    ExchangeMatrix,
    Seed,
    explore,
    f_polynomial,
    g_vector,
    g_vectors,
    initial_seed,
    is_skew_symmetrizable,
    mutate_matrix,
    mutate_seed,
    principal_extension,
)
from abhy.kernels import BACKEND
from abhy.laurent import LaurentPoly
from abhy.moment import (
    a_polytope,
    build_slice,
    kernel_matrix,
    reduced_moment_image,
    u_polytope,
    verify_theorem,
)
from abhy.universal import (
    check_univ_compatibility,
    dual_matrix,
    mesh_relations,
    positive_mesh_partner,
    universal_extension,
)

__version__ = "0.1.0"
