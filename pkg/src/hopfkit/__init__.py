"""Exact-arithmetic toolkit for finite-dimensional Hopf algebras.

Decides unimodularity, Frobenius / tensor-Frobenius classification of
bialgebra maps and existence of twisted Frobenius elements, and builds
internal-natural-transformation algebras in the Yetter-Drinfeld category
together with their (symmetric) Frobenius forms.  Everything is computed
over exact fields (Q, GF(p), cyclotomics) from structure constants.
"""

__version__ = "0.1.0"

from .fields import FieldSpec, Scalar, make_field
from .hopf import (
    HopfAlgebra, InconsistencyError, ModuleRep, VerificationError,
    check_grouplike, dual, one_dim_module, regular_module, twisted_module,
    verify_axioms,
)
from .invariants import (
    InvariantBundle, compute_bundle, distinguished_grouplike, left_integral,
    modular_function, normalize_pair, right_cointegral, right_integral,
    verify_pivotal, verify_radford,
)
from .maps import (
    BialgebraMap, MapClassification, classify_map, g_in_image, half_braiding,
    is_perfect, projective_test, relative_modular_function,
)
from .comodule import ComoduleAlgebra, f_frobenius_element, pushforward_coaction, \
    verify_comodule_algebra
from .bimod import HLBimodule, dual_basis, left_dual, regular_bimodule, \
    tensor_over_L
from .yd import (
    T_L, YDAlgebra, YDModule, braiding, frobenius_form_check, nat_algebra,
    trivial_yd, verify_yd, yd_dual, yd_pivot, yd_tensor,
)

__all__ = [
    "FieldSpec", "Scalar", "make_field",
    "HopfAlgebra", "ModuleRep", "InconsistencyError", "VerificationError",
    "verify_axioms", "dual", "one_dim_module", "regular_module",
    "twisted_module", "check_grouplike",
    "InvariantBundle", "compute_bundle", "left_integral", "right_integral",
    "right_cointegral", "normalize_pair", "modular_function",
    "distinguished_grouplike", "verify_radford", "verify_pivotal",
    "BialgebraMap", "MapClassification", "classify_map",
    "relative_modular_function", "is_perfect", "projective_test",
    "half_braiding", "g_in_image",
    "ComoduleAlgebra", "verify_comodule_algebra", "pushforward_coaction",
    "f_frobenius_element",
    "HLBimodule", "regular_bimodule", "tensor_over_L", "dual_basis",
    "left_dual",
    "YDModule", "YDAlgebra", "verify_yd", "yd_tensor", "braiding", "yd_dual",
    "yd_pivot", "trivial_yd", "T_L", "nat_algebra", "frobenius_form_check",
    "__version__",
]
