"""Exact and numeric computation of square-root Euler multiplicities of isotropic sections."""

from .errors import IsoHopfError
from .groebner import (
    PolyIdeal,
    PolyModule,
    colength,
    eliminate,
    groebner_basis,
    module_kernel,
    projective_degree,
    saturate,
    subquotient_length,
)
from .poly import GREVLEX, LEX, MultiPoly, gcd_poly, parse_poly, resultant
from .quadratic import (
    QuadSpace,
    Subspace,
    eg2_form,
    hyperbolic,
    hyperbolic_splitting,
    is_maximal_isotropic,
    isotropic_envelopes_n2,
    isotropic_sign,
    random_special_orthogonal,
    real_form_coordinates,
    sum_of_squares,
)
from .routes import (
    RefinedIndex,
    SpinData,
    classical_hopf_length,
    route_oh3_factored,
    route_oh5_incidence,
    route_oh8_torus,
    route_rh3,
    route_rh5_homogeneous,
    route_rh7_clifford,
    route_rh8_spin,
)
from .section import IsoSection, TorusData, factorize_n2, split_sigma_tau, validate

__all__ = [
    "GREVLEX", "LEX", "IsoHopfError", "IsoSection", "MultiPoly", "PolyIdeal", "PolyModule", "QuadSpace",
    "RefinedIndex", "SpinData", "Subspace", "TorusData", "classical_hopf_length", "colength", "eg2_form",
    "eliminate", "factorize_n2", "gcd_poly", "groebner_basis", "hyperbolic", "hyperbolic_splitting",
    "is_maximal_isotropic", "isotropic_envelopes_n2", "isotropic_sign", "module_kernel", "parse_poly",
    "projective_degree", "random_special_orthogonal", "real_form_coordinates", "resultant", "route_oh3_factored",
    "route_oh5_incidence", "route_oh8_torus", "route_rh3", "route_rh5_homogeneous", "route_rh7_clifford",
    "route_rh8_spin", "saturate", "split_sigma_tau", "subquotient_length", "sum_of_squares", "validate",
]
