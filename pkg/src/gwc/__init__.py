"""Exact computation of quadratic Milnor numbers and conductor-formula checks.

Grothendieck-Witt classes over Q, Scheja-Storch forms of isolated
hypersurface singularities, and evaluators for Euler-characteristic
identities of degenerating families (fully for plane curves).
"""

from .conductor import (
    DegenerationScenario,
    GlobalData,
    SingularPoint,
    StrataDatum,
    ais_strata_chi,
    chi_c_points,
    chi_c_smooth_proper_curve,
    conductor_check,
    conductor_rhs,
    curve_formula_check,
    delta_t_closed_form,
    delta_t_strata_homog,
    jung_milnor_delta,
    milnor_local_term,
    nearby_chi_homog,
    plane_curve_genus,
    weighted_cover_genus,
)
from .errors import GWCError, InputError, InvariantViolation
from .fields import QQ, NumberField, RationalFunction, nf_new, nf_trace, ratfun_split
from .groebner import GroebnerBasis, buchberger, mult_matrix, normal_form, standard_monomials, supported_at_origin
from .gw import (
    DiagonalForm,
    GWClass,
    InvariantProfile,
    QuadraticForm,
    diagonalize,
    gw_add,
    gw_equal,
    gw_mul,
    gw_neg,
    hilbert_symbol,
    hyperbolic,
    invariant_profile,
    is_witt_zero,
    specialize_sp_t,
    square_class_reduce,
    transfer_scharlau,
)
from .local import (
    JacobianRing,
    SchejaStorchForm,
    check_looks_like,
    decompose_partials,
    jacobian_ring,
    milnor_form,
    scheja_storch_element,
    scheja_storch_form,
)
from .poly import DEGREVLEX, LEX, MonomialOrder, MultiPoly, is_weighted_homogeneous, parse_poly, partial_derivative, poly_arith
from .scenario import load_scenario, parse_scenario

__version__ = "0.1.0"
