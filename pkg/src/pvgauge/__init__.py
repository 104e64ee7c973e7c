"""Exact gauge equivalence, intertwiners and Galois representations for
linear differential systems ``Y' = AY`` over Q(x)."""

from .algebra import MatRF, Poly, RatFn, X
from .category import (
    Arrow,
    Obj,
    arrow_add,
    arrow_compose,
    arrow_equal,
    arrow_inverse,
    arrow_new,
    arrow_scale,
    arrow_transport,
    from_constant_morphism,
    identity_arrow,
    to_constant_morphism,
)
from .closedform import (
    ClosedFormScalar,
    FundamentalMatrix,
    GaloisGen,
    Representation,
    cf_derive,
    cf_exp,
    cf_log,
    cf_power,
    fundamental_2x2_triangular,
    fundamental_for_diagonal,
    galois_act,
    rep_conjugation_check,
    rep_matrix,
    representation,
    system_from_fundamental,
)
from .errors import *  # noqa: F401,F403
from .gauge import GaugeClass, HPair, conjugation_action_check, delta_elem, gauge_act, h_identity, h_inv, h_mul
from .params import ParamPoly, param
from .parser import parse_closed_form, parse_document, parse_matrix, parse_ratfn
from .ratsol import (
    DegreeBounds,
    EquivalenceResult,
    RatSolBasis,
    SylvesterSystem,
    decide_equivalence,
    denominator_bound,
    equivalent,
    is_trivial,
    rational_solutions,
    sylvester_residual,
)

__version__ = "0.1.0"
