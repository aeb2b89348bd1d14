"""Norm attainment sets of linear operators and Birkhoff-James orthogonality
in finite-dimensional real normed spaces."""

from .attain import AttainmentSet, Operator, oracle_profile, same_set, solve
from .bj_ortho import (Hyperspace, cone_membership, directional_derivatives,
                       is_bj_orthogonal, norming_point, orthogonal_hyperspace)
from .norm_core import (NormSpace, dual_norm_eval, euclidean, inner_product, lp,
                        norm_eval, polygon, space_properties, sup_norm,
                        support_functionals)
from .sip import SIP, Selector, certify_attainment_via_sip, sip_eval, verify_sip_axioms
from .verify import TheoremReport, run_theorem

__version__ = "0.1.0"
