"""Exact algebra for rings ``k[X_1..X_m, Y, Z, T] / (alpha(X) Y - F(X, Z, T))`` over finite fields."""

__version__ = "0.1.0"

from .field import FieldSpec, make_field, parse_field
from .poly import MonomialOrder, MultiPoly
from .parse import parse_poly
from .variety import (AElement, GavPresentation, base_change, elem_equal, load_presentation,
                      make_presentation, shift_coordinate, validate_presentation)
from .expmap import (ExpMap, certify_DK_ML, extend_to_localization, is_invariant, make_expmap,
                     make_phi1, make_phi2, verify_expmap)
from .filtration import (DegreeFunction, check_proper_filtration, gr_presentation,
                         induce_graded_expmap, omega_value, rho)
from .classify import (check_separable_multiple_root, compare, complete_automorphism,
                       generate_zcp_family, iso_discriminant, non_rectangularity_report)
from .lines import LineEntry, verify_line_witness

__all__ = [
    "FieldSpec", "make_field", "parse_field", "MonomialOrder", "MultiPoly", "parse_poly",
    "AElement", "GavPresentation", "base_change", "elem_equal", "load_presentation",
    "make_presentation", "shift_coordinate", "validate_presentation",
    "ExpMap", "certify_DK_ML", "extend_to_localization", "is_invariant", "make_expmap",
    "make_phi1", "make_phi2", "verify_expmap",
    "DegreeFunction", "check_proper_filtration", "gr_presentation", "induce_graded_expmap",
    "omega_value", "rho",
    "check_separable_multiple_root", "compare", "complete_automorphism", "generate_zcp_family",
    "iso_discriminant", "non_rectangularity_report",
    "LineEntry", "verify_line_witness",
]
