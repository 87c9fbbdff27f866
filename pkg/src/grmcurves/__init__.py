"""Generalized Reed-Muller codes, weight hierarchies and Artin-Schreier curves.

Elements of a finite field F_{p^n} are coded as integers 0..p^n-1 whose base-p
digits (least significant first) are the coordinates with respect to the power
basis of the field's defining polynomial.
"""

from grmcurves.errors import ConsistencyError
from grmcurves.fields import ENUMERATION_CAP, FieldElement, FieldTower, GaloisField, build_tower
from grmcurves.grm import (
    ReducedMultiPoly,
    SubcodeBasis,
    code_dimension,
    evaluate,
    generator_words,
    reduce_poly,
    subcode_support_weight,
    subcode_weight_by_sum,
    word_weight,
)
from grmcurves.hierarchy import (
    d_r_formula,
    first_r_sigmas,
    gaussian_binomial,
    ghw_bruteforce,
    hp_min_subcode,
    sigma_to_poly,
)
from grmcurves.traceforms import (
    TraceForm,
    artin_schreier_reduce,
    cyclotomic_canonicalize,
    drop_trace_null_terms,
    reduce_form,
    word_to_trace_form,
)
from grmcurves.curves import (
    ArtinSchreierCurve,
    CurveReport,
    FibreProduct,
    count_points,
    curve_report,
    fibre_count_points,
    fibre_genus_aggregate,
    fibre_report,
    fibre_tau_aggregate,
    genus,
    hasse_weil,
    maximality_check,
    weight_point_check,
)

from grmcurves.families import (
    FAMILIES,
    FamilyInstance,
    FamilyParams,
    build_family,
    build_family_51,
    build_family_52,
    quotient_invariants_53,
    quotient_invariants_54,
    quotient_invariants_55,
)

__version__ = "0.1.0"
