"""Maximally recoverable LRCs from rational function fields."""

from .bounds import BoundEntry, BoundOptions, bound_table, check_all_claims, check_comparison_claims
from .construct import LrcParams, MrLrcCode, build, build_generator, build_parity, construct, plan
from .estimator import MaximallyRecoverableLRC
from .exceptions import (
    CapExceededError,
    ConstructionError,
    ContextMismatchError,
    ExhaustedError,
    FieldError,
    MRLRCError,
    NotAdmissibleError,
    PatternError,
    PlanError,
    SingularSystemError,
)
from .gf import ExtFieldCtx, FieldCtx, FieldElem, ext_make, field_make, field_of_order
from .innercodes import (
    IndependentFamily,
    MatrixFq,
    bch_family,
    brute_min_distance,
    family_dispatch,
    mds_family,
    vandermonde_mds,
    verify_family,
)
from .moore import fq_independent, moore_det, moore_det_nonzero, moore_det_product, moore_matrix
from .polyring import (
    CoprimeFamily,
    Poly,
    coprime_family,
    count_irreducible,
    find_irreducible,
    is_irreducible,
    poly_mod_inverse,
)
from .verify import (
    ErasurePattern,
    VerifyReport,
    admissible,
    check_mr_generator,
    check_mr_parity,
    decode_erasures,
    encode,
    reduction_check,
)

__version__ = "0.1.0"

__all__ = [
    "admissible",
    "bch_family",
    "bound_table",
    "BoundEntry",
    "BoundOptions",
    "brute_min_distance",
    "build",
    "build_generator",
    "build_parity",
    "CapExceededError",
    "check_all_claims",
    "check_comparison_claims",
    "check_mr_generator",
    "check_mr_parity",
    "construct",
    "ConstructionError",
    "ContextMismatchError",
    "coprime_family",
    "CoprimeFamily",
    "count_irreducible",
    "decode_erasures",
    "encode",
    "ErasurePattern",
    "ExhaustedError",
    "ext_make",
    "ExtFieldCtx",
    "family_dispatch",
    "field_make",
    "field_of_order",
    "FieldCtx",
    "FieldElem",
    "FieldError",
    "find_irreducible",
    "fq_independent",
    "IndependentFamily",
    "is_irreducible",
    "LrcParams",
    "MatrixFq",
    "MaximallyRecoverableLRC",
    "mds_family",
    "moore_det",
    "moore_det_nonzero",
    "moore_det_product",
    "moore_matrix",
    "MrLrcCode",
    "MRLRCError",
    "NotAdmissibleError",
    "PatternError",
    "plan",
    "PlanError",
    "Poly",
    "poly_mod_inverse",
    "reduction_check",
    "SingularSystemError",
    "vandermonde_mds",
    "verify_family",
    "VerifyReport",
    "__version__",
]
