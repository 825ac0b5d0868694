"""Pushouts of finite categories along Dwyer functors, with homotopical checks."""
from .core import (
    CategoryError,
    FinCat,
    FunctorData,
    SetFunctor,
    SpanData,
    Verdict,
    full_subcategory,
    inclusion_functor,
    is_dwyer,
    is_fully_faithful,
    is_sieve,
    linear_order,
    opposite,
    opposite_span,
    preorder_category,
    validate_category,
    validate_functor,
    validate_set_functor,
)
from .io import ParseError, canonical_category_text, load_document, parse_span
from .necklace import PushoutOracle, check_segal_away
from .pushout import (
    DwyerPushout,
    dwyer_pushout,
    induced_functor,
    mapspace_report,
    sieve_union_check,
    verify_beck_chevalley,
    verify_fold_square,
    verify_fourth_square,
)
from .reedy import check_reedy_structure, is_reedy_extension, verify_reedy_square

__version__ = "0.1.0"

__all__ = [
    "CategoryError",
    "FinCat",
    "FunctorData",
    "SetFunctor",
    "SpanData",
    "Verdict",
    "full_subcategory",
    "inclusion_functor",
    "is_dwyer",
    "is_fully_faithful",
    "is_sieve",
    "linear_order",
    "opposite",
    "opposite_span",
    "preorder_category",
    "validate_category",
    "validate_functor",
    "validate_set_functor",
    "ParseError",
    "canonical_category_text",
    "load_document",
    "parse_span",
    "PushoutOracle",
    "check_segal_away",
    "DwyerPushout",
    "dwyer_pushout",
    "induced_functor",
    "mapspace_report",
    "sieve_union_check",
    "verify_beck_chevalley",
    "verify_fold_square",
    "verify_fourth_square",
    "check_reedy_structure",
    "is_reedy_extension",
    "verify_reedy_square",
]
