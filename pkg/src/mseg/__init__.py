"""Exact combinatorics of multi-segments.

Segments with half-integer endpoints, the duality computed by repeated
extraction of leading chains, the partial order generated by
elementary operations, Arthur-type multi-segments with their
parameters, and exhaustive desk-scale verifiers over a fixed support.
All arithmetic is exact; every value is immutable and hashable.
"""
from .arthur import (
    ArthurParameter,
    ExtremalPair,
    LemmaReport,
    PropFailure,
    PropositionReport,
    delta_da,
    delta_psi,
    detect_arthur,
    dual_parameter,
    extremal_pair,
    reduce_pair,
    staircase,
    staircase_dual,
    strip_identity_check,
    verify_bounds,
    verify_main_lemma,
    verify_prop_main,
)
from .core import (
    BoundExceededError,
    ConstraintError,
    CuspidalLabel,
    DomainError,
    HalfInt,
    MsegError,
    MultiSegment,
    PreconditionError,
    Segment,
    Support,
    ValidationError,
    linked,
    precedes,
)
from .involution import (
    MWStep,
    MWTrace,
    mw_dual,
    mw_leading,
    mw_strip,
    mw_trace,
    validate_index_sets,
)
from .order import (
    DEFAULT_ENUMERATION_BOUND,
    Poset,
    PosetNode,
    build_poset,
    downset,
    elementary_successors,
    enumerate_support,
    ge,
    ge_path,
    poset_to_dot,
    poset_to_json_dict,
)
from .textfmt import (
    DEFAULT_LABEL,
    ParseError,
    format_multisegment,
    format_parameter,
    parse_multisegment,
    parse_parameter,
)

__version__ = "0.1.0"

__all__ = [
    "ArthurParameter",
    "BoundExceededError",
    "ConstraintError",
    "CuspidalLabel",
    "DEFAULT_ENUMERATION_BOUND",
    "DEFAULT_LABEL",
    "DomainError",
    "ExtremalPair",
    "HalfInt",
    "LemmaReport",
    "MWStep",
    "MWTrace",
    "MsegError",
    "MultiSegment",
    "ParseError",
    "Poset",
    "PosetNode",
    "PreconditionError",
    "PropFailure",
    "PropositionReport",
    "Segment",
    "Support",
    "ValidationError",
    "build_poset",
    "delta_da",
    "delta_psi",
    "detect_arthur",
    "downset",
    "dual_parameter",
    "elementary_successors",
    "enumerate_support",
    "extremal_pair",
    "format_multisegment",
    "format_parameter",
    "ge",
    "ge_path",
    "linked",
    "mw_dual",
    "mw_leading",
    "mw_strip",
    "mw_trace",
    "parse_multisegment",
    "parse_parameter",
    "poset_to_dot",
    "poset_to_json_dict",
    "precedes",
    "reduce_pair",
    "staircase",
    "staircase_dual",
    "strip_identity_check",
    "validate_index_sets",
    "verify_bounds",
    "verify_main_lemma",
    "verify_prop_main",
]
