"""Exact arithmetic for abelian CM fields, CM-types, character twists,
and connectedness-extension degree certificates."""

__version__ = "0.1.0"

from .fields import (
    AbelianField,
    complex_conjugation,
    compositum,
    cyclotomic,
    field_from,
    intersect,
    is_cm,
    is_subfield,
    is_totally_real,
    maximal_real_subfield,
    quadratic,
    roots_of_unity_order,
)
from .cmtypes import (
    CMType,
    WeilDatum,
    balance_product,
    is_primitive,
    is_weil_type,
    reflex_field,
    reflex_type,
    restriction_multiplicities,
    stabilizer,
    validate_cm_type,
    weil_datum,
    weil_r,
)
from .twists import (
    CharacterSpec,
    HypothesisError,
    discond_groups,
    hodge_exponent_constraint,
    make_character,
    twist_e,
    twist_x,
)
from .inertia import (
    base_certificate,
    frobenius_exponents,
    galois_vs_frobenius,
    inertia_order,
    kitself_certificate,
    unit_generator_check,
)

__all__ = [
    "AbelianField",
    "CMType",
    "CharacterSpec",
    "HypothesisError",
    "WeilDatum",
    "balance_product",
    "base_certificate",
    "complex_conjugation",
    "compositum",
    "cyclotomic",
    "discond_groups",
    "field_from",
    "frobenius_exponents",
    "galois_vs_frobenius",
    "hodge_exponent_constraint",
    "inertia_order",
    "intersect",
    "is_cm",
    "is_primitive",
    "is_subfield",
    "is_totally_real",
    "is_weil_type",
    "kitself_certificate",
    "make_character",
    "maximal_real_subfield",
    "quadratic",
    "reflex_field",
    "reflex_type",
    "restriction_multiplicities",
    "roots_of_unity_order",
    "stabilizer",
    "twist_e",
    "twist_x",
    "unit_generator_check",
    "validate_cm_type",
    "weil_datum",
    "weil_r",
]
