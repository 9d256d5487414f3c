"""Exact computational algebra for quotients of free associative algebras.

Graded dimension tables with the degree-wise generator bound, growth
certificates, symmetric-window generator constructions with nil-exponent
certificates, and a reproducible CLI. All arithmetic is exact (GF(2),
GF(p), or rationals); large-scale verdicts go through certified
high-precision comparisons, never bare floats.
"""

from .errors import (
    AmbientMismatch,
    ConstantTerm,
    DegreeBelowTwo,
    DegreeExceedsTable,
    DegreeNotCovered,
    DegreeTooHigh,
    DimensionBoundViolated,
    DivisionByZero,
    GsalgError,
    IndexOutOfRange,
    InvalidParams,
    MixedFields,
    NonHomogeneousGenerator,
    ParseError,
    TooLarge,
    VariableOutOfRange,
)
from .field import GF, GF2, QQ, FieldDescriptor, Scalar, parse_field
from .freealg import Polynomial, order_key, parse_poly, poly_str, word_index, words_of_degree
from .combinat import (
    multiplicities,
    orbit,
    orbit_iter,
    orbit_size,
    validate_weak_tuple,
    weak_tuple_count,
    weak_tuples,
)
from .symfun import (
    MonomialWindow,
    generator_degree,
    monomial_window,
    order_symmetric,
    power_expansion,
    window_generator,
    window_generators,
    window_size,
)
from .graded import (
    DimensionRow,
    GradedIdealTable,
    build_table,
    check_dimension_bounds,
    dimension_report,
    dimension_rows,
    naive_dimension_table,
    write_dimension_csv,
)
from .gscore import (
    BoundCertificate,
    BlueprintBlock,
    GSBlueprint,
    GSParams,
    GrowthReport,
    NilCertificate,
    blueprint_from_dict,
    blueprint_table,
    blueprint_to_dict,
    build_blueprint,
    certificate_from_epsilon,
    certified_log2_gap,
    check_blueprint,
    check_bound_conditions,
    load_blueprint,
    minimal_power,
    nil_certificate,
    parse_ratio,
    save_blueprint,
    verify_growth,
)
from .cli import main

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatch",
    "BlueprintBlock",
    "BoundCertificate",
    "ConstantTerm",
    "DegreeBelowTwo",
    "DegreeExceedsTable",
    "DegreeNotCovered",
    "DegreeTooHigh",
    "DimensionBoundViolated",
    "DimensionRow",
    "DivisionByZero",
    "FieldDescriptor",
    "GF",
    "GF2",
    "GSBlueprint",
    "GSParams",
    "GradedIdealTable",
    "GrowthReport",
    "GsalgError",
    "IndexOutOfRange",
    "InvalidParams",
    "MixedFields",
    "MonomialWindow",
    "NilCertificate",
    "NonHomogeneousGenerator",
    "ParseError",
    "Polynomial",
    "QQ",
    "Scalar",
    "TooLarge",
    "VariableOutOfRange",
    "blueprint_from_dict",
    "blueprint_table",
    "blueprint_to_dict",
    "build_blueprint",
    "build_table",
    "certificate_from_epsilon",
    "certified_log2_gap",
    "check_blueprint",
    "check_bound_conditions",
    "check_dimension_bounds",
    "dimension_report",
    "dimension_rows",
    "generator_degree",
    "load_blueprint",
    "main",
    "minimal_power",
    "monomial_window",
    "multiplicities",
    "naive_dimension_table",
    "nil_certificate",
    "orbit",
    "orbit_iter",
    "orbit_size",
    "order_key",
    "order_symmetric",
    "parse_field",
    "parse_poly",
    "parse_ratio",
    "poly_str",
    "power_expansion",
    "save_blueprint",
    "validate_weak_tuple",
    "verify_growth",
    "weak_tuple_count",
    "weak_tuples",
    "window_generator",
    "window_generators",
    "window_size",
    "word_index",
    "words_of_degree",
    "write_dimension_csv",
]
