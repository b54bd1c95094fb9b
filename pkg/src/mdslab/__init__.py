"""Finite-field linear codes: MDS/NMDS constructions, deep holes and extensions."""

from __future__ import annotations

from .code import (
    CodeClass,
    LinearCode,
    Tag,
    classify,
    code_from_generator,
    code_from_text,
    code_to_text,
    dual,
    min_distance,
    puncture,
    shorten,
    span,
    weight_distribution,
)
from .constructions import EvalConfig, egrs, esgrs, grs, roth_lempel
from .covering import build_syndrome_table, covering_radius, error_distance, report_for
from .equiv import EquivWitness, equivalent_to_some_grs, monomial_equivalent, square_code_distinguisher
from .errors import MdsLabError
from .extend import algorithm1, extend_by_deep_hole, mkz_check, row_extension, second_kind_extend
from .field import FieldElement, FieldSpec, Poly, field_from_q, field_new
from .matrix import Matrix

__version__ = "0.1.0"

__all__ = [
    "CodeClass", "EquivWitness", "EvalConfig", "FieldElement", "FieldSpec", "LinearCode",
    "Matrix", "MdsLabError", "Poly", "Tag", "algorithm1", "build_syndrome_table", "classify",
    "code_from_generator", "code_from_text", "code_to_text", "covering_radius", "dual", "egrs",
    "equivalent_to_some_grs", "error_distance", "esgrs", "extend_by_deep_hole", "field_from_q",
    "field_new", "grs", "min_distance", "mkz_check", "monomial_equivalent", "puncture",
    "report_for", "roth_lempel", "row_extension", "second_kind_extend", "shorten", "span",
    "square_code_distinguisher", "weight_distribution",
]
