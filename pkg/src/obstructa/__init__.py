"""obstructa: exact-arithmetic engine for algebra-valued exterior forms.

Structure-constant algebras over exact rationals, wedge calculus over a
formal frame, nilpotency/solvability certificates, Hilbert-Palatini forms
and their duals, and mechanical dimension-threshold verdicts.
"""

from obstructa.rationals import Scalar, parse_scalar, format_scalar
from obstructa.algebra import (
    Algebra,
    Element,
    Subspace,
    Grading,
    MatrixRep,
    Morphism,
    SeriesReport,
    multiply,
    check_identity,
    cayley_dickson,
    series,
    ideal_generated,
    semidirect,
    pullback_product,
    morphism_check,
)
from obstructa.catalog import catalog
from obstructa.forms import (
    ExteriorContext,
    AForm,
    ProductSelector,
    GenericCheckReport,
    wedge,
    power,
    matrix_bracket_relation_check,
    graded_identity_check,
    is_ks_nil,
    is_ks_solv_certificate,
    auto_solv_decomposition,
    injective_form_check,
    solvable_injective_square,
    weak_nilpotent_check,
)
from obstructa.derham import (
    Poly,
    PolyForm,
    poly_wedge,
    d,
    curvature,
    torsion,
    bianchi_residual,
    torsionless_check,
)
from obstructa.ehp import (
    HPOptions,
    ConnectionData,
    TraceMap,
    hp_form,
    dual_forms,
    motion_residuals,
    hp_generic_vanishes,
)
from obstructa.obstruction import (
    GeometrySpec,
    Certificate,
    CheckResult,
    Verdict,
    BergerEntry,
    BERGER_TABLE,
    CONDITION_IDS,
    check_condition,
    condition_part,
    verdict,
    verify_flags,
    part_algebra,
    so_sum,
    grade_shift,
    bounded_grading_rule,
    berger_rules,
    catalog_verdicts,
)
from obstructa.formats import (
    AlgebraDocument,
    GeometryDocument,
    CertificateDocument,
    ReportDocument,
    parse_algebra,
    parse_geometry,
    parse_certificate,
    parse_report,
    serialize,
    build_algebra,
    document_from_algebra,
    build_spec,
    build_certificates,
    make_report,
    load_document,
)

__version__ = "0.1.0"

__all__ = [
    "Scalar",
    "parse_scalar",
    "format_scalar",
    "Algebra",
    "Element",
    "Subspace",
    "Grading",
    "MatrixRep",
    "Morphism",
    "SeriesReport",
    "multiply",
    "check_identity",
    "cayley_dickson",
    "series",
    "ideal_generated",
    "semidirect",
    "pullback_product",
    "morphism_check",
    "catalog",
    "ExteriorContext",
    "AForm",
    "ProductSelector",
    "GenericCheckReport",
    "wedge",
    "power",
    "matrix_bracket_relation_check",
    "graded_identity_check",
    "is_ks_nil",
    "is_ks_solv_certificate",
    "auto_solv_decomposition",
    "injective_form_check",
    "solvable_injective_square",
    "weak_nilpotent_check",
    "Poly",
    "PolyForm",
    "poly_wedge",
    "d",
    "curvature",
    "torsion",
    "bianchi_residual",
    "torsionless_check",
    "HPOptions",
    "ConnectionData",
    "TraceMap",
    "hp_form",
    "dual_forms",
    "motion_residuals",
    "hp_generic_vanishes",
    "GeometrySpec",
    "Certificate",
    "CheckResult",
    "Verdict",
    "BergerEntry",
    "BERGER_TABLE",
    "CONDITION_IDS",
    "check_condition",
    "condition_part",
    "verdict",
    "verify_flags",
    "part_algebra",
    "so_sum",
    "grade_shift",
    "bounded_grading_rule",
    "berger_rules",
    "catalog_verdicts",
    "AlgebraDocument",
    "GeometryDocument",
    "CertificateDocument",
    "ReportDocument",
    "parse_algebra",
    "parse_geometry",
    "parse_certificate",
    "parse_report",
    "serialize",
    "build_algebra",
    "document_from_algebra",
    "build_spec",
    "build_certificates",
    "make_report",
    "load_document",
]
