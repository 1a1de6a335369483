"""Finite models for the duality between complete atomic modal algebras,
multi-relational Kripke frames and neighborhood frames."""
from .core import (
    ALL,
    AlgebraClass,
    BoxAlgebra,
    CapError,
    ElementMap,
    Kappa,
    KripkeFrame,
    MRFrame,
    NFrame,
    Report,
    check_kappa_dd,
    check_nfr,
    is_all_directed,
    is_normal,
    validate_algebra,
)
from .documents import DocumentError, parse_document, serialize_document
from .duality import (
    verify_cama_nfr,
    verify_delta,
    verify_gamma,
    verify_nfr_equivalence,
    verify_tau,
    verify_theta,
)
from .generators import GenParams, fixture

__all__ = [
    "ALL", "AlgebraClass", "BoxAlgebra", "CapError", "ElementMap", "Kappa", "KripkeFrame",
    "MRFrame", "NFrame", "Report", "check_kappa_dd", "check_nfr", "is_all_directed", "is_normal",
    "validate_algebra", "DocumentError", "parse_document", "serialize_document", "verify_cama_nfr",
    "verify_delta", "verify_gamma", "verify_nfr_equivalence", "verify_tau", "verify_theta",
    "GenParams", "fixture",
]
