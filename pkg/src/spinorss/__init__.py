"""Exact spinor algebra for deciding conformal, Ricci and full semi-symmetry of curvature."""
from __future__ import annotations

from .classify import (
    ClassificationReport,
    KernelReport,
    PetrovType,
    Segre,
    classify_case,
    petrov_type,
    phi_kernel,
    segre_pattern,
)
from .conditions import identity_suite, predicates, verify_ricci_decomposition, verify_weyl_reduction
from .curvature import (
    CurvatureSet,
    DyadTransform,
    RicciSpinor,
    WeylSpinor,
    curvature_set,
    dyad_transform,
    generic_curvature_set,
    standard_phi,
    standard_weyl,
)
from .errors import SpinorError
from .scalar_algebra import GaussianRational, Polynomial, Symbol, parse_polynomial
from .table import TableDocument, reproduce_table

__all__ = [
    "ClassificationReport",
    "CurvatureSet",
    "DyadTransform",
    "GaussianRational",
    "KernelReport",
    "PetrovType",
    "Polynomial",
    "RicciSpinor",
    "Segre",
    "SpinorError",
    "Symbol",
    "TableDocument",
    "WeylSpinor",
    "classify_case",
    "curvature_set",
    "dyad_transform",
    "generic_curvature_set",
    "identity_suite",
    "parse_polynomial",
    "petrov_type",
    "phi_kernel",
    "predicates",
    "reproduce_table",
    "segre_pattern",
    "standard_phi",
    "standard_weyl",
    "verify_ricci_decomposition",
    "verify_weyl_reduction",
]
