"""Hemitropic functional basis of piezoelectric tensors.

Harmonic decomposition, the 260-invariant basis, canonical forms that
rebuild a tensor from its intermediate group, and orbit comparison.
"""

from ._accel import backend
from .canonical import (
    CanonicalForm,
    CaseTag,
    InconsistentGroupError,
    OrbitComparison,
    ResultantClass,
    align,
    canonicalize,
    cubic_form_argmax,
    orbit_equal,
    recover_A,
    resultant_certificate,
)
from .decomposition import HarmonicParts, decompose, decompose_batch, recompose
from .intermediates import IntermediateGroup, compute_group, k_from_b
from .invariants import (
    IDS,
    InvariantVector,
    degree_table,
    evaluate_basis,
    evaluate_basis_batch,
    evaluate_smith_generator,
    special_basis_harmonic,
    special_basis_symmetric,
)
from .tensor_core import (
    Harm2,
    Harm3,
    PiezoTensor,
    SkewMat3,
    SymMat3,
    d0,
    d1,
    g_theta,
    random_rotation,
    rotate,
    triple_product,
)

__version__ = "0.1.0"

__all__ = [
    "backend", "CanonicalForm", "CaseTag", "InconsistentGroupError", "OrbitComparison",
    "ResultantClass", "align", "canonicalize", "cubic_form_argmax", "orbit_equal",
    "recover_A", "resultant_certificate", "HarmonicParts", "decompose", "decompose_batch",
    "recompose", "IntermediateGroup", "compute_group", "k_from_b", "IDS", "InvariantVector",
    "degree_table", "evaluate_basis", "evaluate_basis_batch", "evaluate_smith_generator",
    "special_basis_harmonic", "special_basis_symmetric", "Harm2", "Harm3", "PiezoTensor",
    "SkewMat3", "SymMat3", "d0", "d1", "g_theta", "random_rotation", "rotate",
    "triple_product",
]
