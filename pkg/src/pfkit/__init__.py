"""Exact computations with partial fields, their homomorphisms, lifts and P-matrices."""
from __future__ import annotations

from .charsets import (
    PrimeSet,
    build_strong_charset_pf,
    build_weak_charset_pf,
    wqo_chain,
)
from .homs import (
    PFHom,
    Status,
    Verification,
    compose,
    identity_hom,
    is_isomorphism,
    product_hom_factor,
    strong_char_set,
    strong_hom_search,
    verify_pf_hom,
    verify_strong_hom,
    weak_char_set,
    weak_hom_search,
)
from .partial_field import (
    ElementSet,
    PartialField,
    addition_triples,
    catalog,
    catalog_list,
    enumerate_elements,
    fundamental_elements,
    pf_contains,
)
from .pmatrix import (
    Matroid,
    PMatrix,
    det,
    det_bareiss,
    det_cofactor,
    is_strong_pmatrix,
    is_weak_pmatrix,
    matroid_axiom_check,
    matroid_of,
    p_graphic_check,
    transport_check,
)
from .presentations import (
    EvaluationModel,
    IntPoly,
    Presentation,
    build_dowling,
    build_lift,
    canonical_lift_hom_check,
    dowling_canonical_hom_check,
    dowling_fundamental_bijection_check,
    dowling_idempotence_check,
    dowling_universal_hom,
    dowling_uniqueness_check,
    lift_idempotence_check,
    verify_evaluation_model,
)

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
