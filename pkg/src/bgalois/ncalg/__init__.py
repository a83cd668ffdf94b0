"""Finitely presented algebras B(E), B(E, F): rewriting, normal forms and structural checks."""

from .presentation import (
    Presentation,
    free_presentation,
    presentation_BE,
    presentation_BEF,
    with_reversed_relation,
    without_relations,
)
from .rewriting import (
    DEFAULT_BUDGET,
    DEFAULT_DEGREE_BOUND,
    AlgebraElement,
    FiltrationDims,
    RewriteSystem,
    complete,
    dims_by_rewriting,
    dims_by_truncated_ideal,
    filtration_dims,
    normal_form,
)
from .structure import (
    CotensorReport,
    TensorElem,
    Verification,
    canonical_preimage,
    coaction_delta,
    coaction_rho,
    cotensor_degree1,
    gram_identities,
    hopf_structure_BE,
    reduce_tensor,
    verify_comodule_algebra,
    verify_right_comodule_algebra,
)

__all__ = [
    "Presentation",
    "free_presentation",
    "presentation_BE",
    "presentation_BEF",
    "with_reversed_relation",
    "without_relations",
    "DEFAULT_BUDGET",
    "DEFAULT_DEGREE_BOUND",
    "AlgebraElement",
    "FiltrationDims",
    "RewriteSystem",
    "complete",
    "dims_by_rewriting",
    "dims_by_truncated_ideal",
    "filtration_dims",
    "normal_form",
    "CotensorReport",
    "TensorElem",
    "Verification",
    "canonical_preimage",
    "coaction_delta",
    "coaction_rho",
    "cotensor_degree1",
    "gram_identities",
    "hopf_structure_BE",
    "reduce_tensor",
    "verify_comodule_algebra",
    "verify_right_comodule_algebra",
]
