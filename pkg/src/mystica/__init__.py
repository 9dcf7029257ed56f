"""Exact computational algebra for monomial reflection groups and their
det-twisted counterparts."""

from .cyclo import (
    Cyclotomic,
    RootOfUnity,
    cyc_make,
    in_gaussian_half_ring,
    parse_scalar,
    scalar_to_text,
)
from .monomial import (
    DetValue,
    MonomialElement,
    adjacent_swap,
    central_scalar,
    identity,
    torus_gen,
)
from .groups import (
    CapExceededError,
    FiniteMonomialGroup,
    GroupTag,
    TorusSubgroup,
    closure_generate,
    enumerate_thick,
    is_thick,
    make_gmpn,
    make_w,
    structure_probes,
    torus_part,
)
from .qpoly import (
    QMatrix,
    QPolynomial,
    act_c,
    commute_check,
    fundamental_invariants,
    hilbert_free,
    invariant_dimension,
    operator_matrix,
    phi_eval,
    phi_w_eval,
    qform_bracket,
    qmul,
)
from .groupalg import GroupAlgebraElement, e_group, ga_mul, j_c, psi_eval, q_w_element, rho_apply
from .mystic import (
    EquivalenceReport,
    faithfulness_rank,
    group_ring_iso_check,
    mu_group,
    mystic_equiv_check,
    unique_equivalent_thick,
)
from .classify import (
    Fingerprint,
    fingerprint,
    isomorphic,
    regular_singular,
    verify_classification_grid,
    verify_not_iso_grid,
)

__all__ = [
    "CapExceededError",
    "Cyclotomic",
    "DetValue",
    "EquivalenceReport",
    "Fingerprint",
    "FiniteMonomialGroup",
    "GroupAlgebraElement",
    "GroupTag",
    "MonomialElement",
    "QMatrix",
    "QPolynomial",
    "RootOfUnity",
    "TorusSubgroup",
    "act_c",
    "adjacent_swap",
    "central_scalar",
    "closure_generate",
    "commute_check",
    "cyc_make",
    "e_group",
    "enumerate_thick",
    "faithfulness_rank",
    "fingerprint",
    "fundamental_invariants",
    "ga_mul",
    "group_ring_iso_check",
    "hilbert_free",
    "identity",
    "in_gaussian_half_ring",
    "invariant_dimension",
    "is_thick",
    "isomorphic",
    "j_c",
    "make_gmpn",
    "make_w",
    "mu_group",
    "mystic_equiv_check",
    "operator_matrix",
    "parse_scalar",
    "phi_eval",
    "phi_w_eval",
    "psi_eval",
    "q_w_element",
    "qform_bracket",
    "qmul",
    "regular_singular",
    "rho_apply",
    "scalar_to_text",
    "structure_probes",
    "torus_gen",
    "torus_part",
    "unique_equivalent_thick",
    "verify_classification_grid",
    "verify_not_iso_grid",
]
