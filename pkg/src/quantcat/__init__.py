"""Computation toolkit for categories enriched in a finite quantaloid.

The package models quantaloids with finite complete-lattice hom-sets,
categories/functors/distributors enriched in them, weighted (co)limits and
closure operators on presheaf categories, the contravariant and covariant
adjunctions induced by a distributor, and the concept lattices those
adjunctions generate — with a document format and CLI on top.
"""

from __future__ import annotations

from .errors import (
    ArrowTypeError,
    CategoryMismatch,
    DegreeOutOfHom,
    InternalCheckError,
    InvalidInfomorphism,
    InvalidSize,
    NotCyclic,
    NotDivisible,
    NotDualizing,
    NotGirard,
    ObjectMismatch,
    PresheafSpaceTooLarge,
    QuantcatError,
    SchemaError,
    StructureError,
)
from .quantaloid import (
    Arrow,
    DivisibleQuantaloid,
    GirardReport,
    Lattice,
    QuantaleSpec,
    Quantaloid,
    arrow_adjoint_check,
    build_boolean,
    build_boolean_algebra_quantale,
    build_boolean_quantale,
    build_godel_chain,
    build_lukasiewicz_chain,
    build_nilpotent_minimum_chain,
    check_divisible,
    compose,
    girard_structure,
    one_object_quantaloid,
    quantaloid_from_divisible_quantale,
    residual,
    search_dualizing_families,
    validate_quantale,
    validate_quantaloid,
)
from .enriched import (
    FullSubcategory,
    QCategory,
    QFunctor,
    QTypedSet,
    compose_functors,
    discrete_category,
    functor_adjoint_check,
    functor_is_isomorphism,
    functor_leq,
    identity_functor,
    objects_isomorphic,
    underlying_preorder,
    validate_category,
    validate_functor,
)
from .distributor import (
    Copresheaf,
    Infomorphism,
    Presheaf,
    PresheafCategory,
    QDistributor,
    bottom_presheaf,
    codirect_image,
    coinverse_image,
    compose_distributors,
    compose_infomorphisms,
    copresheaf_hom,
    coyoneda_weight,
    default_cap,
    direct_image,
    dist_adjoint_check,
    dist_leq,
    dist_residual,
    enumerate_presheaves,
    graph_cograph,
    identity_distributor,
    identity_infomorphism,
    image_functor,
    infomorphism,
    inverse_image,
    membership_distributor,
    presheaf_category,
    presheaf_hom,
    presheaf_join,
    presheaf_meet,
    presheaf_space_bound,
    top_copresheaf,
    top_presheaf,
    validate_copresheaf,
    validate_distributor,
    validate_infomorphism,
    validate_presheaf,
    weight_leq,
    yoneda,
    yoneda_infomorphism,
    yoneda_weight,
)
from .completion import (
    Absent,
    ClosureOperator,
    ClosureSpace,
    closure_fixed_points,
    closure_from_system,
    closure_operator_check,
    closure_to_context,
    continuity_check,
    cotensor_weight,
    identity_closure,
    induced_adjoint_pair,
    is_absent,
    is_complete,
    join_tensor_closure,
    kan_extension_pointwise,
    lower_bound_weight,
    meet_cotensor_closure,
    sup_inf,
    tensor_cotensor,
    tensor_weight,
    trivial_closure,
    underlying_join,
    underlying_meet,
    upper_bound_weight,
    validate_closure_space,
    weighted_colimit_limit,
)
from .adjunction import (
    ConceptLattice,
    ConceptPair,
    concept_functor_image,
    concept_lattice,
    dense_factorization,
    density_check,
    girard_duality_check,
    isbell_transform,
    kan_transform,
    macneille_completion,
    negate_copresheaf,
    negate_distributor,
    negate_presheaf,
    state_property_system_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
