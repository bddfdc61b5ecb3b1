"""Finite categories and the operations on them."""
from .category import (
    CatValuedDiagram,
    FinCat,
    Functor,
    NatTrans,
    SetDiagram,
    compose_functors,
    constant_functor,
    coproduct,
    cyclic_group,
    discrete,
    empty_category,
    full_subcategory,
    functor_from_maps,
    identity_functor,
    identity_nat,
    inclusion,
    monoid_category,
    object_functor,
    op,
    op_functor,
    ordinal,
    poset_category,
    product,
    product_functor,
    projection,
    relabel,
    terminal,
    vertical,
    walking_iso,
    whisker_left,
    whisker_right,
    wide_subcategory,
)
from .colimits import check_cocone, check_colimit_cocone, default_probes
from .constructions import (
    UnionFind,
    arrow_category,
    compatible_families,
    evaluation,
    pullback,
    functor_category,
    interior,
    is_groupoid,
    limit_cat,
    postcompose,
    precompose,
    set_colimit,
    set_limit,
    slice_over,
    slice_under,
    source_projection,
    target_projection,
)
from .enumerate import (
    enumerate_functors,
    enumerate_nat_trans,
    find_isomorphism,
    is_equivalence,
    is_essentially_surjective,
    is_fully_faithful,
    is_isomorphic,
    is_isomorphism,
    iter_functors,
    iter_nat_trans,
)


def validate_category(objects, morphisms, identities, compose, **kw) -> FinCat:
    """Build a category from raw tables, raising the first violated law."""
    return FinCat(objects, morphisms, identities, compose, **kw)
