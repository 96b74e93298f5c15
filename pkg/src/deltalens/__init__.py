"""Delta lenses over finite categories and their indexed presentation."""

from .fincat import (
    FinCat,
    FinFunctor,
    Mor,
    Report,
    codiscrete,
    comma_over,
    comprehensive_factorization,
    decalage,
    is_discrete_fibration,
    is_discrete_opfibration,
    is_initial_functor,
    j_of,
    pi0,
    pullback_category,
    validate_category,
    validate_functor,
)
from .lens import (
    DeltaLens,
    DiaLens,
    LensMorphism,
    Retrofunctor,
    as_diagram,
    check_delta_lens,
    check_lens_morphism,
    check_retrofunctor,
    chosen_lift_subcategory,
    cofree_lens,
    counit_at,
    epi_mono_factorization,
    from_diagram,
    is_cofree,
    is_split_opfibration,
    lens_of_diagram,
    lens_of_dopf,
    reflective_factorization,
    underlying_retrofunctor,
)
from .idx import (
    IndexedSmf,
    IdxMorphism,
    elements,
    elements_morphism,
    fib_coproduct_idx,
    fib_product_idx,
    fibres,
    fibres_morphism,
    free_carriers,
    is_split_opfibration_idx,
    product_idx,
    coproduct_idx,
    pullback_idx,
    pushforward_idx,
    roundtrip_idx,
    roundtrip_lens,
    validate_indexed_smf,
)
from .smult import (
    FinFunction,
    Smf,
    SmultCell,
    associator,
    companion_span,
    compose_smf,
    coreflection_counit,
    identity_smf,
    loose_compose_cells,
    product_smf_of_function,
    reflection_unit,
    smf_of_function,
    splitting_cone_component,
    tight_compose_cells,
    underlying_function,
    underlying_span,
    validate_cell,
    validate_smf,
)
from .pushout import PushoutBounds, Undecided, pushout_along_ioo
from .classify import ClassReport, classify

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
