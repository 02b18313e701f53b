"""selectra: exact selections, insertions and refinements on simplicial complexes.

The library makes the constructive content of selection and insertion
theory executable at desk scale: cellwise-constant convex-valued relations
over finite simplicial complexes with exact rational arithmetic, exact
combinatorial classifiers for openness and semicontinuity, and selection /
insertion / extension / refinement engines that return machine-checkable
certificates.
"""

from .rational import NEG_INF, POS_INF, ExtRat, Rat  # noqa: F401
from .complex_core import (  # noqa: F401
    PLMap,
    ProductComplex,
    SimplicialComplex,
    Subdivision,
    barycentric_subdivide,
    build_complex,
    carrier,
    eval_pl,
    open_star,
    oscillation,
    product_complex,
    segment_complex,
    subdivide_by_levels,
)
from .bodies import (  # noqa: F401
    Box,
    Fattened,
    HPolytope,
    VPolytope,
    closed_box,
    closed_interval,
    h_polytope,
    open_box,
    open_interval,
    v_polytope,
    whole_line,
)
from .relations import (  # noqa: F401
    ConvexCellRelation,
    FiniteSetCellField,
    IndexedCover,
    ScalarCellField,
    bounds_of,
    classify_scalar,
    compose,
    convex_hull_relation,
    cover_from_relation,
    fatten,
    from_bounds,
    is_increasing_cover,
    is_lsc_relation,
    is_open_relation,
    membership,
    min_index_field,
    order_relation,
    pointwise_closure,
    separation_gadget,
)
from .selection_engines import (  # noqa: F401
    CurriedSelection,
    PartitionOfUnity,
    SelectionCertificate,
    extend_selection,
    insert,
    lift_product,
    pou_from_cover,
    refine_c0,
    refine_countable,
    select_michael,
    select_pou,
    separate_sets,
)
from .verification import (  # noqa: F401
    Report,
    Sampler,
    check_insertion,
    check_pou,
    check_refinement,
    check_selection,
    equivalence_suite,
    oracle_lsc,
    oracle_open,
    validate_certificate,
)
