"""Exact computation in the span bicategory and additive Burnside category of
a finite group, free operad-algebra calculus with its duality maps, and a
floating-point checker for the explicit point-set duality maps on
representation spheres."""

from .errors import (
    DomainError,
    GSpanError,
    MalformedInputError,
    NotFixedError,
    ShapeError,
    SizeLimitError,
)
from .groups import (
    FiniteGroup,
    Perm,
    SubgroupClass,
    cyclic_group,
    dihedral_group,
    klein_four_group,
    make_group,
    multiply,
    subgroup_conjugacy_classes,
    symmetric_group,
    trivial_group,
)
from .gsets import (
    GMap,
    GSet,
    OrbitDecomposition,
    cartesian_product,
    diagonal,
    disjoint_union,
    empty_gset,
    fixed_points,
    gset_from_generator_images,
    gset_iso,
    one_point,
    orbit_decomposition,
    orbit_gset,
    regular_gset,
    trivial_gset,
)
from .spans import (
    Span,
    TwoCell,
    compose_spans,
    epsilon_span,
    eta_span,
    external_product,
    graph_span,
    id_span,
    reversed_graph_span,
    span_disjoint_union,
    span_external,
    span_iso,
)
from .burnside import (
    BurnsideElt,
    BurnsideRing,
    MarksVector,
    SpanClass,
    burnside_ring,
    compose_elts,
    decompose_span,
    dual_of_gmap,
    hom_basis,
    identity_elt,
    marks_of,
    presheaf_at_orbits,
    span_class,
    table_of_marks,
    zero_elt,
)
from .operads import (
    BasedMap,
    FreeAlgObj,
    OperadObj,
    drei_shuffle,
    ealg_compose,
    eps_alg,
    eta_alg,
    f_lower,
    fixed_iso,
    fixed_objects_at_level,
    fixed_to_gmap,
    gmap_to_fixed,
    i_upper,
    is_fixed,
    normalize,
    omega_obj,
    omega_pair,
    operad_action,
    operad_gamma,
    operad_sigma_action,
    sigma_i,
    unit_obj,
    zeta_left,
    zeta_right,
)
from .atiyah import (
    BASEPOINT,
    INFINITY,
    DiscrepancyReport,
    TubularParams,
    check_equivariance,
    check_unit_diagram_left,
    eps_smash_id,
    eta_space,
    homotopy_h,
    rho,
    rho_inv,
    xi_space,
)

__version__ = "0.1.0"
