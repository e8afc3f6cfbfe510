"""Controlled sets, simplicial sets, and exact (co)homology of locally
finite complexes.

The package has three layers: ``ctlset`` (controlled sets and controlled
maps, including a symbolic model over the naturals), ``delta``/``sset``
(ordinal arithmetic, finite simplicial sets, and periodic exhaustions of
infinite ones), and ``chainalg`` (Smith-normal-form homology in four
flavours: ordinary and Borel–Moore homology, ordinary and compactly
supported cohomology).  ``corpus`` holds the built-in spaces and ``laws``
the exhaustive finite-model checks; the ``ctlhom`` console script exposes
all of it.
"""

from .ctlset import (
    AdjunctionReport,
    Carrier,
    ControlError,
    ControlStructure,
    ControlledMap,
    ControlledSet,
    UnsupportedRepresentationError,
    adjunction_check,
    cofinal_tail,
    compose as compose_controlled,
    finite_carrier,
    finite_list,
    forget,
    generated_ctl,
    identity_map,
    is_controlled,
    max_ctl,
    min_ctl,
    naturals,
    validate_map,
    validate_structure,
)
from .delta import (
    DeltaError,
    MonotoneMap,
    all_monotone_maps,
    check_cosimplicial_identities,
    coface,
    codegeneracy,
    compose,
    epi_mono_factor,
)
from .sset import (
    Attachment,
    Cell,
    Exhaustion,
    FiniteSimplicialSet,
    PeriodicMap,
    PresentationError,
    SimplicialError,
    SimplicialMap,
    Simplex,
    SlabRule,
    adjacent,
    all_simplices,
    apply_ordinal_map,
    degeneracy,
    face,
    family_is_controlled,
    is_locally_finite,
    is_proper_map,
    proper_controlled_equivalence,
    standard_simplex,
)
from .snf import IntMatrix, SmithDecomposition, smith_normal_form
from .chainalg import (
    AbelianGroup,
    Chain,
    Cochain,
    Coefficients,
    NonStabilizationError,
    TheoryResult,
    bm_homology,
    boundary,
    coboundary,
    cohomology,
    cohomology_c,
    euler_characteristic,
    homology,
    pairing,
    pairing_matrix,
    parse_coefficients,
    pullback,
    pullback_periodic,
    pushforward,
    render_group,
)
from .corpus import (
    SpaceFormatError,
    UnknownSpaceError,
    build,
    load_space,
    resolve_space,
    save_space,
    space_names,
)

__version__ = "0.1.0"
