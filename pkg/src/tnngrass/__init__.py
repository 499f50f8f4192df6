"""Exact computations with totally nonnegative Grassmannians.

Representatives are matrices of arbitrary-precision rationals; every
published result of this package (positivity reports, convexity
certificates, section witnesses, equivalence certificates) is checked
with exact arithmetic, never floating point.
"""

from .amplituhedron_map import (
    AmplituhedronSetup,
    MappedPoint,
    WellDefinednessReport,
    build_setup,
    build_z0,
    check_well_defined_on_samples,
    hat_map,
    signs_alternate,
)
from .embeddings import PlueckerVector, VeroneseMatrix, embed_point, pluecker, veronese
from .equivalence import (
    EquivalenceCertificate,
    ProjectiveMap,
    apply_projective_map,
    construct_equivalence,
    cyclic_polytope_vertices,
    equivalence_transport_check,
)
from .errors import (
    ChartError,
    ConstructionError,
    DegeneracyError,
    DimensionError,
    DomainError,
    FiberMismatchError,
    InconsistentSystemError,
    InternalConsistencyError,
    NotInCellError,
    RankError,
    TnngrassError,
    UnsupportedParameterError,
    UserInputError,
    WellDefinednessError,
)
from .exact_linalg import (
    IndexSubset,
    Rational,
    RationalMatrix,
    all_maximal_minors,
    as_rational,
    det,
    invert,
    kernel_basis,
    minor,
    outer_product,
    rank,
    rational_to_string,
    solve_for_left_factor,
    subsets_colex,
)
from .fiber import (
    FiberConvexityCertificate,
    FiberPair,
    SectionWitness,
    convexity_certificate,
    fiber_displacement,
    make_fiber_pair,
    minor_affine_coeffs,
    sample_fiber_partner,
    section_witness,
)
from .tnn_grassmannian import (
    PositroidCellSpec,
    TNNPoint,
    TNNWitnessReport,
    check_tnn,
    check_totally_positive,
    in_closed_cell,
    matroid_of,
    sample_top_cell,
    zero_columns,
)

__version__ = "0.1.0"
