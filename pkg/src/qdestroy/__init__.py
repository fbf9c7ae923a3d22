"""Particle destruction for finite-dimensional quantum states.

A detector absorbs a particle when its measured quantum numbers fall inside
a chosen spectral window.  This package models that process on
vacuum-extended Hilbert spaces: supertraces move state weight into the
vacuum sector while preserving the trace, and the destruction maps built
from them are certified quantum channels (Hermitian, unit-trace, positive
outputs) for one particle and for pairs of distinguishable or identical
particles.
"""

from .destruction import (
    Branch,
    DestructionMode,
    DestructionOutcome1,
    DestructionOutcome2,
    destroy_one,
    destroy_two_distinguishable,
    destroy_two_identical,
)
from .errors import (
    CertificationError,
    DistinctSpacesError,
    InnerExternalOnDistinctSpacesError,
    NonHermitianObservableError,
    NotHermitianError,
    NotPositiveSemidefiniteError,
    QdestroyError,
    ScenarioError,
    SymmetryViolationError,
    TraceNotOneError,
    ZeroProjectionError,
)
from .operators import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    Operator,
    Projector,
    SpectralWindow,
    Tolerances,
    certify_density,
    embed_physical,
    embed_two_particle,
    lift_projector,
    projector_from_observable,
    tensor,
    vacuum_state,
    von_neumann_entropy,
)
from .spaces import (
    ExtendedSpace,
    PhysicalSpace,
    ProductSpace,
    SectorTag,
    make_extended,
    pair_index,
    sector_indices,
    sector_of,
    unpair_index,
)
from .supertraces import (
    SupertraceKind,
    partial_supertrace,
    supertrace_product,
    supertrace_single,
)
from .symmetry import (
    ExchangeSign,
    SymmetryReport,
    check_exchange_symmetry,
    one_particle_sym_projector,
    swap_matrix,
    symmetrize_state,
    symmetrizer,
)
from .verify import (
    SYSTEM_KINDS,
    PropertyReport,
    TrialConfig,
    materialize_superoperator,
    random_density,
    random_projector,
    random_symmetric_density,
    run_suite,
    suite_document,
    suite_passed,
)

__version__ = "0.1.0"
