"""Destruction superoperators: measurement-conditioned absorption of particles.

A detector checks whether a particle's quantum numbers fall in a spectral
window (the range of a projector pi).  If yes, the particle is destroyed:
its state component is sent to the vacuum sector while the scalar trace is
preserved.  Each map comes in two flavors:

    selection:     the measurement outcome is known; every branch is
                   reported with its probability and conditional state
    no selection:  the unconditional mixture, a single trace-preserving
                   output state

For one particle, with p = Tr(rho pi),

    no selection:  pi_perp rho pi_perp  +  p |0><0|

For two distinguishable particles the four outcome branches are projected
with pi_a/pi_b combinations and destroyed via the right/left/full
supertraces.  For two identical particles the one-destroyed branch cannot
say *which* particle died: it is a single branch built from the right and
left supertraces plus inner/external cross terms signed by the exchange
symmetry, and it always lands in the irreducible symmetrized one-particle
subspace.

All outputs are certified density matrices on the (extended or extended
product) space.  Branches with probability below ``EPS_PROB`` are reported
as impossible and carry no state: normalizing by smaller probabilities
amplifies roundoff beyond the certification tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import SymmetryViolationError
from .operators import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    Operator,
    Projector,
    Tolerances,
    certify_density,
    embed_physical,
    embed_two_particle,
    lift_projector,
)
from .spaces import ExtendedSpace, PhysicalSpace, ProductSpace, SectorTag, make_extended
from .supertraces import (
    _full_product_matrix,
    _left_matrix,
    _right_matrix,
    _inner_matrix,
    _external_matrix,
)
from .symmetry import ExchangeSign, check_exchange_symmetry

EPS_PROB = 1e-12
EPS_SYM = 1e-10


class DestructionMode(Enum):
    SELECTION = "selection"
    NO_SELECTION = "no_selection"


@dataclass(frozen=True)
class Branch:
    """One conditional outcome of a destruction with selection."""

    label: str
    probability: float
    state: DensityMatrix | None
    sector: SectorTag | None = None

    @property
    def possible(self) -> bool:
        return self.state is not None


@dataclass(frozen=True)
class DestructionOutcome1:
    """Result of a one-particle destruction, on the extended space."""

    mode: DestructionMode
    branches: tuple[Branch, ...] = ()
    state: DensityMatrix | None = None


@dataclass(frozen=True)
class DestructionOutcome2:
    """Result of a two-particle destruction, on the extended product space."""

    mode: DestructionMode
    space: ProductSpace
    branches: tuple[Branch, ...] = ()
    state: DensityMatrix | None = None


def _require_density(rho) -> DensityMatrix:
    if not isinstance(rho, DensityMatrix):
        raise TypeError("destruction needs a certified state; run certify_density")
    return rho


def _branch(
    label: str,
    probability: float,
    numerator: np.ndarray,
    space,
    tolerances: Tolerances,
    sector: SectorTag | None = None,
) -> Branch:
    if probability < EPS_PROB:
        return Branch(label, float(probability), None, sector)
    state = certify_density(Operator(numerator / probability, space), tolerances)
    return Branch(label, float(probability), state, sector)


def destroy_one(
    rho: DensityMatrix,
    pi: Projector,
    mode: DestructionMode,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> DestructionOutcome1:
    """Destroy a single particle when its measured value falls in pi's range.

    ``rho`` may live on the physical space (it is embedded) or already on
    the extended space, in which case any existing vacuum weight survives
    untouched; the map is then idempotent.  ``pi`` may be physical (it is
    lifted, acting trivially on the vacuum) or already lifted.
    """
    _require_density(rho)
    if isinstance(rho.space, PhysicalSpace):
        ext = make_extended(rho.space)
        sigma = embed_physical(rho, ext).matrix
    elif isinstance(rho.space, ExtendedSpace):
        ext = rho.space
        sigma = rho.matrix
    else:
        raise ValueError("destroy_one expects a one-particle state")
    pi_lifted = lift_projector(pi, ext).matrix
    destroyed_part = pi_lifted @ sigma @ pi_lifted
    p = float(np.real(np.trace(destroyed_part)))
    # The survivor projector complements pi on rho's own space, so the
    # vacuum (where pi never fires) passes through.
    comp = np.eye(ext.dim) - pi_lifted
    survived_part = comp @ sigma @ comp

    if mode is DestructionMode.NO_SELECTION:
        out = survived_part.copy()
        out[ext.vacuum_index, ext.vacuum_index] += np.trace(destroyed_part)
        return DestructionOutcome1(
            mode=mode, state=certify_density(Operator(out, ext), tolerances)
        )

    vac = np.zeros_like(sigma)
    vac[ext.vacuum_index, ext.vacuum_index] = np.trace(destroyed_part)
    branches = (
        _branch("destroyed", p, vac, ext, tolerances),
        _branch("survived", 1.0 - p, survived_part, ext, tolerances),
    )
    return DestructionOutcome1(mode=mode, branches=branches)


def _lifted_pair(pi: Projector, ext: ExtendedSpace) -> tuple[np.ndarray, np.ndarray]:
    """(lift(pi), lift(I - pi)); the complement is taken on the physical
    space before lifting, so neither fires on the vacuum."""
    if not isinstance(pi.space, PhysicalSpace):
        raise ValueError("two-particle destruction takes physical-space projectors")
    lifted = lift_projector(pi, ext).matrix
    comp_phys = np.eye(pi.dim) - pi.matrix
    comp = embed_physical(Operator(comp_phys, pi.space), ext).matrix
    return lifted, comp


def _embedded_input(rho: DensityMatrix, space: ProductSpace) -> np.ndarray:
    if not isinstance(rho.space, PhysicalSpace):
        raise ValueError(
            "two-particle destruction takes states on the physical pair space"
        )
    return embed_two_particle(rho, space).matrix


def destroy_two_distinguishable(
    rho: DensityMatrix,
    pi_a: Projector,
    pi_b: Projector,
    mode: DestructionMode,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> DestructionOutcome2:
    """Destroy each of two distinguishable particles in its own window.

    The four branches are projected with (i) perp x perp, (ii) perp x pi,
    (iii) pi x perp, (iv) pi x pi; branch (ii) loses the right particle via
    the right partial supertrace, (iii) the left one via the left partial
    supertrace, and (iv) everything via the full product supertrace.
    """
    _require_density(rho)
    ext_a = make_extended(pi_a.space) if isinstance(pi_a.space, PhysicalSpace) else None
    ext_b = make_extended(pi_b.space) if isinstance(pi_b.space, PhysicalSpace) else None
    if ext_a is None or ext_b is None:
        raise ValueError("two-particle destruction takes physical-space projectors")
    space = ProductSpace(ext_a, ext_b)
    sigma = _embedded_input(rho, space)
    a1, a0 = _lifted_pair(pi_a, ext_a)
    b1, b0 = _lifted_pair(pi_b, ext_b)
    dl, dr = ext_a.dim, ext_b.dim

    plan = (
        ("neither_destroyed", np.kron(a0, b0), None, SectorTag.TWO_PARTICLE),
        ("right_destroyed", np.kron(a0, b1), _right_matrix, SectorTag.ONE_PARTICLE_LEFT_ALIVE),
        ("left_destroyed", np.kron(a1, b0), _left_matrix, SectorTag.ONE_PARTICLE_RIGHT_ALIVE),
        ("both_destroyed", np.kron(a1, b1), _full_product_matrix, SectorTag.VACUUM),
    )
    probabilities = []
    terms = []
    labels = []
    sectors = []
    for label, proj, shrink, sector in plan:
        projected = proj @ sigma @ proj
        probabilities.append(float(np.real(np.trace(projected))))
        terms.append(projected if shrink is None else shrink(projected, dl, dr))
        labels.append(label)
        sectors.append(sector)

    if mode is DestructionMode.NO_SELECTION:
        total = terms[0] + terms[1] + terms[2] + terms[3]
        return DestructionOutcome2(
            mode=mode,
            space=space,
            state=certify_density(Operator(total, space), tolerances),
        )

    branches = tuple(
        _branch(label, p, term, space, tolerances, sector)
        for label, p, term, sector in zip(labels, probabilities, terms, sectors)
    )
    return DestructionOutcome2(mode=mode, space=space, branches=branches)


def destroy_two_identical(
    rho: DensityMatrix,
    pi: Projector,
    sign: ExchangeSign,
    mode: DestructionMode,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> DestructionOutcome2:
    """Destroy particles of an identical pair found inside pi's window.

    The measured observable pi x I + I x pi has outcomes 0, 1, 2.  Outcome 1
    cannot distinguish which particle died, so it is one branch: right and
    left supertraces of the one-sided projections plus the inner/external
    cross terms, the latter two entering with the exchange sign (+ for
    symmetric, - for antisymmetric pairs).

    The input must satisfy the exchange conditions for the declared sign
    within ``EPS_SYM``; otherwise `SymmetryViolationError` is raised.
    """
    _require_density(rho)
    if not isinstance(pi.space, PhysicalSpace):
        raise ValueError("two-particle destruction takes physical-space projectors")
    report = check_exchange_symmetry(rho, sign, EPS_SYM)
    if not report.passed:
        raise SymmetryViolationError(report)
    ext = make_extended(pi.space)
    space = ProductSpace(ext, ext)
    sigma = _embedded_input(rho, space)
    p1_, p0_ = _lifted_pair(pi, ext)
    dl = dr = ext.dim
    s = int(sign)

    proj_00 = np.kron(p0_, p0_)
    proj_01 = np.kron(p0_, p1_)
    proj_10 = np.kron(p1_, p0_)
    proj_11 = np.kron(p1_, p1_)

    term_none = proj_00 @ sigma @ proj_00
    right_piece = proj_01 @ sigma @ proj_01
    left_piece = proj_10 @ sigma @ proj_10
    term_one = (
        _right_matrix(right_piece, dl, dr)
        + _left_matrix(left_piece, dl, dr)
        + s * _inner_matrix(proj_01 @ sigma @ proj_10, dl, dr)
        + s * _external_matrix(proj_10 @ sigma @ proj_01, dl, dr)
    )
    both_piece = proj_11 @ sigma @ proj_11
    term_both = _full_product_matrix(both_piece, dl, dr)

    prob_none = float(np.real(np.trace(term_none)))
    prob_one = float(np.real(np.trace(right_piece) + np.trace(left_piece)))
    prob_both = float(np.real(np.trace(both_piece)))

    if mode is DestructionMode.NO_SELECTION:
        total = term_none + term_one + term_both
        return DestructionOutcome2(
            mode=mode,
            space=space,
            state=certify_density(Operator(total, space), tolerances),
        )

    branches = (
        _branch("none_destroyed", prob_none, term_none, space, tolerances,
                SectorTag.TWO_PARTICLE),
        _branch("one_destroyed", prob_one, term_one, space, tolerances,
                SectorTag.ONE_PARTICLE_SYMMETRIZED),
        _branch("both_destroyed", prob_both, term_both, space, tolerances,
                SectorTag.VACUUM),
    )
    return DestructionOutcome2(mode=mode, space=space, branches=branches)


__all__ = [
    "Branch",
    "DestructionMode",
    "DestructionOutcome1",
    "DestructionOutcome2",
    "EPS_PROB",
    "EPS_SYM",
    "ExchangeSign",
    "destroy_one",
    "destroy_two_distinguishable",
    "destroy_two_identical",
]
