"""Dense complex operator algebra: density matrices, projectors, entropy.

Everything is double-precision ``numpy`` at desk scale (extended product
spaces up to 16 x 16 physical, 25 x 25 extended).  Operators are immutable
after construction and carry the space they act on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    NonHermitianObservableError,
    NotHermitianError,
    NotPositiveSemidefiniteError,
    TraceNotOneError,
)
from .spaces import ExtendedSpace, PhysicalSpace, ProductSpace, make_extended

Space = Union[PhysicalSpace, ExtendedSpace, ProductSpace]


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances for certification and spectral matching.

    Sized for double-precision eigendecompositions of matrices <= 16 x 16
    physical (25 x 25 extended product).
    """

    hermiticity: float = 1e-12
    trace: float = 1e-10
    psd: float = 1e-10
    eigenvalue_match: float = 1e-8


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class Operator:
    """A square complex matrix tagged with the space it acts on."""

    matrix: np.ndarray
    space: Space

    def __post_init__(self):
        arr = np.array(self.matrix, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {arr.shape}")
        if arr.shape[0] != self.space.dim:
            raise ValueError(
                f"matrix dimension {arr.shape[0]} does not match "
                f"space dimension {self.space.dim}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class DensityMatrix(Operator):
    """A certified state: Hermitian, unit trace, positive semidefinite.

    Construct through `certify_density`, which fills the certification
    record with the measured defects.
    """

    hermiticity_defect: float = 0.0
    trace_defect: float = 0.0
    min_eigenvalue: float = 0.0


@dataclass(frozen=True)
class Projector(Operator):
    """A Hermitian idempotent operator; validated at construction."""

    def __post_init__(self):
        super().__post_init__()
        m = self.matrix
        herm = float(np.max(np.abs(m - m.conj().T)))
        idem = float(np.max(np.abs(m @ m - m)))
        tol = DEFAULT_TOLERANCES.hermiticity
        if herm > tol or idem > tol:
            raise ValueError(
                f"matrix is not a projector "
                f"(hermiticity defect {herm:.3e}, idempotency defect {idem:.3e})"
            )

    @property
    def rank(self) -> int:
        return int(round(float(np.real(np.trace(self.matrix)))))


@dataclass(frozen=True)
class SpectralWindow:
    """A subset of an observable's spectrum, matched within a tolerance.

    An empty window is allowed and selects the zero projector.
    """

    omega: tuple[float, ...]
    eigenvalue_match: float = DEFAULT_TOLERANCES.eigenvalue_match

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(float(w) for w in self.omega))
        if self.eigenvalue_match <= 0:
            raise ValueError("eigenvalue_match must be positive")


def projector_from_observable(
    obs: Operator, window: SpectralWindow
) -> tuple[Projector, Projector]:
    """Spectral projector onto the eigenspaces selected by a window.

    Returns (pi, pi_perp) with pi the orthogonal projector onto the span of
    all eigenvectors whose eigenvalue lies within the window's match
    tolerance of any value in omega, and pi_perp = I - pi.  Degenerate
    eigenvalues are included wholesale.  Both projectors live on the
    observable's physical space; lift them with `embed_physical` when
    needed.
    """
    if not isinstance(obs.space, PhysicalSpace):
        raise ValueError("spectral projectors are built on the physical space")
    m = obs.matrix
    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > DEFAULT_TOLERANCES.hermiticity:
        raise NonHermitianObservableError(herm)
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    if window.omega:
        selected = np.array(
            [min(abs(v - w) for w in window.omega) <= window.eigenvalue_match for v in vals]
        )
    else:
        selected = np.zeros(len(vals), dtype=bool)
    chosen = vecs[:, selected]
    pi = chosen @ chosen.conj().T
    pi_perp = np.eye(obs.dim) - pi
    return Projector(pi, obs.space), Projector(pi_perp, obs.space)


def certify_density(
    op: Operator, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> DensityMatrix:
    """Check the density-matrix invariants and return a certified state.

    Raises `NotHermitianError`, `TraceNotOneError` or
    `NotPositiveSemidefiniteError` carrying the numeric defect of the first
    violated invariant.
    """
    m = op.matrix
    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > tolerances.hermiticity:
        raise NotHermitianError("state is not Hermitian", herm)
    trace_defect = float(abs(np.trace(m) - 1.0))
    if trace_defect > tolerances.trace:
        raise TraceNotOneError("state trace is not 1", trace_defect)
    eigenvalues = np.linalg.eigvalsh((m + m.conj().T) / 2)
    min_eig = float(eigenvalues[0])
    if min_eig < -tolerances.psd:
        raise NotPositiveSemidefiniteError(
            "state is not positive semidefinite", min_eig
        )
    return DensityMatrix(
        m,
        op.space,
        hermiticity_defect=herm,
        trace_defect=trace_defect,
        min_eigenvalue=min_eig,
    )


def von_neumann_entropy(
    rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """S(rho) = -sum_i lambda_i ln lambda_i, in nats, with 0 ln 0 := 0.

    Eigenvalues in [-psd tolerance, 0) are roundoff and clamped to zero;
    anything below that is a genuine invariant violation and raises.
    """
    m = rho.matrix
    eigenvalues = np.linalg.eigvalsh((m + m.conj().T) / 2)
    if eigenvalues[0] < -tolerances.psd:
        raise NotPositiveSemidefiniteError(
            "state is not positive semidefinite", float(eigenvalues[0])
        )
    clipped = np.clip(eigenvalues, 0.0, 1.0)
    positive = clipped[clipped > 0.0]
    return float(-np.sum(positive * np.log(positive)))


def embed_physical(op: Operator, target: ExtendedSpace) -> Operator:
    """Lift a physical-space operator to the extended space by zero-padding.

    Observables act trivially on the vacuum, so the vacuum row and column
    are zero.  Note the lift of a complement I - pi is therefore *not*
    I_extended - lift(pi): a lifted projector never fires on the vacuum.
    """
    if not isinstance(op.space, PhysicalSpace):
        raise ValueError("embed_physical expects an operator on a physical space")
    if op.space != target.physical:
        raise ValueError(
            f"operator space (dim {op.space.dim}) does not match the "
            f"physical part of the target (dim {target.physical.dim})"
        )
    out = np.zeros((target.dim, target.dim), dtype=np.complex128)
    out[: op.dim, : op.dim] = op.matrix
    if isinstance(op, Projector):
        return Projector(out, target)
    if isinstance(op, DensityMatrix):
        return DensityMatrix(
            out,
            target,
            hermiticity_defect=op.hermiticity_defect,
            trace_defect=op.trace_defect,
            min_eigenvalue=min(op.min_eigenvalue, 0.0),
        )
    return Operator(out, target)


def embed_two_particle(op: Operator, target: ProductSpace) -> Operator:
    """Embed an operator on the physical pair H_a x H_b into the extended
    product space (the two-particle sector block)."""
    da = target.left.physical.dim
    db = target.right.physical.dim
    if op.dim != da * db:
        raise ValueError(
            f"operator dimension {op.dim} does not match the two-particle "
            f"sector {da}*{db}"
        )
    dl, dr = target.left.dim, target.right.dim
    out = np.zeros((dl, dr, dl, dr), dtype=np.complex128)
    out[:da, :db, :da, :db] = op.matrix.reshape(da, db, da, db)
    return Operator(out.reshape(target.dim, target.dim), target)


def tensor(a: Operator, b: Operator) -> Operator:
    """Kronecker product, consistent with the row-major pair layout.

    Two extended factors produce an operator on their `ProductSpace`; two
    physical factors produce one on the fused physical space (the tensor
    product is itself a physical space, labels joined left-to-right).
    """
    if isinstance(a.space, ExtendedSpace) and isinstance(b.space, ExtendedSpace):
        space: Space = ProductSpace(a.space, b.space)
    elif isinstance(a.space, PhysicalSpace) and isinstance(b.space, PhysicalSpace):
        labels = tuple(
            f"{la}*{lb}"
            for la in a.space.basis_labels
            for lb in b.space.basis_labels
        )
        space = PhysicalSpace(a.space.dim * b.space.dim, labels)
    else:
        raise ValueError(
            "tensor supports two physical-space or two extended-space factors"
        )
    return Operator(np.kron(a.matrix, b.matrix), space)


def vacuum_state(space: ExtendedSpace) -> DensityMatrix:
    """The vacuum density matrix |0><0| on an extended space."""
    m = np.zeros((space.dim, space.dim), dtype=np.complex128)
    m[space.vacuum_index, space.vacuum_index] = 1.0
    return DensityMatrix(m, space, 0.0, 0.0, 0.0)


def lift_projector(pi: Projector, target: ExtendedSpace) -> Projector:
    """`embed_physical` for projectors, or a pass-through validation when
    the projector is already lifted (it must then be zero on the vacuum)."""
    if isinstance(pi.space, PhysicalSpace):
        lifted = embed_physical(pi, target)
        assert isinstance(lifted, Projector)
        return lifted
    if not isinstance(pi.space, ExtendedSpace):
        raise ValueError("projector must live on a physical or extended space")
    if pi.space != target:
        raise ValueError("projector space does not match the target space")
    v = target.vacuum_index
    vac_weight = float(max(np.max(np.abs(pi.matrix[v, :])), np.max(np.abs(pi.matrix[:, v]))))
    if vac_weight > DEFAULT_TOLERANCES.hermiticity:
        raise ValueError(
            f"an extended projector must not act on the vacuum "
            f"(weight {vac_weight:.3e})"
        )
    return pi


__all__ = [
    "DEFAULT_TOLERANCES",
    "DensityMatrix",
    "Operator",
    "Projector",
    "Space",
    "SpectralWindow",
    "Tolerances",
    "certify_density",
    "embed_physical",
    "embed_two_particle",
    "lift_projector",
    "make_extended",
    "projector_from_observable",
    "tensor",
    "vacuum_state",
    "von_neumann_entropy",
]
