"""Exchange-symmetry utilities for two identical particles.

The coefficient tensor rho_{ab,a'b'} of a two-particle state must satisfy,
under exchange of the ket pair and of the bra pair,

    symmetric:      rho_{aba'b'} =  rho_{baa'b'} =  rho_{abb'a'} = rho_{bab'a'}
    antisymmetric:  rho_{aba'b'} = -rho_{baa'b'} = -rho_{abb'a'} = rho_{bab'a'}

The checks below work on the coefficient tensor directly; conjugation by the
SWAP operator is an equivalent formulation used as a cross-check in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import DistinctSpacesError, ZeroProjectionError
from .operators import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    Operator,
    Projector,
    Tolerances,
    certify_density,
)
from .spaces import ProductSpace, pair_index


class ExchangeSign(IntEnum):
    """Exchange behavior of an identical-particle pair."""

    SYMMETRIC = 1
    ANTISYMMETRIC = -1


@dataclass(frozen=True)
class SymmetryReport:
    """Outcome of an exchange-symmetry check."""

    sign: int
    max_violation: float
    tolerance: float
    passed: bool


def _pair_dim(op: Operator) -> int:
    d = math.isqrt(op.dim)
    if d * d != op.dim:
        raise ValueError(
            f"operator dimension {op.dim} is not a two-particle square"
        )
    return d


def check_exchange_symmetry(
    rho: Operator, sign: ExchangeSign, tolerance: float = 1e-10
) -> SymmetryReport:
    """Largest violation of the exchange conditions for the declared sign."""
    d = _pair_dim(rho)
    t = rho.matrix.reshape(d, d, d, d)
    s = int(sign)
    violations = (
        np.max(np.abs(t - s * t.transpose(1, 0, 2, 3))),
        np.max(np.abs(t - s * t.transpose(0, 1, 3, 2))),
        np.max(np.abs(t - t.transpose(1, 0, 3, 2))),
    )
    worst = float(max(violations))
    return SymmetryReport(
        sign=s, max_violation=worst, tolerance=tolerance, passed=worst <= tolerance
    )


def swap_matrix(dim: int) -> np.ndarray:
    """The SWAP operator on the physical pair space, exchanging the factors."""
    s = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
    for a in range(dim):
        for b in range(dim):
            s[a * dim + b, b * dim + a] = 1.0
    return s


def symmetrizer(dim: int, sign: ExchangeSign) -> np.ndarray:
    """(I + sign * SWAP) / 2, the orthogonal projector onto the (anti)symmetric
    subspace of the physical pair space."""
    return (np.eye(dim * dim) + int(sign) * swap_matrix(dim)) / 2


def symmetrize_state(
    rho: Operator,
    sign: ExchangeSign,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> DensityMatrix:
    """Project a pair state onto the (anti)symmetric sector and renormalize.

    Raises `ZeroProjectionError` when the state has no component there.
    """
    d = _pair_dim(rho)
    p = symmetrizer(d, sign)
    projected = p @ rho.matrix @ p
    weight = float(np.real(np.trace(projected)))
    if weight <= 1e-14:
        raise ZeroProjectionError(
            f"state has no component in the sign={int(sign):+d} sector "
            f"(projected weight {weight:.3e})"
        )
    return certify_density(Operator(projected / weight, rho.space), tolerances)


def one_particle_sym_projector(space: ProductSpace) -> Projector:
    """Orthogonal projector onto the irreducible one-particle subspace.

    Its range is spanned by (|alpha> x |0> + |0> x |alpha>) / sqrt(2) over
    the physical basis; a destroyed identical pair always lands inside it,
    for both exchange signs.
    """
    if not space.identical:
        raise DistinctSpacesError(
            "the symmetrized one-particle projector needs identical factors"
        )
    d = space.left.physical.dim
    vac = space.left.vacuum_index
    columns = np.zeros((space.dim, d), dtype=np.complex128)
    for alpha in range(d):
        columns[pair_index(space, alpha, vac), alpha] = 1.0 / np.sqrt(2)
        columns[pair_index(space, vac, alpha), alpha] = 1.0 / np.sqrt(2)
    return Projector(columns @ columns.conj().T, space)


__all__ = [
    "ExchangeSign",
    "SymmetryReport",
    "check_exchange_symmetry",
    "one_particle_sym_projector",
    "swap_matrix",
    "symmetrize_state",
    "symmetrizer",
]
