"""Shared builders for the test suite."""

import numpy as np

import qdestroy as q

QUBIT = q.PhysicalSpace(2, ("up", "down"))
PAIR4 = q.PhysicalSpace(4)


def spin_half_up_projector() -> q.Projector:
    obs = q.Operator(np.diag([0.5, -0.5]), QUBIT)
    pi, _ = q.projector_from_observable(obs, q.SpectralWindow((0.5,)))
    return pi


def singlet() -> q.DensityMatrix:
    vec = np.zeros(4, dtype=complex)
    vec[1] = 1 / np.sqrt(2)
    vec[2] = -1 / np.sqrt(2)
    return q.certify_density(q.Operator(np.outer(vec, vec.conj()), PAIR4))


def triplet0() -> q.DensityMatrix:
    vec = np.zeros(4, dtype=complex)
    vec[1] = 1 / np.sqrt(2)
    vec[2] = 1 / np.sqrt(2)
    return q.certify_density(q.Operator(np.outer(vec, vec.conj()), PAIR4))


def qubit_family_state(w: float, c: complex) -> q.DensityMatrix:
    """w |up><up| + c |up><down| + conj(c) |down><up| + (1-w) |down><down|."""
    return q.certify_density(
        q.Operator(np.array([[w, c], [np.conj(c), 1 - w]]), QUBIT)
    )


def unit_matrix(dim: int, row: int, col: int) -> np.ndarray:
    out = np.zeros((dim, dim), dtype=complex)
    out[row, col] = 1.0
    return out


def square_product(d: int) -> q.ProductSpace:
    ext = q.make_extended(q.PhysicalSpace(d))
    return q.ProductSpace(ext, ext)


def diagonal_projector(space: q.PhysicalSpace, kept: tuple[int, ...]) -> q.Projector:
    m = np.zeros((space.dim, space.dim), dtype=complex)
    for k in kept:
        m[k, k] = 1.0
    return q.Projector(m, space)


def admissible_spin1(w1: float, w2: float, rng, zero_middle_coherence: bool = False):
    """A random valid qutrit state with diagonal (w1, 1-w1-w2, w2).

    Off-diagonal magnitudes are scaled down until the matrix stays positive
    semidefinite (strictly inside, so certification never sits on the edge).
    Returns (matrix, c_between_outer_levels).
    """
    w0 = 1 - w1 - w2
    diag = np.diag([w1, w0, w2]).astype(complex)
    c = 0.5 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))
    if zero_middle_coherence:
        c[1] = 0.0
    off = np.zeros((3, 3), dtype=complex)
    off[0, 1], off[0, 2], off[1, 2] = c[0], c[1], c[2]
    hermitian_off = off + off.conj().T

    def min_eig(scale: float) -> float:
        return float(np.linalg.eigvalsh(diag + scale * hermitian_off)[0])

    if min_eig(1.0) >= 0.0:
        scale_max = 1.0
    else:
        lo, hi = 0.0, 1.0
        for _ in range(60):
            mid = (lo + hi) / 2
            if min_eig(mid) >= 0.0:
                lo = mid
            else:
                hi = mid
        scale_max = lo
    scale = 0.9 * scale_max
    return diag + scale * hermitian_off, scale * c[1]
