"""Vacuum-extended Hilbert spaces and the index layout of their products.

A physical space of dimension d is extended by a one-dimensional vacuum
sector.  The vacuum index is placed *last* (index d), so the physical block
always occupies the leading d x d corner of an extended matrix and lifting a
physical operator is plain zero-padding.

The tensor product of two extended spaces splits into four sectors:

    (H_a + vac) x (H_b + vac)
        = (H_a x H_b)                      two particles alive
        + (H_a x vac) + (vac x H_b)        exactly one particle alive
        + (vac x vac)                      no particle

Pair indices are flattened row-major, flat = i * (d_b + 1) + j, which keeps
each sector a contiguous block pattern and matches ``numpy.kron``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class SectorTag(Enum):
    """Which of the four product sectors a basis vector (or branch) lives in.

    ``ONE_PARTICLE_SYMMETRIZED`` never labels a single basis vector; it tags
    identical-particle branches supported on the symmetrized span of both
    one-particle sectors.
    """

    TWO_PARTICLE = "two_particle"
    ONE_PARTICLE_LEFT_ALIVE = "one_particle_left_alive"
    ONE_PARTICLE_RIGHT_ALIVE = "one_particle_right_alive"
    ONE_PARTICLE_SYMMETRIZED = "one_particle_symmetrized"
    VACUUM = "vacuum"


@dataclass(frozen=True)
class PhysicalSpace:
    """A finite-dimensional Hilbert space with named basis vectors."""

    dim: int
    basis_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"physical dimension must be >= 1, got {self.dim}")
        if self.basis_labels is None:
            labels = tuple(str(i) for i in range(self.dim))
        else:
            labels = tuple(str(label) for label in self.basis_labels)
        if len(labels) != self.dim:
            raise ValueError(
                f"expected {self.dim} basis labels, got {len(labels)}"
            )
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be unique")
        object.__setattr__(self, "basis_labels", labels)


@dataclass(frozen=True)
class ExtendedSpace:
    """A physical space plus the one-dimensional vacuum sector.

    The vacuum vector is orthogonal to every physical basis vector and sits
    at the last index.
    """

    physical: PhysicalSpace

    @property
    def dim(self) -> int:
        return self.physical.dim + 1

    @property
    def vacuum_index(self) -> int:
        return self.physical.dim


@dataclass(frozen=True)
class ProductSpace:
    """Tensor product of two extended spaces, row-major pair layout."""

    left: ExtendedSpace
    right: ExtendedSpace

    @property
    def dim(self) -> int:
        return self.left.dim * self.right.dim

    @property
    def identical(self) -> bool:
        """True when both factors extend the same physical space."""
        return self.left.physical == self.right.physical


def make_extended(physical: PhysicalSpace) -> ExtendedSpace:
    """Adjoin the vacuum sector to a physical space."""
    return ExtendedSpace(physical)


def pair_index(space: ProductSpace, i: int, j: int) -> int:
    """Flat index of the extended pair (i, j); inverse of `unpair_index`."""
    if not 0 <= i < space.left.dim:
        raise IndexError(f"left index {i} out of range [0, {space.left.dim})")
    if not 0 <= j < space.right.dim:
        raise IndexError(f"right index {j} out of range [0, {space.right.dim})")
    return i * space.right.dim + j


def unpair_index(space: ProductSpace, flat: int) -> tuple[int, int]:
    """Extended pair (i, j) of a flat product index."""
    if not 0 <= flat < space.dim:
        raise IndexError(f"flat index {flat} out of range [0, {space.dim})")
    return divmod(flat, space.right.dim)


def sector_of(space: ProductSpace, flat: int) -> SectorTag:
    """Sector of the product basis vector at a flat index."""
    i, j = unpair_index(space, flat)
    left_vacuum = i == space.left.vacuum_index
    right_vacuum = j == space.right.vacuum_index
    if left_vacuum and right_vacuum:
        return SectorTag.VACUUM
    if right_vacuum:
        return SectorTag.ONE_PARTICLE_LEFT_ALIVE
    if left_vacuum:
        return SectorTag.ONE_PARTICLE_RIGHT_ALIVE
    return SectorTag.TWO_PARTICLE


def sector_indices(space: ProductSpace, tag: SectorTag) -> tuple[int, ...]:
    """All flat indices belonging to a sector.

    ``ONE_PARTICLE_SYMMETRIZED`` maps to the union of the two one-particle
    sectors, the support of any symmetrized one-particle state.
    """
    if tag is SectorTag.ONE_PARTICLE_SYMMETRIZED:
        wanted = {
            SectorTag.ONE_PARTICLE_LEFT_ALIVE,
            SectorTag.ONE_PARTICLE_RIGHT_ALIVE,
        }
    else:
        wanted = {tag}
    return tuple(k for k in range(space.dim) if sector_of(space, k) in wanted)
