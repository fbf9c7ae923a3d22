import numpy as np
import pytest

import qdestroy as q


def _product(da: int, db: int) -> q.ProductSpace:
    return q.ProductSpace(
        q.make_extended(q.PhysicalSpace(da)), q.make_extended(q.PhysicalSpace(db))
    )


def test_make_extended_places_vacuum_last():
    space = q.make_extended(q.PhysicalSpace(2, ("up", "down")))
    assert space.dim == 3
    assert space.vacuum_index == 2


@pytest.mark.parametrize("dim,total", [(1, 2), (3, 4)])
def test_make_extended_dimensions(dim, total):
    assert q.make_extended(q.PhysicalSpace(dim)).dim == total


def test_spin1_labels():
    space = q.make_extended(q.PhysicalSpace(3, ("1,1", "1,0", "1,-1")))
    assert space.dim == 4
    assert space.physical.basis_labels == ("1,1", "1,0", "1,-1")


def test_physical_space_validation():
    with pytest.raises(ValueError):
        q.PhysicalSpace(0)
    with pytest.raises(ValueError):
        q.PhysicalSpace(2, ("a",))
    with pytest.raises(ValueError):
        q.PhysicalSpace(2, ("a", "a"))


def test_pair_index_examples():
    space = _product(2, 2)
    assert q.pair_index(space, 0, 0) == 0
    assert q.pair_index(space, 2, 2) == 8
    assert q.pair_index(space, 0, 2) == 2


def test_pair_index_out_of_range():
    space = _product(2, 2)
    with pytest.raises(IndexError):
        q.pair_index(space, 3, 0)
    with pytest.raises(IndexError):
        q.pair_index(space, 0, -1)
    with pytest.raises(IndexError):
        q.unpair_index(space, 9)


@pytest.mark.parametrize("da,db", [(da, db) for da in range(1, 7) for db in range(1, 7)])
def test_pair_unpair_bijective(da, db):
    # oracle: enumerate pairs row-major with a plain counter
    space = _product(da, db)
    counter = 0
    seen = set()
    for i in range(da + 1):
        for j in range(db + 1):
            flat = q.pair_index(space, i, j)
            assert flat == counter
            assert q.unpair_index(space, flat) == (i, j)
            seen.add(flat)
            counter += 1
    assert seen == set(range(space.dim))


def test_sector_of_examples():
    space = _product(2, 2)
    assert q.sector_of(space, q.pair_index(space, 0, 1)) == q.SectorTag.TWO_PARTICLE
    assert (
        q.sector_of(space, q.pair_index(space, 2, 0))
        == q.SectorTag.ONE_PARTICLE_RIGHT_ALIVE
    )
    assert q.sector_of(space, q.pair_index(space, 2, 2)) == q.SectorTag.VACUUM
    assert (
        q.sector_of(space, q.pair_index(space, 1, 2))
        == q.SectorTag.ONE_PARTICLE_LEFT_ALIVE
    )


@pytest.mark.parametrize("da,db", [(2, 2), (2, 3), (4, 2), (3, 3)])
def test_sector_sizes_partition_the_grid(da, db):
    space = _product(da, db)
    sizes = {
        q.SectorTag.TWO_PARTICLE: da * db,
        q.SectorTag.ONE_PARTICLE_LEFT_ALIVE: da,
        q.SectorTag.ONE_PARTICLE_RIGHT_ALIVE: db,
        q.SectorTag.VACUUM: 1,
    }
    total = 0
    for tag, size in sizes.items():
        indices = q.sector_indices(space, tag)
        assert len(indices) == size
        total += size
    assert total == space.dim == (da + 1) * (db + 1)


def test_symmetrized_sector_indices_union():
    space = _product(3, 3)
    union = set(q.sector_indices(space, q.SectorTag.ONE_PARTICLE_SYMMETRIZED))
    left = set(q.sector_indices(space, q.SectorTag.ONE_PARTICLE_LEFT_ALIVE))
    right = set(q.sector_indices(space, q.SectorTag.ONE_PARTICLE_RIGHT_ALIVE))
    assert union == left | right


def test_identical_flag():
    assert _product(2, 2).identical
    assert not _product(2, 3).identical
    labels_differ = q.ProductSpace(
        q.make_extended(q.PhysicalSpace(2, ("a", "b"))),
        q.make_extended(q.PhysicalSpace(2, ("x", "y"))),
    )
    assert not labels_differ.identical


def test_spaces_are_hashable_and_comparable():
    assert q.PhysicalSpace(2) == q.PhysicalSpace(2)
    assert len({q.PhysicalSpace(2), q.PhysicalSpace(2), q.PhysicalSpace(3)}) == 2
