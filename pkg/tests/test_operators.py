import numpy as np
import pytest

import qdestroy as q
from helpers import QUBIT, qubit_family_state


def test_projector_from_spin_half_window():
    obs = q.Operator(np.diag([0.5, -0.5]), QUBIT)
    pi, perp = q.projector_from_observable(obs, q.SpectralWindow((0.5,)))
    np.testing.assert_allclose(pi.matrix, np.diag([1.0, 0.0]), atol=1e-15)
    np.testing.assert_allclose(perp.matrix, np.diag([0.0, 1.0]), atol=1e-15)


def test_projector_from_empty_window():
    rng = np.random.default_rng(3)
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    obs = q.Operator((g + g.conj().T) / 2, q.PhysicalSpace(3))
    pi, perp = q.projector_from_observable(obs, q.SpectralWindow(()))
    np.testing.assert_allclose(pi.matrix, np.zeros((3, 3)), atol=1e-15)
    np.testing.assert_allclose(perp.matrix, np.eye(3), atol=1e-15)


def test_projector_from_spin1_middle_level():
    obs = q.Operator(np.diag([1.0, 0.0, -1.0]), q.PhysicalSpace(3, ("1,1", "1,0", "1,-1")))
    pi, perp = q.projector_from_observable(obs, q.SpectralWindow((0.0,)))
    np.testing.assert_allclose(pi.matrix, np.diag([0.0, 1.0, 0.0]), atol=1e-15)
    np.testing.assert_allclose(perp.matrix, np.diag([1.0, 0.0, 1.0]), atol=1e-15)


def test_projector_covers_degenerate_eigenspaces():
    obs = q.Operator(np.diag([1.0, 1.0, -1.0]), q.PhysicalSpace(3))
    pi, _ = q.projector_from_observable(obs, q.SpectralWindow((1.0,)))
    assert pi.rank == 2


def test_projector_rejects_non_hermitian_observable():
    obs = q.Operator(np.array([[0.0, 1.0], [0.0, 0.0]]), QUBIT)
    with pytest.raises(q.NonHermitianObservableError):
        q.projector_from_observable(obs, q.SpectralWindow((1.0,)))


def test_projector_idempotency_and_complement_orthogonality():
    rng = np.random.default_rng(7)
    for _ in range(50):
        d = int(rng.integers(2, 6))
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        herm = (g + g.conj().T) / 2
        values = np.linalg.eigvalsh(herm)
        omega = tuple(values[: int(rng.integers(0, d + 1))])
        pi, perp = q.projector_from_observable(
            q.Operator(herm, q.PhysicalSpace(d)), q.SpectralWindow(omega)
        )
        assert np.max(np.abs(pi.matrix @ pi.matrix - pi.matrix)) <= 1e-12
        assert np.max(np.abs(pi.matrix @ perp.matrix)) <= 1e-12


def test_certify_accepts_maximally_mixed_qubit():
    rho = q.certify_density(q.Operator(np.diag([0.5, 0.5]), QUBIT))
    assert rho.trace_defect <= 1e-15
    assert rho.min_eigenvalue >= -1e-15


def test_certify_rejects_indefinite_matrix_with_defect():
    # 2x2 eigenvalues in closed form: 0.5 +- 0.6
    op = q.Operator(np.array([[0.5, 0.6], [0.6, 0.5]]), QUBIT)
    with pytest.raises(q.NotPositiveSemidefiniteError) as excinfo:
        q.certify_density(op)
    assert excinfo.value.defect == pytest.approx(-0.1, abs=1e-12)


def test_certify_rejects_non_hermitian_and_wrong_trace():
    with pytest.raises(q.NotHermitianError):
        q.certify_density(q.Operator(np.array([[0.5, 0.3], [0.0, 0.5]]), QUBIT))
    with pytest.raises(q.TraceNotOneError):
        q.certify_density(q.Operator(np.diag([0.7, 0.5]), QUBIT))


def test_certify_accepts_coherent_qubit_family_member():
    rho = qubit_family_state(0.3, 0.1)
    assert abs(0.1) ** 2 <= 0.3 * 0.7
    assert rho.min_eigenvalue >= -1e-12


def test_certified_spectra_are_real_and_normalized():
    rng = np.random.default_rng(11)
    for _ in range(200):
        d = int(rng.integers(1, 6))
        rho = q.random_density(d, rng)
        values = np.linalg.eigvalsh(rho.matrix)
        assert abs(np.sum(values) - 1.0) <= 1e-10
        assert values[0] >= -1e-10


def test_entropy_of_maximally_mixed_qubit_is_ln2():
    rho = q.certify_density(q.Operator(np.diag([0.5, 0.5]), QUBIT))
    assert q.von_neumann_entropy(rho) == pytest.approx(np.log(2), abs=1e-12)


def test_entropy_of_pure_state_is_zero():
    rho = q.certify_density(q.Operator(np.diag([1.0, 0.0]), QUBIT))
    assert q.von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)


def test_entropy_matches_binary_formula():
    rho = qubit_family_state(0.3, 0.0)
    expected = -0.3 * np.log(0.3) - 0.7 * np.log(0.7)
    assert q.von_neumann_entropy(rho) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.610864, abs=1e-6)


def test_entropy_nonnegative_and_zero_only_for_rank_one():
    rng = np.random.default_rng(23)
    for trial in range(1000):
        d = int(rng.integers(2, 5))
        if trial % 4 == 0:
            vec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            vec /= np.linalg.norm(vec)
            rho = q.certify_density(
                q.Operator(np.outer(vec, vec.conj()), q.PhysicalSpace(d))
            )
            rank_one = True
        else:
            rho = q.random_density(d, rng)
            rank_one = False
        entropy = q.von_neumann_entropy(rho)
        assert entropy >= 0.0
        if rank_one:
            assert entropy <= 1e-12
        else:
            assert entropy > 1e-6  # full rank with probability 1


def test_embed_physical_examples():
    ext = q.make_extended(QUBIT)
    embedded = q.embed_physical(q.Operator(np.diag([1.0, 0.0]), QUBIT), ext)
    np.testing.assert_allclose(embedded.matrix, np.diag([1.0, 0.0, 0.0]), atol=0)
    identity = q.embed_physical(q.Operator(np.eye(2), QUBIT), ext)
    np.testing.assert_allclose(identity.matrix, np.diag([1.0, 1.0, 0.0]), atol=0)
    hopper = q.embed_physical(
        q.Operator(np.array([[0.0, 1.0], [0.0, 0.0]]), QUBIT), ext
    )
    expected = np.zeros((3, 3))
    expected[0, 1] = 1.0
    np.testing.assert_allclose(hopper.matrix, expected, atol=0)


def test_embed_physical_preserves_operator_kind():
    ext = q.make_extended(QUBIT)
    pi = q.Projector(np.diag([1.0, 0.0]), QUBIT)
    assert isinstance(q.embed_physical(pi, ext), q.Projector)
    rho = qubit_family_state(0.25, 0.1j)
    lifted = q.embed_physical(rho, ext)
    assert isinstance(lifted, q.DensityMatrix)
    assert abs(np.trace(lifted.matrix) - 1.0) <= 1e-15


def test_embed_physical_rejects_mismatched_space():
    ext = q.make_extended(q.PhysicalSpace(3))
    with pytest.raises(ValueError):
        q.embed_physical(q.Operator(np.eye(2), QUBIT), ext)


def test_tensor_identity_and_diagonal():
    ext = q.make_extended(QUBIT)
    eye = q.Operator(np.eye(2), QUBIT)
    np.testing.assert_allclose(q.tensor(eye, eye).matrix, np.eye(4), atol=0)
    a = q.Operator(np.diag([1.0, 0.0]), QUBIT)
    b = q.Operator(np.diag([0.0, 1.0]), QUBIT)
    np.testing.assert_allclose(q.tensor(a, b).matrix, np.diag([0.0, 1.0, 0.0, 0.0]), atol=0)
    assert isinstance(q.tensor(q.Operator(np.eye(3), ext), q.Operator(np.eye(3), ext)).space, q.ProductSpace)


def test_tensor_matches_entrywise_products():
    rng = np.random.default_rng(5)
    ext = q.make_extended(QUBIT)
    a = q.Operator(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)), ext)
    b = q.Operator(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)), ext)
    result = q.tensor(a, b)
    space = result.space
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for m in range(3):
                    assert result.matrix[
                        q.pair_index(space, i, j), q.pair_index(space, k, m)
                    ] == pytest.approx(a.matrix[i, k] * b.matrix[j, m], abs=1e-15)


def test_tensor_is_associative_on_random_triples():
    rng = np.random.default_rng(9)
    for _ in range(100):
        ops = [
            q.Operator(
                rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)),
                q.PhysicalSpace(2),
            )
            for _ in range(3)
        ]
        left = q.tensor(q.tensor(ops[0], ops[1]), ops[2])
        right = q.tensor(ops[0], q.tensor(ops[1], ops[2]))
        assert np.max(np.abs(left.matrix - right.matrix)) <= 1e-12
        assert left.space == right.space


def test_embed_two_particle_places_block():
    space = q.ProductSpace(q.make_extended(QUBIT), q.make_extended(q.PhysicalSpace(3)))
    rng = np.random.default_rng(1)
    m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    embedded = q.embed_two_particle(q.Operator(m, q.PhysicalSpace(6)), space)
    tensor4 = m.reshape(2, 3, 2, 3)
    for a in range(2):
        for b in range(3):
            for ap in range(2):
                for bp in range(3):
                    assert embedded.matrix[
                        q.pair_index(space, a, b), q.pair_index(space, ap, bp)
                    ] == tensor4[a, b, ap, bp]
    vac_row = q.pair_index(space, 2, 3)
    assert np.all(embedded.matrix[vac_row, :] == 0)
    assert np.all(embedded.matrix[:, vac_row] == 0)


def test_operator_matrices_are_immutable():
    op = q.Operator(np.eye(2), QUBIT)
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 5.0


def test_projector_constructor_rejects_non_projectors():
    with pytest.raises(ValueError):
        q.Projector(np.array([[0.5, 0.0], [0.0, 0.5]]), QUBIT)
