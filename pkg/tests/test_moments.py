import numpy as np
import pytest

from triplespin.errors import DimensionMismatchError, NotHermitianError
from triplespin.moments import (
    EntropyBase,
    batch_expectation,
    batch_variance,
    expectation,
    outcome_distribution,
    shannon_entropy,
    std_dev,
    variance,
)
from triplespin.spin_ops import build_spin_operators
from triplespin.states import (
    density_from_bloch,
    random_mixed,
    random_mixed_bloch,
    random_pure_bloch,
)
from triplespin.rng import stream

QUBIT = build_spin_operators(1)
SQ3 = np.sqrt(3.0)


def _random_unitary(dim, seed):
    rng = stream(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_expectation_eigenstate():
    assert expectation(density_from_bloch([0, 0, 1]), QUBIT.sz) == pytest.approx(0.5, abs=1e-15)


def test_expectation_balanced_state():
    st = density_from_bloch([1 / SQ3, 1 / SQ3, 1 / SQ3])
    # <S_i> = r_i / 2 from expanding (1 + r.sigma)/2
    assert expectation(st, QUBIT.sx) == pytest.approx(1 / (2 * SQ3), abs=1e-15)


def test_expectation_traceless_on_maximally_mixed():
    st = density_from_bloch([0, 0, 0])
    for op in QUBIT.as_tuple():
        assert expectation(st, op) == pytest.approx(0.0, abs=1e-15)


def test_expectation_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        expectation(density_from_bloch([0, 0, 0]), np.array([[0, 1], [0, 0]], dtype=complex))


def test_expectation_rejects_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        expectation(density_from_bloch([0, 0, 0]), np.eye(3))


def test_std_dev_eigenstate_is_zero():
    assert std_dev(density_from_bloch([0, 0, 1]), QUBIT.sz) == pytest.approx(0.0, abs=1e-15)


def test_std_dev_balanced_state():
    st = density_from_bloch([1 / SQ3, 1 / SQ3, 1 / SQ3])
    # (Delta S_i)^2 = (1 - r_i^2)/4 for a qubit
    assert std_dev(st, QUBIT.sx) == pytest.approx(1 / np.sqrt(6.0), abs=1e-15)


def test_std_dev_maximally_mixed():
    assert std_dev(density_from_bloch([0, 0, 0]), QUBIT.sz) == pytest.approx(0.5, abs=1e-15)


def test_outcome_distribution_eigenstate():
    dist = outcome_distribution(density_from_bloch([0, 0, 1]), QUBIT.sz)
    assert dist.entries[0][0] == pytest.approx(0.5, abs=1e-12)
    assert dist.entries[0][1] == pytest.approx(1.0, abs=1e-12)
    assert dist.entries[1][0] == pytest.approx(-0.5, abs=1e-12)
    assert dist.entries[1][1] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("rz", [-0.9, -0.3, 0.0, 0.4, 1.0])
def test_outcome_distribution_diagonal_state(rz):
    dist = outcome_distribution(density_from_bloch([0, 0, rz]), QUBIT.sz)
    np.testing.assert_allclose(dist.probabilities(), [(1 + rz) / 2, (1 - rz) / 2], atol=1e-12)


def test_outcome_distribution_spin_one_mixed():
    ops = build_spin_operators(2)
    from triplespin.states import QuantumState

    st = QuantumState(np.eye(3) / 3)
    dist = outcome_distribution(st, ops.sz)
    np.testing.assert_allclose(dist.eigenvalues(), [1, 0, -1], atol=1e-12)
    np.testing.assert_allclose(dist.probabilities(), [1 / 3] * 3, atol=1e-12)


def test_outcome_distribution_merges_degenerate_eigenvalues():
    dist = outcome_distribution(density_from_bloch([0.2, 0.1, -0.3]), np.eye(2))
    assert len(dist.entries) == 1
    assert dist.entries[0] == (pytest.approx(1.0), pytest.approx(1.0))


def test_outcome_distribution_mean_matches_expectation():
    for seed in range(25):
        st = random_mixed(3, seed)
        op = np.asarray(build_spin_operators(2).sy)
        dist = outcome_distribution(st, op)
        mean = float(np.dot(dist.eigenvalues(), dist.probabilities()))
        assert abs(mean - expectation(st, op)) <= 1e-10


def test_entropy_deterministic_outcome_is_zero():
    assert shannon_entropy(density_from_bloch([0, 0, 1]), QUBIT.sz) == pytest.approx(0.0, abs=1e-12)


def test_entropy_transverse_axis_is_ln2():
    assert shannon_entropy(density_from_bloch([0, 0, 1]), QUBIT.sx) == pytest.approx(
        np.log(2.0), abs=1e-12
    )


def test_entropy_bits_uniform_binary():
    assert shannon_entropy(density_from_bloch([0, 0, 0]), QUBIT.sz, EntropyBase.BITS) == pytest.approx(
        1.0, abs=1e-12
    )


def test_entropy_within_range():
    ops3 = build_spin_operators(2)
    for seed in range(30):
        st = random_mixed(3, seed)
        for op in ops3.as_tuple():
            h = shannon_entropy(st, op)
            assert -1e-12 <= h <= np.log(3.0) + 1e-12


def test_closed_form_oracle_equivalence():
    """Spectral route vs (r_i/2, (1-r_i^2)/4) closed forms on random qubits."""
    blochs = np.vstack([random_pure_bloch(5000, 21), random_mixed_bloch(5000, 22)])
    for r in blochs[::37]:
        st = density_from_bloch(r)
        for k, op in enumerate(QUBIT.as_tuple()):
            assert abs(expectation(st, op) - r[k] / 2.0) <= 1e-12
            assert abs(variance(st, op) - (1 - r[k] ** 2) / 4.0) <= 1e-12


def test_rotated_observable_std_identity():
    """std_dev(rho, V+ Sz V) equals sqrt(1/4 - <V+ Sz V>^2) for any qubit and V."""
    for seed in range(40):
        v = _random_unitary(2, seed)
        op = v.conj().T @ np.asarray(QUBIT.sz) @ v
        op = (op + op.conj().T) / 2  # scrub fp Hermiticity residue
        st = random_mixed(2, seed + 1000)
        e = expectation(st, op)
        assert abs(std_dev(st, op) - np.sqrt(0.25 - e * e)) <= 1e-12


def test_batch_moments_match_scalar_path():
    ops = build_spin_operators(2)
    rng = stream(99)
    psis = rng.standard_normal((50, 3)) + 1j * rng.standard_normal((50, 3))
    psis /= np.linalg.norm(psis, axis=1, keepdims=True)
    from triplespin.states import from_statevector

    e_batch = batch_expectation(psis, ops.sx)
    v_batch = batch_variance(psis, ops.sx)
    for i in range(0, 50, 7):
        st = from_statevector(psis[i])
        assert abs(e_batch[i] - expectation(st, ops.sx)) <= 1e-12
        assert abs(v_batch[i] - variance(st, ops.sx)) <= 1e-12
