import numpy as np
import pytest

from qconcur.errors import ConvergenceFailure, NegativeSpectrum, NonHermitianInput
from qconcur.qlinalg import (
    SIGMA_YY,
    herm_eigensystem,
    matrix_sqrt_psd,
    spin_flip_density,
    spin_flip_pure,
)
from qconcur.states import make_pure, random_pure


def random_hermitian(rng, n=4):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def test_diagonal_input():
    eig = herm_eigensystem(np.diag([1.0, 4.0, 3.0, 2.0]))
    np.testing.assert_allclose(eig.eigenvalues, [4, 3, 2, 1], atol=1e-14)
    # columns are standard basis vectors up to phase
    np.testing.assert_allclose(np.abs(eig.eigenvectors), np.eye(4)[:, [1, 2, 3, 0]], atol=1e-14)


def test_identity():
    eig = herm_eigensystem(np.eye(4))
    np.testing.assert_allclose(eig.eigenvalues, np.ones(4), atol=1e-14)
    v = eig.eigenvectors
    np.testing.assert_allclose(v.conj().T @ v, np.eye(4), atol=1e-14)


def test_random_reconstruction_and_trace():
    rng = np.random.default_rng(2024)
    worst_rec = worst_tr = worst_norm = 0.0
    for _ in range(1000):
        m = random_hermitian(rng)
        eig = herm_eigensystem(m)
        assert np.all(np.diff(eig.eigenvalues) <= 0)
        worst_rec = max(worst_rec, np.max(np.abs(eig.reconstruct() - m)))
        worst_tr = max(worst_tr, abs(eig.eigenvalues.sum() - np.trace(m).real))
        worst_norm = max(worst_norm, np.max(np.abs(np.linalg.norm(eig.eigenvectors, axis=0) - 1)))
    assert worst_rec <= 1e-10
    assert worst_tr <= 1e-10
    assert worst_norm <= 1e-12


def test_eigenvalues_match_lapack():
    rng = np.random.default_rng(7)
    for _ in range(200):
        m = random_hermitian(rng)
        np.testing.assert_allclose(herm_eigensystem(m).eigenvalues, np.linalg.eigvalsh(m)[::-1], atol=1e-11)


def test_degenerate_spectrum():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    m = q @ np.diag([2.0, 2.0, -1.0, -1.0]) @ q.conj().T
    eig = herm_eigensystem(m)
    np.testing.assert_allclose(eig.eigenvalues, [2, 2, -1, -1], atol=1e-12)
    assert np.max(np.abs(eig.reconstruct() - m)) <= 1e-12


def test_larger_matrix():
    m = random_hermitian(np.random.default_rng(8), n=8)
    eig = herm_eigensystem(m)
    assert np.max(np.abs(eig.reconstruct() - m)) <= 1e-10


def test_non_hermitian_rejected():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(NonHermitianInput):
        herm_eigensystem(m)


def test_sweep_cap():
    m = random_hermitian(np.random.default_rng(1))
    with pytest.raises(ConvergenceFailure):
        herm_eigensystem(m, max_sweeps=1)


def test_sqrt_examples():
    np.testing.assert_allclose(matrix_sqrt_psd(np.eye(4)), np.eye(4), atol=1e-14)
    np.testing.assert_allclose(matrix_sqrt_psd(np.diag([4.0, 1, 0, 0])), np.diag([2.0, 1, 0, 0]), atol=1e-14)


def test_sqrt_of_projector_is_projector():
    rng = np.random.default_rng(5)
    for _ in range(100):
        v = random_pure(rng).amps
        p = np.outer(v, v.conj())
        s = matrix_sqrt_psd(p)
        assert np.max(np.abs(s - p)) <= 1e-9
        assert np.max(np.abs(s @ s - p)) <= 1e-9


def test_sqrt_random_psd():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(1000):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        m = a @ a.conj().T
        s = matrix_sqrt_psd(m)
        assert np.max(np.abs(s - s.conj().T)) <= 1e-12
        worst = max(worst, np.max(np.abs(s @ s - m)))
    assert worst <= 1e-9


def test_sqrt_clamps_and_rejects():
    s = matrix_sqrt_psd(np.diag([1.0, -1e-11, 0, 0]))
    np.testing.assert_allclose(s, np.diag([1.0, 0, 0, 0]), atol=1e-14)
    with pytest.raises(NegativeSpectrum):
        matrix_sqrt_psd(np.diag([1.0, -1e-6, 0, 0]))


def test_spin_flip_examples():
    np.testing.assert_array_equal(spin_flip_pure(make_pure(1, 0, 0, 0)).amps, [0, 0, 0, -1])
    bell = make_pure(1, 0, 0, 1)
    np.testing.assert_allclose(spin_flip_pure(bell).amps, -bell.amps, atol=1e-15)


def test_spin_flip_matches_matrix_action():
    rng = np.random.default_rng(9)
    for _ in range(100):
        v = random_pure(rng)
        np.testing.assert_allclose(spin_flip_pure(v).amps, SIGMA_YY @ v.amps.conj(), atol=1e-15)


def test_spin_flip_involution_exact():
    rng = np.random.default_rng(10)
    for _ in range(1000):
        v = random_pure(rng)
        flipped = spin_flip_pure(v)
        np.testing.assert_array_equal(spin_flip_pure(flipped).amps, v.amps)
        assert abs(np.linalg.norm(flipped.amps) - 1.0) <= 1e-15


def test_spin_flip_on_raw_array():
    out = spin_flip_pure(np.array([1, 2, 3, 4], dtype=complex))
    np.testing.assert_array_equal(out, [-4, 3, 2, -1])


def test_spin_flip_density_examples():
    np.testing.assert_allclose(spin_flip_density(np.eye(4) / 4), np.eye(4) / 4, atol=1e-15)
    phi = make_pure(1, 0, 0, 1).projector()
    np.testing.assert_allclose(spin_flip_density(phi), phi, atol=1e-15)
    np.testing.assert_allclose(spin_flip_density(np.diag([1.0, 0, 0, 0])), np.diag([0, 0, 0, 1.0]), atol=1e-15)


def test_spin_flip_density_properties():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = a @ a.conj().T
        rho /= np.trace(rho).real
        t = spin_flip_density(rho)
        assert np.max(np.abs(t - t.conj().T)) <= 1e-15
        assert abs(np.trace(t) - 1.0) <= 1e-12
        assert herm_eigensystem(t).eigenvalues[-1] >= -1e-10
