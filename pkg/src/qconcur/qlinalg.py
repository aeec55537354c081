"""Small dense complex linear algebra for two-qubit work.

Everything here operates on numpy ``complex128`` arrays.  Matrices are
indexed over the computational basis ``|00>, |01>, |10>, |11>`` in that
order.  The Hermitian eigensolver is a cyclic complex Jacobi method; it is
written for the 4x4 case but accepts any small square matrix, which the
Wootters spectrum uses for its 2r x 2r Hermitian dilation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConvergenceFailure, NegativeSpectrum, NonHermitianInput

HERMITIAN_TOL = 1e-9
CLAMP_TOL = 1e-10
NEGATIVE_TOL = 1e-8
MAX_SWEEPS = 200

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class HermEigenSystem:
    """Eigenvalues in descending order; ``eigenvectors[:, k]`` pairs with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_cmatrix(m) -> np.ndarray:
    out = np.array(m, dtype=np.complex128)
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix has non-finite entries")
    return out


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def herm_eigensystem(m, max_sweeps: int = MAX_SWEEPS, tol: float = HERMITIAN_TOL) -> HermEigenSystem:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the real symmetric Schur rotation, so ``a[p, q]`` becomes exactly
    zero.  Sweeps stop once the off-diagonal mass is below machine precision
    relative to the Frobenius norm.

    Raises
    ------
    NonHermitianInput
        If ``max|M - M^H| > tol``.
    ConvergenceFailure
        If ``max_sweeps`` sweeps do not converge.
    """
    a = as_cmatrix(m)
    if hermiticity_error(a) > tol:
        raise NonHermitianInput(f"matrix is not Hermitian (error {hermiticity_error(a):.3e})")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return HermEigenSystem(np.zeros(n), v)

    threshold = np.finfo(float).eps * scale
    negligible = 1e-3 * threshold / n
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                r = abs(apq)
                if r <= negligible:
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / r
                app = float(a[p, p].real)
                aqq = float(a[q, q].real)
                tau = (aqq - app) / (2.0 * r)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # 2x2 block of the unitary: [[c, s], [-s*conj(phase), c*conj(phase)]]
                sp = s * phase.conjugate()
                cp = c * phase.conjugate()
                for mat in (a, v):
                    colp = mat[:, p].copy()
                    colq = mat[:, q]
                    mat[:, p] = c * colp - sp * colq
                    mat[:, q] = s * colp + cp * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - sp.conjugate() * rowq
                a[q, :] = s * rowp + cp.conjugate() * rowq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        if _offdiag_norm(a) > threshold:
            raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(a).real.copy()
    order = np.argsort(-w, kind="stable")
    return HermEigenSystem(w[order], v[:, order])


def clamp_spectrum(w: np.ndarray) -> np.ndarray:
    """Zero out round-off negatives; raise on genuinely negative eigenvalues."""
    if np.any(w < -NEGATIVE_TOL):
        raise NegativeSpectrum(f"eigenvalue {w.min():.3e} below -{NEGATIVE_TOL:g}")
    return np.where(w < 0.0, 0.0, w)


def matrix_sqrt_psd(m) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix."""
    eig = herm_eigensystem(m)
    w = clamp_spectrum(eig.eigenvalues)
    # round-off sized eigenvalues would contribute sqrt(eps) noise
    w = np.where(w <= len(w) * np.finfo(float).eps * max(w.max(), 0.0), 0.0, w)
    v = eig.eigenvectors
    s = (v * np.sqrt(w)) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def spin_flip_pure(psi):
    """Return ``(sigma_y x sigma_y) psi*``.

    Accepts a length-4 amplitude vector or any object with an ``amps`` field
    (e.g. :class:`qconcur.states.PureTwoQubit`); the result has the same kind.
    """
    amps = getattr(psi, "amps", None)
    vec = np.asarray(psi if amps is None else amps, dtype=np.complex128)
    flipped = SIGMA_YY @ vec.conj()
    if amps is None:
        return flipped
    flipped.setflags(write=False)
    return replace(psi, amps=flipped)


def spin_flip_density(rho) -> np.ndarray:
    """Return ``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)``."""
    m = getattr(rho, "m", rho)
    m = as_cmatrix(m)
    return SIGMA_YY @ m.conj() @ SIGMA_YY
