"""Concurrence and entanglement of formation for two-qubit states."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantViolation, ZeroState
from .qlinalg import SIGMA_YY, clamp_spectrum, herm_eigensystem, matrix_sqrt_psd, spin_flip_density
from .states import RANK_CUTOFF, ZERO_NORM, CoherentPairSpec, DensityMatrix4, PureTwoQubit

CLIP_SLACK = 1e-9
DOMAIN_SLACK = 1e-12


def _clip_unit(value: float, what: str) -> float:
    if value < -CLIP_SLACK or value > 1.0 + CLIP_SLACK:
        raise InvariantViolation(f"{what}={value!r} outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def complex_concurrence_pure(psi: PureTwoQubit) -> complex:
    """``2(ad - bc)``; its modulus is the concurrence."""
    a, b, c, d = psi.amps
    return complex(2.0 * (a * d - b * c))


def concurrence_pure(psi: PureTwoQubit) -> float:
    return _clip_unit(abs(complex_concurrence_pure(psi)), "concurrence")


def binary_entropy(x: float) -> float:
    if x < -DOMAIN_SLACK or x > 1.0 + DOMAIN_SLACK:
        raise DomainError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entanglement_of_formation(c: float) -> float:
    """Entanglement of formation as a function of concurrence."""
    if c < -DOMAIN_SLACK or c > 1.0 + DOMAIN_SLACK:
        raise DomainError(f"concurrence {c!r} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + math.sqrt(max(1.0 - c * c, 0.0))))


@dataclass(frozen=True)
class MeasureValue:
    concurrence: float
    eof: float


def pure_measures(psi: PureTwoQubit) -> MeasureValue:
    c = concurrence_pure(psi)
    return MeasureValue(c, entanglement_of_formation(c))


@dataclass(frozen=True)
class WoottersSpectrum:
    """Square roots of the eigenvalues of ``rho rho~``, descending, padded to four."""

    lambdas: np.ndarray

    @property
    def concurrence(self) -> float:
        l1, l2, l3, l4 = self.lambdas
        return max(l1 - l2 - l3 - l4, 0.0)


def wootters_spectrum(rho: DensityMatrix4, cutoff: float = RANK_CUTOFF) -> WoottersSpectrum:
    """Wootters spectrum from the factored form ``rho = W W^H``.

    With ``W = V sqrt(nu)`` over the eigenpairs of ``rho`` above ``cutoff``,
    the spectrum is the set of singular values of the complex symmetric
    matrix ``tau = W^T (sy x sy) W``.  They are read off the Hermitian
    dilation ``[[0, tau], [tau^H, 0]]``, whose eigenvalues are ``+-sigma``,
    which avoids square roots of round-off sized eigenvalues.
    """
    m = getattr(rho, "m", rho)
    eig = herm_eigensystem(m)
    nu = clamp_spectrum(eig.eigenvalues)
    keep = nu > cutoff
    lambdas = np.zeros(4)
    r = int(keep.sum())
    if r:
        w = eig.eigenvectors[:, keep] * np.sqrt(nu[keep])
        tau = w.T @ SIGMA_YY @ w
        dil = np.zeros((2 * r, 2 * r), dtype=np.complex128)
        dil[:r, r:] = tau
        dil[r:, :r] = tau.conj().T
        sig = herm_eigensystem(dil).eigenvalues[:r]
        lambdas[:r] = np.where(sig < 0.0, 0.0, sig)
    lambdas.setflags(write=False)
    return WoottersSpectrum(lambdas)


def wootters_spectrum_sqrt_route(rho: DensityMatrix4) -> WoottersSpectrum:
    """Same spectrum via the eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``.

    Kept as an independent cross-check; loses accuracy (about ``sqrt(eps)``)
    on the small entries of the spectrum.
    """
    m = getattr(rho, "m", rho)
    s = matrix_sqrt_psd(m)
    r = s @ spin_flip_density(m) @ s
    w = clamp_spectrum(herm_eigensystem(0.5 * (r + r.conj().T)).eigenvalues)
    lambdas = np.sqrt(w)
    lambdas.setflags(write=False)
    return WoottersSpectrum(lambdas)


def wootters_concurrence(rho: DensityMatrix4) -> tuple[float, WoottersSpectrum]:
    spec = wootters_spectrum(rho)
    return _clip_unit(spec.concurrence, "Wootters concurrence"), spec


def amplitude_concurrence(spec: CoherentPairSpec) -> float:
    """Concurrence of the entangled coherent state straight from its parameters."""
    if spec.n_norm < ZERO_NORM**2:
        raise ZeroState(f"coherent superposition cancels (N={spec.n_norm:.3e})")
    value = abs(
        2.0
        * spec.lambda_coef
        * spec.gamma_coef
        / spec.n_norm
        * (spec.alpha - spec.alpha_p)
        * (spec.beta - spec.beta_p)
    )
    return _clip_unit(value, "amplitude concurrence")
