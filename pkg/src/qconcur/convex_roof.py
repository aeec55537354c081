"""Numerical convex-roof concurrence by random-restart local search.

Every pure-state decomposition of ``rho = sum_i nu_i |v_i><v_i|`` (rank r)
with m components comes from an m x r matrix ``u`` with orthonormal
columns: ``|w_j> = sum_i conj(u[j, i]) sqrt(nu_i) |v_i>``.  The average
concurrence of that ensemble is ``sum_j |(conj(u) tau conj(u)^T)_jj|`` with
``tau = W^T (sy x sy) W`` and ``W = V sqrt(nu)``, so the search only needs
``tau`` and never rebuilds states until the end.

Restarts run in lockstep as a batch, but each restart draws from its own
seeded stream, so results match a one-restart-at-a-time run.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NonOrthonormalCoefficients
from .qlinalg import SIGMA_YY, clamp_spectrum, herm_eigensystem
from .states import (
    RANK_CUTOFF,
    Decomposition,
    DensityMatrix4,
    PureTwoQubit,
    _frozen,
    random_pure,
)

STALL_WINDOW = 50
REJECTS_BEFORE_HALVING = 10
MAX_STEP = 1.0


@dataclass(frozen=True)
class RoofConfig:
    ensemble_size: Optional[int] = None  # None -> 2 * rank
    restarts: int = 64
    iterations: int = 500
    step_scale: float = 0.1
    seed: int = 0
    tolerance: float = 1e-4
    pair_move_fraction: float = 0.0  # share of moves that mix only two ensemble members
    step_growth: float = 1.0  # step multiplier after an accepted move

    def __post_init__(self):
        if self.restarts < 1 or self.iterations < 1:
            raise ValueError("restarts and iterations must be >= 1")
        if not 0.0 <= self.pair_move_fraction <= 1.0 or self.step_growth < 1.0:
            raise ValueError("pair_move_fraction must lie in [0, 1] and step_growth be >= 1")

    @classmethod
    def thorough(cls, seed: int = 0) -> "RoofConfig":
        """Slower settings for full-rank states, where dense moves stall early."""
        return cls(restarts=16, iterations=4000, seed=seed, tolerance=1e-7,
                   pair_move_fraction=1.0, step_growth=1.5)
        if self.ensemble_size is not None and self.ensemble_size < 1:
            raise ValueError("ensemble_size must be >= 1")


@dataclass(frozen=True)
class RoofResult:
    c_estimate: float
    best_decomposition: Decomposition
    iterations_used: int
    converged: bool


def _spectral_factor(rho) -> tuple[np.ndarray, np.ndarray]:
    """``(nu, V)`` restricted to eigenvalues above the rank cutoff."""
    m = getattr(rho, "m", rho)
    eig = herm_eigensystem(m)
    nu = clamp_spectrum(eig.eigenvalues)
    keep = nu > RANK_CUTOFF
    return nu[keep], eig.eigenvectors[:, keep]


def _check_coefficients(u: np.ndarray, r: int) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[1] != r or u.shape[0] < r:
        raise NonOrthonormalCoefficients(f"expected an m x {r} matrix with m >= {r}, got {u.shape}")
    err = np.max(np.abs(u.conj().T @ u - np.eye(r)))
    if err > 1e-10:
        raise NonOrthonormalCoefficients(f"columns are not orthonormal (error {err:.3e})")
    return u


def decomposition_from_unitary(rho: DensityMatrix4, u) -> Decomposition:
    """Pure-state ensemble of ``rho`` selected by the coefficient matrix ``u``.

    Components with zero weight are dropped.
    """
    nu, v = _spectral_factor(rho)
    u = _check_coefficients(u, len(nu))
    w = v * np.sqrt(nu)
    vecs = u.conj() @ w.T
    weights = np.sum(np.abs(vecs) ** 2, axis=1)
    keep = weights > 1e-15
    weights = weights[keep]
    states = tuple(
        PureTwoQubit(_frozen(vec / np.sqrt(wt)), float(np.sqrt(wt)))
        for vec, wt in zip(vecs[keep], weights)
    )
    return Decomposition(weights / weights.sum(), states)


def _average_concurrence(ub: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """Ensemble-averaged concurrence for a batch ``ub`` of shape (k, m, r)."""
    uc = ub.conj()
    return np.abs(np.einsum("kji,il,kjl->kj", uc, tau, uc)).sum(axis=1)


def _orthonormalize(ub: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(ub)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phase = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return q * phase[:, None, :]


def convex_roof_concurrence(rho: DensityMatrix4, cfg: RoofConfig = RoofConfig()) -> RoofResult:
    """Upper estimate of the convex-roof concurrence, minimized over ensembles.

    Each restart perturbs ``u`` by ``step * A u`` with a random
    anti-Hermitian ``A``, re-orthonormalizes, and keeps the move only if the
    average concurrence drops.  ``A`` is either dense or supported on a
    random pair of ensemble members; pair moves leave the other members
    alone, which lets the search settle members on the kinks of ``|.|``
    one at a time.  An accepted move grows the step by ``cfg.step_growth``
    and 10 consecutive rejections halve it; a restart stops once its value
    improved by less than ``cfg.tolerance`` over the last 50 iterations.
    """
    nu, v = _spectral_factor(rho)
    r = len(nu)
    m = cfg.ensemble_size or 2 * r
    if m < r:
        raise ValueError(f"ensemble_size {m} is below the rank {r}")
    w = v * np.sqrt(nu)
    tau = w.T @ SIGMA_YY @ w

    k = cfg.restarts
    rngs = [np.random.default_rng(s) for s in np.random.SeedSequence(cfg.seed).spawn(k)]

    def gaussian(rng, shape):
        return rng.normal(size=shape) + 1j * rng.normal(size=shape)

    def generator(rng):
        if m > 1 and cfg.pair_move_fraction > 0 and rng.uniform() < cfg.pair_move_fraction:
            j, l = rng.choice(m, size=2, replace=False)
            g = np.zeros((m, m), dtype=np.complex128)
            g[np.ix_([j, l], [j, l])] = gaussian(rng, (2, 2))
            return g
        return gaussian(rng, (m, m))

    u = _orthonormalize(np.array([gaussian(g, (m, r)) for g in rngs]))
    value = _average_concurrence(u, tau)
    step = np.full(k, cfg.step_scale)
    rejects = np.zeros(k, dtype=int)
    active = np.ones(k, dtype=bool)
    converged = np.zeros(k, dtype=bool)
    history = [value.copy()]
    used = np.zeros(k, dtype=int)

    for it in range(cfg.iterations):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        g = np.array([generator(rngs[i]) for i in idx])
        gen = 0.5 * (g - np.conj(np.swapaxes(g, 1, 2)))
        trial = _orthonormalize(u[idx] + step[idx, None, None] * (gen @ u[idx]))
        tval = _average_concurrence(trial, tau)
        better = tval < value[idx]
        acc = idx[better]
        u[acc] = trial[better]
        value[acc] = tval[better]
        rejects[acc] = 0
        step[acc] = np.minimum(step[acc] * cfg.step_growth, MAX_STEP)
        rej = idx[~better]
        rejects[rej] += 1
        halve = rej[rejects[rej] >= REJECTS_BEFORE_HALVING]
        step[halve] *= 0.5
        rejects[halve] = 0
        used[idx] += 1
        history.append(value.copy())
        if it + 1 >= STALL_WINDOW:
            past = history[-1 - STALL_WINDOW]
            stalled = idx[(past[idx] - value[idx]) < cfg.tolerance]
            converged[stalled] = True
            active[stalled] = False
        active &= value > 1e-14

    best = int(np.argmin(value))  # argmin returns the lowest index on ties
    dec = decomposition_from_unitary(rho, u[best])
    return RoofResult(float(value[best]), dec, int(used.sum()), bool(converged[best] or value[best] <= 1e-14))


def random_density(rank: int, seed: int) -> DensityMatrix4:
    """Mixture of ``rank`` Haar-random pure states with flat-Dirichlet weights."""
    if rank not in (1, 2, 3, 4):
        raise ValueError(f"rank must be 1..4, got {rank}")
    rng = np.random.default_rng(seed)
    while True:
        vecs = np.array([random_pure(rng).amps for _ in range(rank)])
        weights = rng.dirichlet(np.ones(rank))
        m = (vecs.T * weights) @ vecs.conj()
        m = 0.5 * (m + m.conj().T)
        w = herm_eigensystem(m).eigenvalues
        if np.sum(w > 1e-6) == rank:
            return DensityMatrix4(_frozen(m))
