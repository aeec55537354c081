"""Pure states, density matrices, decompositions and SU(2) coherent states.

Amplitudes are always stored in the order ``(a, b, c, d)`` for
``a|00> + b|01> + c|10> + d|11>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidDecomposition, InvalidDensity, SpinTooLarge, ZeroState
from .qlinalg import as_cmatrix, clamp_spectrum, herm_eigensystem, hermiticity_error

ZERO_NORM = 1e-14
RANK_CUTOFF = 1e-12
MAX_TWO_J = 20
_TRIG_SNAP = 1e-15


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PureTwoQubit:
    """A normalized two-qubit pure state.

    ``norm`` is the Euclidean norm of the amplitudes *before* normalization.
    """

    amps: np.ndarray
    norm: float = 1.0

    @property
    def a(self) -> complex:
        return complex(self.amps[0])

    @property
    def b(self) -> complex:
        return complex(self.amps[1])

    @property
    def c(self) -> complex:
        return complex(self.amps[2])

    @property
    def d(self) -> complex:
        return complex(self.amps[3])

    def projector(self) -> np.ndarray:
        return np.outer(self.amps, self.amps.conj())


def make_pure(a, b=None, c=None, d=None) -> PureTwoQubit:
    """Normalize four amplitudes into a :class:`PureTwoQubit`.

    Either pass the four amplitudes separately or a single length-4 sequence.
    """
    if b is None and c is None and d is None:
        vec = np.array(a, dtype=np.complex128).reshape(-1)
    else:
        vec = np.array([a, b, c, d], dtype=np.complex128)
    if vec.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("amplitudes must be finite")
    norm = float(np.linalg.norm(vec))
    if norm < ZERO_NORM:
        raise ZeroState(f"state norm {norm:.3e} is below {ZERO_NORM:g}")
    return PureTwoQubit(_frozen(vec / norm), norm)


def random_pure(rng: np.random.Generator) -> PureTwoQubit:
    """Haar-random pure state from a complex Gaussian vector."""
    return make_pure(rng.normal(size=4) + 1j * rng.normal(size=4))


@dataclass(frozen=True)
class DensityMatrix4:
    m: np.ndarray


def make_density(m, tol: float = 1e-10) -> DensityMatrix4:
    """Validate a 4x4 matrix as a density matrix (Hermitian, trace one, PSD)."""
    try:
        mat = as_cmatrix(m)
    except ValueError as exc:
        raise InvalidDensity(str(exc)) from exc
    if mat.shape != (4, 4):
        raise InvalidDensity(f"expected a 4x4 matrix, got {mat.shape}")
    if hermiticity_error(mat) > tol:
        raise InvalidDensity(f"not Hermitian (error {hermiticity_error(mat):.3e})")
    mat = 0.5 * (mat + mat.conj().T)
    tr = float(np.trace(mat).real)
    if abs(tr - 1.0) > tol:
        raise InvalidDensity(f"trace {tr!r} differs from 1")
    w = herm_eigensystem(mat).eigenvalues
    if w[-1] < -tol:
        raise InvalidDensity(f"negative eigenvalue {w[-1]:.3e}")
    return DensityMatrix4(_frozen(mat))


def pure_density(psi: PureTwoQubit) -> DensityMatrix4:
    return DensityMatrix4(_frozen(psi.projector()))


@dataclass(frozen=True)
class Decomposition:
    weights: np.ndarray
    states: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or len(w) != len(self.states):
            raise InvalidDecomposition("weights and states must have equal length")
        if np.any(w < 0):
            raise InvalidDecomposition("weights must be nonnegative")
        if abs(w.sum() - 1.0) > 1e-12:
            raise InvalidDecomposition(f"weights sum to {w.sum()!r}")
        object.__setattr__(self, "weights", _frozen(w.copy()))
        object.__setattr__(self, "states", tuple(self.states))


def density_from_decomposition(dec: Decomposition) -> DensityMatrix4:
    """Build ``sum_i p_i |psi_i><psi_i|``."""
    if not isinstance(dec, Decomposition):
        raise InvalidDecomposition("expected a Decomposition")
    if not dec.states:
        raise InvalidDecomposition("empty decomposition")
    vecs = np.array([s.amps for s in dec.states])
    m = (vecs.T * dec.weights) @ vecs.conj()
    return DensityMatrix4(_frozen(0.5 * (m + m.conj().T)))


def eigendecompose_density(rho: DensityMatrix4, cutoff: float = RANK_CUTOFF) -> Decomposition:
    """Spectral decomposition with eigenvalues at or below ``cutoff`` dropped."""
    eig = herm_eigensystem(rho.m)
    w = clamp_spectrum(eig.eigenvalues)
    keep = w > cutoff
    weights = w[keep]
    weights = weights / weights.sum()
    states = [PureTwoQubit(_frozen(eig.eigenvectors[:, k].copy())) for k in np.flatnonzero(keep)]
    return Decomposition(weights, tuple(states))


def _cos_sin(theta: float) -> tuple[float, float]:
    # exact zeros at multiples of pi/2 so separability tests see 0, not 6e-17
    c, s = math.cos(theta), math.sin(theta)
    if abs(c) < _TRIG_SNAP:
        c = 0.0
    if abs(s) < _TRIG_SNAP:
        s = 0.0
    return c, s


def su2_coherent_qubit(theta: float, phi: float) -> np.ndarray:
    """Single-qubit coherent state ``cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``."""
    c, s = _cos_sin(theta / 2.0)
    return np.array([c, complex(math.cos(phi), math.sin(phi)) * s], dtype=np.complex128)


@dataclass(frozen=True)
class SpinJCoherent:
    """Spin-j coherent state; ``amplitudes[n]`` multiplies ``|n, j>`` with n = j + m."""

    j: float
    gamma: complex
    amplitudes: np.ndarray


def su2_coherent_spin_j(gamma: complex, j: float) -> SpinJCoherent:
    """Binomial expansion of the SU(2) coherent state ``|gamma, j>``."""
    two_j = 2.0 * j
    if two_j < 0 or abs(two_j - round(two_j)) > 1e-12:
        raise ValueError(f"j={j!r} is not a nonnegative half-integer")
    two_j = int(round(two_j))
    if two_j > MAX_TWO_J:
        raise SpinTooLarge(f"2j={two_j} exceeds {MAX_TWO_J}")
    gamma = complex(gamma)
    n = np.arange(two_j + 1)
    binom = np.array([math.comb(two_j, k) for k in n], dtype=float)
    amps = (1.0 + abs(gamma) ** 2) ** (-two_j / 2.0) * np.sqrt(binom) * gamma ** n
    return SpinJCoherent(two_j / 2.0, gamma, _frozen(amps.astype(np.complex128)))


@dataclass(frozen=True)
class CoherentPairSpec:
    """Parameters of ``cos(theta)|alpha>|beta> + e^{i phi} sin(theta)|alpha'>|beta'>``.

    ``lambda_coef`` and ``gamma_coef`` are the branch weights after the
    single-qubit normalizations are folded in, and ``n_norm`` is the squared
    norm of the resulting unnormalized amplitude vector.  Build instances
    with :meth:`from_params` so the derived fields stay consistent.
    """

    alpha: complex
    beta: complex
    alpha_p: complex
    beta_p: complex
    theta: float
    phi: float
    lambda_coef: complex = field(default=0j)
    gamma_coef: complex = field(default=0j)
    n_norm: float = 0.0

    @classmethod
    def from_params(cls, alpha, beta, alpha_p, beta_p, theta, phi=0.0) -> "CoherentPairSpec":
        alpha, beta, alpha_p, beta_p = map(complex, (alpha, beta, alpha_p, beta_p))
        theta, phi = float(theta), float(phi)
        cos_t, sin_t = _cos_sin(theta)
        lam = cos_t / math.sqrt((1 + abs(alpha) ** 2) * (1 + abs(beta) ** 2))
        gam = (
            complex(math.cos(phi), math.sin(phi))
            * sin_t
            / math.sqrt((1 + abs(alpha_p) ** 2) * (1 + abs(beta_p) ** 2))
        )
        raw = _raw_amplitudes(alpha, beta, alpha_p, beta_p, complex(lam), gam)
        n_norm = float(np.sum(np.abs(raw) ** 2))
        return cls(alpha, beta, alpha_p, beta_p, theta, phi, complex(lam), gam, n_norm)

    def raw_amplitudes(self) -> np.ndarray:
        return _raw_amplitudes(
            self.alpha, self.beta, self.alpha_p, self.beta_p, self.lambda_coef, self.gamma_coef
        )


def _raw_amplitudes(alpha, beta, alpha_p, beta_p, lam, gam) -> np.ndarray:
    return np.array(
        [
            lam + gam,
            beta * lam + beta_p * gam,
            alpha * lam + alpha_p * gam,
            alpha * beta * lam + alpha_p * beta_p * gam,
        ],
        dtype=np.complex128,
    )


def entangled_coherent_pure(spec: CoherentPairSpec) -> PureTwoQubit:
    """Normalized entangled coherent state for ``spec``.

    Raises :class:`ZeroState` when the two branches cancel.
    """
    if spec.n_norm < ZERO_NORM**2:
        raise ZeroState(f"coherent superposition cancels (N={spec.n_norm:.3e})")
    return make_pure(spec.raw_amplitudes())


def product_state(q1: Sequence[complex], q2: Sequence[complex]) -> PureTwoQubit:
    return make_pure(np.kron(np.asarray(q1, dtype=np.complex128), np.asarray(q2, dtype=np.complex128)))


# JSON schema ---------------------------------------------------------------

class SchemaError(ValueError):
    pass


def _parse_complex(x, what: str) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        z = complex(x[0], x[1])
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise SchemaError(f"{what}: non-finite value")
        return z
    raise SchemaError(f"{what}: expected [re, im], got {x!r}")


def _parse_real(x, what: str) -> float:
    if isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x):
        return float(x)
    raise SchemaError(f"{what}: expected a finite number, got {x!r}")


def coherent_from_json(obj: dict) -> CoherentPairSpec:
    if not isinstance(obj, dict):
        raise SchemaError("coherent: expected an object")
    try:
        return CoherentPairSpec.from_params(
            _parse_complex(obj["alpha"], "alpha"),
            _parse_complex(obj["beta"], "beta"),
            _parse_complex(obj["alpha_p"], "alpha_p"),
            _parse_complex(obj["beta_p"], "beta_p"),
            _parse_real(obj["theta"], "theta"),
            _parse_real(obj.get("phi", 0.0), "phi"),
        )
    except KeyError as exc:
        raise SchemaError(f"coherent: missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class ParsedState:
    """Result of :func:`state_from_json`; exactly one payload is set."""

    kind: str
    pure: Optional[PureTwoQubit] = None
    coherent: Optional[CoherentPairSpec] = None
    mixture: Optional[object] = None
    density: Optional[DensityMatrix4] = None


def _component_from_json(obj) -> tuple[PureTwoQubit, Optional[CoherentPairSpec]]:
    parsed = state_from_json(obj)
    if parsed.kind == "pure":
        return parsed.pure, None
    if parsed.kind == "coherent":
        return entangled_coherent_pure(parsed.coherent), parsed.coherent
    raise SchemaError("mixture components must be 'pure' or 'coherent' states")


def state_from_json(obj) -> ParsedState:
    """Parse one of the four state forms::

        {"pure": {"amps": [[re, im] x 4]}}
        {"coherent": {"alpha": [re, im], "beta": ..., "alpha_p": ..., "beta_p": ...,
                      "theta": r, "phi": r}}
        {"mixture": {"p": [p1, p2, p3], "components": [state, state, state]}}
        {"density": {"rows": [[[re, im] x 4] x 4]}}

    Numbers may stand in for ``[re, 0]``.
    """
    from .rank3 import TripleMixture

    if not isinstance(obj, dict) or len(obj) != 1:
        raise SchemaError("state must be an object with exactly one of pure/coherent/mixture/density")
    (kind, body), = obj.items()
    if not isinstance(body, dict):
        raise SchemaError(f"{kind}: expected an object")
    if kind == "pure":
        amps = body.get("amps")
        if not isinstance(amps, list) or len(amps) != 4:
            raise SchemaError("pure.amps: expected 4 amplitudes")
        return ParsedState("pure", pure=make_pure([_parse_complex(x, "pure.amps") for x in amps]))
    if kind == "coherent":
        return ParsedState("coherent", coherent=coherent_from_json(body))
    if kind == "mixture":
        p = body.get("p")
        comps = body.get("components")
        if not isinstance(p, list) or len(p) != 3:
            raise SchemaError("mixture.p: expected 3 probabilities")
        if not isinstance(comps, list) or len(comps) != 3:
            raise SchemaError("mixture.components: expected 3 states")
        probs = [_parse_real(x, "mixture.p") for x in p]
        parts = [_component_from_json(c) for c in comps]
        specs = tuple(s for _, s in parts)
        try:
            mix = TripleMixture(
                probs, tuple(ps for ps, _ in parts), specs if all(specs) else None
            )
        except InvalidDecomposition as exc:
            raise SchemaError(f"mixture: {exc}") from None
        return ParsedState("mixture", mixture=mix)
    if kind == "density":
        rows = body.get("rows")
        if not isinstance(rows, list) or len(rows) != 4 or any(
            not isinstance(r, list) or len(r) != 4 for r in rows
        ):
            raise SchemaError("density.rows: expected a 4x4 grid")
        m = np.array([[_parse_complex(x, "density.rows") for x in r] for r in rows])
        try:
            return ParsedState("density", density=make_density(m))
        except InvalidDensity as exc:
            raise SchemaError(f"density: {exc}") from None
    raise SchemaError(f"unknown state kind {kind!r}")
