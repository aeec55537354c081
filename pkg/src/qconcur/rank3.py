"""Closed-form squared concurrence for mixtures of three pure states.

The formula is built from complex (un-modulused) concurrences.  For a
vector ``x = (a, b, c, d)`` write ``q(x) = ad - bc``; a component's complex
concurrence is ``2 q(x)``.  The quartet states are the four sign patterns
``(x1 + x2 + x3)``, ``(x1 + x2 - x3)``, ``(x1 - x2 + x3)``, ``(x1 - x2 - x3)``
scaled by ``1/sqrt(3)``, and the pairwise quantities ``c_plus``,
``c_minus`` (and the primed variants) are sums of two quartet
concurrences.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidDecomposition, PreconditionFailed, ZeroState
from .measures import amplitude_concurrence, concurrence_pure
from .states import (
    ZERO_NORM,
    CoherentPairSpec,
    Decomposition,
    DensityMatrix4,
    PureTwoQubit,
    density_from_decomposition,
    entangled_coherent_pure,
)

QUARTET_SCALE = 1.0 / math.sqrt(3.0)
# c_plus = PAIR_PREFACTOR * [q(x_i + x_j) + q(x_k)]
PAIR_PREFACTOR = 4.0 / 3.0
ORTHOGONAL_TOL = 1e-10
REAL_TOL = 1e-12
BOUND_TOL = 1e-10
SEPARABLE_TOL = 1e-12

QUARTET_SIGNS = ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1))
PAIRS = ((0, 1), (0, 2), (1, 2))


class CaseLabel(str, enum.Enum):
    UPPER_CASE_B1 = "UPPER_CASE_B1"
    INTERMEDIATE_B2 = "INTERMEDIATE_B2"
    LOWER_B3 = "LOWER_B3"
    LOWER_C = "LOWER_C"
    GENERIC = "GENERIC"


@dataclass(frozen=True)
class TripleMixture:
    """Three normalized pure components with probabilities ``p``."""

    p: np.ndarray
    components: tuple
    coherent_specs: Optional[tuple] = None

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float).reshape(-1)
        if p.shape != (3,) or len(self.components) != 3:
            raise InvalidDecomposition("a triple mixture needs 3 probabilities and 3 components")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
            raise InvalidDecomposition(f"invalid probabilities {p.tolist()}")
        if self.coherent_specs is not None and len(self.coherent_specs) != 3:
            raise InvalidDecomposition("coherent_specs must have 3 entries")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "components", tuple(self.components))
        if self.coherent_specs is not None:
            object.__setattr__(self, "coherent_specs", tuple(self.coherent_specs))

    @classmethod
    def from_coherent(cls, p: Sequence[float], specs: Sequence[CoherentPairSpec]) -> "TripleMixture":
        return cls(p, tuple(entangled_coherent_pure(s) for s in specs), tuple(specs))

    @property
    def vectors(self) -> np.ndarray:
        return np.array([c.amps for c in self.components])

    def decomposition(self) -> Decomposition:
        return Decomposition(self.p, self.components)

    def density(self) -> DensityMatrix4:
        return density_from_decomposition(self.decomposition())

    def is_orthogonal(self, tol: float = ORTHOGONAL_TOL) -> bool:
        v = self.vectors
        g = v.conj() @ v.T
        return bool(np.all(np.abs(g - np.diag(np.diag(g))) <= tol))

    def is_real(self, tol: float = REAL_TOL) -> bool:
        return bool(np.all(np.abs(self.vectors.imag) <= tol))


def _q(x: np.ndarray) -> complex:
    return complex(x[0] * x[3] - x[1] * x[2])


def quartet_states(mix: TripleMixture) -> np.ndarray:
    """Rows are the four unnormalized quartet superpositions."""
    v = mix.vectors
    out = np.array([QUARTET_SCALE * (np.array(s) @ v) for s in QUARTET_SIGNS])
    norms = np.linalg.norm(out, axis=1)
    if np.any(norms < ZERO_NORM):
        raise ZeroState(f"quartet superposition {int(np.argmin(norms)) + 1} cancels")
    return out


@dataclass(frozen=True)
class PairwiseConcurrences:
    c1: complex
    c2: complex
    c3: complex
    c_plus: complex
    c_minus: complex
    c_plus_p: complex
    c_minus_p: complex
    c_plus_pp: complex
    c_minus_pp: complex
    quartet: tuple

    @property
    def singles(self) -> tuple:
        return (self.c1, self.c2, self.c3)

    def pair(self, i: int, j: int) -> tuple[complex, complex]:
        """``(c_plus, c_minus)`` variant for components ``i < j`` (0-based)."""
        return {
            (0, 1): (self.c_plus, self.c_minus),
            (0, 2): (self.c_plus_p, self.c_minus_p),
            (1, 2): (self.c_plus_pp, self.c_minus_pp),
        }[(i, j)]


def pairwise_complex_concurrences(mix: TripleMixture, pair_prefactor: Optional[float] = None) -> PairwiseConcurrences:
    """All nine complex concurrences of a mixture.

    ``pair_prefactor`` overrides the 4/3 in front of the pair sums.  With 1.0
    the difference ``c_plus - c_minus`` equals twice the cross concurrence
    ``2 * 2B(x_i, x_j)``, which is the normalization under which a
    two-component mixture reproduces the Wootters value.
    """
    k_pair = PAIR_PREFACTOR if pair_prefactor is None else pair_prefactor
    v = mix.vectors
    singles = [2.0 * _q(x) for x in v]
    # quartet concurrences from raw sums, so no ZeroState for cancelling patterns
    quartet = tuple(2.0 * QUARTET_SCALE**2 * _q(np.array(s) @ v) for s in QUARTET_SIGNS)
    pairs = []
    for i, j in PAIRS:
        k = 3 - i - j
        pairs.append(k_pair * (_q(v[i] + v[j]) + _q(v[k])))
        pairs.append(k_pair * (_q(v[i] - v[j]) + _q(v[k])))
    return PairwiseConcurrences(*singles, *pairs, quartet)


def pair_term(cp: complex, cm: complex, ci: complex, cj: complex) -> float:
    """``|cp - cm|^2 - |(cp - cm)^2 - 4 ci cj|``, before the ``p_i p_j / 2`` weight."""
    diff = cp - cm
    return abs(diff) ** 2 - abs(diff * diff - 4.0 * ci * cj)


@dataclass(frozen=True)
class Rank3Result:
    c_squared: float
    lower_bound: float
    upper_bound: float
    case_label: CaseLabel
    term_breakdown: tuple
    orthogonal: bool
    negative: bool
    lower_violation: bool
    upper_violation: bool


def _squared_from_pairs(p, singles, pair_values) -> tuple[float, tuple]:
    diag = sum(p[i] ** 2 * abs(singles[i]) ** 2 for i in range(3))
    terms = tuple(
        0.5 * p[i] * p[j] * pair_term(*pair_values[(i, j)], singles[i], singles[j]) for i, j in PAIRS
    )
    return float(diag + sum(terms)), terms


def component_concurrences(mix: TripleMixture) -> np.ndarray:
    """Pure-state concurrences, from the coherent parameters when available."""
    if mix.coherent_specs is not None:
        return np.array([amplitude_concurrence(s) for s in mix.coherent_specs])
    return np.array([concurrence_pure(c) for c in mix.components])


def concurrence_bounds(mix: TripleMixture) -> tuple[float, float]:
    """``((p1 C1 - p2 C2 - p3 C3)^2, (p1 C1 + p2 C2 + p3 C3)^2)``."""
    pc = mix.p * component_concurrences(mix)
    return float((pc[0] - pc[1] - pc[2]) ** 2), float(pc.sum() ** 2)


def classify_real_case(mix: TripleMixture, pc: Optional[PairwiseConcurrences] = None) -> CaseLabel:
    """Sign-pattern classification for mixtures with real amplitudes.

    Checked in the order C, B1, B3, B2; the first matching case wins.
    Complex-valued mixtures are always ``GENERIC``.
    """
    if not mix.is_real():
        return CaseLabel.GENERIC
    pc = pc or pairwise_complex_concurrences(mix)
    s = [z.real for z in pc.singles]
    diffs = {}
    for ij in PAIRS:
        cp, cm = pc.pair(*ij)
        diffs[ij] = (cp - cm).real
    tol = REAL_TOL

    if all(abs(d) <= tol for d in diffs.values()):
        return CaseLabel.LOWER_C
    prods = {(i, j): 4.0 * s[i] * s[j] for i, j in PAIRS}
    if all(-tol <= prods[ij] <= diffs[ij] ** 2 + tol for ij in PAIRS):
        return CaseLabel.UPPER_CASE_B1
    if all(prods[ij] <= tol for ij in PAIRS):
        return CaseLabel.LOWER_B3
    if all(prods[ij] + tol >= diffs[ij] ** 2 for ij in PAIRS):
        return CaseLabel.INTERMEDIATE_B2
    return CaseLabel.GENERIC


def concurrence_squared_rank3(mix: TripleMixture, pair_prefactor: Optional[float] = None) -> Rank3Result:
    """Evaluate the three-component squared-concurrence formula.

    The value is reported as computed, even when negative; ``negative``
    and the bound-violation flags record what happened.
    """
    pc = pairwise_complex_concurrences(mix, pair_prefactor)
    pair_values = {ij: pc.pair(*ij) for ij in PAIRS}
    c2, terms = _squared_from_pairs(mix.p, pc.singles, pair_values)
    lower, upper = concurrence_bounds(mix)
    return Rank3Result(
        c_squared=c2,
        lower_bound=lower,
        upper_bound=upper,
        case_label=classify_real_case(mix, pc),
        term_breakdown=terms,
        orthogonal=mix.is_orthogonal(),
        negative=c2 < -BOUND_TOL,
        lower_violation=c2 < lower - BOUND_TOL,
        upper_violation=c2 > upper + BOUND_TOL,
    )


def concurrence_squared_quartet_form(mix: TripleMixture) -> float:
    """Same quantity written directly in the four quartet concurrences.

    Each pair uses one signed combination of the quartet, e.g.
    ``C^1 + C^2 - C^3 - C^4`` for components 1 and 2.  Used as a
    cross-check of the pairwise form.
    """
    pc = pairwise_complex_concurrences(mix)
    q1, q2, q3, q4 = pc.quartet
    s = pc.singles
    combos = {(0, 1): q1 + q2 - q3 - q4, (0, 2): q1 + q3 - q2 - q4, (1, 2): q1 + q4 - q2 - q3}
    value = sum(mix.p[i] ** 2 * abs(s[i]) ** 2 for i in range(3))
    for (i, j), d in combos.items():
        value += 0.5 * mix.p[i] * mix.p[j] * (abs(d) ** 2 - abs(d * d - 4.0 * s[i] * s[j]))
    return float(value)


def symmetric_x(alpha: float, alpha_p: float) -> float:
    """``((alpha alpha' + 1) / (alpha - alpha'))^2``; ``inf`` when ``alpha == alpha'``."""
    if alpha == alpha_p:
        return math.inf
    return ((alpha * alpha_p + 1.0) / (alpha - alpha_p)) ** 2


def squared_from_x(p: float, x: float) -> float:
    """``(p / (1 + 2X))^2``, zero in the ``X -> inf`` limit."""
    if math.isinf(x):
        return 0.0
    return (p / (1.0 + 2.0 * x)) ** 2


@dataclass(frozen=True)
class SymmetricCaseParams:
    x: float
    p_i: float
    alpha: float
    alpha_p: float

    @classmethod
    def from_alphas(cls, p_i: float, alpha: float, alpha_p: float) -> "SymmetricCaseParams":
        return cls(symmetric_x(alpha, alpha_p), p_i, alpha, alpha_p)


def reduced_symmetric_concurrence(p_i: float, alpha: float, alpha_p: float) -> float:
    """Squared concurrence when one component is the symmetric coherent state.

    That component has ``beta = alpha``, ``beta' = alpha'`` (real), equal
    branch weights (``theta = pi/4``, ``phi = 0``), and the other two
    components are separable.
    """
    return squared_from_x(p_i, symmetric_x(alpha, alpha_p))


def symmetric_coherent_spec(alpha: float, alpha_p: float) -> CoherentPairSpec:
    return CoherentPairSpec.from_params(alpha, alpha, alpha_p, alpha_p, math.pi / 4, 0.0)


def case_d_concurrence(mix: TripleMixture) -> float:
    """``(p_i C_i)^2`` for the single entangled component of a case-D mixture."""
    conc = component_concurrences(mix)
    separable = conc <= SEPARABLE_TOL
    if separable.sum() != 2:
        raise PreconditionFailed(
            f"case D needs exactly two separable components, found {int(separable.sum())}"
        )
    i = int(np.flatnonzero(~separable)[0])
    return float((mix.p[i] * conc[i]) ** 2)
