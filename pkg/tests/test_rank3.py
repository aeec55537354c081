import math

import numpy as np
import pytest

from qconcur.errors import PreconditionFailed, ZeroState
from qconcur.measures import concurrence_pure, wootters_concurrence
from qconcur.rank3 import (
    CaseLabel,
    TripleMixture,
    case_d_concurrence,
    classify_real_case,
    concurrence_bounds,
    concurrence_squared_quartet_form,
    concurrence_squared_rank3,
    pairwise_complex_concurrences,
    quartet_states,
    reduced_symmetric_concurrence,
    symmetric_coherent_spec,
    symmetric_x,
)
from qconcur.states import CoherentPairSpec, make_pure, random_pure

BELL = make_pure(1, 0, 0, 1)
PHI_MINUS = make_pure(1, 0, 0, -1)
PSI_PLUS = make_pure(0, 1, 1, 0)
E = [make_pure(np.eye(4)[k]) for k in range(4)]


def random_mix(rng, p=None):
    p = rng.dirichlet(np.ones(3)) if p is None else p
    return TripleMixture(p, tuple(random_pure(rng) for _ in range(3)))


def two_state_reference(p1, p2, x, y):
    """Two-component squared concurrence, written out without any index-3 terms."""
    c1 = 2 * (x[0] * x[3] - x[1] * x[2])
    c2 = 2 * (y[0] * y[3] - y[1] * y[2])
    d = (8 / 3) * (x[0] * y[3] + x[3] * y[0] - x[1] * y[2] - x[2] * y[1])
    return p1**2 * abs(c1) ** 2 + p2**2 * abs(c2) ** 2 + 0.5 * p1 * p2 * (abs(d) ** 2 - abs(d * d - 4 * c1 * c2))


def test_quartet_states_examples():
    mix = TripleMixture([1 / 3] * 3, (E[0], E[1], E[2]))
    q = quartet_states(mix)
    np.testing.assert_allclose(q[0], np.array([1, 1, 1, 0]) / math.sqrt(3), atol=1e-16)
    np.testing.assert_allclose(np.linalg.norm(q, axis=1), np.ones(4), atol=1e-15)

    psi = random_pure(np.random.default_rng(1))
    q = quartet_states(TripleMixture([0.2, 0.3, 0.5], (psi, psi, psi)))
    np.testing.assert_allclose(q[0], math.sqrt(3) * psi.amps, atol=1e-15)
    np.testing.assert_allclose(q[3], -psi.amps / math.sqrt(3), atol=1e-15)


def test_quartet_cancellation():
    x = random_pure(np.random.default_rng(2))
    w = complex(math.cos(math.pi / 3), math.sin(math.pi / 3))
    # x - w x - conj(w) x = 0
    mix = TripleMixture([1 / 3] * 3, (x, make_pure(w * x.amps), make_pure(w.conjugate() * x.amps)))
    with pytest.raises(ZeroState):
        quartet_states(mix)
    # the formula itself does not need normalized quartet states
    assert math.isfinite(concurrence_squared_rank3(mix).c_squared)


def test_identical_bell_pair_values():
    mix = TripleMixture([0.5, 0.3, 0.2], (BELL, BELL, BELL))
    pc = pairwise_complex_concurrences(mix)
    for cp, cm in ((pc.c_plus, pc.c_minus), (pc.c_plus_p, pc.c_minus_p), (pc.c_plus_pp, pc.c_minus_pp)):
        assert abs(cp - 10 / 3) <= 1e-12
        assert abs(cm - 2 / 3) <= 1e-12
    assert abs(concurrence_squared_rank3(mix).c_squared - 1) <= 1e-12


@pytest.mark.parametrize("p", [[1 / 3] * 3, [0.5, 0.25, 0.25], [0.9, 0.1, 0.0], [0.2, 0.3, 0.5]])
def test_identical_bell_any_weights(p):
    res = concurrence_squared_rank3(TripleMixture(p, (BELL, BELL, BELL)))
    assert abs(res.c_squared - 1) <= 1e-12
    assert res.case_label is CaseLabel.UPPER_CASE_B1
    assert abs(res.c_squared - res.upper_bound) <= 1e-10


def test_separable_basis_pair_values():
    # only q(x_i +- x_j) for |01>, |10> is nonzero: q(|01> +- |10>) = -+1
    mix = TripleMixture([1 / 3] * 3, (E[0], E[1], E[2]))
    pc = pairwise_complex_concurrences(mix)
    for z in (pc.c1, pc.c2, pc.c3, pc.c_plus, pc.c_minus, pc.c_plus_p, pc.c_minus_p):
        assert z == 0
    assert abs(pc.c_plus_pp - (-4 / 3)) <= 1e-15
    assert abs(pc.c_minus_pp - 4 / 3) <= 1e-15
    res = concurrence_squared_rank3(mix)
    assert res.c_squared == 0
    assert concurrence_bounds(mix) == (0.0, 0.0)
    assert res.case_label is CaseLabel.UPPER_CASE_B1


def test_vertex_reduction():
    rng = np.random.default_rng(51)
    worst = 0.0
    for _ in range(300):
        comps = tuple(random_pure(rng) for _ in range(3))
        for k in range(3):
            p = np.zeros(3)
            p[k] = 1
            mix = TripleMixture(p, comps)
            worst = max(worst, abs(concurrence_squared_rank3(mix).c_squared - concurrence_pure(comps[k]) ** 2))
            lo, up = concurrence_bounds(mix)
            assert abs(lo - up) <= 1e-15
    assert worst <= 1e-12


def test_two_component_reduction():
    rng = np.random.default_rng(52)
    for _ in range(500):
        x, y, z = (random_pure(rng) for _ in range(3))
        p1 = rng.uniform()
        mix = TripleMixture([p1, 1 - p1, 0], (x, y, z))
        ref = two_state_reference(p1, 1 - p1, x.amps, y.amps)
        assert abs(concurrence_squared_rank3(mix).c_squared - ref) <= 1e-12


def test_two_component_prefactor_one_reproduces_wootters():
    # with 4/3 in front of the pair sums the two-state value is not the
    # Wootters concurrence; with 1 it is (orthogonal or not)
    rng = np.random.default_rng(53)
    gap_default = gap_unit = 0.0
    for _ in range(200):
        x, y = random_pure(rng), random_pure(rng)
        p1 = rng.uniform()
        mix = TripleMixture([p1, 1 - p1, 0], (x, y, x))
        w2 = wootters_concurrence(mix.density())[0] ** 2
        gap_default = max(gap_default, abs(concurrence_squared_rank3(mix).c_squared - w2))
        gap_unit = max(gap_unit, abs(concurrence_squared_rank3(mix, pair_prefactor=1.0).c_squared - w2))
    assert gap_unit <= 1e-10
    assert gap_default > 1e-2


def test_pairwise_identities():
    rng = np.random.default_rng(54)
    for _ in range(1000):
        pc = pairwise_complex_concurrences(random_mix(rng))
        q1, q2, q3, q4 = pc.quartet
        assert abs(pc.c_plus - (q1 + q2)) <= 1e-12
        assert abs(pc.c_minus - (q3 + q4)) <= 1e-12
        assert abs(pc.c_plus_p - (q1 + q3)) <= 1e-12
        assert abs(pc.c_minus_p - (q2 + q4)) <= 1e-12
        assert abs(pc.c_plus_pp - (q1 + q4)) <= 1e-12
        assert abs(pc.c_minus_pp - (q2 + q3)) <= 1e-12


def test_quartet_form_agrees():
    rng = np.random.default_rng(55)
    for _ in range(500):
        mix = random_mix(rng)
        assert abs(concurrence_squared_quartet_form(mix) - concurrence_squared_rank3(mix).c_squared) <= 1e-12


def test_upper_bound_never_violated():
    rng = np.random.default_rng(56)
    for _ in range(3000):
        res = concurrence_squared_rank3(random_mix(rng))
        assert res.c_squared <= res.upper_bound + 1e-10
        assert not res.upper_violation


def test_bounds_examples():
    mix = TripleMixture([0.5, 0.25, 0.25], (BELL, BELL, BELL))
    lo, up = concurrence_bounds(mix)
    assert abs(lo) <= 1e-15 and abs(up - 1) <= 1e-15
    assert concurrence_bounds(TripleMixture([0.2, 0.3, 0.5], (E[0], E[1], E[3]))) == (0.0, 0.0)


def test_lower_b3_example():
    mix = TripleMixture([0.5, 0.3, 0.2], (BELL, PSI_PLUS, E[0]))
    pc = pairwise_complex_concurrences(mix)
    assert pc.c1.real > 0 and pc.c2.real < 0 and pc.c3 == 0
    res = concurrence_squared_rank3(mix)
    assert res.case_label is CaseLabel.LOWER_B3
    assert abs(res.c_squared - res.lower_bound) <= 1e-10
    assert abs(res.c_squared - 0.04) <= 1e-12


def test_lower_b3_with_separable_first_component_misses_bound():
    # formula gives (p2 C2 - p3 C3)^2, the printed lower bound is (p2 C2 + p3 C3)^2
    mix = TripleMixture([0.5, 0.3, 0.2], (E[0], BELL, PSI_PLUS))
    res = concurrence_squared_rank3(mix)
    assert res.case_label is CaseLabel.LOWER_B3
    assert abs(res.c_squared - 0.01) <= 1e-12
    assert abs(res.lower_bound - 0.25) <= 1e-12
    assert res.lower_violation


def test_three_bell_states_go_negative():
    mix = TripleMixture([1 / 3] * 3, (BELL, PHI_MINUS, PSI_PLUS))
    res = concurrence_squared_rank3(mix)
    assert res.case_label is CaseLabel.LOWER_C
    assert abs(res.c_squared + 1 / 3) <= 1e-12
    assert res.negative and res.lower_violation and not res.upper_violation
    assert res.orthogonal
    assert wootters_concurrence(mix.density())[0] == 0.0


def test_complex_mixture_is_generic():
    mix = TripleMixture([0.5, 0.3, 0.2], (make_pure(1, 0, 0, 1j), BELL, E[0]))
    assert classify_real_case(mix) is CaseLabel.GENERIC


def test_flags_recorded_not_clamped():
    rng = np.random.default_rng(57)
    seen_negative = False
    for _ in range(300):
        res = concurrence_squared_rank3(random_mix(rng))
        assert res.negative == (res.c_squared < -1e-10)
        assert res.lower_violation == (res.c_squared < res.lower_bound - 1e-10)
        seen_negative |= res.negative
    assert seen_negative


def test_orthogonal_flag():
    assert TripleMixture([1 / 3] * 3, (E[0], E[1], E[2])).is_orthogonal()
    assert not TripleMixture([1 / 3] * 3, (E[0], BELL, E[2])).is_orthogonal()


def test_case_d_examples():
    sep = (E[0], make_pure(1, 1, 0, 0))
    assert abs(case_d_concurrence(TripleMixture([0.7, 0.2, 0.1], (BELL,) + sep)) - 0.49) <= 1e-12
    half = make_pure(math.sqrt((1 + math.sqrt(0.75)) / 2), 0, 0, math.sqrt((1 - math.sqrt(0.75)) / 2))
    assert abs(concurrence_pure(half) - 0.5) <= 1e-12
    assert abs(case_d_concurrence(TripleMixture([0.3, 0.4, 0.3], (sep[0], half, sep[1]))) - 0.04) <= 1e-12
    with pytest.raises(PreconditionFailed):
        case_d_concurrence(TripleMixture([1 / 3] * 3, (E[0], E[1], E[2])))
    with pytest.raises(PreconditionFailed):
        case_d_concurrence(TripleMixture([1 / 3] * 3, (BELL, BELL, E[2])))


def test_case_d_matches_full_formula():
    rng = np.random.default_rng(58)
    for _ in range(200):
        comps = [random_pure(rng)] + [make_pure(np.kron(rng.normal(size=2) + 1j * rng.normal(size=2),
                                                        rng.normal(size=2) + 1j * rng.normal(size=2)))
                                      for _ in range(2)]
        order = rng.permutation(3)
        mix = TripleMixture(rng.dirichlet(np.ones(3)), tuple(comps[k] for k in order))
        assert abs(case_d_concurrence(mix) - concurrence_squared_rank3(mix).c_squared) <= 1e-10


def test_reduced_symmetric_examples():
    assert symmetric_x(1.0, -1.0) == 0
    assert reduced_symmetric_concurrence(0.7, 1.0, -1.0) == 0.7**2
    assert reduced_symmetric_concurrence(0.7, 2.0, 2.0) == 0.0
    assert abs(reduced_symmetric_concurrence(1 / 3, 1.0, -1.0) - 1 / 9) <= 1e-15
    assert abs(reduced_symmetric_concurrence(1 / 3, 1.0, -1.0) - 0.111) <= 1e-3


def test_reduced_symmetric_matches_amplitude_form():
    rng = np.random.default_rng(59)
    for _ in range(200):
        a, ap = rng.uniform(-5, 5, size=2)
        spec = symmetric_coherent_spec(a, ap)
        p = rng.dirichlet(np.ones(3))
        seps = [CoherentPairSpec.from_params(b, rng.normal(), b, rng.normal(), rng.uniform(0, 3))
                for b in rng.normal(size=2)]
        mix = TripleMixture.from_coherent(p, [spec] + seps)
        full = concurrence_squared_rank3(mix).c_squared
        assert abs(full - reduced_symmetric_concurrence(p[0], a, ap)) <= 1e-10
        assert abs(case_d_concurrence(mix) - full) <= 1e-10


def test_symmetric_family_hits_bell_at_x_zero():
    psi = symmetric_coherent_spec(1.0, -1.0)
    from qconcur.measures import amplitude_concurrence
    assert abs(amplitude_concurrence(psi) - 1) <= 1e-12
