"""
The closed-form rank-3 concurrence and where it breaks
======================================================

For rho = p1|x1><x1| + p2|x2><x2| + p3|x3><x3| the squared concurrence is
written through pairwise complex concurrences of the components.  This
script evaluates it on a few instructive mixtures and compares with the
Wootters value.
"""

import numpy as np

from qconcur import TripleMixture, concurrence_squared_rank3, make_pure, wootters_concurrence
from qconcur.cli import run_compare

bell = make_pure(1, 0, 0, 1)
phi_minus = make_pure(1, 0, 0, -1)
psi_plus = make_pure(0, 1, 1, 0)


def show(name, mix):
    res = concurrence_squared_rank3(mix)
    w = wootters_concurrence(mix.density())[0]
    print(f"{name:28s} C^2={res.c_squared:+.4f}  Wootters C^2={w * w:.4f}  "
          f"bounds=[{res.lower_bound:.4f}, {res.upper_bound:.4f}]  case={res.case_label.value}")


###############################################################################
# At a vertex of the simplex the formula is the pure-state concurrence, and
# identical Bell components give 1.

rng = np.random.default_rng(2)
comps = tuple(make_pure(rng.normal(size=4) + 1j * rng.normal(size=4)) for _ in range(3))
show("vertex p=(1,0,0)", TripleMixture([1, 0, 0], comps))
show("identical Bell states", TripleMixture([0.5, 0.3, 0.2], (bell, bell, bell)))

###############################################################################
# Three orthogonal Bell states in equal proportion: the formula goes
# negative while the state is separable.

show("Phi+, Phi-, Psi+ at 1/3", TripleMixture([1 / 3] * 3, (bell, phi_minus, psi_plus)))

###############################################################################
# Over random orthogonal mixtures the formula stays below the upper bound
# but does not track the Wootters value.

rows, summary = run_compare(200, seed=0, rank=3)
print("upper-bound violations:", summary["upper_bound_violations"])
print("lower-bound violations:", summary["lower_bound_violations"])
print("rank3 - Wootters quantiles:", {k: round(v, 3) for k, v in summary["diff_quantiles"].items()})

###############################################################################
# With p3 = 0 the formula agrees with Wootters only if the pair sums carry a
# prefactor of 1 instead of 4/3.

x, y = comps[0], comps[1]
mix = TripleMixture([0.6, 0.4, 0], (x, y, x))
w2 = wootters_concurrence(mix.density())[0] ** 2
print("rank 2, prefactor 4/3:", concurrence_squared_rank3(mix).c_squared, " Wootters:", w2)
print("rank 2, prefactor 1  :", concurrence_squared_rank3(mix, pair_prefactor=1.0).c_squared)
