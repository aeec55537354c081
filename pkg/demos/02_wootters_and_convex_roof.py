"""
Mixed states: Wootters formula against a numerical convex roof
==============================================================

The concurrence of a mixed state is the smallest average concurrence over
all pure-state ensembles that realize it.  For two qubits the Wootters
formula gives that minimum in closed form; the random-restart search below
approaches it from above.
"""

import numpy as np

from qconcur import RoofConfig, convex_roof_concurrence, make_pure, random_density, wootters_concurrence

phi = make_pure(1, 0, 0, 1).projector()

###############################################################################
# Werner states p|Phi+><Phi+| + (1-p) I/4 have C = max(0, (3p-1)/2).  They
# are full rank, so the slower ``thorough`` settings are used.

for p in (0.2, 1 / 3, 0.5, 0.9):
    rho = p * phi + (1 - p) * np.eye(4) / 4
    w, spectrum = wootters_concurrence(rho)
    roof = convex_roof_concurrence(rho, RoofConfig.thorough()).c_estimate
    print(f"p={p:.3f}  closed form={max(0, (3 * p - 1) / 2):.4f}  Wootters={w:.4f}  roof={roof:.4f}")

###############################################################################
# Random rank-2 and rank-3 states with the default search settings.

gaps = []
for k in range(20):
    rho = random_density(2 + k % 2, k)
    res = convex_roof_concurrence(rho, RoofConfig(seed=k))
    gaps.append(res.c_estimate - wootters_concurrence(rho)[0])
print("roof - Wootters: min %.2e  max %.2e" % (min(gaps), max(gaps)))

###############################################################################
# The best ensemble found is returned and rebuilds the density matrix.

res = convex_roof_concurrence(random_density(2, 3), RoofConfig(seed=1))
dec = res.best_decomposition
print(len(dec.states), "components, weights", np.round(dec.weights, 3))
