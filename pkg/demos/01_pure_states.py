"""
Concurrence of pure two-qubit states
====================================

A pure state a|00> + b|01> + c|10> + d|11> has concurrence 2|ad - bc|,
which is also the overlap between the state and its spin-flipped partner.
"""

import numpy as np

from qconcur import concurrence_pure, entanglement_of_formation, make_pure
from qconcur.qlinalg import spin_flip_pure

###############################################################################
# A Bell state is maximally entangled, a product state not at all.

bell = make_pure(1, 0, 0, 1)
print("C(Bell)   =", concurrence_pure(bell))
print("EoF(Bell) =", entanglement_of_formation(concurrence_pure(bell)))
print("C(|00>)   =", concurrence_pure(make_pure(1, 0, 0, 0)))

###############################################################################
# Partially entangled states interpolate between the two.

for t in np.linspace(0, np.pi / 4, 5):
    psi = make_pure(np.cos(t), 0, 0, np.sin(t))
    c = concurrence_pure(psi)
    print(f"t={t:.3f}  C={c:.4f}  EoF={entanglement_of_formation(c):.4f}")

###############################################################################
# The spin flip maps (a, b, c, d) to (-d*, c*, b*, -a*); its overlap with the
# original state is the concurrence.

rng = np.random.default_rng(0)
psi = make_pure(rng.normal(size=4) + 1j * rng.normal(size=4))
overlap = abs(np.vdot(psi.amps, spin_flip_pure(psi).amps))
print("overlap", overlap, "vs 2|ad-bc|", concurrence_pure(psi))
