"""
Symmetric coherent-state family
===============================

One component is the symmetric entangled coherent state with beta = alpha,
beta' = alpha' real and equal branch weights; the other two are separable.
Then C^2 = (p / (1 + 2X))^2 with X = ((alpha alpha' + 1) / (alpha - alpha'))^2.
"""

import numpy as np

from qconcur.cli import SweepSpec, sweep_rows

###############################################################################
# Sweep alpha and alpha' over [-5, 5] at p = 1/3.  The maximum 1/9 sits on
# the curve alpha alpha' = -1, where the component is a Bell state.

header, rows = sweep_rows(SweepSpec("alpha", p=1 / 3, var_range=(-5.0, 5.0, 101)))
c2 = np.array([r[3] for r in rows]).reshape(101, 101)
i, j = np.unravel_index(np.argmax(c2), c2.shape)
print("max C^2 = %.6f at alpha=%.1f alpha'=%.1f" % (c2[i, j], rows[i * 101 + j][0], rows[i * 101 + j][1]))

###############################################################################
# The same closed form as a surface over p and X.

header, rows = sweep_rows(SweepSpec("xp", var_range=(0.0, 10.0, 101), p_range=(0.0, 1.0, 101)))
surface = np.array([r[2] for r in rows]).reshape(101, 101)
print("C^2 at X=0 equals p^2:", np.allclose(surface[:, 0], np.linspace(0, 1, 101) ** 2))

###############################################################################
# Optional plot.

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    im = ax1.imshow(c2, origin="lower", extent=(-5, 5, -5, 5))
    ax1.set_xlabel("alpha'")
    ax1.set_ylabel("alpha")
    fig.colorbar(im, ax=ax1)
    im = ax2.imshow(surface, origin="lower", aspect="auto", extent=(0, 10, 0, 1))
    ax2.set_xlabel("X")
    ax2.set_ylabel("p")
    fig.colorbar(im, ax=ax2)
    fig.savefig("symmetric_sweep.png", dpi=100)
    print("wrote symmetric_sweep.png")
