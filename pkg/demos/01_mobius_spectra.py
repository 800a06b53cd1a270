"""
Twisted versus untwisted: the Moebius band and the cylinder
==========================================================

Both graphs have 10 vertices, 15 edges and every vertex has degree 3.
Locally they are indistinguishable.  The only difference is one crossed
rung, and we look at how much of that the Laplacian spectrum sees.
"""

import numpy as np

from bundlegsp import mobius_bundle, spectral_moment
from bundlegsp.bundle import cylinder_bundle, holonomy
from bundlegsp.spectral import spectrum

mobius, cylinder = mobius_bundle(), cylinder_bundle()
print("Moebius edges: ", mobius.total.edges)
print("cylinder edges:", cylinder.total.edges)

# Going once around the base composes the voltages.  The Moebius band
# comes back with the fiber flipped, the cylinder with the identity.
loop = [0, 1, 2, 3, 4]
print("holonomy, Moebius: ", holonomy(mobius, loop))
print("holonomy, cylinder:", holonomy(cylinder, loop))

# %%
# The spectra differ, but not by much
lm, lc = spectrum(mobius.total), spectrum(cylinder.total)
np.set_printoptions(precision=4, suppress=True)
print("Moebius: ", lm)
print("cylinder:", lc)
print("largest eigenvalue gap:", np.max(np.abs(lm - lc)))

# %%
# Moments tr(L^k)/n count closed walks of length k, weighted by degree.
# Short walks cannot detect a twist that only shows up around the whole
# loop, so low moments agree.
for k in range(8):
    a, b = spectral_moment(lm, k), spectral_moment(lc, k)
    flag = "" if abs(a - b) < 1e-9 else "   <- differs"
    print(f"k={k}:  {a:12.4f}  {b:12.4f}{flag}")

# The first disagreement shows up at k = 5, the length of the base cycle:
# a walk has to go all the way round before it can feel the crossing.
