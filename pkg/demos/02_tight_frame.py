"""
A localized dictionary that is still a Parseval frame
======================================================

Cover the base of the Moebius band by the five closed stars of its
vertices.  Each star is a path, so over it the band looks like a plain
strip and we can use product Fourier modes there.  Weighting by the square
root of a partition of unity glues the local pieces together without
losing energy.
"""

import numpy as np

from bundlegsp import (
    build_dictionary,
    fourier_basis,
    frame_bounds,
    inverse_multiplicity_partition,
    mobius_bundle,
    star_cover,
)

bundle = mobius_bundle()
cover = star_cover(bundle.base)
partition = inverse_multiplicity_partition(cover)
print("cover sets:", cover.sets)
print("weights per set:\n", partition.weights)

d = build_dictionary(bundle, cover, partition, fourier_basis(bundle.base), fourier_basis(bundle.fiber))
print("atoms:", len(d), "on", d.graph.n, "vertices  (5 sets x 5 base modes x 2 fiber modes)")

# %%
# Each atom lives on the six vertices above one star.
np.set_printoptions(precision=3, suppress=True)
for k in (0, 1, 12):
    u, b, f = d.index(k)
    print(f"atom (U={u}, b={b}, f={f}):", d.matrix[:, k])

# %%
# Frame bounds: eigenvalues of D D^T.  Both are 1.
print("frame bounds:", frame_bounds(d))

x = np.random.default_rng(0).standard_normal(bundle.n)
c = d.analyze(x)
print("||x||^2 =", x @ x, "  sum of squared coefficients =", c @ c)
print("reconstruction error:", np.max(np.abs(d.synthesize(c) - x)))

# %%
# Asking for a single trivializing set over the whole base fails: the
# twist cannot be undone globally.
from bundlegsp import NonTrivializable, trivial_cover

whole = trivial_cover(bundle.base)
try:
    build_dictionary(bundle, whole, inverse_multiplicity_partition(whole),
                     fourier_basis(bundle.base), fourier_basis(bundle.fiber))
except NonTrivializable as exc:
    print("trivial cover rejected:", exc)
