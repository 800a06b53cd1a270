"""
Stride and reach on a glued cylinder and Moebius band
=====================================================

The base is a 27-cycle with a chord from 0 to 12, so it has two loops.
The fiber is a 7-vertex path.  One loop carries a fiber reversal, the
other is plain, giving a cylinder and a Moebius band sharing a seam:
189 vertices in total.

Cover sets are balls of radius ``reach`` around every ``stride``-th base
vertex.  We record how redundant and how uneven the resulting dictionary is.
"""

import math

from bundlegsp import glued_bundle
from bundlegsp.cli import sweep_rows

bundle = glued_bundle()
m = math.isqrt(bundle.n)
print(f"{bundle.n} vertices; coherence measured at m = {m}")

rows = sweep_rows(bundle, range(1, 7), range(1, 7), m=m)

# %%
# Coherence table (rows: reach, columns: stride).  "--" marks stride and
# reach combinations whose balls leave a gap in the base.
table = {(s, r): (st, c, v) for s, r, st, c, v in rows}
print("\ncumulative coherence")
print("reach " + "".join(f"{s:>8}" for s in range(1, 7)))
for r in range(1, 7):
    cells = [table[(s, r)] for s in range(1, 7)]
    print(f"{r:>5} " + "".join(f"{c:8.2f}" if st == "ok" else "      --" for st, c, _ in cells))

print("\natom norm standard deviation")
print("reach " + "".join(f"{s:>8}" for s in range(1, 7)))
for r in range(1, 7):
    cells = [table[(s, r)] for s in range(1, 7)]
    print(f"{r:>5} " + "".join(f"{v:8.3f}" if st == "ok" else "      --" for st, _, v in cells))

# %%
# Reading the tables: sparser centers (larger stride) mean fewer, less
# overlapping sets, so coherence falls.  The weights then vary more from
# vertex to vertex and atom norms spread out; larger balls smooth the
# weights again.  Reach moves coherence much less than stride does.
