"""Diameter of the full rotation graph, where every node may rotate.

The graph is the flip graph of polygon triangulations.  Its dihedral
symmetries let the eccentricity search work on orbits instead of trees.
"""

import time

from rotdist import catalan, d_r_ordinary_diameter

for n in range(1, 11):
    start = time.perf_counter()
    d = d_r_ordinary_diameter(n)
    print(f"n={n:2d}  trees={catalan(n):6d}  diameter={d:2d}  ({time.perf_counter() - start:.1f}s)")
