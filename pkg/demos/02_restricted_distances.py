"""Rotation distances when only a few spine positions may rotate.

With rotations anywhere on the right arm the distance is just the length of
the normal form.  With a finite set of levels some pairs cannot be connected
at all; partial reduction of the pair's word decides which.
"""

from rotdist import GenSet, bfs_distance, d_ra, pair_of_word, render_tree, rra_defined, witness_sequence
from rotdist.distances import RR

x1 = pair_of_word("x1")
primed = pair_of_word("x0 x2 x0^-1", reduce=False)
S = GenSet.parse("x0,x2")

print("right-arm distance of the x1 pair:", d_ra(x1.t1, x1.t2).distance)
for name, p in (("x1 pair", x1), ("4-caret pair", primed)):
    res = bfs_distance(p.t1, p.t2, S)
    print(f"{name:>13} under {S}: defined by formula={rra_defined(p.t1, p.t2, S)}, "
          f"by search={res.defined}, distance={res.distance}, geodesic={res.witness}")

# A constructive script need not be shortest: levels outside the set are
# reached by conjugating with root rotations.
p = pair_of_word("x1 x3 x4^-1 x1^-1", reduce=False)
script = witness_sequence(p.t1, p.t2, GenSet.parse("x0,x1"))
exact = bfs_distance(p.t1, p.t2, RR)
print()
print("pair:", render_tree(p.t1), "->", render_tree(p.t2))
print(f"constructive script ({len(script)} rotations): {script}")
print(f"shortest ({exact.distance} rotations):           {exact.witness}")
