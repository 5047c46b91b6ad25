"""Exhaustive bounds and the word families meant to be extremal.

The {x0,x1} rotation graph has diameter exactly 4n-8.  The constructed
families below are measured by breadth-first search and compared with the
bound each was built to reach.
"""

from rotdist import badword, bfs_distance, discovered_rr, longra, spinalword
from rotdist.distances import RR, check_lower_bound_family, check_upper_bounds

for n in range(3, 8):
    rep = check_upper_bounds(n, RR)
    print(f"n={n}: largest {{x0,x1}} distance {rep.maximum}, bound {rep.bound}")

print()
for inst in (badword(1, 6), badword(1, 7), badword(2, 8), spinalword(1, 5)):
    rep = check_lower_bound_family(inst)
    print(f"{inst.name}{rep.params}: measured {rep.distance}, "
          f"predicted at least {rep.lower}, at most {rep.upper}")

print()
for n in (3, 5, 8):
    inst = longra(n)
    res = bfs_distance(inst.pair.t1, inst.pair.t2, inst.genset)
    print(f"longra({n}): word length {len(inst.word)}, right-arm distance {res.distance}")

print()
inst = discovered_rr(6)
print("a farthest {x0,x1} pair at n=6, found by search:")
print("  ", inst.describe()["t1"], "->", inst.describe()["t2"], "distance", inst.predicted_lower_bound)
