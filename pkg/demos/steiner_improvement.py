"""
From spanning trees to Steiner-like trees
=========================================

The MST over the four corners of a unit square has length 3, but allowing
branch points drops the shortest connecting tree to 1 + sqrt(3).  Fermat
point insertion finds those branch points without any topology enumeration.
"""

import math

from mdpkit import CenterSet, fermat_point, kruskal_mst, steinerize

square = CenterSet([(0, 0), (1, 0), (1, 1), (0, 1)], 1.0)
mst = kruskal_mst(square)
print(f"unit square corners: MST length {mst.length:.6f}")

augmented, improved = steinerize(square, rounds=2)
print(f"after Fermat insertion: {improved.length:.9f}")
print(f"target 1 + sqrt(3) =  {1 + math.sqrt(3):.9f}")
added = augmented.points[4:]
for p in added:
    print(f"  branch point at ({p.x:.6f}, {p.y:.6f})")

f = fermat_point((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))
print(f"\nequilateral triangle Fermat point: ({f.x:.6f}, {f.y:.6f})"
      f"  (the center, star length sqrt(3))")
