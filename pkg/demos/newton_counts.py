"""Lattice counts of Newton polygons for the dense and sparse families.

Dense fields of degree k fill the triangle with k(k+1)/2 points.  Sparse
fields supported on X^eY^e, X^(e-1)Y^e, X^eY^(e-1), 1 give 3e + 2 points
once e > 1; for e = 1 the hull only meets the quadrant in 3 points.
"""

from pencilbound.corpus import dense_random, sparse_pair
from pencilbound.newton import bcount

for k in range(1, 7):
    rep = bcount(dense_random(k).derivation)
    print(f"dense  k={k}: B={rep.bcount:2d}  k(k+1)/2={k * (k + 1) // 2}")
for e in range(1, 6):
    rep = bcount(sparse_pair(e).derivation)
    print(f"sparse e={e}: B={rep.bcount:2d}  3e+2={3 * e + 2}  hull {list(rep.polygon.vertices)}")
