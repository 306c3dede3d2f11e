"""Walk through the sharp family f = Y(X^k - 1) + X, g = 1.

Each k-th root of unity c gives a member f - c that splits off the line
X - c, and the point (0:1) is the pure power Z^(k+1).  The lattice count
of the Jacobian derivation equals k, so rho meets its bound exactly.
"""

import time

from pencilbound.corpus import sharp
from pencilbound.spectrum import verify_remarkable_bounds

for k in range(2, 6):
    start = time.perf_counter()
    v = verify_remarkable_bounds(sharp(k).pair)
    rep = v.report
    print(f"k={k}  D = {v.derivation}")
    for e in rep.entries:
        layers = " ".join(f"{a}^{b}" for a, b in e.multiplicity_profile)
        print(f"    {e.value}: m={e.m} n={e.n} layers [{layers}]")
    print(f"    {v.summary()}  verdicts {rep.verdicts}  ({time.perf_counter() - start:.2f}s)")
