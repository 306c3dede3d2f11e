"""Pencils of conics, where reducible members are visible by hand.

A conic splits exactly when its 3x3 symmetric matrix is singular, so the
finite remarkable values are the roots of det(Qf - t Qg).  The spectrum
keeps conjugate roots together: the third pencil reports one entry whose
modulus is an irreducible cubic.
"""

from pencilbound import X, Y
from pencilbound.bipoly import RationalFunctionPair
from pencilbound.spectrum import analyze_pencil

PENCILS = [
    ("two line pairs", X * (X + Y + 1), Y * (X - Y + 1)),
    ("sqrt 2 lines", X**2 - 2 * Y**2, X + 1),
    ("cubic packet", X**2 + Y**2 - 1, X * Y + X - 2),
    ("double line", (X + Y) ** 2, X * Y + 1),
]

for name, f, g in PENCILS:
    rep = analyze_pencil(RationalFunctionPair(f, g))
    print(f"{name}: f = {f}, g = {g}")
    for e in rep.entries:
        print(f"    {e.value}: n={e.n} profile={list(e.multiplicity_profile)} pure power={e.in_gamma}")
    print(f"    rho={rep.rho} |sigma|={rep.sigma_count} |gamma|={rep.gamma_count}")
