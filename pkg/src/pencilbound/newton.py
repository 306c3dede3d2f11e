"""Newton polygon N_D of a derivation and its lattice count in the first quadrant."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .errors import PencilError

Point = tuple[int, int]


@dataclass(frozen=True)
class LatticePolygon:
    """Convex hull vertices, counterclockwise; may be a segment or a point."""

    vertices: tuple

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def edges(self):
        vs = self.vertices
        if len(vs) < 2:
            return []
        if len(vs) == 2:
            return [(vs[0], vs[1])]
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def contains(self, p: Point) -> bool:
        """Closed membership by half-plane tests."""
        vs = self.vertices
        if len(vs) == 1:
            return p == vs[0]
        if len(vs) == 2:
            a, b = vs
            if _cross(a, b, p) != 0:
                return False
            return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        return all(_cross(a, b, p) >= 0 for a, b in self.edges())

    def twice_area(self) -> int:
        vs = self.vertices
        if len(vs) < 3:
            return 0
        return sum(vs[k][0] * vs[(k + 1) % len(vs)][1] - vs[(k + 1) % len(vs)][0] * vs[k][1]
                   for k in range(len(vs)))

    def boundary_points(self) -> int:
        vs = self.vertices
        if len(vs) == 1:
            return 1
        if len(vs) == 2:
            a, b = vs
            return gcd(b[0] - a[0], b[1] - a[1]) + 1
        return sum(gcd(b[0] - a[0], b[1] - a[1]) for a, b in self.edges())


@dataclass(frozen=True)
class NewtonReport:
    polygon: LatticePolygon
    bcount: int
    support: frozenset


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def nd_support(D) -> set:
    """Support of x*A/X + y*B/Y for generic (x, y).

    Coinciding shifted monomials get the coefficient x*a + y*b, which is
    nonzero for generic (x, y), so the support is the union of the shifts.
    """
    if not D.A and not D.B:
        raise PencilError("zero derivation has no Newton polygon")
    pts = {(i - 1, j) for (i, j) in D.A.terms}
    pts |= {(i, j - 1) for (i, j) in D.B.terms}
    return pts


def convex_hull(points: Iterable[Point]) -> LatticePolygon:
    """Monotone chain hull, counterclockwise, collinear points dropped."""
    pts = sorted({(int(a), int(b)) for a, b in points})
    if not pts:
        raise ValueError("convex hull of an empty point set")
    if len(pts) <= 2:
        return LatticePolygon(tuple(pts))
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 or (len(hull) == 3 and _cross(*hull) == 0):
        # all points collinear: keep the two extremes
        return LatticePolygon((pts[0], pts[-1]))
    return LatticePolygon(tuple(hull))


def count_lattice_nn(polygon: LatticePolygon) -> int:
    """Points (a, b) with a, b >= 0 in the closed polygon, by brute force."""
    vs = polygon.vertices
    x0 = max(0, min(v[0] for v in vs))
    x1 = max(v[0] for v in vs)
    y0 = max(0, min(v[1] for v in vs))
    y1 = max(v[1] for v in vs)
    return sum(
        1
        for a in range(x0, x1 + 1)
        for b in range(y0, y1 + 1)
        if polygon.contains((a, b))
    )


def count_lattice_nn_rows(polygon: LatticePolygon) -> int:
    """Row-by-row interval count; must agree with :func:`count_lattice_nn`."""
    vs = polygon.vertices
    if len(vs) == 1:
        return int(vs[0][0] >= 0 and vs[0][1] >= 0)
    total = 0
    ylo = max(0, min(v[1] for v in vs))
    yhi = max(v[1] for v in vs)
    for y in range(ylo, yhi + 1):
        lo = hi = None
        for a, b in polygon.edges():
            if a[1] == b[1]:
                if a[1] == y:
                    xs = (a[0], b[0])
                    lo = min(xs) if lo is None else min(lo, *xs)
                    hi = max(xs) if hi is None else max(hi, *xs)
                continue
            if min(a[1], b[1]) <= y <= max(a[1], b[1]):
                # x = a0 + (y - a1) * (b0 - a0) / (b1 - a1), kept exact as num/den
                num = a[0] * (b[1] - a[1]) + (y - a[1]) * (b[0] - a[0])
                den = b[1] - a[1]
                if den < 0:
                    num, den = -num, -den
                left = -((-num) // den)  # ceil
                right = num // den  # floor
                lo = left if lo is None else min(lo, left)
                hi = right if hi is None else max(hi, right)
        if lo is None:
            continue
        lo = max(lo, 0)
        if hi >= lo:
            total += hi - lo + 1
    return total


def bcount(D) -> NewtonReport:
    """N_D and the number of its integer points in N^2."""
    support = nd_support(D)
    poly = convex_hull(support)
    return NewtonReport(poly, count_lattice_nn(poly), frozenset(support))
