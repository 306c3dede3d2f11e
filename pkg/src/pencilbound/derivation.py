"""Planar polynomial derivations D = A d/dX + B d/dY and Darboux polynomials."""

from __future__ import annotations

from dataclasses import dataclass

from .bipoly import BiPoly, RationalFunctionPair, bi_gcd
from .errors import ConstantFunctionError, NotCoprimeError, NotDarbouxError
from .newton import convex_hull, nd_support


@dataclass(frozen=True)
class Derivation:
    """The vector field dX/dt = A, dY/dt = B with gcd(A, B) = 1."""

    A: BiPoly
    B: BiPoly

    def __post_init__(self):
        if not self.A and not self.B:
            raise ValueError("zero derivation")
        if not bi_gcd(self.A, self.B).is_constant():
            raise NotCoprimeError(f"gcd(A, B) is not constant for A={self.A}, B={self.B}")

    @property
    def k(self) -> int:
        return max(self.A.degree, self.B.degree)

    def __call__(self, f: BiPoly) -> BiPoly:
        return apply(self, f)

    def __str__(self):
        return f"({self.A})*dX + ({self.B})*dY"


@dataclass(frozen=True)
class CofactorResult:
    cofactor: BiPoly | None

    @property
    def present(self) -> bool:
        return self.cofactor is not None


def apply(D: Derivation, f: BiPoly) -> BiPoly:
    return D.A * f.dx() + D.B * f.dy()


def cofactor_of(D: Derivation, f: BiPoly) -> CofactorResult:
    """The Λ with D(f) = Λ f, if f is a Darboux polynomial of D."""
    if f.is_constant():
        raise ValueError("cofactor of a constant polynomial")
    Df = apply(D, f)
    if not f.divides(Df):
        return CofactorResult(None)
    lam = Df.exquo(f)
    assert lam.degree <= D.k - 1, f"cofactor degree {lam.degree} exceeds k-1 = {D.k - 1}"
    return CofactorResult(lam)


def _wronskians(f: BiPoly, g: BiPoly) -> tuple[BiPoly, BiPoly]:
    """(f_Y g - f g_Y, f_X g - f g_X)."""
    return f.dy() * g - f * g.dy(), f.dx() * g - f * g.dx()


def is_first_integral(D: Derivation, r: RationalFunctionPair) -> bool:
    wy, wx = _wronskians(r.f, r.g)
    return (D.A * wx + D.B * wy).is_zero()


def jacobian_derivation(r: RationalFunctionPair) -> Derivation:
    """The derivation (f_Y g - f g_Y)/G dX - (f_X g - f g_X)/G dY, G the gcd."""
    num_a, num_b = _wronskians(r.f, r.g)
    if not num_a and not num_b:
        raise ConstantFunctionError(f"{r} is constant")
    G = bi_gcd(num_a, num_b)
    D = Derivation(num_a.exquo(G), -num_b.exquo(G))
    assert is_first_integral(D, r)
    return D


def cofactor_polygon_check(D: Derivation, f: BiPoly) -> bool:
    """Does every support point of the cofactor of f lie in N_D?"""
    res = cofactor_of(D, f)
    if not res.present:
        raise NotDarbouxError(f"{f} is not a Darboux polynomial of {D}")
    hull = convex_hull(nd_support(D))
    return all(hull.contains(m) for m in res.cofactor.terms)
