"""Remarkable values of a pencil f - t g and the bounds they satisfy.

The pencil is moved by a random projective change of coordinates so that
every member has affine degree exactly ``d``; then the line at infinity is
no longer special and reducibility of a homogeneous member is just
reducibility of its affine dehomogenization.  Candidate parameters are the
roots of a univariate polynomial; conjugate roots are processed together in
``Q[t]/(q)`` and separated only when some computation needs it.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from math import gcd

from gmpy2 import mpq

from .bipoly import (
    BiPoly,
    RationalFunctionPair,
    homogeneous_linear_change,
    is_squarefree,
    squarefree_decompose,
    squarefree_part,
    _det3,
)
from .derivation import Derivation, is_first_integral, jacobian_derivation
from .errors import (
    ConstantFunctionError,
    CoordinateChangeError,
    DecomposableError,
    Falsification,
    NotFirstIntegralError,
)
from .field import QQ, ExtScope, UniPoly, run_branches
from .newton import bcount as newton_bcount
from .ruppert import absolute_factor_count, pencil_candidates

MAX_CHANGE_RETRIES = 8


class Indecomposability(enum.Enum):
    INDECOMPOSABLE = "INDECOMPOSABLE"
    LIKELY_DECOMPOSABLE = "LIKELY_DECOMPOSABLE"


@dataclass(frozen=True)
class SpectrumValue:
    """Either (0:1) (``modulus is None``) or every (1:t) with modulus(t) = 0."""

    modulus: UniPoly | None = None

    @property
    def is_lambda_zero(self) -> bool:
        return self.modulus is None

    @property
    def conjugate_count(self) -> int:
        return 1 if self.modulus is None else self.modulus.degree

    def __str__(self):
        if self.modulus is None:
            return "(0:1)"
        if self.modulus.degree == 1:
            return f"(1:{-self.modulus.coeffs[0]})"
        return f"(1:t) with {self.modulus.to_str('t')} = 0"


@dataclass(frozen=True)
class SpectrumEntry:
    value: SpectrumValue
    n: int
    multiplicity_profile: tuple
    in_gamma: bool
    degree_defect: int
    repeated_degree: int  # deg h - deg sqf(h) of the affine member, per conjugate

    @property
    def m(self) -> int:
        return self.value.conjugate_count


@dataclass(frozen=True)
class PencilReport:
    entries: tuple
    d: int
    seed: int
    matrix: tuple
    bcount: int | None = None

    @property
    def sigma_count(self) -> int:
        return sum(e.m for e in self.entries)

    @property
    def rho(self) -> int:
        return sum(e.m * (e.n - 1) for e in self.entries)

    @property
    def gamma_count(self) -> int:
        return sum(e.m for e in self.entries if e.in_gamma)

    @property
    def deg_R(self) -> int:
        return sum(e.m * e.repeated_degree for e in self.entries)

    @property
    def verdicts(self) -> dict:
        out = {
            "sigma_chain": self.sigma_count <= self.rho + self.gamma_count <= self.rho + 3,
            "gamma_bound": self.gamma_count <= 3,
        }
        if self.bcount is not None:
            out["rho_bound"] = self.rho < self.bcount + 2
            out["sigma_bound"] = self.sigma_count < self.bcount + 2 + self.gamma_count
        return out

    def aggregates(self) -> tuple:
        pairs = sorted((e.m, e.n) for e in self.entries)
        return (self.sigma_count, self.rho, self.gamma_count, self.deg_R, tuple(pairs))

    def with_bcount(self, b: int) -> "PencilReport":
        return PencilReport(self.entries, self.d, self.seed, self.matrix, b)


@dataclass(frozen=True)
class BoundsVerdict:
    report: PencilReport
    derivation: Derivation
    bcount: int

    @property
    def verdicts(self) -> dict:
        return self.report.verdicts

    @property
    def falsified(self) -> list:
        return [name for name, ok in self.verdicts.items() if not ok]

    def check(self) -> "BoundsVerdict":
        if self.falsified:
            raise Falsification(f"violated: {', '.join(self.falsified)} ({self.summary()})")
        return self

    def summary(self) -> str:
        r = self.report
        return (f"B={self.bcount} rho={r.rho} |sigma|={r.sigma_count} "
                f"|gamma|={r.gamma_count} deg_R={r.deg_R}")


@dataclass(frozen=True)
class PoincareVerdict:
    deg_f: int
    deg_g: int
    k: int
    deg_R: int

    @property
    def holds(self) -> bool:
        return self.deg_f + self.deg_g - 1 == self.k + self.deg_R


# ---------------------------------------------------------------------------
# coordinate change
# ---------------------------------------------------------------------------


def _random_matrix(rng: random.Random) -> list:
    while True:
        M = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        if _det3(M) != 0:
            return M


def _top_forms_independent(F: BiPoly, G: BiPoly, d: int) -> bool:
    Fd, Gd = F.homogeneous_part(d), G.homogeneous_part(d)
    if not Fd or not Gd:
        return False
    (i, j), c = next(iter(Fd.terms.items()))
    ratio = Gd.coeff(i, j) / c
    return Gd != Fd * ratio


def generic_change(r: RationalFunctionPair, rng: random.Random) -> tuple:
    """(M, F, G) with every member of F - t G of degree exactly d."""
    d = r.degree
    for _ in range(MAX_CHANGE_RETRIES):
        M = _random_matrix(rng)
        F = homogeneous_linear_change(r.f, d, M)
        G = homogeneous_linear_change(r.g, d, M)
        if F.degree == d and G.degree == d and _top_forms_independent(F, G, d):
            return M, F, G
    raise CoordinateChangeError(f"no admissible coordinate change in {MAX_CHANGE_RETRIES} tries")


# ---------------------------------------------------------------------------
# indecomposability
# ---------------------------------------------------------------------------


def _certify(F: BiPoly, G: BiPoly, rng: random.Random, trials: int) -> Indecomposability:
    for _ in range(trials):
        t = mpq(rng.randint(-100, 100), rng.randint(1, 20))
        h = F - G * t
        if h.is_constant():
            continue
        if is_squarefree(h) and absolute_factor_count(h, check=False) == 1:
            return Indecomposability.INDECOMPOSABLE
    return Indecomposability.LIKELY_DECOMPOSABLE


def is_indecomposable_probabilistic(r: RationalFunctionPair, seed: int = 0,
                                    trials: int = 5) -> Indecomposability:
    """One absolutely irreducible member certifies indecomposability."""
    if r.is_constant:
        raise ConstantFunctionError(f"{r} is constant")
    rng = random.Random(seed)
    _, F, G = generic_change(r, rng)
    return _certify(F, G, rng, trials)


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def _degree_over(h: BiPoly) -> int:
    """Total degree with every coefficient zero-tested (may split)."""
    by_degree: dict = {}
    for (i, j), c in h.terms.items():
        by_degree.setdefault(i + j, []).append(c)
    for s in sorted(by_degree, reverse=True):
        if any(not h.dom.is_zero(c) for c in by_degree[s]):
            return s
    return -1


def _repeated_degree(h: BiPoly) -> int:
    """deg h - deg sqf(h) for the affine member h (0 for constants)."""
    deg = _degree_over(h)
    if deg <= 0:
        return 0
    return deg - squarefree_part(h).degree


def _classify(member: BiPoly, original: BiPoly, d: int):
    """Spectrum data for one member, or None if it is not remarkable."""
    dec = squarefree_decompose(member)
    n = absolute_factor_count(dec.squarefree_part(), check=False)
    exps = [e for _, e in dec.factors]
    if n < 2 and exps == [1]:
        return None
    profile = tuple((fac.degree, e) for fac, e in dec.factors)
    in_gamma = gcd(*exps) > 1
    return (n, profile, in_gamma, d - _degree_over(original), _repeated_degree(original))


def analyze_pencil(r: RationalFunctionPair, seed: int = 0, *, trials: int = 5,
                   bcount: int | None = None) -> PencilReport:
    """Spectrum, total order of reducibility and pure-power set of f/g."""
    if r.is_constant:
        raise ConstantFunctionError(f"{r} is constant")
    d = r.degree
    rng = random.Random(seed)
    M, F, G = generic_change(r, rng)
    matrix = tuple(tuple(int(x) for x in row) for row in M)
    if _certify(F, G, rng, trials) is Indecomposability.LIKELY_DECOMPOSABLE:
        raise DecomposableError(f"{r} appears decomposable")
    if d == 1:
        return PencilReport((), d, seed, matrix, bcount)

    cand = pencil_candidates(F, G, d, seed=rng.randrange(2**32))
    if not cand.poly_in_t:
        raise DecomposableError(f"{r}: candidate polynomial vanishes identically")

    groups: dict = {}
    if cand.poly_in_t.degree >= 1:
        def member_data(scope: ExtScope):
            t = scope.gen
            return _classify(F.over(scope) - G.over(scope) * t,
                             r.f.over(scope) - r.g.over(scope) * t, d)

        for scope, data in run_branches(member_data, ExtScope(cand.poly_in_t)):
            if data is not None:
                groups[data] = groups.get(data, UniPoly([1])) * scope.modulus

    entries = [
        SpectrumEntry(SpectrumValue(q.monic()), *data)
        for data, q in groups.items()
    ]
    entries.sort(key=lambda e: (e.value.modulus.degree, [str(c) for c in e.value.modulus.coeffs]))
    inf = _classify(G, r.g, d)
    if inf is not None:
        entries.append(SpectrumEntry(SpectrumValue(None), *inf))
    return PencilReport(tuple(entries), d, seed, matrix, bcount)


def verify_remarkable_bounds(r: RationalFunctionPair, D: Derivation | None = None,
                             seed: int = 0) -> BoundsVerdict:
    """Compute the lattice count of D and every bound verdict for f/g."""
    if D is None:
        D = jacobian_derivation(r)
    elif not is_first_integral(D, r):
        raise NotFirstIntegralError(f"{r} is not a first integral of {D}")
    b = newton_bcount(D).bcount
    report = analyze_pencil(r, seed, bcount=b)
    return BoundsVerdict(report, D, b)


def poincare_relation_check(r: RationalFunctionPair, seed: int = 0) -> PoincareVerdict:
    D = jacobian_derivation(r)
    report = analyze_pencil(r, seed)
    return PoincareVerdict(r.f.degree, max(r.g.degree, 0), D.k, report.deg_R)
