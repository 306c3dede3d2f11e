"""Counting absolutely irreducible factors by linear algebra.

For a squarefree ``f`` of total degree ``d`` consider pairs ``(g, h)`` of
polynomials of degree at most ``d - 1`` with

    f * g_Y - g * f_Y  =  f * h_X - h * f_X,

i.e. ``(g dX + h dY) / f`` is a closed 1-form.  Its solutions are exactly the
combinations of the logarithmic forms ``df_i / f_i`` of the distinct
absolutely irreducible factors ``f_i`` (exact forms ``dR`` would need degree
``>= d``), so the kernel dimension *is* the factor count.  The entries are
linear in the coefficients of ``f``; along a pencil ``F - t G`` the matrix
is ``M(F) - t M(G)`` and remarkable parameters are where its rank drops.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import gcd as _igcd, mpq, mpz

from .bipoly import BiPoly, is_squarefree, resultant_y
from .field import QQ, UniPoly, squarefree_part_uni, uni_gcd


@dataclass(frozen=True)
class RuppertSystem:
    degree: int
    columns: tuple
    rows: tuple
    matrix: tuple
    dom: object

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)


@dataclass(frozen=True)
class CandidatePolynomial:
    """Roots of ``poly_in_t`` (chart (1:t)) plus possibly (0:1) cover the spectrum."""

    poly_in_t: UniPoly
    includes_lambda_zero: bool


def _unknown_monomials(d: int) -> list:
    return [(a, s - a) for s in range(d) for a in range(s, -1, -1)]


def _columns(f: BiPoly, d: int) -> list:
    """One {monomial: coeff} dict per unknown; g-unknowns first."""
    fx, fy = f.dx(), f.dy()
    cols = []
    mons = _unknown_monomials(d)
    for a, b in mons:
        col = (f * BiPoly.monomial(a, b - 1, b, f.dom) if b else BiPoly._raw({}, f.dom)) \
            - fy * BiPoly.monomial(a, b, 1, f.dom)
        cols.append(col.terms)
    for a, b in mons:
        col = fx * BiPoly.monomial(a, b, 1, f.dom) \
            - (f * BiPoly.monomial(a - 1, b, a, f.dom) if a else BiPoly._raw({}, f.dom))
        cols.append(col.terms)
    labels = [("g", a, b) for a, b in mons] + [("h", a, b) for a, b in mons]
    return labels, cols


def _row_index(*column_sets) -> list:
    mons = set()
    for cols in column_sets:
        for col in cols:
            mons.update(col)
    return sorted(mons, key=lambda m: (m[0] + m[1], m[0]), reverse=True)


def _assemble(cols: list, rows: list, zero) -> list:
    index = {m: r for r, m in enumerate(rows)}
    M = [[zero] * len(cols) for _ in rows]
    for c, col in enumerate(cols):
        for m, v in col.items():
            M[index[m]][c] = v
    return M


def build_ruppert(f: BiPoly, scope=None, *, check: bool = True) -> RuppertSystem:
    """The closed-form linear system for ``f`` (over Q or ``scope``)."""
    if scope is not None:
        f = f.over(scope)
    if f.is_constant():
        raise ValueError("Ruppert system of a constant")
    if check and not is_squarefree(f):
        raise ValueError(f"{f} is not squarefree")
    d = f.degree
    labels, cols = _columns(f, d)
    rows = _row_index(cols)
    M = _assemble(cols, rows, f.dom.zero)
    return RuppertSystem(d, tuple(labels), tuple(rows), tuple(tuple(r) for r in M), f.dom)


# ---------------------------------------------------------------------------
# exact rank
# ---------------------------------------------------------------------------


def _integer_rows(rows) -> list:
    out = []
    for row in rows:
        den = mpz(1)
        for c in row:
            if c:
                den = den * c.denominator // _igcd(den, c.denominator)
        out.append([mpz(c * den) for c in row])
    return out


def rank_integer(M: list, ncols: int) -> int:
    """Fraction-free (Bareiss) rank of an integer matrix."""
    A = [list(r) for r in M if any(r)]
    rank = 0
    prev = mpz(1)
    for col in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        prow = A[rank]
        p = prow[col]
        for i in range(rank + 1, len(A)):
            r = A[i]
            a = r[col]
            for j in range(col + 1, ncols):
                r[j] = (p * r[j] - a * prow[j]) // prev
            r[col] = 0
        prev = p
        rank += 1
        if rank == len(A):
            break
    return rank


def det_integer(M: list) -> mpz:
    """Bareiss determinant of a square integer matrix."""
    A = [list(r) for r in M]
    n = len(A)
    sign = 1
    prev = mpz(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return mpz(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        p = A[k][k]
        prow = A[k]
        for i in range(k + 1, n):
            r = A[i]
            a = r[k]
            for j in range(k + 1, n):
                r[j] = (p * r[j] - a * prow[j]) // prev
        prev = p
    return sign * A[n - 1][n - 1] if n else mpz(1)


def _size(c) -> int:
    return len(c.coeffs) if hasattr(c, "coeffs") else 1


def rank_field(M: list, ncols: int, dom) -> int:
    """Gaussian elimination over ``dom``; unit pivots (may raise SplitRequired)."""
    A = [list(r) for r in M if any(r)]
    zero = dom.zero
    rank = 0
    for col in range(ncols):
        best = None
        for i in range(rank, len(A)):
            c = A[i][col]
            if c and (best is None or _size(c) < _size(A[best][col])):
                best = i
                if _size(c) == 1:
                    break
        if best is None:
            continue
        A[rank], A[best] = A[best], A[rank]
        prow = A[rank]
        inv = dom.inv(prow[col])
        tail = [(j, prow[j]) for j in range(col + 1, ncols) if prow[j]]
        for i in range(rank + 1, len(A)):
            r = A[i]
            c = r[col]
            if not c:
                continue
            fac = c * inv
            for j, v in tail:
                r[j] = r[j] - fac * v
            r[col] = zero
        rank += 1
        if rank == len(A):
            break
    return rank


def kernel_dimension(system: RuppertSystem) -> int:
    ncols = len(system.columns)
    if system.dom is QQ:
        return ncols - rank_integer(_integer_rows(system.matrix), ncols)
    return ncols - rank_field([list(r) for r in system.matrix], ncols, system.dom)


def absolute_factor_count(f: BiPoly, scope=None, *, check: bool = True) -> int:
    """Number of distinct absolutely irreducible factors of squarefree ``f``.

    Over an extension scope this may raise :class:`SplitRequired`.
    """
    return kernel_dimension(build_ruppert(f, scope, check=check))


# ---------------------------------------------------------------------------
# pencil candidates
# ---------------------------------------------------------------------------


def _matmul(A: list, B: list) -> list:
    Bt = list(zip(*B))
    out = []
    for row in A:
        nz = [(k, v) for k, v in enumerate(row) if v]
        out.append([sum((v * col[k] for k, v in nz), mpz(0)) for col in Bt])
    return out


def interpolate(xs: list, ys: list) -> UniPoly:
    """Newton interpolation through (xs[i], ys[i]) over Q."""
    n = len(xs)
    coef = [mpq(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly([coef[-1]])
    t = UniPoly.gen()
    for i in range(n - 2, -1, -1):
        poly = poly * (t - xs[i]) + coef[i]
    return poly


def _random_minor_poly(Mf: list, Mg: list, ncols: int, rng: random.Random) -> UniPoly:
    """det(R (Mf - t Mg) C) for random integer R, C of rank-(n-1) shape."""
    m = len(Mf)
    k = ncols - 1
    R = [[mpz(rng.randint(-3, 3)) for _ in range(m)] for _ in range(k)]
    C = [[mpz(rng.randint(-3, 3)) for _ in range(k)] for _ in range(ncols)]
    A = _matmul(_matmul(R, Mf), C)
    B = _matmul(_matmul(R, Mg), C)
    xs = list(range(k + 1))
    ys = []
    for x in xs:
        ys.append(det_integer([[a - x * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]))
    return interpolate(xs, ys)


def _line_discriminant(F: BiPoly, G: BiPoly, a, b) -> UniPoly:
    """Res_s(H, dH/ds) where H(t, s) = (F - t G)(s, a s + b).

    Vanishes at every t whose member is not squarefree.
    """
    line_x = BiPoly.y()
    line_y = BiPoly({(0, 1): a, (0, 0): b})
    Fr = F.substitute(line_x, line_y)
    Gr = G.substitute(line_x, line_y)
    H = Fr - Gr * BiPoly.x()
    if H.deg_y < 1:
        return UniPoly([1])
    res = resultant_y(H, H.dy())
    return UniPoly([res.coeff(i, 0) for i in range(res.deg_x + 1)])


def pencil_candidates(F: BiPoly, G: BiPoly, d: int, seed: int = 0) -> CandidatePolynomial:
    """A squarefree polynomial in t whose roots contain every remarkable t.

    ``F`` and ``G`` must have rational coefficients and all members of the
    pencil ``F - t G`` must have degree ``d``.  Returns the zero polynomial
    when the rank never reaches its generic value (decomposable input).
    """
    rng = random.Random(seed)
    if d <= 1:
        return CandidatePolynomial(UniPoly([1]), False)
    # a common integer scale keeps the parameter t unchanged
    den = mpz(1)
    for c in list(F.terms.values()) + list(G.terms.values()):
        den = den * c.denominator // _igcd(den, c.denominator)
    Fi, Gi = F * den, G * den
    labels, cf = _columns(Fi, d)
    _, cg = _columns(Gi, d)
    rows = _row_index(cf, cg)
    Mf = [[mpz(v) for v in r] for r in _assemble(cf, rows, mpq(0))]
    Mg = [[mpz(v) for v in r] for r in _assemble(cg, rows, mpq(0))]
    ncols = len(labels)

    minors = []
    for _ in range(4):
        p = _random_minor_poly(Mf, Mg, ncols, rng)
        if p:
            minors.append(p)
        if len(minors) == 2:
            break
    if not minors:
        return CandidatePolynomial(UniPoly(), False)
    rank_drop = minors[0] if len(minors) == 1 else uni_gcd(minors[0], minors[1])

    discs = []
    for _ in range(2):
        a = mpq(rng.randint(-50, 50), rng.randint(1, 7))
        b = mpq(rng.randint(-50, 50), rng.randint(1, 7))
        discs.append(_line_discriminant(F, G, a, b))
    non_squarefree = uni_gcd(discs[0], discs[1]) if discs[0] and discs[1] else UniPoly([1])

    cand = rank_drop * (non_squarefree if non_squarefree else UniPoly([1]))
    cand = squarefree_part_uni(cand) if cand.degree > 0 else UniPoly([1])

    Gq = G
    lam0 = Gq.degree < d or not is_squarefree(Gq) or absolute_factor_count(Gq, check=False) > 1
    return CandidatePolynomial(cand, lam0)
