"""Sparse bivariate polynomials over Q or over an :class:`ExtScope`.

A :class:`BiPoly` is a dict ``{(i, j): c}`` for ``c X^i Y^j`` plus a
coefficient domain.  Exponents are nonnegative; Laurent supports only live in
:mod:`pencilbound.newton` as plain point sets.

gcd, exact division, resultants and squarefree decomposition go through a
recursive dense form: a list indexed by the Y-degree whose entries are dense
coefficient lists in X.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from gmpy2 import gcd as _igcd, mpq, mpz

from .errors import NotCoprimeError
from .field import (
    QQ,
    ExtElement,
    ExtScope,
    Rational,
    as_rational,
    dense_add,
    dense_deriv,
    dense_exquo,
    dense_gcd,
    dense_mul,
    dense_require_nonzero,
    dense_strip,
    dense_sub,
)


def _grlex(mono):
    i, j = mono
    return (i + j, i)


def _same_domain(a, b) -> bool:
    return a is b or a == b


class BiPoly:
    """Immutable sparse polynomial in X, Y."""

    __slots__ = ("terms", "dom")

    def __init__(self, terms: Mapping | Iterable = (), dom=QQ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponents are not allowed in BiPoly")
            c = dom.convert(c)
            if c:
                key = (int(i), int(j))
                prev = clean.get(key)
                c = c if prev is None else prev + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self.terms = clean
        self.dom = dom

    @classmethod
    def _raw(cls, terms: dict, dom) -> "BiPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj.dom = dom
        return obj

    # -- constructors --------------------------------------------------------
    @classmethod
    def x(cls, dom=QQ) -> "BiPoly":
        return cls({(1, 0): 1}, dom)

    @classmethod
    def y(cls, dom=QQ) -> "BiPoly":
        return cls({(0, 1): 1}, dom)

    @classmethod
    def const(cls, c, dom=QQ) -> "BiPoly":
        return cls({(0, 0): c}, dom)

    @classmethod
    def monomial(cls, i: int, j: int, c=1, dom=QQ) -> "BiPoly":
        return cls({(i, j): c}, dom)

    # -- queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def support(self) -> set:
        return set(self.terms)

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), self.dom.zero)

    def leading_monomial(self):
        return max(self.terms, key=_grlex) if self.terms else None

    def leading_coeff(self):
        lm = self.leading_monomial()
        return self.terms[lm] if lm is not None else self.dom.zero

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((0, 0), self.dom.zero)

    def homogeneous_part(self, k: int) -> "BiPoly":
        return BiPoly._raw({m: c for m, c in self.terms.items() if sum(m) == k}, self.dom)

    # -- equality ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            if isinstance(other, (int, Rational)):
                other = BiPoly.const(other, self.dom)
            else:
                return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def __hash__(self):
        return hash(frozenset((m, c.coeffs if isinstance(c, ExtElement) else c)
                              for m, c in self.terms.items()))

    # -- domain handling -----------------------------------------------------
    def over(self, dom) -> "BiPoly":
        """The same polynomial with coefficients mapped into ``dom``."""
        if dom is self.dom:
            return self
        if dom is QQ:
            if self.dom is not QQ:
                raise ValueError("cannot map extension coefficients back to QQ")
            return self
        terms = {}
        for m, c in self.terms.items():
            c = dom.convert(c)
            if c:
                terms[m] = c
        return BiPoly._raw(terms, dom)

    def _promote(self, other):
        if isinstance(other, BiPoly):
            if _same_domain(self.dom, other.dom):
                return self, other
            if self.dom is QQ:
                return self.over(other.dom), other
            if other.dom is QQ:
                return self, other.over(self.dom)
            raise ValueError("BiPoly domain mismatch")
        return self, BiPoly.const(other, self.dom)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        a, b = self._promote(other)
        terms = dict(a.terms)
        for m, c in b.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return BiPoly._raw(terms, a.dom)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({m: -c for m, c in self.terms.items()}, self.dom)

    def __sub__(self, other):
        a, b = self._promote(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            if isinstance(other, ExtElement) and self.dom is QQ:
                return self.over(other.scope) * other
            c = self.dom.convert(other)
            if not c:
                return BiPoly._raw({}, self.dom)
            return BiPoly._raw({m: v * c for m, v in self.terms.items() if v * c}, self.dom)
        a, b = self._promote(other)
        terms: dict = {}
        for (i1, j1), c1 in a.terms.items():
            for (i2, j2), c2 in b.terms.items():
                k = (i1 + i2, j1 + j2)
                s = terms.get(k)
                terms[k] = c1 * c2 if s is None else s + c1 * c2
        return BiPoly._raw({m: c for m, c in terms.items() if c}, a.dom)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = BiPoly.const(1, self.dom)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def scale(self, c) -> "BiPoly":
        return self * c

    def dx(self) -> "BiPoly":
        return BiPoly._raw({(i - 1, j): c * i for (i, j), c in self.terms.items() if i}, self.dom)

    def dy(self) -> "BiPoly":
        return BiPoly._raw({(i, j - 1): c * j for (i, j), c in self.terms.items() if j}, self.dom)

    def swap(self) -> "BiPoly":
        """Exchange the roles of X and Y."""
        return BiPoly._raw({(j, i): c for (i, j), c in self.terms.items()}, self.dom)

    def __call__(self, x, y):
        acc = self.dom.zero
        for (i, j), c in self.terms.items():
            acc = acc + c * (x ** i) * (y ** j)
        return acc

    def substitute(self, x: "BiPoly", y: "BiPoly") -> "BiPoly":
        """Compose with polynomial substitutions X <- x, Y <- y."""
        out = BiPoly._raw({}, self.dom)
        xp, yp = {0: BiPoly.const(1, self.dom)}, {0: BiPoly.const(1, self.dom)}
        for (i, j), c in self.terms.items():
            if i not in xp:
                xp[i] = x ** i
            if j not in yp:
                yp[j] = y ** j
            out = out + xp[i] * yp[j] * c
        return out

    # -- division ------------------------------------------------------------
    def exquo(self, other: "BiPoly") -> "BiPoly":
        """Exact quotient ``self / other``; ArithmeticError if inexact."""
        a, b = self._promote(other)
        if not b:
            raise ZeroDivisionError("division by the zero polynomial")
        q = _rec_exquo(to_rec(a), to_rec(b), a.dom)
        if q is None:
            raise ArithmeticError("polynomial is not divisible")
        return from_rec(q, a.dom)

    def divides(self, other: "BiPoly") -> bool:
        """True if ``self`` divides ``other`` exactly."""
        a, b = other._promote(self)
        if not b:
            return not a
        return _rec_exquo(to_rec(a), to_rec(b), a.dom) is not None

    # -- normal forms --------------------------------------------------------
    def normalize(self) -> "BiPoly":
        """Canonical associate.

        Over Q: integer coefficients with content 1 and positive grlex
        leading coefficient.  Over an extension: grlex-monic.
        """
        if not self.terms:
            return self
        if self.dom is QQ:
            den = mpz(1)
            num = mpz(0)
            for c in self.terms.values():
                den = den * c.denominator // _igcd(den, c.denominator)
                num = _igcd(num, c.numerator)
            scale = mpq(den, num)
            if self.leading_coeff() < 0:
                scale = -scale
            return BiPoly._raw({m: c * scale for m, c in self.terms.items()}, QQ)
        inv = self.dom.inv(self.leading_coeff())
        return BiPoly._raw({m: c * inv for m, c in self.terms.items() if c * inv}, self.dom)

    def integer_scaled(self) -> "BiPoly":
        """Multiply by the lcm of denominators (Q only); sign and content kept."""
        den = mpz(1)
        for c in self.terms.values():
            den = den * c.denominator // _igcd(den, c.denominator)
        return self * den

    # -- display -------------------------------------------------------------
    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[(i, j)]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("X", i), ("Y", j)) if e
            )
            if isinstance(c, ExtElement):
                body = f"({c.poly.to_str()})" + (f"*{mono}" if mono else "")
                parts.append(("+", body))
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            cs = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{cs}*{mono}"
            else:
                body = cs
            parts.append((sign, body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BiPoly({self.to_str()})"


X = BiPoly.x()
Y = BiPoly.y()


# ---------------------------------------------------------------------------
# recursive dense form: Y-indexed list of dense X-lists
# ---------------------------------------------------------------------------


def to_rec(f: BiPoly) -> list:
    rec = [[] for _ in range(f.deg_y + 1)]
    zero = f.dom.zero
    for (i, j), c in f.terms.items():
        row = rec[j]
        if len(row) <= i:
            row.extend([zero] * (i + 1 - len(row)))
        row[i] = c
    return rec


def from_rec(rec: list, dom) -> BiPoly:
    terms = {}
    for j, row in enumerate(rec):
        for i, c in enumerate(row):
            if c:
                terms[(i, j)] = c if not isinstance(c, int) else dom.convert(c)
    return BiPoly._raw(terms, dom)


def _rec_strip(P: list, dom) -> list:
    """Strip structurally zero top entries, then require a unit-led top."""
    for row in P:
        dense_strip(row)
    while P and not P[-1]:
        P.pop()
    if P:
        dense_require_nonzero(P[-1], dom)
    return P


def _rec_content(P: list, dom) -> list:
    g: list = []
    for row in P:
        if row:
            g = dense_gcd(g, row, dom)
            if len(g) == 1:
                break
    return g


def _rec_primitive(P: list, dom) -> tuple[list, list]:
    c = _rec_content(P, dom)
    if len(c) <= 1:
        return c, P
    return c, [dense_exquo(row, c, dom) if row else [] for row in P]


def _rec_scale(P: list, c: list) -> list:
    return [dense_mul(row, c) for row in P]


def _rec_prem(A: list, B: list, dom) -> list:
    """Pseudo-remainder of A by B in K[X][Y]."""
    dB = len(B) - 1
    lcB = B[-1]
    R = [list(r) for r in A]
    e = len(A) - 1 - dB + 1
    while R and len(R) - 1 >= dB:
        shift = len(R) - 1 - dB
        lcR = R[-1]
        R = [dense_mul(r, lcB) for r in R]
        for i in range(dB):
            R[shift + i] = dense_sub(R[shift + i], dense_mul(lcR, B[i]))
        R.pop()
        _rec_strip(R, dom)
        e -= 1
    if e > 0 and R:
        f = [dom.one]
        for _ in range(e):
            f = dense_mul(f, lcB)
        R = [dense_mul(r, f) for r in R]
    return R


def _rec_exquo(A: list, B: list, dom):
    """Exact quotient in K[X][Y], or None when B does not divide A."""
    A = [list(r) for r in A]
    for r in A:
        dense_strip(r)
    while A and not A[-1]:
        A.pop()
    B = [list(r) for r in B]
    for r in B:
        dense_strip(r)
    while B and not B[-1]:
        B.pop()
    if not B:
        raise ZeroDivisionError
    dB = len(B) - 1
    lcB = B[-1]
    if not A:
        return []
    if len(A) - 1 < dB:
        return None
    Q = [[] for _ in range(len(A) - dB)]
    while A:
        if len(A) - 1 < dB:
            return None
        shift = len(A) - 1 - dB
        try:
            q = dense_exquo(A[-1], lcB, dom)
        except ArithmeticError:
            return None
        Q[shift] = q
        for i in range(dB + 1):
            A[shift + i] = dense_sub(A[shift + i], dense_mul(q, B[i]))
        if A[-1]:
            return None
        while A and not A[-1]:
            A.pop()
    return Q


def _rec_is_const(P: list) -> bool:
    return len(P) <= 1 and (not P or len(P[0]) <= 1)


def _rec_gcd(A: list, B: list, dom) -> list:
    A = _rec_strip([list(r) for r in A], dom)
    B = _rec_strip([list(r) for r in B], dom)
    if not A:
        return B
    if not B:
        return A
    cA, pA = _rec_primitive(A, dom)
    cB, pB = _rec_primitive(B, dom)
    c = dense_gcd(cA, cB, dom)
    if len(pA) < len(pB):
        pA, pB = pB, pA
    a, b = pA, pB
    while len(b) > 1:
        r = _rec_prem(a, b, dom)
        if not r:
            break
        a = b
        _, b = _rec_primitive(r, dom)
        b = _monic_rec(b, dom)
    else:
        # b has Y-degree 0: only the content part survives
        return [c]
    _, g = _rec_primitive(b, dom)
    return _rec_scale(g, c)


def _monic_rec(P: list, dom) -> list:
    """Scale so that the leading X-coefficient of the leading Y-coefficient is 1."""
    if not P or not P[-1]:
        return P
    inv = dom.inv(P[-1][-1])
    return [[c * inv for c in row] for row in P]


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def _check_domains(f: BiPoly, g: BiPoly):
    if not _same_domain(f.dom, g.dom):
        raise ValueError(f"domain mismatch: {f.dom!r} vs {g.dom!r}")


def bi_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    """Normalized gcd (see :meth:`BiPoly.normalize`); ``bi_gcd(f, 0)`` is ``f``."""
    _check_domains(f, g)
    if not f:
        return g.normalize()
    if not g:
        return f.normalize()
    if f.is_constant() or g.is_constant():
        return BiPoly.const(1, f.dom)
    rec = _rec_gcd(to_rec(f), to_rec(g), f.dom)
    return from_rec(rec, f.dom).normalize()


@dataclass(frozen=True)
class RationalFunctionPair:
    """``f/g`` with ``gcd(f, g) = 1`` and ``g != 0``."""

    f: BiPoly
    g: BiPoly

    def __post_init__(self):
        if not self.g:
            raise ZeroDivisionError("denominator of a rational function is zero")
        if self.f.dom is not QQ or self.g.dom is not QQ:
            raise ValueError("rational functions have rational coefficients")
        if not bi_gcd(self.f, self.g).is_constant():
            raise NotCoprimeError(f"gcd({self.f}, {self.g}) is not constant")

    @classmethod
    def reduced(cls, f: BiPoly, g: BiPoly) -> "RationalFunctionPair":
        """Build ``f/g`` after cancelling their gcd."""
        h = bi_gcd(f, g)
        if not h.is_constant():
            f, g = f.exquo(h), g.exquo(h)
        return cls(f, g)

    @property
    def degree(self) -> int:
        return max(self.f.degree, self.g.degree)

    @property
    def is_constant(self) -> bool:
        # coprime f, g: f/g is constant only when both are
        return self.f.is_constant() and self.g.is_constant()

    def __str__(self):
        return f"({self.f})/({self.g})"


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``f = unit * prod(factor**mult)`` with pairwise coprime squarefree factors."""

    factors: tuple

    def reconstruct(self) -> BiPoly:
        out = None
        for fac, e in self.factors:
            out = fac ** e if out is None else out * fac ** e
        return out

    @property
    def multiplicities(self) -> tuple:
        return tuple(e for _, e in self.factors)

    def squarefree_part(self) -> BiPoly:
        out = None
        for fac, _ in self.factors:
            out = fac if out is None else out * fac
        return out


def _yun_dense(p: list, dom) -> list:
    """Yun decomposition of a univariate dense polynomial (char 0)."""
    p = dense_strip(list(p))
    out = []
    if len(p) <= 1:
        return out
    dp = dense_deriv(p)
    g = dense_gcd(p, dp, dom)
    c = dense_exquo(p, g, dom)
    d = dense_sub(dense_exquo(dp, g, dom), dense_deriv(c))
    i = 1
    while len(c) > 1:
        a = dense_gcd(c, d, dom)
        if len(a) > 1:
            out.append((a, i))
        c = dense_exquo(c, a, dom)
        d = dense_sub(dense_exquo(d, a, dom), dense_deriv(c))
        i += 1
    return out


def _yun_x(f: BiPoly) -> list:
    """Yun w.r.t. X for f without nonconstant factors free of X."""
    out = []
    if f.deg_x <= 0:
        return out
    fx = f.dx()
    g = bi_gcd(f, fx)
    c = f.exquo(g)
    d = fx.exquo(g) - c.dx()
    i = 1
    while not c.is_constant():
        a = bi_gcd(c, d)
        if not a.is_constant():
            out.append((a, i))
        c = c.exquo(a)
        d = d.exquo(a) - c.dx()
        i += 1
    return out


def squarefree_decompose(f: BiPoly) -> SquarefreeDecomposition:
    """Yun-style squarefree decomposition, factors sorted by multiplicity."""
    if f.is_constant():
        raise ValueError("squarefree decomposition of a constant")
    dom = f.dom
    # content with respect to X is a polynomial in Y alone
    cont = _rec_content(to_rec(f.swap()), dom)
    layers: dict[int, BiPoly] = {}

    def put(fac: BiPoly, e: int):
        layers[e] = fac if e not in layers else layers[e] * fac

    pp = f
    if len(cont) > 1:
        cont_poly = BiPoly._raw({(0, j): c for j, c in enumerate(cont) if c}, dom)
        pp = f.exquo(cont_poly)
        for fac, e in _yun_dense(cont, dom):
            put(BiPoly._raw({(0, j): c for j, c in enumerate(fac) if c}, dom), e)
    for fac, e in _yun_x(pp):
        put(fac, e)
    return SquarefreeDecomposition(
        tuple((layers[e].normalize(), e) for e in sorted(layers))
    )


def squarefree_part(f: BiPoly) -> BiPoly:
    """``f / gcd(f, f_X, f_Y)``, normalized."""
    if f.is_constant():
        raise ValueError("squarefree part of a constant")
    g = bi_gcd(bi_gcd(f, f.dx()), f.dy())
    return f.exquo(g).normalize()


def is_squarefree(f: BiPoly) -> bool:
    return bi_gcd(bi_gcd(f, f.dx()), f.dy()).is_constant()


def _det3(M) -> Rational:
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def homogeneous_linear_change(f: BiPoly, d: int, M) -> BiPoly:
    """Homogenize to degree ``d``, substitute (X,Y,Z) <- M (X,Y,Z), set Z = 1."""
    if f.degree > d:
        raise ValueError(f"degree {f.degree} exceeds homogenization degree {d}")
    M = [[as_rational(v) for v in row] for row in M]
    if _det3(M) == 0:
        raise ValueError("coordinate change matrix is singular")
    dom = f.dom
    lin = [
        BiPoly({(1, 0): row[0], (0, 1): row[1], (0, 0): row[2]}, dom) for row in M
    ]
    cache: dict = {}

    def power(k: int, e: int) -> BiPoly:
        key = (k, e)
        if key not in cache:
            cache[key] = lin[k] ** e
        return cache[key]

    out = BiPoly._raw({}, dom)
    for (i, j), c in f.terms.items():
        out = out + power(0, i) * power(1, j) * power(2, d - i - j) * c
    return out


def inverse_matrix3(M) -> list:
    M = [[as_rational(v) for v in row] for row in M]
    det = _det3(M)
    if det == 0:
        raise ValueError("singular matrix")
    cof = [[None] * 3 for _ in range(3)]
    for r in range(3):
        for c in range(3):
            minor = [[M[i][j] for j in range(3) if j != c] for i in range(3) if i != r]
            cof[r][c] = (-1) ** (r + c) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    return [[cof[c][r] / det for c in range(3)] for r in range(3)]


def _rec_resultant(A: list, B: list, dom) -> list:
    """Resultant in K[X] of two K[X][Y] polynomials (subresultant PRS)."""
    A = _rec_strip([list(r) for r in A], dom)
    B = _rec_strip([list(r) for r in B], dom)
    if not A or not B:
        return []
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if ((len(A) - 1) * (len(B) - 1)) % 2:
            s = -1
    a, A = _rec_primitive(A, dom)
    b, B = _rec_primitive(B, dom)
    one = [dom.one]
    t = dense_mul(_dpow(a, len(B) - 1), _dpow(b, len(A) - 1))
    g = one
    h = one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _rec_prem(A, B, dom)
        A = B
        divisor = dense_mul(g, _dpow(h, delta))
        B = [dense_exquo(r, divisor, dom) if r else [] for r in R]
        _rec_strip(B, dom)
        g = A[-1]
        if delta == 0:
            pass
        else:
            h = dense_exquo(_dpow(g, delta), _dpow(h, delta - 1), dom)
        if len(B) - 1 <= 0:
            break
    if not B:
        return []
    dA = len(A) - 1
    h = dense_exquo(_dpow(B[0], dA), _dpow(h, dA - 1), dom) if dA >= 1 else one
    out = dense_mul(t, h)
    return [c * s for c in out] if s < 0 else out


def _dpow(p: list, e: int) -> list:
    out = [p[-1] * 0 + 1] if p else [1]
    for _ in range(e):
        out = dense_mul(out, p)
    return out


def resultant_y(f: BiPoly, g: BiPoly) -> BiPoly:
    """Res_Y(f, g) as a polynomial in X (stored with Y-exponent 0)."""
    _check_domains(f, g)
    if f.deg_y < 1 or g.deg_y < 1:
        raise ValueError("resultant_y needs both inputs of positive degree in Y")
    res = _rec_resultant(to_rec(f), to_rec(g), f.dom)
    return BiPoly._raw({(i, 0): c for i, c in enumerate(res) if c}, f.dom)
