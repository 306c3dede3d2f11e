"""Exact scalars: rationals, univariate polynomials over Q, and D5 extensions.

Everything in this module is immutable.  Generic dense routines (``dense_*``)
work on plain lists of coefficients, lowest degree first, over any coefficient
*domain* object exposing ``zero``, ``one``, ``convert``, ``is_zero`` and
``inv``.  Two domains exist: :data:`QQ` and :class:`ExtScope`.

Dynamic evaluation
------------------
An :class:`ExtScope` is ``Q[t]/(q)`` with ``q`` squarefree but not necessarily
irreducible.  Whenever a computation needs to invert (or zero-test) an element
that is a zero divisor, :class:`SplitRequired` is raised carrying a
:class:`SplitEvent`.  :func:`run_branches` catches it and restarts the
computation on both factors of the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq, mpz

Rational = type(mpq(0))

__all__ = [
    "Rational",
    "as_rational",
    "QQ",
    "UniPoly",
    "ExtScope",
    "ExtElement",
    "SplitEvent",
    "SplitRequired",
    "uni_gcd",
    "uni_xgcd",
    "ext_invert",
    "squarefree_part_uni",
    "run_branches",
]


def as_rational(value) -> Rational:
    """Coerce ints, strings like ``"3/4"``, Fractions and mpq to an mpq."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            num, den = value.split("/")
            return mpq(int(num), int(den))
        return mpq(int(value))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return mpq(int(value.numerator), int(value.denominator))
    return mpq(value)


class _RationalField:
    """The field Q, elements are gmpy2 ``mpq``."""

    zero = mpq(0)
    one = mpq(1)

    def convert(self, value) -> Rational:
        return as_rational(value)

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / a

    def __repr__(self):
        return "QQ"


QQ = _RationalField()


# ---------------------------------------------------------------------------
# dense univariate helpers over a domain
# ---------------------------------------------------------------------------


def dense_strip(p: list) -> list:
    """Drop structurally zero leading coefficients (in place) and return p."""
    while p and not p[-1]:
        p.pop()
    return p


def dense_add(p: Sequence, q: Sequence) -> list:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return dense_strip(out)


def dense_sub(p: Sequence, q: Sequence) -> list:
    out = list(p) + [c * 0 for c in q[len(p):]]
    for i, c in enumerate(q):
        out[i] = out[i] - c
    return dense_strip(out)


def dense_neg(p: Sequence) -> list:
    return [-c for c in p]


def dense_scale(p: Sequence, c) -> list:
    if not c:
        return []
    return dense_strip([a * c for a in p])


def dense_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    zero = p[-1] * 0
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return dense_strip(out)


def dense_deriv(p: Sequence) -> list:
    return dense_strip([p[i] * i for i in range(1, len(p))])


def dense_divmod(p: Sequence, q: Sequence, dom) -> tuple[list, list]:
    """Euclidean division; inverting lc(q) may raise SplitRequired."""
    q = dense_strip(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = dense_strip(list(p))
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [], r
    inv_lc = dom.inv(q[-1])
    quo = [dom.zero] * (len(r) - dq)
    while r and len(r) - 1 >= dq:
        shift = len(r) - 1 - dq
        c = r[-1] * inv_lc
        quo[shift] = c
        for i in range(dq):
            r[shift + i] = r[shift + i] - c * q[i]
        r.pop()
        dense_strip(r)
    return dense_strip(quo), r


def dense_monic(p: Sequence, dom) -> list:
    p = dense_strip(list(p))
    if not p:
        return p
    inv_lc = dom.inv(p[-1])
    return [c * inv_lc for c in p[:-1]] + [dom.one]


def dense_gcd(p: Sequence, q: Sequence, dom) -> list:
    """Monic gcd by the Euclidean algorithm."""
    a = dense_strip(list(p))
    b = dense_strip(list(q))
    while b:
        b = dense_monic(b, dom)
        a, b = b, dense_divmod(a, b, dom)[1]
    return dense_monic(a, dom)


def dense_exquo(p: Sequence, q: Sequence, dom) -> list:
    quo, rem = dense_divmod(p, q, dom)
    if rem:
        raise ArithmeticError("inexact univariate division")
    return quo


def dense_pow(p: Sequence, e: int) -> list:
    out = [1]
    base = list(p)
    while e:
        if e & 1:
            out = dense_mul(out, base)
        e >>= 1
        if e:
            base = dense_mul(base, base)
    return out


def dense_require_nonzero(p: list, dom) -> list:
    """Strip ``p`` and make sure its leading coefficient is a unit.

    Over an extension this guarantees that ``p`` is nonzero, with the same
    degree, on every component of the current branch.
    """
    dense_strip(p)
    if p:
        dom.inv(p[-1])
    return p


# ---------------------------------------------------------------------------
# UniPoly over Q
# ---------------------------------------------------------------------------


class UniPoly:
    """Univariate polynomial over Q, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        dense_strip(cs)
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list) -> "UniPoly":
        obj = object.__new__(cls)
        obj.coeffs = tuple(dense_strip(coeffs))
        return obj

    @classmethod
    def gen(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    # -- basic queries -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else mpq(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other):
        return UniPoly._raw(dense_add(self.coeffs, self._coerce(other).coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        return UniPoly._raw(dense_sub(self.coeffs, self._coerce(other).coeffs))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return UniPoly._raw(dense_neg(self.coeffs))

    def __mul__(self, other):
        return UniPoly._raw(dense_mul(self.coeffs, self._coerce(other).coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return UniPoly._raw(dense_pow(self.coeffs, e)) if e else UniPoly([1])

    def __divmod__(self, other):
        q, r = dense_divmod(self.coeffs, self._coerce(other).coeffs, QQ)
        return UniPoly._raw(q), UniPoly._raw(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(dense_deriv(self.coeffs))

    def monic(self) -> "UniPoly":
        return UniPoly._raw(dense_monic(self.coeffs, QQ))

    def primitive_integer(self) -> list:
        """Integer coefficient list with content 1 and positive lead."""
        if not self.coeffs:
            return []
        den = mpz(1)
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [mpz(c * den) for c in self.coeffs]
        g = mpz(0)
        for c in ints:
            g = _gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return [c // g for c in ints]

    # -- display -------------------------------------------------------------
    def to_str(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{_fmt_q(mag)}*{mono}"
            else:
                body = _fmt_q(mag)
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"UniPoly({self.to_str()})"


def _gcd(a, b):
    from gmpy2 import gcd

    return gcd(a, b)


def _fmt_q(c: Rational) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def uni_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over Q; ``uni_gcd(p, 0) == p.monic()``."""
    return UniPoly._raw(dense_gcd(p.coeffs, q.coeffs, QQ))


def uni_xgcd(p: UniPoly, q: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return (g, s, u) with s*p + u*q = g, g monic."""
    r0, r1 = p, q
    s0, s1 = UniPoly([1]), UniPoly()
    u0, u1 = UniPoly(), UniPoly([1])
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        u0, u1 = u1, u0 - quo * u1
    if not r0:
        return r0, s0, u0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, u0 * inv


def squarefree_part_uni(p: UniPoly) -> UniPoly:
    """Monic ``p / gcd(p, p')``: same roots, each simple."""
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    return p.exquo(uni_gcd(p, p.derivative())).monic()


# ---------------------------------------------------------------------------
# dynamic evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitEvent:
    """A nontrivial coprime factorisation ``left * right`` of a modulus."""

    left: UniPoly
    right: UniPoly


class SplitRequired(Exception):
    """Raised by extension arithmetic when a zero divisor must be resolved."""

    def __init__(self, event: SplitEvent):
        super().__init__(f"split {event.left} | {event.right}")
        self.event = event


class ExtScope:
    """The algebra ``Q[t]/(q)`` for a monic squarefree ``q`` of degree >= 1."""

    def __init__(self, modulus: UniPoly):
        if modulus.degree < 1:
            raise ValueError("extension modulus must have degree >= 1")
        modulus = modulus.monic()
        if uni_gcd(modulus, modulus.derivative()).degree > 0:
            raise ValueError(f"modulus {modulus} is not squarefree")
        self.modulus = modulus
        self.degree = modulus.degree
        self._mod = modulus.coeffs
        self.zero = ExtElement(self, ())
        self.one = ExtElement(self, (mpq(1),))

    def __eq__(self, other):
        return isinstance(other, ExtScope) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("ExtScope", self.modulus))

    def __repr__(self):
        return f"ExtScope({self.modulus.to_str()})"

    @property
    def gen(self) -> "ExtElement":
        """The class of t."""
        return self.element(UniPoly.gen())

    def element(self, p) -> "ExtElement":
        if not isinstance(p, UniPoly):
            p = UniPoly([p])
        return ExtElement(self, self._reduce(list(p.coeffs)))

    def convert(self, value) -> "ExtElement":
        if isinstance(value, ExtElement):
            if value.scope is self:
                return value
            return self.element(UniPoly._raw(list(value.coeffs)))
        c = as_rational(value)
        return ExtElement(self, (c,) if c else ())

    def _reduce(self, cs: list) -> tuple:
        """Reduce a coefficient list modulo the (monic) modulus."""
        dense_strip(cs)
        n = self.degree
        mod = self._mod
        while len(cs) > n:
            c = cs.pop()
            if c:
                shift = len(cs) - n
                for i in range(n):
                    cs[shift + i] -= c * mod[i]
            dense_strip(cs)
        return tuple(cs)

    def is_zero(self, a: "ExtElement") -> bool:
        """Zero test on every component; splits if ``a`` is a zero divisor."""
        if not a.coeffs:
            return True
        g = uni_gcd(UniPoly._raw(list(a.coeffs)), self.modulus)
        if g.degree == 0:
            return False
        raise SplitRequired(SplitEvent(g, self.modulus.exquo(g)))

    def inv(self, a: "ExtElement") -> "ExtElement":
        res = ext_invert(a, self)
        if isinstance(res, SplitEvent):
            raise SplitRequired(res)
        return res

    def restrict(self, modulus: UniPoly) -> "ExtScope":
        """The scope for a factor of the modulus."""
        return ExtScope(modulus)


class ExtElement:
    """An element of an :class:`ExtScope`, reduced modulo its modulus."""

    __slots__ = ("scope", "coeffs")

    def __init__(self, scope: ExtScope, coeffs: tuple):
        self.scope = scope
        self.coeffs = coeffs

    def __bool__(self):
        # structural test only; use scope.is_zero for a branch-aware answer
        return bool(self.coeffs)

    def _other(self, other) -> tuple:
        if isinstance(other, ExtElement):
            if other.scope is not self.scope and other.scope != self.scope:
                raise ValueError("mixing elements of different extension scopes")
            return other.coeffs
        c = as_rational(other)
        return (c,) if c else ()

    def __add__(self, other):
        o = self._other(other)
        a = self.coeffs
        if len(a) < len(o):
            a, o = o, a
        out = list(a)
        for i, c in enumerate(o):
            out[i] = out[i] + c
        return ExtElement(self.scope, tuple(dense_strip(out)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.scope, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        a = self.coeffs
        n = max(len(a), len(o))
        out = [mpq(0)] * n
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(o):
            out[i] = out[i] - c
        return ExtElement(self.scope, tuple(dense_strip(out)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        a = self.coeffs
        if not a or not o:
            return ExtElement(self.scope, ())
        if len(o) == 1:
            c = o[0]
            return ExtElement(self.scope, tuple(x * c for x in a))
        if len(a) == 1:
            c = a[0]
            return ExtElement(self.scope, tuple(x * c for x in o))
        out = [mpq(0)] * (len(a) + len(o) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(o):
                    out[i + j] += x * y
        return ExtElement(self.scope, self.scope._reduce(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ExtElement):
            other = self.scope.convert(other)
        return self * self.scope.inv(other)

    def __rtruediv__(self, other):
        return self.scope.convert(other) * self.scope.inv(self)

    def __pow__(self, e: int):
        out = self.scope.one
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        try:
            return self.coeffs == self._other(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    @property
    def poly(self) -> UniPoly:
        return UniPoly._raw(list(self.coeffs))

    def __repr__(self):
        return f"[{self.poly.to_str()}]"

    __str__ = __repr__


def ext_invert(a: ExtElement, scope: ExtScope) -> ExtElement | SplitEvent:
    """Inverse of ``a`` modulo the scope's modulus, or the split it exposes.

    Raises ZeroDivisionError when ``a`` is zero on every component.
    """
    p = a.poly if isinstance(a, ExtElement) else UniPoly([a])
    if not p:
        raise ZeroDivisionError("inverse of zero in extension")
    g, s, _ = uni_xgcd(p, scope.modulus)
    if g.degree == 0:
        return scope.element(s)
    if g.degree == scope.degree:
        raise ZeroDivisionError("inverse of zero in extension")
    return SplitEvent(g, scope.modulus.exquo(g))


def run_branches(fn: Callable, scope: ExtScope, *, max_splits: int = 10_000) -> list:
    """Run ``fn(scope)`` under dynamic evaluation.

    Returns ``[(final_scope, result), ...]`` whose moduli multiply to the
    original modulus.  ``fn`` must be a pure function of its scope argument
    (its inputs are re-derived from the scope on every attempt).
    """
    pending = [scope]
    done = []
    splits = 0
    while pending:
        sc = pending.pop()
        try:
            done.append((sc, fn(sc)))
        except SplitRequired as exc:
            splits += 1
            if splits > max_splits:
                raise RuntimeError("dynamic evaluation did not converge") from exc
            ev = exc.event
            pending.append(ExtScope(ev.right))
            pending.append(ExtScope(ev.left))
    return done
