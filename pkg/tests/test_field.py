import random

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from pencilbound.field import (
    ExtScope,
    SplitEvent,
    SplitRequired,
    UniPoly,
    ext_invert,
    run_branches,
    squarefree_part_uni,
    uni_gcd,
    uni_xgcd,
)

t = UniPoly.gen()
T = sp.Symbol("t")


def to_sp(p: UniPoly):
    return sp.Poly([sp.Rational(int(c.numerator), int(c.denominator)) for c in reversed(p.coeffs)] or [0], T)


coeff = st.integers(-6, 6)
unipolys = st.lists(coeff, min_size=1, max_size=6).map(UniPoly)


class TestUniGcd:
    def test_common_root(self):
        assert uni_gcd(t**2 - 1, t - 1) == t - 1

    def test_unit(self):
        assert uni_gcd(t, UniPoly([1])) == UniPoly([1])

    def test_divisor(self):
        assert uni_gcd(t**3 - 2 * t, t**2 - 2) == t**2 - 2

    def test_with_zero_is_monic(self):
        assert uni_gcd(3 * t + 6, UniPoly()) == t + 2

    @settings(max_examples=150, deadline=None)
    @given(unipolys, unipolys, unipolys)
    def test_divides_and_cofactors_coprime(self, a, b, c):
        p, q = a * c, b * c
        g = uni_gcd(p, q)
        if not p and not q:
            return
        assert not (p % g) and not (q % g)
        assert uni_gcd(p.exquo(g), q.exquo(g)).degree <= 0

    @settings(max_examples=100, deadline=None)
    @given(unipolys, unipolys)
    def test_matches_sympy(self, p, q):
        if not p and not q:
            return
        expected = sp.gcd(to_sp(p), to_sp(q)).monic()
        assert to_sp(uni_gcd(p, q)).as_expr() == expected.as_expr()

    @settings(max_examples=100, deadline=None)
    @given(unipolys, unipolys)
    def test_bezout(self, p, q):
        g, s, u = uni_xgcd(p, q)
        assert s * p + u * q == g


class TestExtInvert:
    def test_sqrt2(self):
        S = ExtScope(t**2 - 2)
        assert ext_invert(S.gen, S) == S.element(t * mpq(1, 2))

    def test_gaussian(self):
        S = ExtScope(t**2 + 1)
        assert ext_invert(S.element(t + 1), S) == S.element((1 - t) * mpq(1, 2))

    def test_zero_divisor_splits(self):
        S = ExtScope(t**2 - 1)
        ev = ext_invert(S.element(t - 1), S)
        assert isinstance(ev, SplitEvent)
        assert {ev.left, ev.right} == {t - 1, t + 1}

    def test_zero_is_a_defect(self):
        S = ExtScope(t**2 - 2)
        with pytest.raises(ZeroDivisionError):
            ext_invert(S.zero, S)

    @settings(max_examples=150, deadline=None)
    @given(st.lists(coeff, min_size=2, max_size=5), unipolys)
    def test_round_trip_or_split(self, qs, a):
        q = UniPoly(qs + [1])
        if q.degree < 1:
            return
        q = squarefree_part_uni(q)
        if q.degree < 1:
            return
        S = ExtScope(q)
        x = S.element(a)
        if not x:
            return
        res = ext_invert(x, S)
        if isinstance(res, SplitEvent):
            assert res.left * res.right == q
            assert res.left.degree + res.right.degree == q.degree
            assert res.left.degree >= 1 and res.right.degree >= 1
            assert uni_gcd(res.left, res.right) == UniPoly([1])
        else:
            assert x * res == S.one


class TestSquarefreePartUni:
    def test_examples(self):
        assert squarefree_part_uni((t - 1) ** 2 * (t + 2)) == (t - 1) * (t + 2)
        assert squarefree_part_uni(t**2 - 2) == t**2 - 2
        assert squarefree_part_uni(t**3) == t

    def test_zero(self):
        with pytest.raises(ValueError):
            squarefree_part_uni(UniPoly())

    @settings(max_examples=100, deadline=None)
    @given(unipolys, unipolys)
    def test_output_squarefree(self, a, b):
        p = a * a * b
        if p.degree < 1:
            return
        g = squarefree_part_uni(p)
        assert uni_gcd(g, g.derivative()).degree == 0
        assert not (p % g)


class TestExtScope:
    def test_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            ExtScope((t - 1) ** 2)

    def test_modulus_made_monic(self):
        assert ExtScope(2 * t**2 - 4).modulus == t**2 - 2

    def test_zero_test_splits(self):
        S = ExtScope(t**2 - 1)
        with pytest.raises(SplitRequired):
            S.is_zero(S.element(t + 1))

    def test_branches_equal_factored_runs(self):
        # a computation whose answer differs at the two roots of t^2 - 1
        def fn(S):
            return S.is_zero(S.gen - 1)

        q = (t - 1) * (t + 1) * (t - 3)
        got = sorted((sc.modulus.coeffs, r) for sc, r in run_branches(fn, ExtScope(q)))
        merged = {}
        for mod, r in got:
            merged.setdefault(r, UniPoly([1]))
            merged[r] = merged[r] * UniPoly(mod)
        assert merged[True] == t - 1
        assert merged[False] == (t + 1) * (t - 3)
        # direct evaluation on each rational root agrees
        for root in (1, -1, 3):
            assert fn(ExtScope(t - root)) == (root == 1)

    def test_random_products_of_rational_roots(self):
        rng = random.Random(4)
        for _ in range(20):
            roots = rng.sample(range(-6, 7), 4)
            q = UniPoly([1])
            for r in roots:
                q = q * (t - r)
            a = rng.choice(roots)

            def fn(S, a=a):
                return bool(S.is_zero(S.gen - a))

            out = run_branches(fn, ExtScope(q))
            assert sum(sc.degree for sc, _ in out) == 4
            for sc, r in out:
                for root in roots:
                    if not sc.modulus(mpq(root)):
                        assert r == (root == a)
