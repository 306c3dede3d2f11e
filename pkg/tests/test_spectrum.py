import random

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from oracles import ST, conic_determinant, conic_member_rank, conic_rank_at_most_one, random_poly
from pencilbound import BiPoly, X, Y
from pencilbound.bipoly import RationalFunctionPair, bi_gcd
from pencilbound.corpus import constructed_pencils, corpus_families, sharp, worked_example
from pencilbound.derivation import Derivation, jacobian_derivation
from pencilbound.errors import ConstantFunctionError, DecomposableError, NotFirstIntegralError
from pencilbound.field import UniPoly
from pencilbound.spectrum import (
    Indecomposability,
    SpectrumValue,
    _classify,
    analyze_pencil,
    generic_change,
    is_indecomposable_probabilistic,
    poincare_relation_check,
    verify_remarkable_bounds,
)

t = UniPoly.gen()
one = BiPoly.const(1)

FIXTURES = [item.pair for item in constructed_pencils()]
CONICS = [item.pair for item in constructed_pencils() if item.pair.degree == 2] + [worked_example().pair]

DECOMPOSABLE = [
    RationalFunctionPair((X * Y) ** 2, one),
    RationalFunctionPair((X + Y**2) ** 3, one),
    RationalFunctionPair((X**2 + Y) ** 2 + 1, one),
    RationalFunctionPair(X**2, Y**2),
    RationalFunctionPair((X + Y) ** 3, (X - Y + 1) ** 3),
]


def to_sympy_uni(q: UniPoly):
    return sp.Poly([sp.Rational(int(c.numerator), int(c.denominator)) for c in reversed(q.coeffs)], ST)


class TestExamples:
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_sharp(self, k):
        rep = analyze_pencil(sharp(k).pair)
        assert (rep.rho, rep.sigma_count, rep.gamma_count) == (k, k + 1, 1)
        finite = [e for e in rep.entries if not e.value.is_lambda_zero]
        assert [e.value.modulus for e in finite] == [t**k - 1]
        assert finite[0].n == 2

    def test_worked(self):
        rep = analyze_pencil(RationalFunctionPair(Y, X**2))
        assert (rep.rho, rep.sigma_count, rep.gamma_count) == (1, 2, 1)
        assert [str(e.value) for e in rep.entries] == ["(1:0)", "(0:1)"]

    def test_degree_one(self):
        rep = analyze_pencil(RationalFunctionPair(X, Y))
        assert rep.entries == ()

    def test_value_printing(self):
        assert str(SpectrumValue()) == "(0:1)"
        assert str(SpectrumValue(t - mpq(1, 3))) == "(1:1/3)"
        assert str(SpectrumValue(t**2 - 2)) == "(1:t) with t^2 - 2 = 0"

    def test_constant_rejected(self):
        with pytest.raises(ConstantFunctionError):
            analyze_pencil(RationalFunctionPair(one * 2, one))

    def test_wrong_derivation(self):
        with pytest.raises(NotFirstIntegralError):
            verify_remarkable_bounds(RationalFunctionPair(Y, X**2), Derivation(X, Y))


class TestConicOracle:
    """For conics: remarkable t are roots of det(Qf - t Qg), n is read off the rank."""

    @pytest.mark.parametrize("r", CONICS, ids=str)
    def test_finite_values(self, r):
        rep = analyze_pencil(r)
        det = sp.Poly(conic_determinant(r.f, r.g), ST)
        expected = sp.Poly(sp.sqf_part(det.as_expr()), ST).monic() if det.degree() > 0 else sp.Poly(1, ST)
        got = sp.Poly(1, ST)
        for e in rep.entries:
            if not e.value.is_lambda_zero:
                got = got * to_sympy_uni(e.value.modulus)
        assert got.monic() == expected

    @pytest.mark.parametrize("r", CONICS, ids=str)
    def test_ranks(self, r):
        rep = analyze_pencil(r)
        for e in rep.entries:
            if e.value.is_lambda_zero:
                double = conic_member_rank(r.g, one, 0) == 1
            else:
                double = conic_rank_at_most_one(r.f, r.g, to_sympy_uni(e.value.modulus))
            # rank 2: two lines; rank 1: a double line
            assert (e.n, e.multiplicity_profile) == ((1, ((1, 2),)) if double else (2, ((2, 1),)))

    def test_infinity_rank(self):
        # (0:1) is remarkable exactly when Qg is singular
        for r in CONICS:
            rep = analyze_pencil(r)
            singular = conic_member_rank(r.g, one, 0) < 3
            assert any(e.value.is_lambda_zero for e in rep.entries) == singular


class TestInvariance:
    @pytest.mark.parametrize("r", FIXTURES, ids=str)
    def test_two_seeds(self, r):
        assert analyze_pencil(r, seed=0).aggregates() == analyze_pencil(r, seed=5).aggregates()

    def test_rational_roots_agree_with_direct_evaluation(self):
        for r in FIXTURES:
            rep = analyze_pencil(r)
            _, F, G = generic_change(r, random.Random(rep.seed))
            for e in rep.entries:
                if e.value.is_lambda_zero:
                    continue
                for root in sp.roots(to_sympy_uni(e.value.modulus), ST, filter="Q"):
                    c = mpq(int(root.p), int(root.q))
                    data = _classify(F - G * c, r.f - r.g * c, r.degree)
                    assert data == (e.n, e.multiplicity_profile, e.in_gamma,
                                    e.degree_defect, e.repeated_degree)

    def test_deg_R_additive(self):
        for r in FIXTURES:
            rep = analyze_pencil(r)
            assert rep.deg_R == sum(e.m * e.repeated_degree for e in rep.entries)


def _corpus_pairs():
    return [item for item in corpus_families() if item.pair is not None]


class TestBounds:
    def test_chain_on_corpus(self):
        for item in _corpus_pairs():
            rep = analyze_pencil(item.pair)
            assert rep.sigma_count <= rep.rho + rep.gamma_count <= rep.rho + 3, item.name
            assert rep.gamma_count <= 3

    def test_verify_on_corpus(self):
        for item in _corpus_pairs():
            v = verify_remarkable_bounds(item.pair)
            assert not v.falsified, (item.name, v.summary())

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10**6))
    def test_chain_on_random_pencils(self, seed):
        rng = random.Random(seed)
        f, g = random_poly(rng, 2, 4), random_poly(rng, 2, 3)
        if not g or not bi_gcd(f, g).is_constant():
            return
        r = RationalFunctionPair(f, g)
        if r.is_constant:
            return
        try:
            rep = analyze_pencil(r)
        except DecomposableError:
            return
        assert all(rep.verdicts.values())


class TestPoincare:
    def test_examples(self):
        v = poincare_relation_check(sharp(3).pair)
        assert (v.deg_f, v.deg_g, v.k, v.deg_R) == (4, 0, 3, 0) and v.holds
        v = poincare_relation_check(RationalFunctionPair(Y, X**2))
        assert (v.deg_f, v.deg_g, v.k, v.deg_R) == (1, 2, 1, 1) and v.holds

    def test_corpus(self):
        for item in _corpus_pairs():
            assert poincare_relation_check(item.pair).holds, item.name


class TestIndecomposability:
    @pytest.mark.parametrize("r", DECOMPOSABLE, ids=str)
    def test_compositions_flagged(self, r):
        assert is_indecomposable_probabilistic(r, trials=5) is Indecomposability.LIKELY_DECOMPOSABLE
        with pytest.raises(DecomposableError):
            analyze_pencil(r)

    @pytest.mark.parametrize("r", FIXTURES, ids=str)
    def test_fixtures_certified(self, r):
        assert is_indecomposable_probabilistic(r) is Indecomposability.INDECOMPOSABLE

    def test_jacobian_of_fixtures(self):
        for r in FIXTURES:
            assert jacobian_derivation(r).k >= 1
