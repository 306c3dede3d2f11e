import random
import warnings

import pytest
from gmpy2 import mpq

from oracles import random_poly
from pencilbound import BiPoly, X, Y
from pencilbound.bipoly import RationalFunctionPair, bi_gcd, squarefree_part
from pencilbound.derivation import (
    Derivation,
    apply,
    cofactor_of,
    cofactor_polygon_check,
    is_first_integral,
    jacobian_derivation,
)
from pencilbound.errors import ConstantFunctionError, NotCoprimeError, NotDarbouxError

one = BiPoly.const(1)
EULER = Derivation(X, Y)


def sharp(k):
    return Derivation(X**k - 1, -(k * X ** (k - 1) * Y + 1)), Y * (X**k - 1) + X


def random_derivation(rng, deg=3):
    while True:
        A, B = random_poly(rng, deg, 5), random_poly(rng, deg, 5)
        if (A or B) and bi_gcd(A, B).is_constant():
            return Derivation(A, B)


def random_darboux(rng):
    """D with a prescribed Darboux polynomial f: D(f) = f (a f_X + b f_Y)."""
    while True:
        f = random_poly(rng, 2, 4)
        if f.is_constant():
            continue
        a, b, c = (random_poly(rng, 1, 2) for _ in range(3))
        A = f * a + f.dy() * c
        B = f * b - f.dx() * c
        if (A or B) and bi_gcd(A, B).is_constant():
            return Derivation(A, B), f, a * f.dx() + b * f.dy()


class TestApply:
    def test_euler(self):
        assert apply(EULER, X * Y) == 2 * X * Y

    def test_sharp_first_integral(self):
        for k in range(2, 6):
            D, f = sharp(k)
            assert not apply(D, f)

    def test_constant(self):
        D = random_derivation(random.Random(1))
        assert not apply(D, one * 7)

    def test_invariants(self):
        with pytest.raises(NotCoprimeError):
            Derivation(X * Y, X)
        with pytest.raises(ValueError):
            Derivation(BiPoly(), BiPoly())

    def test_leibniz_100_triples(self):
        rng = random.Random(100)
        for _ in range(100):
            D = random_derivation(rng)
            f, g = random_poly(rng, 3, 4), random_poly(rng, 3, 4)
            assert apply(D, f * g) == f * apply(D, g) + g * apply(D, f)


class TestCofactor:
    def test_examples(self):
        assert cofactor_of(EULER, X).cofactor == one
        assert not cofactor_of(EULER, X**2 + Y).present
        for k in range(2, 6):
            D, f = sharp(k)
            res = cofactor_of(D, f)
            assert res.present and not res.cofactor

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            cofactor_of(EULER, one)

    def test_identity_holds(self):
        rng = random.Random(3)
        for _ in range(30):
            D, f, lam = random_darboux(rng)
            res = cofactor_of(D, f)
            assert res.present and res.cofactor == lam
            assert apply(D, f) == res.cofactor * f

    def test_additivity_50_pairs(self):
        rng = random.Random(50)
        done = 0
        while done < 50:
            f1, f2 = random_poly(rng, 2, 3), random_poly(rng, 2, 3)
            if f1.is_constant() or f2.is_constant():
                continue
            a, b = random_poly(rng, 1, 2), random_poly(rng, 1, 2)
            # both f1 and f2 are Darboux for D = F (a dX + b dY) + c * Ham(F), F = f1 f2
            F = f1 * f2
            c = random_poly(rng, 1, 2)
            A, B = F * a + F.dy() * c, F * b - F.dx() * c
            if not (A or B) or not bi_gcd(A, B).is_constant():
                continue
            D = Derivation(A, B)
            r1, r2, r12 = cofactor_of(D, f1), cofactor_of(D, f2), cofactor_of(D, F)
            if not (r1.present and r2.present):
                continue
            assert r12.present and r12.cofactor == r1.cofactor + r2.cofactor
            done += 1


class TestFirstIntegral:
    def test_examples(self):
        D, f = sharp(3)
        assert is_first_integral(D, RationalFunctionPair(f, one))
        assert is_first_integral(EULER, RationalFunctionPair(X, Y))
        assert not is_first_integral(EULER, RationalFunctionPair(X, one))


class TestJacobian:
    def test_sharp_sign_convention(self):
        for k in range(2, 6):
            D = jacobian_derivation(RationalFunctionPair(Y * (X**k - 1) + X, one))
            assert (D.A, D.B) == (X**k - 1, -(k * X ** (k - 1) * Y + 1))

    def test_worked_example(self):
        D = jacobian_derivation(RationalFunctionPair(Y, X**2))
        assert (D.A, D.B) == (X, 2 * Y)
        assert is_first_integral(D, RationalFunctionPair(Y, X**2))

    def test_euler_type(self):
        D = jacobian_derivation(RationalFunctionPair(X, Y))
        assert (D.A, D.B) == (-X, -Y)

    def test_constant(self):
        with pytest.raises(ConstantFunctionError):
            jacobian_derivation(RationalFunctionPair(one * 3, one))

    def test_postconditions_50_functions(self):
        rng = random.Random(404)
        done = 0
        while done < 50:
            f, g = random_poly(rng, rng.randint(1, 4), 5), random_poly(rng, rng.randint(0, 4), 4)
            if not g or not bi_gcd(f, g).is_constant():
                continue
            r = RationalFunctionPair(f, g)
            if r.is_constant:
                continue
            D = jacobian_derivation(r)
            assert bi_gcd(D.A, D.B).is_constant()
            assert is_first_integral(D, r)
            done += 1

    def test_members_are_darboux(self):
        rng = random.Random(9)
        done = 0
        while done < 20:
            f, g = random_poly(rng, 3, 5), random_poly(rng, 2, 4)
            if not g or not bi_gcd(f, g).is_constant():
                continue
            r = RationalFunctionPair(f, g)
            if r.is_constant:
                continue
            D = jacobian_derivation(r)
            for _ in range(3):
                lam, mu = mpq(rng.randint(-5, 5)), mpq(rng.randint(-5, 5))
                member = f * lam - g * mu
                if member.is_constant():
                    continue
                if g.is_constant():
                    assert cofactor_of(D, member).present
                assert cofactor_of(D, squarefree_part(member)).present
            done += 1


class TestPolygonCheck:
    def test_examples(self):
        D, f = sharp(3)
        assert cofactor_polygon_check(D, f)
        assert cofactor_polygon_check(EULER, X)

    def test_not_darboux(self):
        with pytest.raises(NotDarbouxError):
            cofactor_polygon_check(EULER, X**2 + Y)

    def test_random_darboux_pairs(self):
        # an unproved expectation: failures are reported, not asserted
        rng = random.Random(77)
        misses = []
        for _ in range(40):
            D, f, _ = random_darboux(rng)
            if not cofactor_polygon_check(D, f):
                misses.append((str(D), str(f)))
        if misses:
            warnings.warn(f"cofactor support outside N_D for {len(misses)} pairs: {misses[:3]}")
