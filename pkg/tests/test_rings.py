from __future__ import annotations

import math
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import BACKENDS, GOLDEN, ring_values
from pfkit.rings import (
    GaloisField,
    Integers,
    LocalizedIntegers,
    LocalizedPolynomialRing,
    ModularRing,
    NotAUnitError,
    NumberRing,
    ProductRing,
    Rationals,
    RingMismatchError,
    Verdict,
    canonical_form,
    is_unit,
    ring_add,
    ring_characteristic,
    ring_eq,
    ring_from_json,
    ring_inverse,
    ring_mul,
    ring_neg,
)

NAMES = sorted(BACKENDS)


def triples(name):
    R = BACKENDS[name]
    v = ring_values(R)
    return st.tuples(v, v, v)


@pytest.mark.parametrize("name", NAMES)
def test_ring_axioms(name):
    R = BACKENDS[name]

    @given(triples(name))
    def check(t):
        a, b, c = t
        assert a + b == b + a and a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + R.zero() == a and a * R.one() == a
        assert a + (-a) == R.zero()
        assert a * R.zero() == R.zero()

    check()


@pytest.mark.parametrize("name", NAMES)
def test_canonical_form_idempotent_and_text_roundtrip(name):
    R = BACKENDS[name]

    @given(ring_values(R))
    def check(a):
        once = canonical_form(R, a)
        assert canonical_form(R, once) == once == a
        assert R.element(str(a)) == a

    check()


@pytest.mark.parametrize("name", NAMES)
def test_inverse_of_units(name):
    R = BACKENDS[name]

    @given(ring_values(R))
    def check(a):
        verdict = is_unit(a)
        if verdict is Verdict.YES:
            b = ring_inverse(a)
            assert a * b == R.one()
            assert is_unit(b) is Verdict.YES
        elif verdict is Verdict.NO:
            with pytest.raises(NotAUnitError):
                ring_inverse(a)

    check()


@pytest.mark.parametrize("name", NAMES)
def test_json_roundtrip(name):
    R = BACKENDS[name]
    assert ring_from_json(R.to_json()) == R


# -- worked examples ---------------------------------------------------------


def test_addition_examples():
    Z = Integers()
    assert ring_add(Z.from_int(2), Z.from_int(3)) == 5
    D = LocalizedIntegers((2,))
    assert ring_add(D.element("1/2"), D.element("1/2")) == D.one()
    M = ModularRing(6)
    assert ring_add(M.from_int(4), M.from_int(5)) == 3


def test_multiplication_examples():
    F4 = GaloisField(2, 2)
    x = F4.gen()
    assert ring_mul(x, x) == x + 1
    g = GOLDEN.ring_generators()[0]
    assert ring_mul(g, g - 1) == GOLDEN.one()
    P = ProductRing((GaloisField(2), GaloisField(3)))
    a = P.element("(1,2)")
    assert ring_mul(a, a) == P.element("(1,1)")
    assert ring_neg(P.one()) == a


def test_equality_examples():
    L = LocalizedIntegers((2, 3))
    assert ring_eq(L.element("6/6"), L.one())
    S = NumberRing((1, -1, 1), ((0, 1),))
    x = S.ring_generators()[0]
    assert ring_eq(x * ring_inverse(x), S.one())
    M = ModularRing(6)
    assert ring_eq(M.from_int(2), M.from_int(8))
    with pytest.raises(RingMismatchError):
        ring_eq(M.one(), Integers().one())


def test_unit_examples():
    assert is_unit(Integers().from_int(2)) is Verdict.NO
    assert is_unit(LocalizedIntegers((2,)).from_int(-8)) is Verdict.YES
    assert is_unit(ModularRing(6).from_int(5)) is Verdict.YES
    assert is_unit(ModularRing(6).from_int(4)) is Verdict.NO
    L = LocalizedPolynomialRing(2, Integers(), ("x1", "x1+x2"))
    assert is_unit(L.parse("-x1*(x1+x2)^2")) is Verdict.YES
    assert is_unit(L.parse("x2")) is Verdict.NO
    assert is_unit(L.parse("2*x1")) is Verdict.NO


def test_inverse_examples():
    assert ring_inverse(ModularRing(6).from_int(5)) == 5
    assert ring_inverse(GaloisField(3).from_int(2)) == 2
    g = GOLDEN.ring_generators()[0]
    assert ring_inverse(g) == g - 1
    with pytest.raises(NotAUnitError):
        ring_inverse(Integers().from_int(2))


def test_canonical_form_examples():
    assert str(canonical_form(LocalizedIntegers((2,)), "4/8")) == "1/2"
    S = NumberRing((1, -1, 1))
    assert canonical_form(S, "x^3") == S.from_int(-1)


def test_characteristics():
    assert ring_characteristic(GaloisField(5)) == 5
    assert ring_characteristic(ProductRing((GaloisField(2), GaloisField(3)))) == 6
    assert ring_characteristic(ProductRing((GaloisField(2), Integers()))) == 0
    assert ring_characteristic(Integers()) == 0
    assert ring_characteristic(ModularRing(12)) == 12
    assert ring_characteristic(GOLDEN) == 0
    assert ring_characteristic(LocalizedPolynomialRing(1, GaloisField(3))) == 3


# -- independent oracles -----------------------------------------------------


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(2, 30))
def test_modular_matches_python_int(a, b, m):
    R = ModularRing(m)
    assert (R.from_int(a) * R.from_int(b)).data == (a * b) % m
    assert (R.from_int(a) + R.from_int(b)).data == (a + b) % m
    u = R.from_int(a)
    assert (is_unit(u) is Verdict.YES) == (math.gcd(a, m) == 1)


@given(st.integers(-30, 30), st.integers(0, 6), st.integers(-30, 30), st.integers(0, 6))
def test_localized_integers_match_fractions(n1, k1, n2, k2):
    from fractions import Fraction

    R = LocalizedIntegers((2, 3))
    a = R.element(f"{n1}/{2 ** k1}")
    b = R.element(f"{n2}/{3 ** k2}")
    assert sympy.Rational(str(a * b)) == sympy.Rational(n1 * n2, 2 ** k1 * 3 ** k2)
    assert Fraction(str(a + b)) == Fraction(n1, 2 ** k1) + Fraction(n2, 3 ** k2)


def _sympy_field_value(v, p, modulus):
    """Represent a GF(p^k) element as a sympy polynomial reduced mod (modulus, p)."""
    x = sympy.Symbol("x")
    expr = sympy.sympify(str(v).replace("^", "**"), locals={"x": x})
    return sympy.Poly(expr, x, modulus=p).rem(sympy.Poly(modulus, x, modulus=p))


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2)])
def test_galois_field_against_sympy_polynomials(p, k):
    F = GaloisField(p, k)
    x = sympy.Symbol("x")
    mod = sum(c * x ** i for i, c in enumerate(F.modulus))
    rng = random.Random(p * 10 + k)
    elems = list(F.elements())
    assert len(elems) == p ** k
    for _ in range(40):
        a, b = rng.choice(elems), rng.choice(elems)
        expect = _sympy_field_value(a, p, mod) * _sympy_field_value(b, p, mod)
        got = _sympy_field_value(a * b, p, mod)
        assert (expect.rem(sympy.Poly(mod, x, modulus=p)) - got).is_zero


def test_golden_ring_against_numeric_embedding():
    phi = (1 + 5 ** 0.5) / 2
    rng = random.Random(0)
    g = GOLDEN.ring_generators()[0]

    def value(v):
        return float(sympy.sympify(str(v).replace("^", "**")).subs("x", phi))

    for _ in range(50):
        a = GOLDEN.from_int(rng.randint(-3, 3)) + rng.randint(-3, 3) * g ** rng.randint(-3, 3)
        b = GOLDEN.from_int(rng.randint(-3, 3)) + rng.randint(-3, 3) * g ** rng.randint(-3, 3)
        assert value(a * b) == pytest.approx(value(a) * value(b), rel=1e-9, abs=1e-9)
        assert value(a + b) == pytest.approx(value(a) + value(b), rel=1e-9, abs=1e-9)


def test_polynomial_ring_against_sympy_cancel():
    R = LocalizedPolynomialRing(2, Integers(), ("x1", "x1+x2"))
    syms = sympy.symbols("x1 x2")
    rng = random.Random(1)
    atoms = list(R.ring_generators()) + [R.inverse(R.parse("x1")), R.inverse(R.parse("x1+x2"))]

    def expr(v):
        return sympy.sympify(str(v).replace("^", "**"), locals=dict(zip(("x1", "x2"), syms)))

    for _ in range(40):
        a = R.from_int(rng.randint(-2, 2))
        b = R.from_int(rng.randint(-2, 2))
        for _ in range(3):
            a = a * rng.choice(atoms) + rng.randint(-2, 2)
            b = b + rng.choice(atoms) * rng.randint(-2, 2)
        assert sympy.cancel(expr(a * b) - expr(a) * expr(b)) == 0
        assert sympy.cancel(expr(a + b) - expr(a) - expr(b)) == 0
        # normal forms carry reduced fractions: sympy agrees the numerator and denominator are coprime
        num, den = sympy.fraction(sympy.together(expr(a * b)))
        assert sympy.gcd(num, den) in (1, -1)


def test_rationals_and_product_units():
    Q = Rationals()
    assert is_unit(Q.element("-3/7")) is Verdict.YES
    assert is_unit(Q.zero()) is Verdict.NO
    P = ProductRing((GaloisField(2), ModularRing(4)))
    assert is_unit(P.element("(1,3)")) is Verdict.YES
    assert is_unit(P.element("(1,2)")) is Verdict.NO
