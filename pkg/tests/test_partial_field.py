from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pfkit.partial_field import (
    CATALOG_NAMES,
    PartialField,
    addition_triples,
    brute_force_fundamentals,
    brute_force_group,
    catalog,
    enumerate_elements,
    fundamental_elements,
    pf_contains,
)
from pfkit.rings import Integers, LocalizedIntegers, ModularRing, RingMismatchError, Verdict

FINITE = ["gf(2)", "gf(3)", "gf(2,2)", "gf(5)", "gf(7)", "modular(6)", "f2xf3"]


def texts(es):
    return set(es.texts())


def test_contains_examples():
    U = catalog("regular")
    assert U.contains(1) is Verdict.YES
    assert U.contains(2) is Verdict.NO
    D = catalog("dyadic")
    assert D.contains("-1/8") is Verdict.YES
    assert D.contains("3") is Verdict.NO
    assert D.contains("0") is Verdict.YES
    with pytest.raises(RingMismatchError):
        pf_contains(U, ModularRing(6).one())


def test_enumeration_examples():
    assert texts(enumerate_elements(catalog("gf(3)"))) == {"0", "1", "2"}
    E = enumerate_elements(catalog("regular"))
    assert texts(E) == {"0", "1", "-1"} and E.complete
    W = enumerate_elements(catalog("dyadic"), bound=2)
    assert texts(W) == {"0", "1", "-1", "2", "-2", "4", "-4", "1/2", "-1/2", "1/4", "-1/4"}
    assert not W.complete


def test_fundamental_examples():
    assert texts(fundamental_elements(catalog("regular"))) == {"0", "1"}
    assert texts(fundamental_elements(catalog("gf(3)"))) == {"0", "1", "2"}
    F = fundamental_elements(catalog("dyadic"))
    assert texts(F) == {"0", "1", "-1", "2", "1/2"}
    assert F.complete


def test_catalog_examples():
    assert catalog("dyadic").ring == LocalizedIntegers((2,))
    f = catalog("f2xf3")
    assert texts(enumerate_elements(f)) == {"(0,0)", "(1,1)", "(1,2)"}
    assert catalog("gf(4)") == catalog("gf(2,2)")
    P = catalog("product(gf(2),gf(3))")
    assert len(enumerate_elements(P)) == 3
    with pytest.raises(KeyError):
        catalog("nonsense")
    with pytest.raises(ValueError):
        catalog("gf(6)")


def test_addition_triples_examples():
    U = catalog("regular")
    got = {t.texts() for t in addition_triples(U)}
    elems = [-1, 0, 1]
    expected = set()
    for p in elems:
        for q in elems:
            if p + q in elems and (str(q), str(p), str(p + q)) not in expected:
                expected.add((str(p), str(q), str(p + q)))
    assert {tuple(sorted(t[:2])) + (t[2],) for t in got} == {tuple(sorted(t[:2])) + (t[2],) for t in expected}
    G2 = {t.texts() for t in addition_triples(catalog("gf(2)"))}
    assert {tuple(sorted(t[:2])) + (t[2],) for t in G2} == {("0", "0", "0"), ("0", "1", "1"), ("1", "1", "0")}
    F = {t.texts() for t in addition_triples(catalog("f2xf3"))}
    assert ("(1,1)", "(1,2)", "(0,0)") in {tuple(sorted(t[:2])) + (t[2],) for t in F}


@pytest.mark.parametrize("name", FINITE)
def test_finite_fundamentals_match_brute_force(name):
    P = catalog(name)
    E = enumerate_elements(P)
    group = brute_force_group(P)
    assert E.complete
    assert set(E) == group | {P.ring.zero()}
    assert set(fundamental_elements(P)) == brute_force_fundamentals(list(E), group)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_closure_and_basic_invariants(name):
    P = catalog(name)
    F = fundamental_elements(P, bound=3)
    one = P.ring.one()
    assert P.ring.zero() in F and one in F
    for p in F:
        assert (one - p) in F or not F.complete
        assert pf_contains(P, one - p, 3) is Verdict.YES


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_membership_symmetric_under_negation_and_inversion(name):
    P = catalog(name)
    for x in enumerate_elements(P, bound=2):
        assert pf_contains(P, -x, 4) is Verdict.YES
        if not x.is_zero():
            assert pf_contains(P, P.ring.inverse(x), 4) is Verdict.YES


@given(st.integers(-6, 6), st.integers(-300, 300).filter(lambda n: n != 0))
def test_dyadic_membership_oracle(k, n):
    D = catalog("dyadic")
    x = D.ring.element(f"{n}/{2 ** k}" if k >= 0 else str(n * 2 ** -k))
    odd = abs(n)
    while odd % 2 == 0:
        odd //= 2
    assert (pf_contains(D, x) is Verdict.YES) == (odd == 1)


@given(st.integers(-40, 40))
def test_z6_localization_membership(n):
    R = LocalizedIntegers((2, 3))
    P = PartialField(R, (R.from_int(2),))
    x = R.from_int(n)
    m = abs(n)
    while m and m % 2 == 0:
        m //= 2
    assert (pf_contains(P, x) is Verdict.YES) == (n == 0 or m == 1)


def test_json_roundtrip():
    for name in CATALOG_NAMES:
        P = catalog(name)
        Q = PartialField.from_json(P.to_json())
        assert Q == P
    assert PartialField.from_json({"catalog": "dyadic"}) == catalog("dyadic")


def test_non_unit_generator_rejected():
    with pytest.raises(ValueError):
        PartialField(Integers(), (Integers().from_int(2),))
