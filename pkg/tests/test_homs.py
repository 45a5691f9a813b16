from __future__ import annotations

import itertools

import pytest

from pfkit.homs import (
    HomError,
    PFHom,
    Status,
    compose,
    identity_hom,
    is_isomorphism,
    product_hom_factor,
    strong_char_set,
    strong_hom_search,
    table_hom,
    verify_pf_hom,
    verify_strong_hom,
    weak_char_set,
    weak_hom_search,
)
from pfkit.partial_field import PartialField, catalog, enumerate_elements
from pfkit.ringmaps import GeneratorMap, ProjectionMap
from pfkit.rings import GaloisField, Integers, ModularRing


def gf(q):
    return catalog(f"gf({q})")


def f2xf3_to_u0():
    return table_hom(catalog("f2xf3"), catalog("regular"), [("(0,0)", 0), ("(1,1)", 1), ("(1,2)", -1)])


def u0_to_gf(p):
    return PFHom(catalog("regular"), gf(p), "strong", ring_map=GeneratorMap(Integers(), GaloisField(p), ()))


def brute_force_weak_homs(P, F):
    """Every map E(P) -> F checked directly against the hom axioms (independent oracle)."""
    E = list(enumerate_elements(P))
    Fel = list(F.elements())
    found = []
    for images in itertools.product(Fel, repeat=len(E)):
        m = dict(zip(E, images))
        if not m[P.ring.one()].is_one() or not m[P.ring.zero()].is_zero():
            continue
        if any(m[x].is_zero() for x in E if not x.is_zero()):
            continue
        if any(p * q in m and m[p * q] != m[p] * m[q] for p in E for q in E):
            continue
        if any(p + q in m and m[p + q] != m[p] + m[q] for p in E for q in E):
            continue
        found.append({str(k): str(v) for k, v in m.items()})
    return found


# -- verification ------------------------------------------------------------


def test_f2xf3_to_regular_is_exact():
    assert verify_pf_hom(f2xf3_to_u0()).status is Status.EXACT


def test_f2xf3_table_does_not_extend_to_a_ring_map():
    # the only ring maps F2 x F3 -> Z would need 6 = 0 in Z
    assert all(verify_strong_hom(PFHom(catalog("f2xf3"), catalog("regular"), "strong", ring_map=m)).status is Status.FAIL
               for m in [ProjectionMap(catalog("f2xf3").ring, 0, GeneratorMap(GaloisField(2), Integers(), ()))])


def test_weak_failure_has_triple_witness():
    res = verify_pf_hom(table_hom(gf(3), gf(2), [(2, 1)]))
    assert res.status is Status.FAIL
    assert res.witness == "(1,1,2)"


def test_compose_to_gf5():
    h1 = f2xf3_to_u0().with_status(Status.EXACT)
    h2 = table_hom(catalog("regular"), gf(5), [(0, 0), (1, 1), (-1, 4)]).with_status(Status.EXACT)
    h = compose(h2, h1)
    assert h.target == gf(5)
    assert verify_pf_hom(h).status is Status.EXACT
    assert h(catalog("f2xf3").element("(1,2)")) == 4
    with pytest.raises(HomError):
        compose(h1, h2)


def test_strong_examples():
    D = catalog("dyadic")
    h = PFHom(D, gf(3), "strong", ring_map=GeneratorMap(D.ring, GaloisField(3), ()))
    assert verify_strong_hom(h).status is Status.EXACT
    assert verify_pf_hom(h).status is Status.EXACT
    assert h(D.element("1/2")) == 2
    Z6 = catalog("modular(6)")
    bad = PFHom(Z6, gf(5), "strong", ring_map=GeneratorMap(ModularRing(6), GaloisField(5), ()))
    assert verify_strong_hom(bad).status is Status.FAIL
    to_gf2 = PFHom(D, gf(2), "strong", ring_map=GeneratorMap(D.ring, GaloisField(2), ()))
    assert verify_strong_hom(to_gf2).status is Status.FAIL


def test_isomorphism_examples():
    ok, _ = is_isomorphism(f2xf3_to_u0())
    assert ok
    ok, why = is_isomorphism(table_hom(catalog("regular"), gf(3), [(0, 0), (1, 1), (-1, 2)]))
    assert not ok and "1+1" in why.replace(" ", "")


def test_identity_and_json_roundtrip():
    for name in ("regular", "dyadic", "f2xf3", "gf(2,2)"):
        h = identity_hom(catalog(name))
        assert verify_strong_hom(h).status is Status.EXACT
        assert PFHom.from_json(h.to_json()) == h
    h = f2xf3_to_u0()
    assert PFHom.from_json(h.to_json()) == h
    D = catalog("dyadic")
    inc = PFHom(catalog("regular"), D, "strong", ring_map=GeneratorMap(Integers(), D.ring, ()))
    to3 = PFHom(D, gf(3), "strong", ring_map=GeneratorMap(D.ring, GaloisField(3), ()))
    c = compose(to3, inc)
    assert c.kind == "strong" and verify_strong_hom(c).status is Status.EXACT
    assert PFHom.from_json(c.to_json()) == c


# -- search ------------------------------------------------------------------


def test_search_examples():
    homs = weak_hom_search(catalog("regular"), GaloisField(2))
    assert len(homs) == 1
    assert {str(a): str(b) for a, b in homs[0].table} == {"0": "0", "1": "1", "-1": "1"}
    tables = [{str(a): str(b) for a, b in h.table} for h in weak_hom_search(catalog("f2xf3"), GaloisField(3))]
    assert {"(0,0)": "0", "(1,1)": "1", "(1,2)": "2"} in tables
    assert weak_hom_search(gf(3), GaloisField(2)) == []


@pytest.mark.parametrize("src,q", [("regular", 2), ("regular", 3), ("regular", 5), ("gf(3)", 2),
                                   ("gf(3)", 9), ("f2xf3", 4), ("gf(2,2)", 4), ("modular(6)", 7)])
def test_weak_search_matches_brute_force(src, q):
    P = catalog(src)
    F = gf(q).ring
    got = sorted(sorted({str(a): str(b) for a, b in h.mapping().items()}.items()) for h in weak_hom_search(P, F))
    want = sorted(sorted(m.items()) for m in brute_force_weak_homs(P, F))
    assert got == want
    for h in weak_hom_search(P, F):
        assert verify_pf_hom(h).status is Status.EXACT


def test_bounded_search_refutes_dyadic_to_gf2():
    assert weak_hom_search(catalog("dyadic"), GaloisField(2), allow_bounded=True) == []
    found = weak_hom_search(catalog("dyadic"), GaloisField(3), allow_bounded=True)
    assert found and all(h.status is Status.BOUNDED for h in found)
    with pytest.raises(HomError):
        weak_hom_search(catalog("dyadic"), GaloisField(3))


def test_strong_search():
    assert len(strong_hom_search(catalog("f2xf3"), GaloisField(3))) == 1
    assert strong_hom_search(catalog("f2xf3"), GaloisField(5)) == []
    assert len(strong_hom_search(gf(4), GaloisField(2, 2))) == 2  # identity and Frobenius


# -- characteristic sets -----------------------------------------------------


def test_strong_char_set_examples():
    assert strong_char_set(catalog("dyadic"), 13).as_set() == {0, 3, 5, 7, 11, 13}
    assert strong_char_set(catalog("modular(6)"), 13).as_set() == {2, 3}
    assert strong_char_set(catalog("f2xf3"), 13).as_set() == {2, 3}
    assert strong_char_set(catalog("regular"), 7).as_set() == {0, 2, 3, 5, 7}


def test_weak_char_set_examples():
    r = weak_char_set(catalog("f2xf3"), 7, 2)
    assert r.as_set() == {0, 2, 3, 5, 7}
    assert r.flags[0] == "bounded"
    assert weak_char_set(gf(3), 7, 1).as_set() == {3}
    assert weak_char_set(catalog("regular"), 7, 1).as_set() == {0, 2, 3, 5, 7}


def test_product_hom_factor():
    P = catalog("f2xf3")
    to3 = strong_hom_search(P, GaloisField(3))[0]
    j, r = product_hom_factor(to3)
    assert j == 2 and r.status is Status.EXACT
    to2 = strong_hom_search(P, GaloisField(2))[0]
    assert product_hom_factor(to2)[0] == 1
    with pytest.raises(HomError):
        product_hom_factor(identity_hom(catalog("regular")))


def test_kind_validation():
    with pytest.raises(HomError):
        PFHom(catalog("regular"), gf(2), "strong", table=())
    with pytest.raises(HomError):
        PFHom(catalog("regular"), gf(2), "sideways", table=())
