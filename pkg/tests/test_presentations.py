from __future__ import annotations

import json

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from pfkit.homs import HomError, PFHom, Status, identity_hom, strong_hom_search, table_hom
from pfkit.partial_field import CATALOG_NAMES, ElementSet, catalog, fundamental_elements, group_is_finite
from pfkit.presentations import (
    EvaluationModel,
    IntPoly,
    Presentation,
    PresentationError,
    build_dowling,
    build_lift,
    canonical_dowling_model,
    canonical_lift_hom_check,
    dowling_canonical_hom_check,
    dowling_fundamental_bijection_check,
    dowling_idempotence_check,
    dowling_uniqueness_check,
    dowling_universal_hom,
    lift_idempotence_check,
    verify_evaluation_model,
)
from pfkit.ringmaps import GeneratorMap
from pfkit.rings import Integers

COMPLETE = [n for n in CATALOG_NAMES if fundamental_elements(catalog(n)).complete]
FINITE = [n for n in CATALOG_NAMES if group_is_finite(catalog(n))]
NAMES = ["a", "b", "c"]


# -- integer polynomials -----------------------------------------------------

polys = st.recursive(
    st.one_of(st.integers(-3, 3).map(IntPoly.const), st.sampled_from(NAMES).map(IntPoly.var)),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: t[0] + t[1]),
        st.tuples(inner, inner).map(lambda t: t[0] * t[1]),
        st.tuples(inner, inner).map(lambda t: t[0] - t[1]),
    ),
    max_leaves=8,
)


def to_sympy(p: IntPoly):
    return sympy.sympify(str(p).replace("^", "**")) if not p.is_zero() else sympy.Integer(0)


@given(polys, polys)
def test_intpoly_arithmetic_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p + q) - to_sympy(p) - to_sympy(q)) == 0
    assert IntPoly.from_json(json.loads(json.dumps(p.to_json()))) == p
    assert (p - p).is_zero()


@given(polys, st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_intpoly_evaluation_matches_sympy(p, point):
    Z = Integers()
    values = dict(zip(NAMES, (Z.from_int(v) for v in point)))
    expect = to_sympy(p).subs(dict(zip(sympy.symbols(NAMES), point)))
    assert p.evaluate(values, Z) == int(expect)


def test_intpoly_text():
    x = IntPoly.var("X_2")
    assert str(x * x - 1) == "X_2^2 - 1"
    assert str(2 * x - 1) == "2*X_2 - 1"


# -- lifts -------------------------------------------------------------------


def test_lift_gf2():
    L = build_lift(catalog("gf(2)"))
    assert L.names == ("X_0", "X_1")
    assert set(L.relation_texts()) == {"X_0", "X_1 - 1"}


def test_lift_regular_has_same_shape_as_gf2():
    assert build_lift(catalog("regular")).relation_texts() == build_lift(catalog("gf(2)")).relation_texts()


def test_lift_gf3():
    L = build_lift(catalog("gf(3)"))
    rels = set(L.relation_texts())
    assert {"X_2 + 1", "2*X_2 - 1", "X_2^2 - 1"} <= rels  # X_{-1}+1, X_2+X_2-1, X_2X_2-1
    assert len(L.relation_texts()) == len(rels)


def test_lift_dyadic_contains_triple_relation():
    rels = build_lift(catalog("dyadic")).relation_texts()
    assert "X_2 + X_{-1} - 1" in rels and "2*X_{1/2} - 1" in rels and "X_2*X_{1/2} - 1" in rels


def test_lift_needs_complete_fundamentals():
    F = fundamental_elements(catalog("dyadic"))
    with pytest.raises(PresentationError):
        build_lift(catalog("dyadic"), ElementSet(F.elements, complete=False))


@pytest.mark.parametrize("name", COMPLETE)
def test_canonical_lift_hom_exact(name):
    assert canonical_lift_hom_check(catalog(name)).status is Status.EXACT


@pytest.mark.parametrize("name", COMPLETE)
def test_lift_closure_invariant(name):
    P = catalog(name)
    L = build_lift(P)
    one = P.ring.one()
    rels = set(L.relations)
    for p in fundamental_elements(P):
        if p.is_zero() or p.is_one():
            continue
        a, b = L.x_symbol(p), L.x_symbol(one - p)
        assert a in L.names and b in L.names
        assert IntPoly.var(a) + IntPoly.var(b) - 1 in rels


@pytest.mark.parametrize("name", COMPLETE)
def test_lift_serialization_is_canonical(name):
    P = catalog(name)
    a, b = build_lift(P), build_lift(P)
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)
    assert Presentation.from_json(a.to_json()) == a


def test_evaluation_model_examples():
    L = build_lift(catalog("gf(2)"))
    U = catalog("regular")
    assert verify_evaluation_model(EvaluationModel.of(L, U, {"X_0": 0, "X_1": 1})).status is Status.EXACT
    bad = verify_evaluation_model(EvaluationModel.of(L, U, {"X_0": 0, "X_1": -1}))
    assert bad.status is Status.FAIL and "X_1 - 1" in bad.witness
    D = build_dowling(catalog("gf(3)"))
    m = EvaluationModel.of(D, catalog("dyadic"), {"X_1": 1, "X_2": -1, "Y_2": "1/2"})
    assert verify_evaluation_model(m).status is Status.EXACT
    assert EvaluationModel.from_json(m.to_json()) == m


def test_lift_idempotence():
    U = catalog("regular")
    m = EvaluationModel.of(build_lift(catalog("gf(2)")), U, {"X_0": 0, "X_1": 1})
    assert lift_idempotence_check(m).status is Status.EXACT
    m = EvaluationModel.of(build_lift(U), U, {"X_0": 0, "X_1": 1})
    assert lift_idempotence_check(m).status is Status.EXACT
    # target GF(3) has more fundamentals: lift(GF(3)) carries relations with no preimage
    m = EvaluationModel.of(build_lift(catalog("gf(2)")), catalog("gf(3)"), {"X_0": 0, "X_1": 1})
    r = lift_idempotence_check(m)
    assert r.status is Status.FAIL and any("X_2 + 1" in w for w in r.witnesses)
    with pytest.raises(PresentationError):
        lift_idempotence_check(EvaluationModel.of(build_lift(U), U, {"X_0": 1, "X_1": 1}))


# -- Dowling lifts -----------------------------------------------------------


def test_dowling_examples():
    D2 = build_dowling(catalog("gf(2)"))
    assert D2.names == ("X_1",) and set(D2.relation_texts()) == {"X_1 - 1", "X_1^2 - X_1"}
    D3 = build_dowling(catalog("gf(3)"))
    assert set(D3.names) == {"X_1", "X_2", "Y_2"}
    assert {"X_2^2 - X_1", "-X_2*Y_2 + Y_2 - 1"} <= set(D3.relation_texts())
    DU = build_dowling(catalog("regular"))
    assert set(DU.names) == {"X_1", "X_{-1}"} and "X_{-1}^2 - X_1" in DU.relation_texts()
    with pytest.raises(PresentationError):
        build_dowling(catalog("dyadic"))
    assert not build_dowling(catalog("dyadic"), bound=1).complete


@pytest.mark.parametrize("name", FINITE)
def test_dowling_canonical_hom_exact(name):
    assert dowling_canonical_hom_check(catalog(name)).status is Status.EXACT


def test_dowling_canonical_dyadic_window():
    assert dowling_canonical_hom_check(catalog("dyadic"), bound=1).status is Status.BOUNDED
    m = canonical_dowling_model(catalog("dyadic"), bound=1)
    assert m("Y_{1/2}") == 2


def test_universal_hom_reproduces_canonical_assignment():
    for name in ("gf(2)", "gf(3)", "gf(2,2)", "regular"):
        P = catalog(name)
        u = dowling_universal_hom(identity_hom(P))
        assert u.ok and u.verification.status is Status.EXACT
        assert u.model.assignment == canonical_dowling_model(P).assignment
        assert dowling_uniqueness_check(u).status is Status.EXACT


def test_universal_hom_into_extension_field():
    G3, G9 = catalog("gf(3)"), catalog("gf(9)")
    for phi in strong_hom_search(G3, G9.ring):
        u = dowling_universal_hom(phi)
        assert u.ok and len(u.commuting) == 3


def test_universal_hom_rejects_non_strong_maps():
    G3, D = catalog("gf(3)"), catalog("dyadic")
    with pytest.raises(HomError, match="3 = 0"):
        dowling_universal_hom(PFHom(G3, D, "strong", ring_map=GeneratorMap(G3.ring, D.ring, ())))
    with pytest.raises(HomError):
        dowling_universal_hom(table_hom(G3, D, [(2, -1)]))


def test_fundamental_bijection():
    D3 = build_dowling(catalog("gf(3)"))
    m = EvaluationModel.of(D3, catalog("dyadic"), {"X_1": 1, "X_2": -1, "Y_2": "1/2"})
    r = dowling_fundamental_bijection_check(m)
    assert r.ok and r.details["images"] == {"1": "1", "2": "-1"}
    m2 = EvaluationModel.of(build_dowling(catalog("gf(2)")), catalog("regular"), {"X_1": 1})
    assert dowling_fundamental_bijection_check(m2).status is Status.EXACT


def test_fundamental_bijection_detects_collapse():
    # dowling(dyadic) into GF(3) with 2 -> -1 merges X_2 and X_{-1}
    D = catalog("dyadic")
    pres = build_dowling(D, bound=1)
    G3 = catalog("gf(3)")
    phi = PFHom(D, G3, "strong", ring_map=GeneratorMap(D.ring, G3.ring, ()))
    model = dowling_universal_hom(phi, bound=1).model
    assert model.presentation == pres
    r = dowling_fundamental_bijection_check(model, bound=1)
    assert r.status is Status.FAIL and any("both map to" in w for w in r.witnesses)


def test_dowling_idempotence():
    m = EvaluationModel.of(build_dowling(catalog("gf(2)")), catalog("regular"), {"X_1": 1})
    r = dowling_idempotence_check(m)
    assert r.status is Status.EXACT
    assert all(v == "equal" for v in r.details["i_after_psi"].values())


def test_dowling_idempotence_bounded_target():
    m = EvaluationModel.of(build_dowling(catalog("gf(3)")), catalog("dyadic"), {"X_1": 1, "X_2": -1, "Y_2": "1/2"})
    r = dowling_idempotence_check(m, bound=1)
    assert r.status is Status.BOUNDED


def test_i_after_psi_is_not_identity_on_gf3():
    # finding: Y_2 and X_2 are different elements of the Dowling lift of GF(3)
    r = dowling_idempotence_check(canonical_dowling_model(catalog("gf(3)")))
    assert r.ok
    status = r.details["i_after_psi"]["Y_2"]
    assert status.startswith("distinct from X_2") and "GF(" in status
