"""Lift and Dowling-lift presentations, checked through evaluation models.

A presentation is a polynomial ring over Z in named generators modulo a
finite list of integer relations, together with a distinguished set of
group generators.  The quotient rings are never materialized: every claim
about them is verified by evaluating into a concrete partial field.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from sympy import factorint

from .homs import HomError, PFHom, Status, Verification, identity_hom, verify_strong_hom
from .partial_field import (
    DEFAULT_BOUND,
    ElementSet,
    PartialField,
    enumerate_elements,
    fundamental_elements,
    group_is_finite,
    pf_contains,
)
from .rings import (
    GaloisField,
    NotAUnitError,
    RingValue,
    Verdict,
    sort_key,
)

SEPARATION_FIELDS = (2, 3, 4, 5, 7, 8, 9, 11, 13)  # targets tried when separating generators


class PresentationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomials in named generators

Monomial = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class IntPoly:
    """Sparse polynomial with integer coefficients; terms sorted canonically."""

    terms: tuple[tuple[Monomial, int], ...] = ()

    @staticmethod
    def from_dict(d: Mapping[Monomial, int]) -> "IntPoly":
        items = [(m, c) for m, c in d.items() if c]
        items.sort(key=lambda t: (-sum(e for _, e in t[0]), t[0]))
        return IntPoly(tuple(items))

    @staticmethod
    def const(c: int) -> "IntPoly":
        return IntPoly.from_dict({(): c})

    @staticmethod
    def var(name: str) -> "IntPoly":
        return IntPoly.from_dict({((name, 1),): 1})

    def _dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other) -> "IntPoly":
        other = _as_poly(other)
        d = self._dict()
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return IntPoly.from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other) -> "IntPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "IntPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "IntPoly":
        other = _as_poly(other)
        d: dict = {}
        for (m1, c1), (m2, c2) in itertools.product(self.terms, other.terms):
            exps = dict(m1)
            for v, e in m2:
                exps[v] = exps.get(v, 0) + e
            m = tuple(sorted(exps.items()))
            d[m] = d.get(m, 0) + c1 * c2
        return IntPoly.from_dict(d)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> frozenset:
        return frozenset(v for m, _ in self.terms for v, _ in m)

    def rename(self, mapping: Mapping[str, str]) -> "IntPoly":
        d: dict = {}
        for m, c in self.terms:
            exps: dict = {}
            for v, e in m:
                w = mapping.get(v, v)
                exps[w] = exps.get(w, 0) + e
            key = tuple(sorted(exps.items()))
            d[key] = d.get(key, 0) + c
        return IntPoly.from_dict(d)

    def evaluate(self, assignment: Mapping[str, RingValue], ring) -> RingValue:
        total = ring.zero()
        for m, c in self.terms:
            term = ring.from_int(c)
            for v, e in m:
                if v not in assignment:
                    raise PresentationError(f"no value assigned to {v}")
                term = term * assignment[v] ** e
            total = total + term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (m, c) in enumerate(self.terms):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_json(self) -> list:
        return [{"coefficient": c, "monomial": {v: e for v, e in m}} for m, c in self.terms]

    @staticmethod
    def from_json(obj: Sequence[dict]) -> "IntPoly":
        d: dict = {}
        for t in obj:
            m = tuple(sorted((str(v), int(e)) for v, e in t.get("monomial", {}).items() if int(e)))
            d[m] = d.get(m, 0) + int(t["coefficient"])
        return IntPoly.from_dict(d)


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.const(x)
    raise TypeError(f"cannot use {x!r} as an integer polynomial")


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Generator:
    name: str
    tag: str  # "X", "Y" or "aux"
    element: Optional[RingValue] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "tag": self.tag}
        if self.element is not None:
            out["element"] = str(self.element)
        return out


def symbol(tag: str, p: RingValue) -> str:
    text = str(p)
    return f"{tag}_{text}" if re.fullmatch(r"[0-9]+", text) else f"{tag}_{{{text}}}"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[Generator, ...]
    relations: tuple[IntPoly, ...]
    group_generators: tuple[str, ...]  # generator names, plus "-1" for the constant
    origin: str = "manual"  # "lift", "dowling" or "manual"
    base: Optional[PartialField] = None
    complete: bool = True  # False when built from a bounded element window

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        known = set(names)
        for r in self.relations:
            if not r.variables() <= known:
                raise PresentationError(f"relation {r} uses unknown generators")
        for g in self.group_generators:
            if g != "-1" and g not in known:
                raise PresentationError(f"unknown group generator {g}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def x_symbol(self, p: RingValue) -> str:
        for g in self.generators:
            if g.tag == "X" and g.element == p:
                return g.name
        raise KeyError(f"no X symbol for {p}")

    def tagged(self, tag: str) -> list[Generator]:
        return [g for g in self.generators if g.tag == tag]

    def relation_texts(self) -> list[str]:
        return [str(r) for r in self.relations]

    def to_json(self) -> dict:
        out = {
            "generators": [g.to_json() for g in self.generators],
            "relations": [r.to_json() for r in self.relations],
            "group_generators": list(self.group_generators),
            "origin": {"kind": self.origin, "complete": self.complete},
        }
        if self.base is not None:
            out["origin"]["partial_field"] = self.base.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Presentation":
        origin = obj.get("origin", {})
        base = PartialField.from_json(origin["partial_field"]) if "partial_field" in origin else None
        gens = []
        for g in obj["generators"]:
            elem = None
            if "element" in g:
                if base is None:
                    raise PresentationError("tagged generators need the base partial field")
                elem = base.ring.parse(str(g["element"]))
            gens.append(Generator(g["name"], g.get("tag", "aux"), elem))
        return cls(
            tuple(gens),
            tuple(IntPoly.from_json(r) for r in obj["relations"]),
            tuple(obj.get("group_generators", ())),
            origin.get("kind", "manual"),
            base,
            bool(origin.get("complete", True)),
        )


def _dedup(polys: Iterable[IntPoly]) -> tuple[IntPoly, ...]:
    seen, out = set(), []
    for r in polys:
        if not r.is_zero() and r not in seen:
            seen.add(r)
            out.append(r)
    return tuple(out)


def build_lift(P: PartialField, fundamentals: Optional[ElementSet] = None, char2_sign_relation: bool = False) -> Presentation:
    """One X_p per fundamental element; sum, inverse-pair and triple-product relations.

    Relations mentioning only X_0 and X_1 beyond the first two are dropped:
    they vanish at X_0 = 0, X_1 = 1 and so already lie in (X_0, X_1 - 1).
    In characteristic 2, X_{-1} + 1 would read X_1 + 1 and force 2 = 0; it
    is only added with ``char2_sign_relation``.  X_0 is left out of the group
    generators since it is 0 in the quotient.
    """
    F = fundamental_elements(P) if fundamentals is None else fundamentals
    if not F.complete:
        raise PresentationError(f"fundamental elements of {P} are not known to be complete")
    R = P.ring
    one, zero, minus = R.one(), R.zero(), -R.one()
    fund = list(F)
    X = {p: IntPoly.var(symbol("X", p)) for p in fund}
    base = [X[zero], X[one] - 1]
    rels = []
    if minus in F and (minus != one or char2_sign_relation):
        rels.append(X[minus] + 1)
    for i, p in enumerate(fund):
        for q in fund[i:]:
            if p + q == one:
                rels.append(X[p] + X[q] - 1)
    for i, p in enumerate(fund):
        for q in fund[i:]:
            if (p * q).is_one():
                rels.append(X[p] * X[q] - 1)
    units = [p for p in fund if not p.is_zero()]
    for i, p in enumerate(units):
        for j in range(i, len(units)):
            q = units[j]
            for r in units[j:]:
                if (p * q * r).is_one():
                    rels.append(X[p] * X[q] * X[r] - 1)
    trivial = {symbol("X", zero), symbol("X", one)}
    keep = [r for r in rels if not r.variables() <= trivial or (char2_sign_relation and r == X[minus] + 1)]
    gens = tuple(Generator(symbol("X", p), "X", p) for p in fund)
    return Presentation(
        gens,
        _dedup(base + keep),
        ("-1",) + tuple(g.name for g in gens if not g.element.is_zero()),
        "lift",
        P,
    )


def build_dowling(P: PartialField, bound: Optional[int] = None) -> Presentation:
    """X_p for p in G, Y_p for p in F(P) minus {0, 1}; group-ring and Y relations.

    Infinite groups need an explicit ``bound``: the group is replaced by a
    window, only products landing inside it get relations, and the result is
    flagged incomplete.
    """
    finite = group_is_finite(P)
    if not finite and bound is None:
        raise PresentationError(f"group of {P} is infinite; pass a window bound")
    E = enumerate_elements(P, bound or DEFAULT_BOUND)
    F = fundamental_elements(P, bound or DEFAULT_BOUND)
    if finite and not F.complete:
        raise PresentationError(f"fundamental elements of {P} are not complete")
    R = P.ring
    group = [g for g in E if not g.is_zero()]
    in_group = set(group)
    Xn = {p: symbol("X", p) for p in group}
    X = {p: IntPoly.var(n) for p, n in Xn.items()}
    ys = [p for p in F if not p.is_zero() and not p.is_one()]
    Y = {p: IntPoly.var(symbol("Y", p)) for p in ys}
    rels = [X[R.one()] - 1]
    for i, p in enumerate(group):
        for q in group[i:]:
            pq = p * q
            if pq in in_group:
                rels.append(X[p] * X[q] - X[pq])
    for p in ys:
        rels.append(Y[p] * (1 - X[p]) - 1)
    gens = tuple(Generator(Xn[p], "X", p) for p in group) + tuple(Generator(symbol("Y", p), "Y", p) for p in ys)
    return Presentation(
        gens,
        _dedup(rels),
        ("-1",) + tuple(g.name for g in gens),
        "dowling",
        P,
        complete=finite and F.complete,
    )


# ---------------------------------------------------------------------------
# evaluation models


@dataclass(frozen=True)
class EvaluationModel:
    presentation: Presentation
    target: PartialField
    assignment: tuple[tuple[str, RingValue], ...]

    @staticmethod
    def of(presentation: Presentation, target: PartialField, assignment: Mapping[str, object]) -> "EvaluationModel":
        pairs = tuple((name, target.ring.element(assignment[name])) for name in presentation.names if name in assignment)
        return EvaluationModel(presentation, target, pairs)

    @property
    def values(self) -> dict[str, RingValue]:
        return dict(self.assignment)

    def __call__(self, poly) -> RingValue:
        if isinstance(poly, str):
            poly = IntPoly.var(poly)
        return _as_poly(poly).evaluate(self.values, self.target.ring)

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation.to_json(),
            "target": self.target.to_json(),
            "assignment": {n: str(v) for n, v in self.assignment},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EvaluationModel":
        pres = Presentation.from_json(obj["presentation"])
        target = PartialField.from_json(obj["target"])
        values = {n: target.ring.parse(str(t)) for n, t in obj["assignment"].items()}
        return cls.of(pres, target, values)


def verify_evaluation_model(m: EvaluationModel, bound: int = DEFAULT_BOUND) -> Verification:
    """Every relation vanishes and every group generator lands in the target group."""
    values = m.values
    for name in m.presentation.names:
        if name not in values:
            return Verification(Status.FAIL, f"no value for generator {name}")
    for r in m.presentation.relations:
        v = r.evaluate(values, m.target.ring)
        if not v.is_zero():
            return Verification(Status.FAIL, f"relation {r} evaluates to {v}")
    undecided = []
    for g in m.presentation.group_generators:
        if g == "-1":
            continue
        v = values[g]
        if v.is_zero():
            return Verification(Status.FAIL, f"group generator {g} maps to 0")
        verdict = pf_contains(m.target, v, bound)
        if verdict is Verdict.NO:
            return Verification(Status.FAIL, f"group generator {g} maps to {v}, outside the target group")
        if verdict is Verdict.UNKNOWN:
            undecided.append(g)
    if undecided:
        return Verification(Status.INCONCLUSIVE, f"membership undecided for {', '.join(undecided)}")
    return Verification(Status.EXACT)


def _require_verified(m: EvaluationModel) -> Verification:
    res = verify_evaluation_model(m)
    if not res.ok:
        raise PresentationError(f"model not verified: {res}")
    return res


@dataclass(frozen=True)
class Report:
    status: Status
    summary: str
    witnesses: tuple[str, ...] = ()
    details: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return self.status in (Status.EXACT, Status.BOUNDED)

    def __str__(self) -> str:
        head = f"{self.status.value}: {self.summary}"
        return "\n".join([head] + [f"  {w}" for w in self.witnesses])

    def to_json(self) -> dict:
        return {"status": self.status.value, "summary": self.summary, "witnesses": list(self.witnesses), **self.details}


# ---------------------------------------------------------------------------
# lift checks


def canonical_lift_assignment(pres: Presentation) -> dict[str, RingValue]:
    return {g.name: g.element for g in pres.tagged("X")}


def canonical_lift_hom_check(P: PartialField, pres: Optional[Presentation] = None) -> Verification:
    """X_p -> p kills every relation (the canonical map LP -> P)."""
    pres = build_lift(P) if pres is None else pres
    if pres.origin != "lift":
        raise PresentationError("not a lift presentation")
    return verify_evaluation_model(EvaluationModel.of(pres, P, canonical_lift_assignment(pres)))


def lift_idempotence_check(model: EvaluationModel, bound: int = DEFAULT_BOUND) -> Report:
    """Relabel X_p -> X_{model(X_p)} and compare with the lift of the model's target.

    The target Q stands in for LP; the relabelled relations of LP must match
    the relations of lift(Q) one for one, with the relabelling a bijection of
    generators.
    """
    pres = model.presentation
    if pres.origin != "lift":
        raise PresentationError("model is not of a lift presentation")
    _require_verified(model)
    Q = model.target
    FQ = fundamental_elements(Q, bound)
    if not FQ.complete:
        raise PresentationError(f"fundamental elements of {Q} are not complete")
    lift_q = build_lift(Q, FQ)
    values = model.values
    witnesses = []
    relabel = {}
    for g in pres.tagged("X"):
        v = values[g.name]
        if v not in FQ:
            witnesses.append(f"{g.name} maps to {v}, not fundamental in {Q}")
        else:
            relabel[g.name] = symbol("X", v)
    if witnesses:
        return Report(Status.FAIL, "model leaves the fundamental elements", tuple(witnesses))
    images = list(relabel.values())
    if len(set(images)) != len(images):
        clash = [n for n in relabel if images.count(relabel[n]) > 1]
        witnesses.append(f"relabelling not injective on {', '.join(clash)}")
    missed = [n for n in lift_q.names if n not in set(images)]
    if missed:
        witnesses.append(f"generators of lift(Q) not hit: {', '.join(missed)}")
    transported = set(_dedup(r.rename(relabel) for r in pres.relations))
    target_rels = set(lift_q.relations)
    for r in sorted(target_rels - transported, key=str):
        witnesses.append(f"relation of lift(Q) without a preimage: {r}")
    for r in sorted(transported - target_rels, key=str):
        witnesses.append(f"transported relation missing from lift(Q): {r}")
    details = {
        "relabelling": dict(sorted(relabel.items())),
        "lift_target_relations": lift_q.relation_texts(),
    }
    if witnesses:
        return Report(Status.FAIL, "bijection not found", tuple(witnesses), details)
    return Report(Status.EXACT, f"bijection found ({len(target_rels)} relations, {len(images)} generators)", (), details)


# ---------------------------------------------------------------------------
# Dowling checks


def _dowling_assignment(pres: Presentation, image) -> dict[str, RingValue]:
    """X_p -> image(p), Y_p -> (1 - image(p))^-1."""
    out = {}
    for g in pres.tagged("X"):
        out[g.name] = image(g.element)
    for g in pres.tagged("Y"):
        v = image(g.element)
        u = v.ring.one() - v
        try:
            out[g.name] = v.ring.inverse(u)
        except (NotAUnitError, ArithmeticError, ValueError) as exc:
            raise HomError(f"1 - {v} is not a unit (at {g.name})") from exc
    return out


def dowling_canonical_hom_check(P: PartialField, bound: Optional[int] = None) -> Verification:
    """X_p -> p, Y_p -> (1-p)^-1 is a model of dowling(P) in P with each 1-p in G."""
    pres = build_dowling(P, bound)
    for g in pres.tagged("Y"):
        u = P.ring.one() - g.element
        if pf_contains(P, u, bound or DEFAULT_BOUND) is not Verdict.YES or u.is_zero():
            return Verification(Status.FAIL, f"1 - {g.element} is not in the group of {P}")
    try:
        values = _dowling_assignment(pres, lambda p: p)
    except HomError as exc:
        return Verification(Status.FAIL, str(exc))
    res = verify_evaluation_model(EvaluationModel.of(pres, P, values))
    if res.status is Status.EXACT and not pres.complete:
        return Verification(Status.BOUNDED, bound=bound)
    return res


def canonical_dowling_model(P: PartialField, bound: Optional[int] = None) -> EvaluationModel:
    pres = build_dowling(P, bound)
    return EvaluationModel.of(pres, P, _dowling_assignment(pres, lambda p: p))


@dataclass(frozen=True)
class UniversalHom:
    """psi : dowling(P) -> P' determined by a strong phi : P -> P'."""

    phi: PFHom
    model: EvaluationModel
    verification: Verification
    commuting: tuple[tuple[RingValue, RingValue, RingValue], ...]  # (p, psi(i(p)), phi(p))

    @property
    def commutes(self) -> bool:
        return all(a == b for _, a, b in self.commuting)

    @property
    def ok(self) -> bool:
        return self.verification.ok and self.commutes

    def to_json(self) -> dict:
        return {
            "assignment": {n: str(v) for n, v in self.model.assignment},
            "verification": self.verification.to_json(),
            "commutes": self.commutes,
            "commuting": [[str(p), str(a), str(b)] for p, a, b in self.commuting],
        }


def dowling_universal_hom(phi: PFHom, bound: Optional[int] = None) -> UniversalHom:
    """Phi(X_p) = phi(p), Phi(Y_p) = (1 - phi(p))^-1, then check psi o i = phi."""
    if phi.kind != "strong":
        raise HomError("the universal property is stated for strong homs")
    res = verify_strong_hom(phi)
    if res.status is not Status.EXACT:
        raise HomError(f"phi is not a verified strong hom: {res}")
    P = phi.source
    pres = build_dowling(P, bound)
    values = _dowling_assignment(pres, phi)
    model = EvaluationModel.of(pres, phi.target, values)
    ver = verify_evaluation_model(model, bound or DEFAULT_BOUND)
    if ver.status is Status.EXACT and not pres.complete:
        ver = Verification(Status.BOUNDED, bound=bound)
    commuting = []
    for p in enumerate_elements(P, bound or DEFAULT_BOUND):
        lhs = phi.target.ring.zero() if p.is_zero() else model(pres.x_symbol(p))
        commuting.append((p, lhs, phi(p)))
    return UniversalHom(phi, model, ver, tuple(commuting))


def dowling_uniqueness_check(u: UniversalHom, bound: int = 2) -> Report:
    """Every alternative value for a Y_p, keeping the X_p, breaks Y_p(1 - X_p) - 1."""
    model = u.model
    T = model.target
    candidates = [x for x in enumerate_elements(T, bound)]
    witnesses = []
    tried = 0
    values = model.values
    for g in model.presentation.tagged("Y"):
        rel = next(r for r in model.presentation.relations if g.name in r.variables())
        for c in candidates:
            if c == values[g.name]:
                continue
            tried += 1
            alt = dict(values, **{g.name: c})
            if rel.evaluate(alt, T.ring).is_zero():
                witnesses.append(f"{g.name} -> {c} also satisfies {rel}")
    if witnesses:
        return Report(Status.FAIL, "assignment not forced", tuple(witnesses))
    return Report(Status.EXACT, f"{tried} alternative Y values all rejected")


def dowling_fundamental_bijection_check(model: EvaluationModel, bound: int = DEFAULT_BOUND) -> Report:
    """p -> model(X_p) is injective on F(P) and hits exactly the fundamentals among the X-images."""
    pres = model.presentation
    if pres.origin != "dowling" or pres.base is None:
        raise PresentationError("model is not of a Dowling presentation")
    _require_verified(model)
    P, T = pres.base, model.target
    FP = fundamental_elements(P, bound)
    zero_t = T.ring.zero()
    images = {g.element: model(g.name) for g in pres.tagged("X")}
    image_set = set(images.values()) | {zero_t}
    fundamental, undecided = set(), []
    for x in image_set:
        verdict = pf_contains(T, T.ring.one() - x, bound)
        if verdict is Verdict.YES:
            fundamental.add(x)
        elif verdict is Verdict.UNKNOWN:
            undecided.append(str(x))
    expected = {images[p] for p in FP if not p.is_zero()} | {zero_t}
    witnesses = []
    fp_images = [images[p] for p in FP if not p.is_zero()]
    for p, q in itertools.combinations([p for p in FP if not p.is_zero()], 2):
        if images[p] == images[q]:
            witnesses.append(f"X_{p} and X_{q} both map to {images[p]}")
    if zero_t in fp_images:
        witnesses.append("a nonzero fundamental maps to 0")
    for x in sorted(fundamental - expected, key=sort_key):
        witnesses.append(f"{x} is fundamental in the image of G but not the image of F(P)")
    for x in sorted(expected - fundamental, key=sort_key):
        witnesses.append(f"{x} is the image of F(P) but not fundamental in {T}")
    details = {
        "fundamentals": [str(p) for p in FP],
        "images": {str(p): str(images[p]) for p in FP if not p.is_zero()},
        "fundamental_images": sorted((str(x) for x in fundamental), key=lambda s: (len(s), s)),
    }
    if witnesses:
        return Report(Status.FAIL, "no bijection", tuple(witnesses), details)
    if undecided:
        return Report(Status.INCONCLUSIVE, f"membership undecided for {', '.join(undecided)}", (), details)
    status = Status.EXACT if FP.complete and pres.complete else Status.BOUNDED
    return Report(status, f"bijection on {len(FP)} fundamental elements", (), details)


def _separating_model(pres: Presentation, g: Generator, h_name: str) -> Optional[str]:
    """A model of a finite-group Dowling presentation into some GF(q) with g != h.

    Models are built from group homs chi : G -> GF(q)^* with 1 - chi(p) a
    unit for every Y_p; these satisfy all relations by construction.
    """
    P = pres.base
    gens = P.group_generators
    xs = pres.tagged("X")
    ys = pres.tagged("Y")
    for q in SEPARATION_FIELDS:
        (p_, k), = factorint(q).items()
        F = GaloisField(p_, k)
        units = sorted(F.units(), key=sort_key)
        for imgs in itertools.product(units, repeat=len(gens)):
            chi = _group_hom(P, gens, imgs, F)
            if chi is None:
                continue
            try:
                vals = {x.name: chi[x.element] for x in xs}
                for y in ys:
                    vals[y.name] = F.inverse(F.one() - chi[y.element])
            except (NotAUnitError, ArithmeticError, ValueError, KeyError):
                continue
            if vals[g.name] != vals[h_name]:
                return f"GF({q}) with " + ", ".join(f"{a} -> {b}" for a, b in sorted(vals.items()))
    return None


def _group_hom(P: PartialField, gens, imgs, F) -> Optional[dict]:
    table = {P.ring.one(): F.one()}
    frontier = [P.ring.one()]
    while frontier:
        nxt = []
        for x in frontier:
            for g, y in zip(gens, imgs):
                xg, img = x * g, table[x] * y
                if xg in table:
                    if table[xg] != img:
                        return None
                else:
                    table[xg] = img
                    nxt.append(xg)
        frontier = nxt
    if table[-P.ring.one()] != -F.one():
        return None
    return table


def dowling_idempotence_check(model: EvaluationModel, bound: int = DEFAULT_BOUND) -> Report:
    """psi : dowling(Q) -> Q from the identity of Q = model.target, and psi o i = id.

    Also reports, per generator g of dowling(Q), whether i(psi(g)) = g:
    equal for X symbols; for Y symbols either distinct (with a separating
    model) or undecided.  That part is a finding, not a pass/fail criterion.
    """
    _require_verified(model)
    Q = model.target
    finite = group_is_finite(Q)
    u = dowling_universal_hom(identity_hom(Q), None if finite else bound)
    pres = u.model.presentation
    witnesses = []
    if not u.verification.ok:
        witnesses.append(f"psi not verified: {u.verification}")
    for p, lhs, rhs in u.commuting:
        if lhs != rhs:
            witnesses.append(f"psi(i({p})) = {lhs} != {p}")
    per_generator = {}
    for g in pres.generators:
        image = u.model(g.name)
        back = "0" if image.is_zero() else symbol("X", image)
        if back == g.name:
            per_generator[g.name] = "equal"
            continue
        sep = _separating_model(pres, g, back) if finite and back in pres.names else None
        per_generator[g.name] = f"distinct from {back} ({sep})" if sep else f"undecided vs {back}"
    details = {"i_after_psi": per_generator, "assignment": {n: str(v) for n, v in u.model.assignment}}
    if witnesses:
        return Report(Status.FAIL, "psi o i != id", tuple(witnesses), details)
    status = Status.EXACT if finite and u.verification.status is Status.EXACT else Status.BOUNDED
    n = len(u.commuting)
    return Report(status, f"psi verified and psi o i = id on {n} elements", (), details)
