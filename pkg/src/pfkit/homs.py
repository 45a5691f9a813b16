"""Partial-field homomorphisms: verification, composition and search."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .partial_field import (
    DEFAULT_BOUND,
    PartialField,
    _orders,
    addition_triples,
    catalog,
    enumerate_elements,
    group_is_finite,
    pf_contains,
)
from .ringmaps import (
    ComposedMap,
    GeneratorMap,
    LiftedMap,
    ProjectionMap,
    RingMap,
    TableMap,
    all_generator_maps,
    identity_map,
    ring_map_from_json,
)
from .rings import (
    GaloisField,
    ProductRing,
    Rationals,
    RingValue,
    Verdict,
    sort_key,
)


SEARCH_WINDOW = 2  # exponent window for hom search out of infinite groups


class Status(enum.Enum):
    EXACT = "exact"
    BOUNDED = "bounded"
    UNVERIFIED = "unverified"
    INCONCLUSIVE = "inconclusive"
    FAIL = "fail"

    @property
    def rank(self) -> int:
        return [Status.FAIL, Status.INCONCLUSIVE, Status.UNVERIFIED, Status.BOUNDED, Status.EXACT].index(self)

    @staticmethod
    def weakest(*statuses: "Status") -> "Status":
        return min(statuses, key=lambda s: s.rank)


@dataclass(frozen=True)
class Verification:
    status: Status
    witness: Optional[str] = None
    bound: Optional[int] = None
    note: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status in (Status.EXACT, Status.BOUNDED)

    def __str__(self) -> str:
        if self.status is Status.FAIL:
            return f"fail: {self.witness}"
        if self.status is Status.BOUNDED:
            return f"bounded({self.bound})"
        if self.status is Status.INCONCLUSIVE:
            return f"inconclusive: {self.witness}"
        return self.status.value

    def to_json(self) -> dict:
        out = {"status": self.status.value}
        for key in ("witness", "bound", "note"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


class HomError(ValueError):
    pass


@dataclass(frozen=True)
class PFHom:
    """A map between partial fields.

    Exactly one of ``table`` (element -> image, on enumerated elements),
    ``ring_map`` (strong homs) or ``group_images`` (images of the source's
    group generators, -1 first) describes the mapping.
    """

    source: PartialField
    target: PartialField
    kind: str = "weak"
    table: Optional[tuple[tuple[RingValue, RingValue], ...]] = None
    ring_map: Optional[RingMap] = None
    group_images: Optional[tuple[RingValue, ...]] = None
    status: Status = field(default=Status.UNVERIFIED, compare=False)

    def __post_init__(self):
        given = sum(x is not None for x in (self.table, self.ring_map, self.group_images))
        if given != 1:
            raise HomError("give exactly one of table, ring_map, group_images")
        if self.kind not in ("weak", "strong"):
            raise HomError(f"kind must be weak or strong, not {self.kind!r}")
        if self.kind == "strong" and self.ring_map is None:
            raise HomError("a strong hom needs a ring map")

    def with_status(self, status: Status) -> "PFHom":
        return PFHom(self.source, self.target, self.kind, self.table, self.ring_map, self.group_images, status)

    def mapping(self, bound: int = DEFAULT_BOUND) -> dict[RingValue, RingValue]:
        """The map on the enumerated source elements (raises HomError if ill-defined)."""
        if self.table is not None:
            # 0 -> 0 and 1 -> 1 are forced; a table may leave them implicit
            m = {self.source.ring.zero(): self.target.ring.zero(), self.source.ring.one(): self.target.ring.one()}
            m.update(self.table)
            return m
        E = enumerate_elements(self.source, bound)
        if self.ring_map is not None:
            return {x: self.ring_map.apply(x) for x in E}
        return _extend_group_images(self.source, self.target, self.group_images, bound)

    def __call__(self, x: RingValue) -> RingValue:
        if self.ring_map is not None:
            return self.ring_map.apply(x)
        m = self.mapping()
        if x not in m:
            raise HomError(f"{x} is outside the enumerated source")
        return m[x]

    def to_json(self) -> dict:
        out = {"source": self.source.to_json(), "target": self.target.to_json(), "kind": self.kind}
        if self.table is not None:
            out["table"] = [[str(a), str(b)] for a, b in self.table]
        elif self.ring_map is not None:
            out.update(self.ring_map.to_json())
        else:
            out["group_images"] = [str(y) for y in self.group_images]
        out["status"] = self.status.value
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "PFHom":
        S = PartialField.from_json(obj["source"])
        T = PartialField.from_json(obj["target"])
        kind = obj.get("kind", "weak")
        status = Status(obj.get("status", "unverified"))
        if "table" in obj:
            table = tuple((S.ring.parse(str(a)), T.ring.parse(str(b))) for a, b in obj["table"])
            return cls(S, T, kind, table=table, status=status)
        if "group_images" in obj:
            imgs = tuple(T.ring.parse(str(b)) for b in obj["group_images"])
            return cls(S, T, kind, group_images=imgs, status=status)
        return cls(S, T, kind, ring_map=ring_map_from_json(obj, S.ring, T.ring), status=status)


def _extend_group_images(S: PartialField, T: PartialField, images, bound: int) -> dict:
    """Extend images of group generators multiplicatively, checking well-definedness."""
    gens = S.group_generators
    if len(images) != len(gens):
        raise HomError(f"expected {len(gens)} generator images, got {len(images)}")
    one_s, one_t = S.ring.one(), T.ring.one()
    table = {S.ring.zero(): T.ring.zero(), one_s: one_t}
    if group_is_finite(S):
        frontier = [one_s]
        while frontier:
            nxt = []
            for x in frontier:
                for g, y in zip(gens, images):
                    xg, img = x * g, table[x] * y
                    if xg in table:
                        if table[xg] != img:
                            raise HomError(f"ill-defined: {xg} would map to {table[xg]} and {img}")
                    else:
                        table[xg] = img
                        nxt.append(xg)
            frontier = nxt
        return table
    ranges = []
    for g, y, order in zip(gens, images, _orders(S)):
        if order is not None:
            ranges.append([(g**k, y**k) for k in range(order)])
        else:
            ginv, yinv = S.ring.inverse(g), T.ring.inverse(y)
            ranges.append(
                [(g**k, y**k) for k in range(bound + 1)] + [(ginv**k, yinv**k) for k in range(1, bound + 1)]
            )
    for combo in itertools.product(*ranges):
        x, img = one_s, one_t
        for a, b in combo:
            x, img = x * a, img * b
        if x in table and table[x] != img:
            raise HomError(f"ill-defined: {x} would map to {table[x]} and {img}")
        table[x] = img
    return table


# ---------------------------------------------------------------------------
# verification


def verify_strong_hom(h: PFHom) -> Verification:
    """Ring-level check: defining relations hold and the group lands in the target group."""
    if h.ring_map is None:
        return Verification(Status.FAIL, "no ring-level map given")
    undecided = []
    for text, verdict in h.ring_map.relations():
        if verdict is Verdict.NO:
            return Verification(Status.FAIL, f"relation violated: {text}")
        if verdict is Verdict.UNKNOWN:
            undecided.append(text)
    for g in h.source.group_generators:
        y = h.ring_map.apply(g)
        verdict = Verdict.NO if y.is_zero() else pf_contains(h.target, y)
        if verdict is Verdict.NO:
            return Verification(Status.FAIL, f"group generator {g} maps to {y}, outside the target group")
        if verdict is Verdict.UNKNOWN:
            undecided.append(f"{y} in target group")
    if undecided:
        return Verification(Status.INCONCLUSIVE, "; ".join(undecided))
    return Verification(Status.EXACT)


def verify_pf_hom(h: PFHom, bound: int = DEFAULT_BOUND) -> Verification:
    """Check phi(1) = 1, multiplicativity and additivity on the enumerated source.

    Exact when the source enumeration is complete, or when the map is a
    verified strong hom (a ring hom carrying G into G' preserves every sum and
    product); otherwise bounded by the enumeration window.
    """
    E = enumerate_elements(h.source, bound)
    try:
        m = h.mapping(bound)
    except HomError as exc:
        return Verification(Status.FAIL, str(exc))
    except ArithmeticError as exc:
        return Verification(Status.FAIL, f"cannot evaluate: {exc}")
    missing = [x for x in E if x not in m]
    if missing:
        return Verification(Status.FAIL, f"no image given for {missing[0]}")
    undecided = []
    for x in E:
        verdict = pf_contains(h.target, m[x], bound)
        if verdict is Verdict.NO:
            return Verification(Status.FAIL, f"image {m[x]} of {x} is not in {h.target}")
        if verdict is Verdict.UNKNOWN:
            undecided.append(f"{m[x]} in target")
    one = h.source.ring.one()
    if not m[one].is_one():
        return Verification(Status.FAIL, f"phi(1) = {m[one]}")
    for p, q in itertools.combinations_with_replacement(list(E), 2):
        pq = p * q
        if pq in m and m[pq] != m[p] * m[q]:
            return Verification(Status.FAIL, f"phi({p}*{q}) = {m[pq]} but phi({p})*phi({q}) = {m[p] * m[q]}")
    for t in addition_triples(h.source, bound):
        if m[t.p] + m[t.q] != m[t.r]:
            return Verification(Status.FAIL, f"({t.p},{t.q},{t.r})")
    if undecided:
        return Verification(Status.INCONCLUSIVE, "; ".join(undecided[:3]))
    if E.complete:
        return Verification(Status.EXACT)
    if h.ring_map is not None and verify_strong_hom(h).status is Status.EXACT:
        return Verification(Status.EXACT, note="ring homomorphism carrying the group into the target group")
    return Verification(Status.BOUNDED, bound=bound)


def verified(h: PFHom, bound: int = DEFAULT_BOUND) -> PFHom:
    """``h`` with its status set by the appropriate verifier (raises on failure)."""
    res = verify_strong_hom(h) if h.kind == "strong" else verify_pf_hom(h, bound)
    if not res.ok:
        raise HomError(str(res))
    return h.with_status(res.status)


def compose(h2: PFHom, h1: PFHom, bound: int = DEFAULT_BOUND) -> PFHom:
    """``h2 o h1``; strong when both are, status the weaker of the two."""
    if h1.target != h2.source:
        raise HomError(f"cannot compose: {h1.target} is not {h2.source}")
    status = Status.weakest(h1.status, h2.status)
    if h1.ring_map is not None and h2.ring_map is not None:
        kind = "strong" if h1.kind == h2.kind == "strong" else "weak"
        return PFHom(h1.source, h2.target, kind, ring_map=ComposedMap(h1.ring_map, h2.ring_map), status=status)
    m1 = h1.mapping(bound)
    m2 = h2.mapping(bound)
    table = []
    for x in sorted(m1, key=sort_key):
        y = m1[x]
        z = m2[y] if y in m2 else h2(y)
        table.append((x, z))
    return PFHom(h1.source, h2.target, "weak", table=tuple(table), status=status)


def identity_hom(P: PartialField) -> PFHom:
    return PFHom(P, P, "strong", ring_map=identity_map(P.ring), status=Status.EXACT)


def table_hom(source: PartialField, target: PartialField, pairs) -> PFHom:
    """Convenience: build a table hom from raw (source, target) pairs."""
    table = tuple((source.element(a), target.element(b)) for a, b in pairs)
    return PFHom(source, target, "weak", table=table)


def is_isomorphism(h: PFHom) -> tuple[bool, str]:
    """Bijective exact hom with phi(p)+phi(q) in P2 iff p+q in P1."""
    E1, E2 = enumerate_elements(h.source), enumerate_elements(h.target)
    if not (E1.complete and E2.complete):
        raise HomError("isomorphism test needs complete enumerations")
    res = verify_pf_hom(h)
    if res.status is not Status.EXACT:
        return False, f"not an exact hom: {res}"
    m = h.mapping()
    images = [m[x] for x in E1]
    if len(set(images)) != len(images) or set(images) != set(E2):
        return False, "not a bijection on elements"
    for p, q in itertools.product(list(E1), repeat=2):
        lhs = (m[p] + m[q]) in E2
        rhs = (p + q) in E1
        if lhs != rhs:
            return False, f"phi({p})+phi({q}) in target is {lhs} but {p}+{q} in source is {rhs}"
    return True, "isomorphism"


# ---------------------------------------------------------------------------
# search


def _field_pf(F) -> PartialField:
    """A Galois field (or Q) as a partial field with the full unit group."""
    if isinstance(F, PartialField):
        return F
    if isinstance(F, GaloisField):
        return PartialField(F, (F.primitive_element,), str(F))
    raise TypeError(f"not a field target: {F}")


def weak_hom_search(
    P: PartialField,
    F,
    bound: Optional[int] = None,
    allow_bounded: bool = False,
    limit: Optional[int] = None,
) -> list[PFHom]:
    """All weak homs P -> F, F a finite field, in lexicographic image order.

    Exhaustive over images of the group generators.  For an infinite source
    (``allow_bounded``) candidates are checked on the enumeration window
    only: a returned hom is bounded, but an empty result is a proof of
    non-existence since every true hom restricts to a consistent window map.
    The window defaults to exponents <= SEARCH_WINDOW.
    """
    T = _field_pf(F)
    if bound is None:
        bound = DEFAULT_BOUND if group_is_finite(P) else SEARCH_WINDOW
    E = enumerate_elements(P, bound)
    if not E.complete and not allow_bounded:
        raise HomError(f"{P} has no complete enumeration")
    targets = sorted((y for y in T.ring.elements() if not y.is_zero()), key=sort_key)
    triples = addition_triples(P, bound)
    found = []
    for images in itertools.product(targets, repeat=len(P.group_generators)):
        try:
            m = _extend_group_images(P, T, images, bound)
        except HomError:
            continue
        if all(m[t.p] + m[t.q] == m[t.r] for t in triples if t.p in m and t.q in m and t.r in m):
            table = tuple(sorted(m.items(), key=lambda kv: sort_key(kv[0])))
            status = Status.EXACT if E.complete else Status.BOUNDED
            found.append(PFHom(P, T, "weak", table=table, status=status))
            if limit is not None and len(found) >= limit:
                break
    return found


def strong_hom_search(P: PartialField, F) -> list[PFHom]:
    """All strong homs P -> F for a finite field F, by exhaustive generator images."""
    T = _field_pf(F)
    out = []
    for m in all_generator_maps(P.ring, T.ring):
        h = PFHom(P, T, "strong", ring_map=m)
        if verify_strong_hom(h).status is Status.EXACT:
            out.append(h.with_status(Status.EXACT))
    return out


def rational_weak_hom_search(P: PartialField, height: int = 3) -> list[PFHom]:
    """Weak homs P -> (Q, Q*) with generator images a/b, |a|, b <= height (bounded search)."""
    Q = Rationals()
    T = PartialField(Q, (), "Q")
    E = enumerate_elements(P)
    if not E.complete:
        raise HomError(f"{P} has no complete enumeration")
    cands = sorted(
        {Q.element(sgn * a) * Q.inverse(Q.from_int(b)) for a in range(1, height + 1) for b in range(1, height + 1) for sgn in (1, -1)},
        key=sort_key,
    )
    triples = addition_triples(P)
    found = []
    for images in itertools.product(cands, repeat=len(P.group_generators)):
        try:
            m = _extend_group_images(P, T, images, DEFAULT_BOUND)
        except HomError:
            continue
        if all(m[t.p] + m[t.q] == m[t.r] for t in triples):
            table = tuple(sorted(m.items(), key=lambda kv: sort_key(kv[0])))
            found.append(PFHom(P, T, "weak", table=table, status=Status.EXACT))
    return found


# ---------------------------------------------------------------------------
# characteristic sets


@dataclass(frozen=True)
class CharSetResult:
    members: tuple[int, ...]
    prime_bound: int
    flags: dict = field(default_factory=dict, compare=False)
    note: Optional[str] = field(default=None, compare=False)

    def __contains__(self, p: int) -> bool:
        return p in self.members

    def as_set(self) -> set[int]:
        return set(self.members)

    def to_json(self) -> dict:
        out = {"members": list(self.members), "prime_bound": self.prime_bound, "flags": {str(k): v for k, v in self.flags.items()}}
        if self.note:
            out["note"] = self.note
        return out

    def __str__(self) -> str:
        parts = [f"{p}" + ("" if self.flags.get(p) == "exact" else f" ({self.flags.get(p)})") for p in self.members]
        return "{" + ", ".join(parts) + "}"


def strong_char_set(P: PartialField, prime_bound: int = 13, degree_bound: int = 3) -> CharSetResult:
    """Characteristics of fields receiving a ring hom from P (per-backend criteria)."""
    flags = P.ring.strong_characteristics(prime_bound, degree_bound)
    members = tuple(sorted(p for p in flags if p <= prime_bound))
    return CharSetResult(members, prime_bound, {p: flags[p] for p in members})


def weak_char_set(P: PartialField, prime_bound: int = 7, degree_bound: int = 3, height: int = 3) -> CharSetResult:
    """Characteristics of fields GF(p^j), j <= degree_bound, and Q receiving a weak hom from P."""
    from sympy import primerange

    if not enumerate_elements(P).complete:
        raise HomError(f"{P} has no complete enumeration")
    flags: dict = {}
    if rational_weak_hom_search(P, height):
        flags[0] = "bounded"
    for p in primerange(2, prime_bound + 1):
        for j in range(1, degree_bound + 1):
            if weak_hom_search(P, GaloisField(p, j), limit=1):
                flags[p] = "exact"
                break
    members = tuple(sorted(flags))
    return CharSetResult(
        members,
        prime_bound,
        flags,
        note=f"primes searched over GF(p^j), j <= {degree_bound}; 0 by rational images of height <= {height}",
    )


def product_hom_factor(h: PFHom) -> tuple[int, PFHom]:
    """For a strong hom out of a product into a field: the unique j with h(e_j) != 0.

    Returns the 1-based index and the restricted hom out of factor j.
    """
    R = h.source.ring
    if not isinstance(R, ProductRing):
        raise HomError("source ring is not a product")
    if not h.target.ring.is_field():
        raise HomError("target is not a field")
    if h.ring_map is None or verify_strong_hom(h).status is not Status.EXACT:
        raise HomError("hom is not a verified strong hom")
    nonzero = [j for j in range(len(R.factors)) if not h.ring_map.apply(R.idempotent(j)).is_zero()]
    if len(nonzero) != 1:
        raise HomError(f"expected exactly one idempotent with nonzero image, got {nonzero}")
    j = nonzero[0]
    factor = R.factors[j]
    gens = tuple(R.component(g, j) for g in h.source.group_generators)
    source = PartialField(factor, gens, f"factor {j + 1} of {h.source.label()}")
    if isinstance(h.ring_map, ProjectionMap) and h.ring_map.index == j:
        inner = h.ring_map.inner
    else:
        inner = LiftedMap(R, j, h.ring_map)
    restricted = PFHom(source, h.target, "strong", ring_map=inner)
    return j + 1, restricted.with_status(verify_strong_hom(restricted).status)
