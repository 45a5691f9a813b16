"""Partial fields (R, G): a ring with a finitely generated unit subgroup containing -1."""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from sympy import factorint, isprime

from .lattice import solve_in_group
from .rings import (
    GaloisField,
    Integers,
    LocalizedIntegers,
    LocalizedPolynomialRing,
    ModularRing,
    NumberRing,
    ProductRing,
    Rationals,
    Ring,
    RingMismatchError,
    RingValue,
    Verdict,
    ring_from_json,
    sort_key,
)

DEFAULT_BOUND = 8
TORSION_LIMIT = 256  # largest element order detected by repeated powering


@dataclass(frozen=True)
class PartialField:
    ring: Ring
    generators: tuple[RingValue, ...] = ()
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.ring.one().is_zero():
            raise ValueError("the zero ring carries no partial field")
        gens = tuple(self.ring.element(g) for g in self.generators)
        for g in gens:
            if self.ring.is_unit(g) is not Verdict.YES:
                raise ValueError(f"generator {g} is not a certified unit of {self.ring}")
        object.__setattr__(self, "generators", gens)

    @property
    def group_generators(self) -> tuple[RingValue, ...]:
        """-1 followed by the given generators, without repeats and without 1."""
        out: list[RingValue] = []
        for g in (-self.ring.one(),) + self.generators:
            if not g.is_one() and g not in out:
                out.append(g)
        return tuple(out)

    def label(self) -> str:
        return self.name or f"({self.ring}, <{', '.join(str(g) for g in self.group_generators)}>)"

    def __str__(self) -> str:
        return self.label()

    def element(self, raw) -> RingValue:
        return self.ring.element(raw)

    def contains(self, x, bound: int = DEFAULT_BOUND) -> Verdict:
        return pf_contains(self, self.ring.element(x), bound)

    def to_json(self) -> dict:
        out = {"ring": self.ring.to_json(), "generators": [str(g) for g in self.generators]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "PartialField":
        if "catalog" in obj:
            return catalog(obj["catalog"])
        ring = ring_from_json(obj["ring"])
        return cls(ring, tuple(ring.parse(str(g)) for g in obj.get("generators", ())), obj.get("name"))


@dataclass(frozen=True)
class ElementSet:
    elements: tuple[RingValue, ...]
    complete: bool

    def __post_init__(self):
        uniq = {v.data: v for v in self.elements}
        object.__setattr__(self, "elements", tuple(sorted(uniq.values(), key=sort_key)))

    def __iter__(self) -> Iterator[RingValue]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return v in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def texts(self) -> list[str]:
        return [str(v) for v in self.elements]

    def to_json(self) -> dict:
        return {"elements": self.texts(), "complete": self.complete}


@dataclass(frozen=True)
class AdditionTriple:
    p: RingValue
    q: RingValue
    r: RingValue

    def texts(self) -> tuple[str, str, str]:
        return (str(self.p), str(self.q), str(self.r))


# ---------------------------------------------------------------------------
# group structure


def element_order(g: RingValue, limit: int = TORSION_LIMIT) -> Optional[int]:
    """Multiplicative order of ``g``; ``None`` if infinite (or above ``limit`` without logs)."""
    logs = None if g.ring.is_finite() else g.ring.unit_logs([g])
    if logs is not None:
        (vec,), moduli = logs
        if any(v for v, m in zip(vec, moduli) if m == 0):
            return None
        return math.lcm(1, *(m // math.gcd(m, v) for v, m in zip(vec, moduli) if m))
    x = g
    for k in range(1, limit + 1):
        if x.is_one():
            return k
        x = x * g
    return None


@lru_cache(maxsize=None)
def _orders(P: PartialField) -> tuple[Optional[int], ...]:
    return tuple(element_order(g) for g in P.group_generators)


def group_is_finite(P: PartialField) -> bool:
    return P.ring.is_finite() or all(o is not None for o in _orders(P))


@lru_cache(maxsize=None)
def _group_closure(P: PartialField) -> frozenset:
    one = P.ring.one()
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in P.group_generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=None)
def _window(P: PartialField, bound: int) -> frozenset:
    ranges = []
    for g, order in zip(P.group_generators, _orders(P)):
        if order is not None:
            ranges.append([g**k for k in range(order)])
        else:
            inv = P.ring.inverse(g)
            ranges.append([g**k for k in range(bound + 1)] + [inv**k for k in range(1, bound + 1)])
    one = P.ring.one()
    out = set()
    for combo in itertools.product(*ranges):
        x = one
        for y in combo:
            x = x * y
        out.add(x)
    return frozenset(out)


def enumerate_elements(P: PartialField, bound: int = DEFAULT_BOUND) -> ElementSet:
    """{0} together with the group (complete) or a window of generator words."""
    if group_is_finite(P):
        group, complete = _group_closure(P), True
    else:
        group, complete = _window(P, bound), False
    return ElementSet(tuple(group) + (P.ring.zero(),), complete)


def pf_contains(P: PartialField, x: RingValue, bound: int = DEFAULT_BOUND) -> Verdict:
    if x.ring != P.ring:
        raise RingMismatchError(f"{x.ring} vs {P.ring}")
    if x.is_zero():
        return Verdict.YES
    unit = P.ring.is_unit(x)
    if unit is Verdict.NO:
        return Verdict.NO
    if unit is Verdict.YES:
        logs = P.ring.unit_logs(list(P.group_generators) + [x])
        if logs is not None:
            vectors, moduli = logs
            found = solve_in_group(vectors[:-1], vectors[-1], moduli)
            return Verdict.YES if found is not None else Verdict.NO
    if group_is_finite(P):
        return Verdict.YES if x in _group_closure(P) else Verdict.NO
    return Verdict.YES if x in _window(P, bound) else Verdict.UNKNOWN


def membership_is_exact(P: PartialField) -> bool:
    """Whether pf_contains never answers unknown for this partial field."""
    return group_is_finite(P) or not isinstance(P.ring, NumberRing)


def _window_certificate(P: PartialField, bound: int) -> bool:
    """A priori completeness of F(P) computed from an exponent window.

    For G = <-1, q> with q prime inside Z[1/q] or Q, p and 1-p in G forces
    p in {2, 1/2, -1} or p in {0, 1} (valuations at q plus |p| <= 2), all of
    which have exponent at most 1.
    """
    if not isinstance(P.ring, (LocalizedIntegers, Rationals, Integers)):
        return False
    free = [g for g, o in zip(P.group_generators, _orders(P)) if o is None]
    if len(free) != 1:
        return False
    q = free[0].data
    for cand in (q, 1 / q):
        if cand.denominator == 1 and cand > 0 and isprime(int(cand)):
            return bound >= 1
    return False


def fundamental_elements(P: PartialField, bound: int = DEFAULT_BOUND) -> ElementSet:
    """Elements p of the enumerated set with 1 - p in P."""
    E = enumerate_elements(P, bound)
    one = P.ring.one()
    out, decided = [], True
    for p in E:
        verdict = pf_contains(P, one - p, bound)
        if verdict is Verdict.YES:
            out.append(p)
        elif verdict is Verdict.UNKNOWN:
            decided = False
    complete = decided and (E.complete or _window_certificate(P, bound))
    return ElementSet(tuple(out), complete)


def addition_triples(P: PartialField, bound: int = DEFAULT_BOUND) -> list[AdditionTriple]:
    """All p + q = r inside the enumerated elements, one per unordered {p, q}."""
    E = enumerate_elements(P, bound)
    elems = list(E)
    out = []
    for i, p in enumerate(elems):
        for q in elems[i:]:
            r = p + q
            if r in E:
                out.append(AdditionTriple(p, q, r))
    return out


# ---------------------------------------------------------------------------
# catalog


def _greedy_group_generators(ring: Ring, units: Iterable[RingValue]) -> list[RingValue]:
    gens: list[RingValue] = []
    closure = {ring.one()}
    minus = -ring.one()
    for u in sorted(units, key=sort_key):
        if u in closure:
            continue
        gens.append(u)
        closure = _group_closure(PartialField(ring, tuple(gens)))
    return [g for g in gens if g != minus]


def _finite_full(ring: Ring, name: str) -> PartialField:
    if isinstance(ring, GaloisField):
        gens: tuple = (ring.primitive_element,)
    else:
        gens = tuple(_greedy_group_generators(ring, ring.units()))
    return PartialField(ring, gens, name)


def _gf(p: int, k: int = 1) -> PartialField:
    name = f"gf({p})" if k == 1 else f"gf({p},{k})"
    return _finite_full(GaloisField(p, k), name)


CATALOG_NAMES = (
    "regular",
    "dyadic",
    "near_regular",
    "sixth_root",
    "golden_ratio",
    "f2xf3",
    "gf(2)",
    "gf(3)",
    "gf(2,2)",
    "gf(5)",
    "gf(7)",
    "modular(6)",
)

_CALL = re.compile(r"^\s*([a-z_0-9]+)\s*(?:\((.*)\))?\s*$")


def _split_args(text: str) -> list[str]:
    depth, start, parts = 0, 0, []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i].strip())
            start = i + 1
    parts.append(text[start:].strip())
    return [p for p in parts if p]


@lru_cache(maxsize=None)
def catalog(name: str) -> PartialField:
    """Built-in partial fields by name (see CATALOG_NAMES; gf/modular/product take arguments)."""
    m = _CALL.match(name)
    if not m:
        raise KeyError(f"unknown partial field {name!r}")
    head, args = m.group(1), _split_args(m.group(2) or "")
    if head == "regular" and not args:
        return PartialField(Integers(), (), "regular")
    if head == "dyadic" and not args:
        R = LocalizedIntegers((2,))
        return PartialField(R, (R.from_int(2),), "dyadic")
    if head == "near_regular" and not args:
        R = LocalizedPolynomialRing(1, Integers(), ("a", "1-a"), ("a",))
        a = R.var(0)
        return PartialField(R, (a, 1 - a), "near_regular")
    if head == "sixth_root" and not args:
        R = NumberRing((1, -1, 1), ((0, 1),))
        return PartialField(R, (R.gen(),), "sixth_root")
    if head == "golden_ratio" and not args:
        R = NumberRing((-1, -1, 1), ((0, 1),))
        return PartialField(R, (R.gen(),), "golden_ratio")
    if head == "f2xf3" and not args:
        R = ProductRing((GaloisField(2), GaloisField(3)))
        return PartialField(R, (R.parse("(1,2)"),), "f2xf3")
    if head == "gf" and 1 <= len(args) <= 2:
        q = int(args[0])
        if len(args) == 2:
            return _gf(q, int(args[1]))
        fac = factorint(q)
        if len(fac) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, k), = fac.items()
        return _gf(p, k)
    if head == "modular" and len(args) == 1:
        return _finite_full(ModularRing(int(args[0])), f"modular({int(args[0])})")
    if head == "product" and args:
        parts = [catalog(a) for a in args]
        R = ProductRing(tuple(Pf.ring for Pf in parts))
        gens = []
        for j, Pf in enumerate(parts):
            for g in Pf.group_generators:
                comps = [F.one() for F in R.factors]
                comps[j] = g
                gens.append(R.from_components(comps))
        return PartialField(R, tuple(gens), f"product({','.join(args)})")
    raise KeyError(f"unknown partial field {name!r}")


def catalog_list() -> list[PartialField]:
    return [catalog(n) for n in CATALOG_NAMES]


# ---------------------------------------------------------------------------
# independent oracle (tests): brute-force group listing


def brute_force_group(P: PartialField, bound: int = DEFAULT_BOUND, limit: int = 100_000) -> set[RingValue]:
    """Words in the generators and their inverses, exhaustively (finite groups) or by BFS depth."""
    one = P.ring.one()
    steps = list(P.group_generators)
    if not P.ring.is_finite():
        steps += [P.ring.inverse(g) for g in P.group_generators]
    seen, frontier = {one}, [one]
    depth = 0
    while frontier and len(seen) < limit and (P.ring.is_finite() or depth < bound):
        frontier = [x * g for x in frontier for g in steps]
        frontier = [y for y in dict.fromkeys(frontier) if y not in seen]
        seen.update(frontier)
        depth += 1
    return seen


def brute_force_fundamentals(elements: Sequence[RingValue], group: set[RingValue]) -> set[RingValue]:
    one = elements[0].ring.one()
    members = set(group) | {one - one}
    return {p for p in elements if (one - p) in members}
