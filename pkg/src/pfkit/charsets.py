"""Explicit partial fields realizing prescribed (strong) characteristic sets, and the WQO chain."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional

from sympy import factorint, isprime, primerange

from .homs import PFHom, Status, verify_strong_hom
from .partial_field import PartialField, _finite_full
from .ringmaps import GeneratorMap
from .rings import (
    GaloisField,
    Integers,
    LocalizedIntegers,
    LocalizedPolynomialRing,
    ModularRing,
    ProductRing,
    Rationals,
)

RATIONAL_PRIME_BOUND = 13  # generators of the Q factor: -1 and the primes up to this


@dataclass(frozen=True)
class PrimeSet:
    """A subset of {0} u primes: finite, or cofinite (all of them except ``excluded``)."""

    members: frozenset = frozenset()
    cofinite: bool = False
    excluded: frozenset = frozenset()

    def __post_init__(self):
        for p in self.members | self.excluded:
            if p != 0 and not isprime(p):
                raise ValueError(f"{p} is neither 0 nor prime")

    @classmethod
    def finite(cls, *ps: int) -> "PrimeSet":
        return cls(frozenset(ps))

    @classmethod
    def all_but(cls, *ps: int) -> "PrimeSet":
        return cls(cofinite=True, excluded=frozenset(ps))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """``"2,3"``, ``"{0,3}"``, ``"P\\{2}"`` or ``"P-{2,3}"`` (P = {0} u primes)."""
        text = text.strip()
        m = re.fullmatch(r"P\s*(?:\\|-)?\s*(?:\{([^}]*)\})?", text)
        if m:
            return cls.all_but(*_ints(m.group(1) or ""))
        return cls.finite(*_ints(text.strip("{} ")))

    def __contains__(self, p: int) -> bool:
        return p not in self.excluded if self.cofinite else p in self.members

    def restrict(self, prime_bound: int) -> set[int]:
        universe = {0} | set(primerange(2, prime_bound + 1))
        return {p for p in universe if p in self}

    def __str__(self) -> str:
        if self.cofinite:
            return "P\\{" + ",".join(map(str, sorted(self.excluded))) + "}"
        return "{" + ",".join(map(str, sorted(self.members))) + "}"


def _ints(text: str) -> list[int]:
    return [int(t) for t in re.split(r"[,\s]+", text.strip()) if t]


class CharSetError(ValueError):
    pass


@dataclass(frozen=True)
class Construction:
    partial_field: PartialField
    case: str
    note: str = ""


def build_weak_charset_pf(S: PrimeSet) -> Construction:
    """A partial field whose characteristic set is S (the two constructive cases).

    0 in S with finite complement A: (Z[1/q : q in A], all units).
    0 not in S, S finite: (Z/m, all units), m the product of S.
    """
    if S.cofinite:
        if 0 in S.excluded:
            raise CharSetError("infinite set without 0: no partial field has it as characteristic set")
        A = tuple(sorted(S.excluded))
        if not A:
            return Construction(PartialField(Integers(), (), "regular"), "case 1", "A is empty: the integers")
        R = LocalizedIntegers(A)
        pf = PartialField(R, tuple(R.from_int(q) for q in A), f"Z[1/q : q in {{{','.join(map(str, A))}}}]")
        return Construction(pf, "case 1")
    if not S.members:
        raise CharSetError("S is empty: every partial field maps to some field")
    if 0 in S.members:
        raise CharSetError("0 in S with infinite complement needs infinitely many inverted primes")
    m = math.prod(S.members)
    pf = _finite_full(ModularRing(m), f"Z/{m}")
    note = f"Z[1/q : q in A]/({m}) realized as Z/{m}: every q in A is already a unit mod {m}"
    return Construction(pf, "case 2", note)


def build_strong_charset_pf(S: PrimeSet, rational_prime_bound: int = RATIONAL_PRIME_BOUND) -> Construction:
    """(prod_{p in S} F_p, product of unit groups); F_0 is Q with a generated unit subgroup."""
    if S.cofinite:
        raise CharSetError("the product construction needs a finite set")
    if not S.members:
        raise CharSetError("S is empty")
    factors, factor_gens = [], []
    for p in sorted(S.members):
        if p == 0:
            Q = Rationals()
            factors.append(Q)
            factor_gens.append([Q.from_int(q) for q in primerange(2, rational_prime_bound + 1)])
        else:
            F = GaloisField(p)
            factors.append(F)
            factor_gens.append([F.primitive_element] if p > 2 else [])
    R = ProductRing(tuple(factors))
    gens = []
    for j, gs in enumerate(factor_gens):
        for g in gs:
            comps = [F.one() for F in factors]
            comps[j] = g
            gens.append(R.from_components(comps))
    name = "x".join("Q" if p == 0 else f"F{p}" for p in sorted(S.members))
    note = (
        f"Q factor carries the subgroup <-1, primes <= {rational_prime_bound}>" if 0 in S.members else ""
    )
    return Construction(PartialField(R, tuple(gens), name), "product", note)


# ---------------------------------------------------------------------------
# the descending chain P_1 <- P_2 <- ... of polynomial partial fields


@dataclass(frozen=True)
class ChainLink:
    partial_field: PartialField
    step: Optional[PFHom]  # P_i -> P_{i-1}, None for i = 1
    point: PFHom  # P_i -> GF(q)


def _poly_pf(F: GaloisField, i: int) -> PartialField:
    R = LocalizedPolynomialRing(i, F)
    gens = (R.coeff(F.primitive_element),) if F.order > 2 else ()
    return PartialField(R, gens, f"({F}[x1..x{i}], {F}*)")


def wqo_chain(q: int, n: int, a: Optional[object] = None) -> list[ChainLink]:
    """P_i = (F[x_1..x_i], F*) with evaluation homs P_{i+1} -> P_i (x_{i+1} -> a) and P_i -> F."""
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    if n < 1:
        raise ValueError("chain length must be positive")
    (p, k), = fac.items()
    F = GaloisField(p, k)
    a = F.one() if a is None else F.element(a)
    target = PartialField(F, (F.primitive_element,), f"gf({q})")
    links: list[ChainLink] = []
    fields = [_poly_pf(F, i) for i in range(1, n + 1)]
    for i, Pi in enumerate(fields, start=1):
        R = Pi.ring
        coeff_img = (F.gen(),) if k > 1 else ()
        point = PFHom(Pi, target, "strong", ring_map=GeneratorMap(R, F, coeff_img + (a,) * i))
        step = None
        if i > 1:
            lower = fields[i - 2].ring
            coeff_low = (lower.coeff(F.gen()),) if k > 1 else ()
            imgs = tuple(lower.var(j) for j in range(i - 1)) + (lower.coeff(a),)
            step = PFHom(Pi, fields[i - 2], "strong", ring_map=GeneratorMap(R, lower, coeff_low + imgs))
            step = step.with_status(verify_strong_hom(step).status)
        point = point.with_status(verify_strong_hom(point).status)
        links.append(ChainLink(Pi, step, point))
    return links
