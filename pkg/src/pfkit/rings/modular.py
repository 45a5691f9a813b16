"""Residue rings Z/m (composite moduli allowed)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from sympy import factorint, isprime

from .base import NotAUnitError, Ring, RingValue, Verdict
from .integers import _ParseByArithmetic


def _unit_order(g: int, m: int) -> int:
    k, x = 1, g % m
    while x != 1 % m:
        x = x * g % m
        k += 1
    return k


class _PrimePowerUnits:
    """Coordinates on (Z/p^k)^x as a product of at most two cyclic groups."""

    def __init__(self, p: int, k: int):
        self.q = p**k
        self.p, self.k = p, k
        q = self.q
        if p == 2 and k >= 3:
            self.moduli = [2, 2 ** (k - 2)]
            self.table = self._powers(5, 2 ** (k - 2))
        elif p == 2 and k == 2:
            self.moduli = [2]
            self.table = {1: 0, 3: 1}
        elif p == 2:
            self.moduli = []
            self.table = {}
        else:
            phi = (p - 1) * p ** (k - 1)
            g = next(g for g in range(2, q) if math.gcd(g, p) == 1 and _unit_order(g, q) == phi)
            self.moduli = [phi]
            self.table = self._powers(g, phi)

    def _powers(self, g: int, n: int) -> dict[int, int]:
        table, x = {}, 1
        for e in range(n):
            table[x] = e
            x = x * g % self.q
        return table

    def log(self, u: int) -> list[int]:
        u %= self.q
        if self.p == 2 and self.k >= 3:
            s = 0 if u % 4 == 1 else 1
            w = u if s == 0 else (-u) % self.q
            return [s, self.table[w]]
        if not self.moduli:
            return []
        return [self.table[u]]


@dataclass(frozen=True)
class ModularRing(_ParseByArithmetic, Ring):
    modulus: int = 2
    kind = "modular"

    def __post_init__(self):
        if int(self.modulus) < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "modulus", int(self.modulus))

    def from_int(self, n: int) -> RingValue:
        return RingValue(self, int(n) % self.modulus)

    def _canon(self, data):
        return int(data) % self.modulus

    def _add(self, a, b):
        return (a + b) % self.modulus

    def _mul(self, a, b):
        return a * b % self.modulus

    def _neg(self, a):
        return -a % self.modulus

    def is_unit(self, v: RingValue) -> Verdict:
        return Verdict.YES if math.gcd(v.data, self.modulus) == 1 else Verdict.NO

    def inverse(self, v: RingValue) -> RingValue:
        if math.gcd(v.data, self.modulus) != 1:
            raise NotAUnitError(f"{v.data} is not a unit mod {self.modulus}")
        return RingValue(self, pow(v.data, -1, self.modulus))

    def characteristic(self) -> int:
        return self.modulus

    def is_finite(self) -> bool:
        return True

    def is_domain(self) -> bool:
        return isprime(self.modulus)

    def is_field(self) -> bool:
        return self.is_domain()

    def elements(self):
        return (RingValue(self, a) for a in range(self.modulus))

    @cached_property
    def _components(self) -> list[_PrimePowerUnits]:
        return [_PrimePowerUnits(p, k) for p, k in sorted(factorint(self.modulus).items())]

    def unit_logs(self, units):
        moduli = [m for c in self._components for m in c.moduli]
        vectors = [[x for c in self._components for x in c.log(u.data)] for u in units]
        return vectors, moduli

    def evaluate_map(self, v, images, target):
        return target.from_int(v.data)

    def map_relations(self, images, target):
        ok = Verdict.YES if target.from_int(self.modulus).is_zero() else Verdict.NO
        return [(f"{self.modulus} = 0", ok)]

    def strong_characteristics(self, prime_bound, degree_bound):
        return {p: "exact" for p in factorint(self.modulus) if p <= prime_bound}

    def render(self, data) -> str:
        return str(data)

    def to_json(self) -> dict:
        return {"kind": self.kind, "modulus": self.modulus}

    def __str__(self) -> str:
        return f"Z/{self.modulus}"
