"""Finite fields GF(p^k) in the polynomial basis.

Elements are coefficient tuples of length k (ascending degree) reduced modulo
the defining polynomial, which is part of the descriptor.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from sympy import factorint, isprime

from .base import NotAUnitError, Ring, RingValue, Verdict, render_poly
from .integers import _ParseByArithmetic


def _trim(a: Sequence[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo ``m`` over GF(p); coefficient lists ascending."""
    a = [c % p for c in a]
    m = _trim([c % p for c in m])
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    for d in range(len(a) - 1, dm - 1, -1):
        c = a[d] * inv_lead % p
        if c:
            for i, mc in enumerate(m):
                a[d - dm + i] = (a[d - dm + i] - c * mc) % p
    return a[:dm] if dm > 0 else []


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(m: Sequence[int], p: int) -> bool:
    """Exhaustive factor search: no monic factor of degree 1..deg/2."""
    m = _trim([c % p for c in m])
    k = len(m) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _trim(poly_mod(m, list(tail) + [1], p)):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k (ordered by base-p encoding)."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        tail = [(code // p**i) % p for i in range(k)]
        if is_irreducible(tail + [1], p):
            return tuple(tail + [1])
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True)
class GaloisField(_ParseByArithmetic, Ring):
    p: int = 2
    k: int = 1
    modulus: Optional[tuple[int, ...]] = None
    kind = "galois"

    def __post_init__(self):
        p, k = int(self.p), int(self.k)
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be at least 1")
        m = default_modulus(p, k) if self.modulus is None else tuple(int(c) % p for c in self.modulus)
        if len(m) != k + 1 or m[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if not is_irreducible(m, p):
            raise ValueError(f"{list(m)} is reducible over GF({p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "modulus", m)

    @property
    def order(self) -> int:
        return self.p**self.k

    def _pad(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        c = list(coeffs)
        if len(c) > self.k:
            c = poly_mod(c, self.modulus, self.p)
        c = [x % self.p for x in c]
        return tuple(c + [0] * (self.k - len(c)))

    def from_int(self, n: int) -> RingValue:
        return RingValue(self, self._pad([n]))

    def gen(self) -> RingValue:
        """The class of x (for k = 1 this is the root of the degree-1 modulus)."""
        return RingValue(self, self._pad([0, 1]))

    def _canon(self, data):
        if isinstance(data, int):
            return self._pad([data])
        return self._pad(data)

    def _add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _mul(self, a, b):
        return self._pad(poly_mul(a, b, self.p))

    def _neg(self, a):
        return tuple(-x % self.p for x in a)

    def _pow(self, a, n):
        result, base = self._pad([1]), a
        while n:
            if n & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            n >>= 1
        return result

    def is_unit(self, v: RingValue) -> Verdict:
        return Verdict.NO if v.is_zero() else Verdict.YES

    def inverse(self, v: RingValue) -> RingValue:
        if v.is_zero():
            raise NotAUnitError("0 is not a unit")
        return RingValue(self, self._pow(v.data, self.order - 2))

    def characteristic(self) -> int:
        return self.p

    def is_finite(self) -> bool:
        return True

    def is_domain(self) -> bool:
        return True

    def is_field(self) -> bool:
        return True

    def encode(self, data) -> int:
        return sum(c * self.p**i for i, c in enumerate(data))

    def elements(self):
        for code in range(self.order):
            yield RingValue(self, tuple((code // self.p**i) % self.p for i in range(self.k)))

    @cached_property
    def primitive_element(self) -> RingValue:
        n = self.order - 1
        qs = list(factorint(n)) if n > 1 else []
        for v in self.elements():
            if v.is_zero():
                continue
            if all(self._pow(v.data, n // q) != self._pad([1]) for q in qs):
                return v
        raise AssertionError("multiplicative group is cyclic")

    @cached_property
    def _log_table(self) -> dict:
        table, x, g = {}, self._pad([1]), self.primitive_element.data
        for e in range(self.order - 1):
            table[x] = e
            x = self._mul(x, g)
        return table

    def discrete_log(self, v: RingValue) -> int:
        return self._log_table[v.data]

    def unit_logs(self, units):
        return [[self._log_table[u.data]] for u in units], [self.order - 1]

    def ring_generators(self):
        return (self.gen(),) if self.k > 1 else ()

    def evaluate_coeffs(self, data, image: Optional[RingValue], target: Ring) -> RingValue:
        acc = target.zero()
        power = target.one()
        for c in data:
            if c:
                acc = acc + target.from_int(c) * power
            if image is not None:
                power = power * image
        return acc

    def evaluate_map(self, v, images, target):
        return self.evaluate_coeffs(v.data, images[0] if self.k > 1 else None, target)

    def map_relations(self, images, target):
        rels = [(f"{self.p} = 0", Verdict.YES if target.from_int(self.p).is_zero() else Verdict.NO)]
        if self.k > 1:
            y = images[0]
            val = target.zero()
            for c in reversed(self.modulus):
                val = val * y + target.from_int(c)
            text = render_poly(self._modulus_terms("x"))
            rels.append((f"{text} vanishes at the image of x", Verdict.YES if val.is_zero() else Verdict.NO))
        return rels

    def strong_characteristics(self, prime_bound, degree_bound):
        return {self.p: "exact"} if self.p <= prime_bound else {}

    def _modulus_terms(self, var: str):
        return [(_mono(var, i), c) for i, c in reversed(list(enumerate(self.modulus))) if c]

    def render_with(self, data, var: str = "x") -> str:
        if self.k == 1:
            return str(data[0])
        return render_poly([(_mono(var, i), c) for i, c in reversed(list(enumerate(data))) if c])

    def render(self, data) -> str:
        return self.render_with(data, "x")

    def _variables(self):
        return {"x": self.gen()} if self.k > 1 else {}

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __str__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})[{render_poly(self._modulus_terms('x'))}]"


def _mono(var: str, i: int) -> str:
    if i == 0:
        return ""
    if i == 1:
        return var
    return f"{var}^{i}"
