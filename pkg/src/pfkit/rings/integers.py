"""Integers, localizations Z[1/p : p in A] and the rationals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import isprime, primerange

from ..lattice import coprime_base, factor_over_base
from .base import (
    Calculator,
    NotAUnitError,
    ParseError,
    Ring,
    RingValue,
    Verdict,
    evaluate_expression,
)


def _strip_primes(n: int, primes: Sequence[int]) -> int:
    n = abs(n)
    for p in primes:
        while n and n % p == 0:
            n //= p
    return n


def _integer_sign_log(units: Sequence[RingValue]) -> list[int]:
    return [0 if u.data > 0 else 1 for u in units]


class _ParseByArithmetic:
    """Mixin: parse texts by evaluating them with the ring's own arithmetic."""

    def _variables(self) -> dict[str, RingValue]:
        return {}

    def parse(self, text: str) -> RingValue:
        names = self._variables()

        def var(name):
            try:
                return names[name]
            except KeyError:
                raise ParseError(f"unknown symbol {name!r} for {self}") from None

        def div(a, b):
            try:
                return self.exact_div(a, b)
            except ArithmeticError as exc:
                raise ParseError(f"{text!r} is not an element of {self}: {exc}") from None

        calc = Calculator(
            const=self.from_int,
            var=var,
            add=lambda a, b: a + b,
            mul=lambda a, b: a * b,
            neg=lambda a: -a,
            div=div,
        )
        return evaluate_expression(text, calc)


@dataclass(frozen=True)
class Integers(_ParseByArithmetic, Ring):
    kind = "integers"

    def from_int(self, n: int) -> RingValue:
        return RingValue(self, int(n))

    def _canon(self, data):
        if isinstance(data, Fraction):
            if data.denominator != 1:
                raise ValueError(f"{data} is not an integer")
            return int(data)
        return int(data)

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def is_unit(self, v: RingValue) -> Verdict:
        return Verdict.YES if abs(v.data) == 1 else Verdict.NO

    def inverse(self, v: RingValue) -> RingValue:
        if abs(v.data) != 1:
            raise NotAUnitError(f"{v.data} is not a unit of Z")
        return v

    def exact_div(self, a: RingValue, b: RingValue) -> RingValue:
        if b.data == 0 or a.data % b.data:
            raise NotAUnitError(f"{b.data} does not divide {a.data}")
        return RingValue(self, a.data // b.data)

    def characteristic(self) -> int:
        return 0

    def is_domain(self) -> bool:
        return True

    def unit_logs(self, units):
        return [[s] for s in _integer_sign_log(units)], [2]

    def evaluate_map(self, v, images, target):
        return target.from_int(v.data)

    def strong_characteristics(self, prime_bound, degree_bound):
        out = {0: "exact"}
        out.update({p: "exact" for p in primerange(2, prime_bound + 1)})
        return out

    def render(self, data) -> str:
        return str(data)

    def to_json(self) -> dict:
        return {"kind": self.kind}

    def __str__(self) -> str:
        return "Z"


@dataclass(frozen=True)
class LocalizedIntegers(_ParseByArithmetic, Ring):
    """Z[1/p : p in primes]; values are reduced fractions with smooth denominators."""

    primes: tuple[int, ...] = ()
    kind = "localized_integers"

    def __post_init__(self):
        ps = tuple(int(p) for p in self.primes)
        if len(set(ps)) != len(ps):
            raise ValueError(f"inverted primes must be distinct: {ps}")
        for p in ps:
            if p < 2 or not isprime(p):
                raise ValueError(f"{p} is not a prime")
        object.__setattr__(self, "primes", tuple(sorted(ps)))

    def _smooth(self, n: int) -> bool:
        return _strip_primes(n, self.primes) == 1

    def from_int(self, n: int) -> RingValue:
        return RingValue(self, Fraction(n))

    def _canon(self, data):
        data = Fraction(data)
        if not self._smooth(data.denominator):
            raise ValueError(f"{data} is not in {self}")
        return data

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def is_unit(self, v: RingValue) -> Verdict:
        return Verdict.YES if v.data and self._smooth(v.data.numerator) else Verdict.NO

    def inverse(self, v: RingValue) -> RingValue:
        if self.is_unit(v) is not Verdict.YES:
            raise NotAUnitError(f"{v} is not a unit of {self}")
        return RingValue(self, 1 / v.data)

    def exact_div(self, a: RingValue, b: RingValue) -> RingValue:
        if b.data == 0:
            raise NotAUnitError("division by zero")
        q = a.data / b.data
        if not self._smooth(q.denominator):
            raise NotAUnitError(f"{b} does not divide {a} in {self}")
        return RingValue(self, q)

    def characteristic(self) -> int:
        return 0

    def is_domain(self) -> bool:
        return True

    def unit_logs(self, units):
        vectors = []
        for u in units:
            vec = [0 if u.data > 0 else 1]
            for p in self.primes:
                e, num, den = 0, u.data.numerator, u.data.denominator
                while num % p == 0:
                    num //= p
                    e += 1
                while den % p == 0:
                    den //= p
                    e -= 1
                vec.append(e)
            vectors.append(vec)
        return vectors, [2] + [0] * len(self.primes)

    def evaluate_map(self, v, images, target):
        num = target.from_int(v.data.numerator)
        return num * target.inverse(target.from_int(v.data.denominator))

    def map_relations(self, images, target):
        return [(f"{p} is a unit", target.is_unit(target.from_int(p))) for p in self.primes]

    def strong_characteristics(self, prime_bound, degree_bound):
        out = {0: "exact"}
        out.update({p: "exact" for p in primerange(2, prime_bound + 1) if p not in self.primes})
        return out

    def render(self, data) -> str:
        return str(data)

    def to_json(self) -> dict:
        return {"kind": self.kind, "primes": list(self.primes)}

    def __str__(self) -> str:
        return "Z[" + ",".join(f"1/{p}" for p in self.primes) + "]"


@dataclass(frozen=True)
class Rationals(_ParseByArithmetic, Ring):
    kind = "rationals"

    def from_int(self, n: int) -> RingValue:
        return RingValue(self, Fraction(n))

    def _canon(self, data):
        return Fraction(data)

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def is_unit(self, v: RingValue) -> Verdict:
        return Verdict.YES if v.data else Verdict.NO

    def inverse(self, v: RingValue) -> RingValue:
        if not v.data:
            raise NotAUnitError("0 is not a unit")
        return RingValue(self, 1 / v.data)

    def characteristic(self) -> int:
        return 0

    def is_domain(self) -> bool:
        return True

    def is_field(self) -> bool:
        return True

    def all_integers_invertible(self) -> bool:
        return True

    def unit_logs(self, units):
        magnitudes = []
        for u in units:
            magnitudes += [abs(u.data.numerator), u.data.denominator]
        base = coprime_base(magnitudes, math.gcd, lambda a, b: a // b, lambda a: a == 1)
        base.sort()

        def try_div(a, b):
            return a // b if a % b == 0 else None

        vectors = []
        for u in units:
            up, _ = factor_over_base(abs(u.data.numerator), base, try_div)
            down, _ = factor_over_base(u.data.denominator, base, try_div)
            vectors.append([0 if u.data > 0 else 1] + [a - b for a, b in zip(up, down)])
        return vectors, [2] + [0] * len(base)

    def evaluate_map(self, v, images, target):
        num = target.from_int(v.data.numerator)
        return num * target.inverse(target.from_int(v.data.denominator))

    def map_relations(self, images, target):
        ok = Verdict.YES if target.all_integers_invertible() else Verdict.NO
        return [("every nonzero integer is a unit", ok)]

    def strong_characteristics(self, prime_bound, degree_bound):
        return {0: "exact"}

    def render(self, data) -> str:
        return str(data)

    def to_json(self) -> dict:
        return {"kind": self.kind}

    def __str__(self) -> str:
        return "Q"
