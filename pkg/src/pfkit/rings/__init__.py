"""Exact ring backends and the functional arithmetic interface."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from sympy import isprime

from .base import (
    NotAUnitError,
    ParseError,
    Ring,
    RingError,
    RingMismatchError,
    RingValue,
    UnitUnknownError,
    Verdict,
    sort_key,
)
from .galois import GaloisField
from .integers import Integers, LocalizedIntegers, Rationals
from .modular import ModularRing
from .numberring import NumberRing
from .polyring import LocalizedPolynomialRing
from .product import ProductRing

__all__ = [
    "GaloisField",
    "Integers",
    "LocalizedIntegers",
    "LocalizedPolynomialRing",
    "ModularRing",
    "NotAUnitError",
    "NumberRing",
    "ParseError",
    "PrimeOrZero",
    "ProductRing",
    "Rationals",
    "Ring",
    "RingError",
    "RingMismatchError",
    "RingValue",
    "UnitUnknownError",
    "Verdict",
    "canonical_form",
    "is_unit",
    "ring_add",
    "ring_characteristic",
    "ring_eq",
    "ring_from_json",
    "ring_inverse",
    "ring_mul",
    "ring_neg",
    "sort_key",
]


@dataclass(frozen=True, order=True)
class PrimeOrZero:
    value: int

    def __post_init__(self):
        if self.value != 0 and not isprime(self.value):
            raise ValueError(f"{self.value} is neither 0 nor prime")

    def __int__(self) -> int:
        return self.value


def ring_from_json(obj: dict) -> Ring:
    kind = obj.get("kind")
    if kind == "integers":
        return Integers()
    if kind == "localized_integers":
        return LocalizedIntegers(tuple(obj.get("primes", ())))
    if kind == "rationals":
        return Rationals()
    if kind == "modular":
        return ModularRing(int(obj["modulus"]))
    if kind == "galois":
        mod = obj.get("modulus")
        return GaloisField(int(obj["p"]), int(obj.get("k", 1)), tuple(mod) if mod else None)
    if kind == "number_ring":
        return NumberRing(tuple(obj["poly"]), tuple(tuple(t) for t in obj.get("inverted", ())))
    if kind == "poly_ring":
        names = obj.get("var_names")
        return LocalizedPolynomialRing(
            int(obj["num_vars"]),
            ring_from_json(obj.get("coefficients", {"kind": "integers"})),
            tuple(obj.get("inverted", ())),
            tuple(names) if names else None,
        )
    if kind == "product":
        return ProductRing(tuple(ring_from_json(f) for f in obj["factors"]))
    raise ValueError(f"unknown ring kind {kind!r}")


def _same(a: RingValue, b: RingValue) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")


def ring_add(a: RingValue, b: RingValue) -> RingValue:
    _same(a, b)
    return a + b


def ring_mul(a: RingValue, b: RingValue) -> RingValue:
    _same(a, b)
    return a * b


def ring_neg(a: RingValue) -> RingValue:
    return -a


def ring_eq(a: RingValue, b: RingValue) -> bool:
    _same(a, b)
    return a.data == b.data


def is_unit(a: RingValue) -> Verdict:
    return a.ring.is_unit(a)


def ring_inverse(a: RingValue) -> RingValue:
    return a.ring.inverse(a)


def canonical_form(ring: Ring, raw: Any) -> RingValue:
    """Normal form of any accepted representation (value, int, text or raw payload)."""
    if isinstance(raw, RingValue):
        if raw.ring != ring:
            raise RingMismatchError(f"{raw.ring} vs {ring}")
        return RingValue(ring, ring._canon(raw.data))
    return ring.element(raw)


def ring_characteristic(ring: Ring) -> int:
    return ring.characteristic()
