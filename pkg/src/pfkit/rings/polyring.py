"""Localized polynomial rings K[x_1..x_n][1/t : t in T], K = Z or GF(p^k).

A value is a reduced fraction ``(N, D)``: ``gcd(N, D) = 1``, ``D`` is unit
normal, and ``D`` divides a power of the product of the inverted polynomials.
Over a unique factorisation domain this pair is a normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Optional, Sequence, Union

import math

import sympy
from sympy import primerange

from ..lattice import coprime_base, factor_over_base
from . import polys as P
from .base import (
    Calculator,
    NotAUnitError,
    ParseError,
    Ring,
    RingValue,
    Verdict,
    evaluate_expression,
    render_poly,
)
from .galois import GaloisField
from .integers import Integers

COEFF_VAR = "z"


def _default_names(n: int) -> tuple[str, ...]:
    return ("x",) if n == 1 else tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True)
class LocalizedPolynomialRing(Ring):
    num_vars: int = 1
    coefficients: Union[Integers, GaloisField] = field(default_factory=Integers)
    inverted: tuple[str, ...] = ()
    var_names: Optional[tuple[str, ...]] = None
    kind = "poly_ring"

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        if not isinstance(self.coefficients, (Integers, GaloisField)):
            raise TypeError("coefficients must be Integers or a GaloisField")
        names = tuple(self.var_names) if self.var_names else _default_names(self.num_vars)
        if len(names) != self.num_vars or len(set(names)) != len(names) or COEFF_VAR in names:
            raise ValueError(f"bad variable names {names}")
        object.__setattr__(self, "var_names", names)
        # inverted polynomials are kept as canonical texts so the descriptor hashes
        texts = []
        for t in self.inverted:
            poly = self._parse_poly(t) if isinstance(t, str) else t
            if not poly:
                raise ValueError("cannot invert 0")
            texts.append(self._poly_text(P.normalize(self.K, poly)))
        object.__setattr__(self, "inverted", tuple(texts))

    @property
    def K(self) -> Ring:
        return self.coefficients

    @cached_property
    def _inverted_polys(self) -> tuple:
        return tuple(self._parse_poly(t) for t in self.inverted)

    @cached_property
    def _T(self):
        return reduce(P.mul, self._inverted_polys, P.constant(self.K, self.num_vars, 1))

    @cached_property
    def _T_factors(self) -> Optional[tuple]:
        """Primitive irreducible factors of prod(T) and the primes of its content.

        Only computed over Z, where sympy factors multivariate polynomials;
        other coefficient rings fall back to gcd computations.
        """
        if not isinstance(self.K, Integers):
            return None
        gens = sympy.symbols(f"v0:{self.num_vars}")
        T = sympy.Poly.from_dict({e: c.data for e, c in self._T}, *gens, domain=sympy.ZZ)
        const, factors = T.factor_list()
        polys = []
        for f, _ in factors:
            terms = {tuple(e): self.K.from_int(int(c)) for e, c in f.as_dict().items()}
            polys.append(P.normalize(self.K, P.from_terms(terms)))
        primes = tuple(sorted(sympy.factorint(abs(int(const)))))
        return tuple(polys), primes

    # -- polynomial helpers -------------------------------------------------
    def _one(self):
        return P.constant(self.K, self.num_vars, 1)

    def _split_over_T(self, r):
        """``r = c * prod f_i^e_i`` over the factors of T: ``(exponents, c)`` or None."""
        polys, _ = self._T_factors
        exps = []
        for f in polys:
            e = 0
            while True:
                q = P.try_div(self.K, r, f)
                if q is None:
                    break
                r, e = q, e + 1
            exps.append(e)
        if not P.is_constant(r):
            return None
        return exps, P.const_value(self.K, r).data

    def _strip(self, r):
        """Divide out every factor shared with prod(T); returns the cofactor."""
        if self._T_factors is not None:
            polys, primes = self._T_factors
            for f in polys:
                while (q := P.try_div(self.K, r, f)) is not None:
                    r = q
            if P.is_constant(r) and r:
                c = r[0][1].data
                for p in primes:
                    while c % p == 0:
                        c //= p
                return P.constant(self.K, self.num_vars, c)
            # fall through: the gcd loop below also strips content primes
        while True:
            g = P.gcd(self.K, r, self._T)
            if P.is_constant(g) and g[0][1].is_one():
                return r
            r = P.try_div(self.K, r, g)

    def _divides_power_of_T(self, r) -> bool:
        rest = self._strip(r)
        return P.is_constant(rest) and self.K.is_unit(P.const_value(self.K, rest)) is Verdict.YES

    def _fast_gcd(self, num, den):
        # denominators divide a power of prod(T): trial division by its factors suffices
        split = self._split_over_T(den) if self._T_factors is not None and num else None
        if split is None:
            return P.gcd(self.K, num, den)
        exps, c = split
        g = P.constant(self.K, self.num_vars, math.gcd(c, *(t.data for _, t in num)))
        rest = num
        for f, e in zip(self._T_factors[0], exps):
            for _ in range(e):
                q = P.try_div(self.K, rest, f)
                if q is None:
                    break
                rest, g = q, P.mul(g, f)
        return g

    def _reduce(self, num, den):
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = self._fast_gcd(num, den)
        num, den = P.try_div(self.K, num, g), P.try_div(self.K, den, g)
        u = P.unit_part(self.K, den)
        if not u.is_one():
            inv = self.K.inverse(u)
            num, den = P.scale(num, inv), P.scale(den, inv)
        return num, den

    # -- ring interface -----------------------------------------------------
    def from_int(self, n: int) -> RingValue:
        return RingValue(self, (P.constant(self.K, self.num_vars, n), self._one()))

    def var(self, i: int) -> RingValue:
        return RingValue(self, (P.variable(self.K, self.num_vars, i), self._one()))

    def coeff(self, c: RingValue) -> RingValue:
        return RingValue(self, (P.constant(self.K, self.num_vars, c), self._one()))

    def from_fraction(self, num, den=None) -> RingValue:
        den = self._one() if den is None else den
        num, den = self._reduce(num, den)
        if not self._divides_power_of_T(den):
            raise ValueError(f"denominator {self._poly_text(den)} is not invertible in {self}")
        return RingValue(self, (num, den))

    def _canon(self, data):
        return self.from_fraction(*data).data

    def _add(self, a, b):
        (n1, d1), (n2, d2) = a, b
        if d1 == d2:
            return self._reduce(P.add(n1, n2), d1)
        return self._reduce(P.add(P.mul(n1, d2), P.mul(n2, d1)), P.mul(d1, d2))

    def _mul(self, a, b):
        return self._reduce(P.mul(a[0], b[0]), P.mul(a[1], b[1]))

    def _neg(self, a):
        return (P.neg(a[0]), a[1])

    def is_unit(self, v: RingValue) -> Verdict:
        num = v.data[0]
        if not num:
            return Verdict.NO
        return Verdict.YES if self._divides_power_of_T(num) else Verdict.NO

    def inverse(self, v: RingValue) -> RingValue:
        if self.is_unit(v) is not Verdict.YES:
            raise NotAUnitError(f"{v} is not a unit of {self}")
        num, den = v.data
        return RingValue(self, self._reduce(den, num))

    def exact_div(self, a: RingValue, b: RingValue) -> RingValue:
        if not b.data[0]:
            raise NotAUnitError("division by zero")
        num, den = self._reduce(P.mul(a.data[0], b.data[1]), P.mul(a.data[1], b.data[0]))
        if not self._divides_power_of_T(den):
            raise NotAUnitError(f"{b} does not divide {a} in {self}")
        return RingValue(self, (num, den))

    def characteristic(self) -> int:
        return self.K.characteristic()

    def is_domain(self) -> bool:
        return True

    # -- unit group coordinates ---------------------------------------------
    def _const_log(self, c: RingValue) -> list[int]:
        if isinstance(self.K, GaloisField):
            return [self.K.discrete_log(c)]
        return [0 if c.data > 0 else 1]

    def _const_modulus(self) -> list[int]:
        if isinstance(self.K, GaloisField):
            return [self.K.order - 1]
        return [2]

    def unit_logs(self, units):
        K = self.K
        pieces = []
        for u in units:
            pieces += [P.normalize(K, u.data[0]), u.data[1]]
        base = coprime_base(
            pieces,
            lambda a, b: P.gcd(K, a, b),
            lambda a, b: P.try_div(K, a, b),
            lambda a: P.is_constant(a) and K.is_unit(P.const_value(K, a)) is Verdict.YES,
        )
        base.sort(key=self._poly_text)

        def try_div(a, b):
            return P.try_div(K, a, b)

        vectors = []
        for u in units:
            up, rest = factor_over_base(u.data[0], base, try_div)
            down, _ = factor_over_base(u.data[1], base, try_div)
            vectors.append(self._const_log(P.const_value(K, rest)) + [x - y for x, y in zip(up, down)])
        return vectors, self._const_modulus() + [0] * len(base)

    # -- homomorphisms ------------------------------------------------------
    def ring_generators(self):
        gens = tuple(self.var(i) for i in range(self.num_vars))
        if isinstance(self.K, GaloisField) and self.K.k > 1:
            gens = (self.coeff(self.K.gen()),) + gens
        return gens

    def _split_images(self, images):
        if isinstance(self.K, GaloisField) and self.K.k > 1:
            return [images[0]], list(images[1:])
        return [], list(images)

    def _coeff_map(self, coeff_images, target):
        return lambda c: self.K.evaluate_map(c, coeff_images, target)

    def evaluate_poly(self, poly, images, target) -> RingValue:
        ci, vi = self._split_images(images)
        return P.evaluate(poly, self._coeff_map(ci, target), vi, target)

    def evaluate_map(self, v, images, target):
        num = self.evaluate_poly(v.data[0], images, target)
        if P.is_constant(v.data[1]) and v.data[1][0][1].is_one():
            return num
        return num * target.inverse(self.evaluate_poly(v.data[1], images, target))

    def map_relations(self, images, target):
        ci, _ = self._split_images(images)
        rels = list(self.K.map_relations(ci, target)) if not isinstance(self.K, Integers) else []
        for text, poly in zip(self.inverted, self._inverted_polys):
            rels.append((f"{text} is a unit", target.is_unit(self.evaluate_poly(poly, images, target))))
        return rels

    def strong_characteristics(self, prime_bound, degree_bound):
        if isinstance(self.K, GaloisField):
            return {self.K.p: "exact"} if self.K.p <= prime_bound else {}
        out = {0: "exact"}
        for p in primerange(2, prime_bound + 1):
            # F_p[x][1/T] is nonzero iff no inverted polynomial vanishes mod p
            if all(any(c.data % p for _, c in t) for t in self._inverted_polys):
                out[p] = "exact"
        return out

    # -- text ---------------------------------------------------------------
    def _coeff_text(self, c: RingValue) -> str:
        if isinstance(self.K, GaloisField):
            return self.K.render_with(c.data, COEFF_VAR)
        return str(c.data)

    def _mono(self, e) -> str:
        parts = []
        for name, k in zip(self.var_names, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def _poly_text(self, poly) -> str:
        return render_poly([(self._mono(e), c) for e, c in poly], self._coeff_text)

    @staticmethod
    def _wrap(text: str) -> str:
        body = text[1:] if text.startswith("-") else text
        return f"({text})" if any(ch in body for ch in "+-*/") else text

    def render(self, data) -> str:
        num, den = data
        if P.is_constant(den) and den[0][1].is_one():
            return self._poly_text(num)
        return f"{self._wrap(self._poly_text(num))}/{self._wrap(self._poly_text(den))}"

    def _parse_poly(self, text: str):
        """Parse a polynomial (no division)."""
        K, n = self.K, self.num_vars
        names = {name: P.variable(K, n, i) for i, name in enumerate(self.var_names)}
        if isinstance(K, GaloisField) and K.k > 1:
            names[COEFF_VAR] = P.constant(K, n, K.gen())

        def var(name):
            try:
                return names[name]
            except KeyError:
                raise ParseError(f"unknown symbol {name!r}") from None

        def div(a, b):
            q = P.try_div(K, a, b)
            if q is None:
                raise ParseError(f"{text!r} is not a polynomial")
            return q

        calc = Calculator(
            const=lambda c: P.constant(K, n, c),
            var=var,
            add=P.add,
            mul=P.mul,
            neg=P.neg,
            div=div,
        )
        return evaluate_expression(text, calc)

    def parse(self, text: str) -> RingValue:
        names = {name: self.var(i) for i, name in enumerate(self.var_names)}
        if isinstance(self.K, GaloisField) and self.K.k > 1:
            names[COEFF_VAR] = self.coeff(self.K.gen())

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

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "num_vars": self.num_vars,
            "coefficients": self.K.to_json(),
            "inverted": list(self.inverted),
            "var_names": list(self.var_names),
        }

    def __str__(self) -> str:
        base = f"{self.K}[{','.join(self.var_names)}]"
        if self.inverted:
            base += "[" + ",".join(f"1/({t})" for t in self.inverted) + "]"
        return base
