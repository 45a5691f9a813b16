"""Number rings Z[x]/(f)[1/t : t in T] for monic f.

Values are stored by their image in the ambient algebra Q[x]/(f): a tuple of
``deg f`` reduced fractions.  Since f is monic, Z[x]/(f) is torsion-free, and
since no t in T is a zero divisor, the localization embeds in Q[x]/(f), so the
rational coefficient vector is a unique normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Optional, Sequence

from sympy import Poly, factorint, primerange, symbols

from .base import (
    Calculator,
    NotAUnitError,
    ParseError,
    Ring,
    RingValue,
    UnitUnknownError,
    Verdict,
    evaluate_expression,
    render_poly,
)
from .galois import GaloisField, _mono

Vec = tuple  # tuple[Fraction, ...]


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _det_rational(rows: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in rows]
    n, det = len(a), Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


@dataclass(frozen=True)
class NumberRing(Ring):
    poly: tuple[int, ...] = (0, 1)
    inverted: tuple[tuple[int, ...], ...] = ()
    unit_search_bound: int = field(default=64, compare=False)
    height_bound: int = field(default=10**6, compare=False)
    kind = "number_ring"

    def __post_init__(self):
        f = tuple(int(c) for c in self.poly)
        while len(f) > 1 and f[-1] == 0:
            f = f[:-1]
        if len(f) < 2 or f[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        object.__setattr__(self, "poly", f)
        inv = []
        for t in self.inverted:
            vec = self._reduce([Fraction(int(c)) for c in t])
            if not any(vec):
                raise ValueError("inverted elements must be nonzero")
            if _det_rational(self._mult_matrix(vec)) == 0:
                raise ValueError(f"{self.render(vec)} is a zero divisor in Z[x]/(f)")
            inv.append(tuple(int(c) for c in vec))
        object.__setattr__(self, "inverted", tuple(inv))

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    # -- ambient algebra Q[x]/(f) ------------------------------------------
    def _reduce(self, coeffs: Sequence) -> Vec:
        a = [Fraction(c) for c in coeffs]
        n = self.degree
        for d in range(len(a) - 1, n - 1, -1):
            c = a[d]
            if c:
                for i, fc in enumerate(self.poly):
                    a[d - n + i] -= c * fc
        a = a[:n] + [Fraction(0)] * (n - len(a))
        return tuple(a[:n])

    def _amul(self, a: Vec, b: Vec) -> Vec:
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._reduce(out)

    def _mult_matrix(self, v: Vec) -> list[list[Fraction]]:
        n = self.degree
        cols = []
        basis = [Fraction(0)] * n
        for i in range(n):
            e = list(basis)
            e[i] = Fraction(1)
            cols.append(self._amul(tuple(v), tuple(e)))
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def _ainverse(self, v: Vec) -> Optional[Vec]:
        rhs = [Fraction(int(i == 0)) for i in range(self.degree)]
        sol = _solve_rational(self._mult_matrix(v), rhs)
        return None if sol is None else tuple(sol)

    def _norm(self, v: Vec) -> Fraction:
        return _det_rational(self._mult_matrix(v))

    @cached_property
    def _inverted_product(self) -> Vec:
        one = self._reduce([1])
        return reduce(self._amul, (tuple(Fraction(c) for c in t) for t in self.inverted), one)

    @cached_property
    def _localization_trivial(self) -> bool:
        """True when every inverted element is already a unit of Z[x]/(f)."""
        inv = self._ainverse(self._inverted_product)
        return all(c.denominator == 1 for c in inv)

    def _denominator_exponent(self, v: Vec, bound: Optional[int] = None) -> Optional[int]:
        """Least e <= bound with v * prod(T)^e integral, or None."""
        bound = self.unit_search_bound if bound is None else bound
        if not self.inverted:
            bound = 0
        w = v
        for e in range(bound + 1):
            if all(c.denominator == 1 for c in w):
                return e
            if max(abs(c.numerator) for c in w) > self.height_bound * max(1, max(c.denominator for c in v)):
                return None
            w = self._amul(w, self._inverted_product)
        return None

    def contains_ambient(self, v: Vec) -> Verdict:
        if self._denominator_exponent(v) is not None:
            return Verdict.YES
        if self._localization_trivial:
            return Verdict.NO
        return Verdict.UNKNOWN

    def split(self, v: RingValue) -> tuple[tuple[int, ...], int]:
        """Integral numerator a and exponent e with v = a / prod(T)^e."""
        e = self._denominator_exponent(v.data, bound=max(self.unit_search_bound, 4096))
        if e is None:
            raise UnitUnknownError(f"could not split {v}")
        w = v.data
        for _ in range(e):
            w = self._amul(w, self._inverted_product)
        return tuple(int(c) for c in w), e

    # -- ring interface -----------------------------------------------------
    def from_int(self, n: int) -> RingValue:
        return RingValue(self, self._reduce([n]))

    def gen(self) -> RingValue:
        return RingValue(self, self._reduce([0, 1]))

    def _canon(self, data):
        v = self._reduce(data)
        if self.contains_ambient(v) is not Verdict.YES:
            raise ValueError(f"{self.render(v)} is not (certifiably) in {self}")
        return v

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _mul(self, a, b):
        return self._amul(a, b)

    def _neg(self, a):
        return tuple(-x for x in a)

    def is_unit(self, v: RingValue) -> Verdict:
        if not any(v.data):
            return Verdict.NO
        w = self._ainverse(v.data)
        if w is None:
            return Verdict.NO
        norm = self._norm(v.data)
        allowed = set(factorint(abs(int(self._norm(self._inverted_product))))) if self.inverted else set()
        for n in (norm.numerator, norm.denominator):
            if set(factorint(abs(n))) - allowed:
                return Verdict.NO
        return self.contains_ambient(w)

    def inverse(self, v: RingValue) -> RingValue:
        verdict = self.is_unit(v)
        if verdict is Verdict.NO:
            raise NotAUnitError(f"{v} is not a unit of {self}")
        if verdict is Verdict.UNKNOWN:
            raise UnitUnknownError(f"could not certify {v} as a unit of {self}")
        return RingValue(self, self._ainverse(v.data))

    def exact_div(self, a: RingValue, b: RingValue) -> RingValue:
        w = self._ainverse(b.data)
        if w is None:
            raise NotAUnitError(f"{b} is a zero divisor")
        q = self._amul(a.data, w)
        verdict = self.contains_ambient(q)
        if verdict is Verdict.NO:
            raise NotAUnitError(f"{b} does not divide {a}")
        if verdict is Verdict.UNKNOWN:
            raise UnitUnknownError(f"could not certify {self.render(q)} in {self}")
        return RingValue(self, q)

    def characteristic(self) -> int:
        return 0

    @cached_property
    def _irreducible(self) -> bool:
        x = symbols("x")
        return Poly(list(reversed(self.poly)), x).is_irreducible

    def is_domain(self) -> bool:
        return self._irreducible

    def ring_generators(self):
        return (self.gen(),)

    def _evaluate_integral(self, coeffs: Sequence[int], y: RingValue, target: Ring) -> RingValue:
        acc = target.zero()
        for c in reversed(list(coeffs)):
            acc = acc * y + target.from_int(int(c))
        return acc

    def evaluate_map(self, v, images, target):
        a, e = self.split(v)
        y = images[0]
        val = self._evaluate_integral(a, y, target)
        if e:
            tp = self._evaluate_integral([int(c) for c in self._inverted_product], y, target)
            val = val * target.inverse(tp) ** e
        return val

    def map_relations(self, images, target):
        y = images[0]
        f_val = self._evaluate_integral(self.poly, y, target)
        rels = [(f"{self._poly_text()} vanishes at the image of x", Verdict.YES if f_val.is_zero() else Verdict.NO)]
        for t in self.inverted:
            rels.append((f"{self.render(tuple(Fraction(c) for c in t))} is a unit", target.is_unit(self._evaluate_integral(t, y, target))))
        return rels

    def strong_characteristics(self, prime_bound, degree_bound):
        out = {0: "exact"}
        for p in primerange(2, prime_bound + 1):
            if self._has_root_mod(p):
                out[p] = "exact"
        return out

    def _has_root_mod(self, p: int) -> bool:
        # every irreducible factor of f mod p has degree <= deg f
        for j in range(1, self.degree + 1):
            F = GaloisField(p, j)
            for y in F.elements():
                if not self._evaluate_integral(self.poly, y, F).is_zero():
                    continue
                if all(not self._evaluate_integral(t, y, F).is_zero() for t in self.inverted):
                    return True
        return False

    def _poly_text(self) -> str:
        return render_poly([(_mono("x", i), c) for i, c in reversed(list(enumerate(self.poly))) if c])

    def render(self, data) -> str:
        return render_poly([(_mono("x", i), c) for i, c in reversed(list(enumerate(data))) if c])

    def parse(self, text: str) -> RingValue:
        def var(name):
            if name != "x":
                raise ParseError(f"unknown symbol {name!r} for {self}")
            return self._reduce([0, 1])

        def div(a, b):
            w = self._ainverse(b)
            if w is None:
                raise ParseError(f"division by a zero divisor in {text!r}")
            return self._amul(a, w)

        calc = Calculator(
            const=lambda n: self._reduce([n]),
            var=var,
            add=self._add,
            mul=self._amul,
            neg=self._neg,
            div=div,
        )
        v = evaluate_expression(text, calc)
        if self.contains_ambient(v) is not Verdict.YES:
            raise ParseError(f"{text!r} is not (certifiably) an element of {self}")
        return RingValue(self, v)

    def to_json(self) -> dict:
        return {"kind": self.kind, "poly": list(self.poly), "inverted": [list(t) for t in self.inverted]}

    def __str__(self) -> str:
        inv = ",".join(self.render(tuple(Fraction(c) for c in t)) for t in self.inverted)
        base = f"Z[x]/({self._poly_text()})"
        return base + (f"[1/({inv})]" if inv else "")
