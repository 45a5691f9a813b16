"""Finite direct products of ring backends."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .base import NotAUnitError, ParseError, Ring, RingValue, Verdict, split_top_level


@dataclass(frozen=True)
class ProductRing(Ring):
    factors: tuple[Ring, ...] = ()
    kind = "product"

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a product ring needs at least one factor")

    def from_int(self, n: int) -> RingValue:
        return RingValue(self, tuple(F.from_int(n).data for F in self.factors))

    def component(self, v: RingValue, j: int) -> RingValue:
        return RingValue(self.factors[j], v.data[j])

    def from_components(self, values) -> RingValue:
        return RingValue(self, tuple(F.element(x).data for F, x in zip(self.factors, values)))

    def idempotent(self, j: int) -> RingValue:
        """e_j = (0, ..., 1, ..., 0)."""
        return RingValue(self, tuple((F.one() if i == j else F.zero()).data for i, F in enumerate(self.factors)))

    def _canon(self, data):
        return tuple(F.element(x).data for F, x in zip(self.factors, data))

    def _add(self, a, b):
        return tuple(F._add(x, y) for F, x, y in zip(self.factors, a, b))

    def _mul(self, a, b):
        return tuple(F._mul(x, y) for F, x, y in zip(self.factors, a, b))

    def _neg(self, a):
        return tuple(F._neg(x) for F, x in zip(self.factors, a))

    def _parts(self, v: RingValue):
        return [RingValue(F, x) for F, x in zip(self.factors, v.data)]

    def is_unit(self, v: RingValue) -> Verdict:
        return Verdict.all_of([F.is_unit(x) for F, x in zip(self.factors, self._parts(v))])

    def inverse(self, v: RingValue) -> RingValue:
        parts = self._parts(v)
        if self.is_unit(v) is Verdict.NO:
            raise NotAUnitError(f"{v} is not a unit of {self}")
        return RingValue(self, tuple(F.inverse(x).data for F, x in zip(self.factors, parts)))

    def exact_div(self, a: RingValue, b: RingValue) -> RingValue:
        return RingValue(
            self,
            tuple(F.exact_div(x, y).data for F, x, y in zip(self.factors, self._parts(a), self._parts(b))),
        )

    def characteristic(self) -> int:
        chars = [F.characteristic() for F in self.factors]
        return 0 if 0 in chars else math.lcm(*chars)

    def is_finite(self) -> bool:
        return all(F.is_finite() for F in self.factors)

    def is_domain(self) -> bool:
        return len(self.factors) == 1 and self.factors[0].is_domain()

    def is_field(self) -> bool:
        return len(self.factors) == 1 and self.factors[0].is_field()

    def elements(self):
        for combo in itertools.product(*(list(F.elements()) for F in self.factors)):
            yield RingValue(self, tuple(x.data for x in combo))

    def unit_logs(self, units):
        vectors = [[] for _ in units]
        moduli: list[int] = []
        for j, F in enumerate(self.factors):
            logs = F.unit_logs([RingValue(F, u.data[j]) for u in units])
            if logs is None:
                return None
            vs, ms = logs
            for vec, part in zip(vectors, vs):
                vec.extend(part)
            moduli.extend(ms)
        return vectors, moduli

    # -- ring maps out of a product factor through a projection; see homs
    def strong_characteristics(self, prime_bound, degree_bound):
        out: dict[int, str] = {}
        for F in self.factors:
            for p, how in F.strong_characteristics(prime_bound, degree_bound).items():
                if out.get(p) != "exact":
                    out[p] = how
        return dict(sorted(out.items()))

    def render(self, data) -> str:
        return "(" + ",".join(F.render(x) for F, x in zip(self.factors, data)) + ")"

    def parse(self, text: str) -> RingValue:
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError(f"product values are written (a,b,...): {text!r}")
        parts = split_top_level(text[1:-1])
        if len(parts) != len(self.factors):
            raise ParseError(f"expected {len(self.factors)} components in {text!r}")
        return RingValue(self, tuple(F.parse(p).data for F, p in zip(self.factors, parts)))

    def to_json(self) -> dict:
        return {"kind": self.kind, "factors": [F.to_json() for F in self.factors]}

    def __str__(self) -> str:
        return " x ".join(str(F) for F in self.factors)
