"""Core ring machinery: the value wrapper, verdicts, errors and the backend base class.

Every backend is a frozen dataclass describing the ring (its *descriptor*).
Elements are :class:`RingValue` objects pairing a descriptor with a payload that
is always kept in canonical form, so structural equality of payloads is ring
equality.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Any, Callable, ClassVar, Iterator, Sequence


class RingError(Exception):
    """Base class for arithmetic errors."""


class RingMismatchError(RingError, TypeError):
    pass


class NotAUnitError(RingError, ArithmeticError):
    pass


class UnitUnknownError(RingError):
    """Raised when a bounded search could not decide invertibility."""


class ParseError(RingError, ValueError):
    pass


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __bool__(self) -> bool:
        return self is Verdict.YES

    @staticmethod
    def all_of(verdicts: Sequence["Verdict"]) -> "Verdict":
        if any(v is Verdict.NO for v in verdicts):
            return Verdict.NO
        if any(v is Verdict.UNKNOWN for v in verdicts):
            return Verdict.UNKNOWN
        return Verdict.YES


class RingValue:
    """An immutable element of a ring backend."""

    __slots__ = ("ring", "data")

    def __init__(self, ring: "Ring", data: Any) -> None:
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("RingValue is immutable")

    def _coerce(self, other: Any) -> "RingValue":
        if isinstance(other, RingValue):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingValue(self.ring, self.ring._add(self.data, other.data))

    __radd__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingValue(self.ring, self.ring._mul(self.data, other.data))

    __rmul__ = __mul__

    def __neg__(self):
        return RingValue(self.ring, self.ring._neg(self.data))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __pow__(self, n: int) -> "RingValue":
        if n < 0:
            return self.ring.inverse(self) ** (-n)
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.data == self.ring.from_int(other).data
        if not isinstance(other, RingValue):
            return NotImplemented
        return self.ring == other.ring and self.data == other.data

    def __hash__(self):
        return hash((self.ring, self.data))

    def is_zero(self) -> bool:
        return self.data == self.ring._const_payload(0)

    def is_one(self) -> bool:
        return self.data == self.ring._const_payload(1)

    def __str__(self) -> str:
        return self.ring.render(self.data)

    def __repr__(self) -> str:
        return f"<{self.ring.short_name()}: {self}>"


def sort_key(v: RingValue) -> tuple:
    """Canonical element order: by unsigned canonical text (shorter first), then sign."""
    s = str(v)
    a = s.lstrip("-")
    return (len(a), a, s.startswith("-"))


class Ring:
    """Backend base class.  Subclasses are frozen dataclasses.

    Payload-level methods (``_add`` etc.) take and return canonical payloads.
    """

    kind: ClassVar[str] = "abstract"

    # -- construction -------------------------------------------------------
    def from_int(self, n: int) -> RingValue:
        raise NotImplementedError

    def zero(self) -> RingValue:
        return self.from_int(0)

    def _const_payload(self, n: int) -> Any:
        # cached payloads of 0 and 1; the hot path of every is_zero test
        cache = self.__dict__.get("_payload_cache")
        if cache is None:
            cache = {}
            object.__setattr__(self, "_payload_cache", cache)
        if n not in cache:
            cache[n] = self.from_int(n).data
        return cache[n]

    def one(self) -> RingValue:
        return self.from_int(1)

    def element(self, raw: Any) -> RingValue:
        """Build a value from any accepted raw representation (canonicalising it)."""
        if isinstance(raw, RingValue):
            if raw.ring != self:
                raise RingMismatchError(f"{raw.ring} vs {self}")
            return raw
        if isinstance(raw, int):
            return self.from_int(raw)
        if isinstance(raw, str):
            return self.parse(raw)
        return RingValue(self, self._canon(raw))

    def _canon(self, data: Any) -> Any:
        return data

    # -- arithmetic ---------------------------------------------------------
    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def is_unit(self, v: RingValue) -> Verdict:
        raise NotImplementedError

    def inverse(self, v: RingValue) -> RingValue:
        raise NotImplementedError

    def exact_div(self, a: RingValue, b: RingValue) -> RingValue:
        """``a / b`` when the quotient exists in the ring (domains only)."""
        return a * self.inverse(b)

    # -- structure ----------------------------------------------------------
    def characteristic(self) -> int:
        raise NotImplementedError

    def is_finite(self) -> bool:
        return False

    def is_domain(self) -> bool:
        return False

    def is_field(self) -> bool:
        return False

    def elements(self) -> Iterator[RingValue]:
        raise TypeError(f"{self} is infinite")

    def units(self) -> list[RingValue]:
        return [v for v in self.elements() if self.is_unit(v) is Verdict.YES]

    def all_integers_invertible(self) -> bool:
        """True iff every nonzero integer is a unit (the ring receives Q)."""
        return False

    # -- unit group coordinates --------------------------------------------
    def unit_logs(self, units: Sequence[RingValue]) -> tuple[list[list[int]], list[int]] | None:
        """Coordinates of units in a group Z^a x prod Z/m_i.

        Returns ``(vectors, moduli)`` where ``moduli[i] == 0`` marks a free
        coordinate.  The map must be an injective homomorphism on the subgroup
        generated by ``units``.  ``None`` when the backend has no exact logs.
        """
        return None

    # -- ring generators and homomorphisms ---------------------------------
    def ring_generators(self) -> tuple[RingValue, ...]:
        """Generators whose images determine a ring map out of this ring."""
        return ()

    def evaluate_map(self, v: RingValue, images: Sequence[RingValue], target: "Ring") -> RingValue:
        raise NotImplementedError

    def map_relations(self, images: Sequence[RingValue], target: "Ring") -> list[tuple[str, Verdict]]:
        """Defining relations a generator assignment must satisfy, each with a verdict."""
        return []

    def strong_characteristics(self, prime_bound: int, degree_bound: int) -> dict[int, str]:
        """Characteristics (0 or primes <= bound) of fields receiving a ring map.

        Maps each member to ``"exact"`` or ``"bounded"``.
        """
        raise NotImplementedError

    # -- text / json --------------------------------------------------------
    def render(self, data) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> RingValue:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def short_name(self) -> str:
        return str(self)


# ---------------------------------------------------------------------------
# expression parsing shared by every backend

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


@dataclass
class Calculator:
    """Callbacks used by :func:`evaluate_expression`."""

    const: Callable[[int], Any]
    var: Callable[[str], Any]
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    div: Callable[[Any, Any], Any]

    def power(self, a, n: int):
        if n < 0:
            return self.div(self.const(1), self.power(a, -n))
        result = self.const(1)
        for _ in range(n):
            result = self.mul(result, a)
        return result


def evaluate_expression(text: str, calc: Calculator):
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = calc.add(val, rhs if op == "+" else calc.neg(rhs))
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            val = calc.mul(val, rhs) if op == "*" else calc.div(val, rhs)
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return calc.neg(unary())
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            sign = 1
            if peek() == ("op", "-"):
                take()
                sign = -1
            kind, val = take()
            if kind != "num":
                raise ParseError(f"integer exponent expected in {text!r}")
            return calc.power(base, sign * int(val))
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return calc.const(int(val))
        if kind == "name":
            return calc.var(val)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {text!r}")
            return inner
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return result


def split_top_level(text: str, sep: str = ",") -> list[str]:
    depth, start, parts = 0, 0, []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def render_poly(terms: Sequence[tuple[str, int]], coeff_text: Callable[[Any], str] | None = None) -> str:
    """Join ``(monomial_text, coefficient)`` pairs as ``c*m+...`` with no spaces.

    ``coefficient`` may be any object; ``coeff_text`` returns its text, which
    may start with ``-``.  Empty monomial text means the constant term.
    """
    out = []
    for mono, c in terms:
        ctext = coeff_text(c) if coeff_text else str(c)
        neg = ctext.startswith("-")
        body = ctext[1:] if neg else ctext
        if mono:
            if body == "1":
                piece = mono
            else:
                if any(ch in body for ch in "+-"):
                    body = f"({body})"
                piece = f"{body}*{mono}"
        else:
            piece = body
        if out:
            out.append(("-" if neg else "+") + piece)
        else:
            out.append(("-" if neg else "") + piece)
    return "".join(out) if out else "0"
