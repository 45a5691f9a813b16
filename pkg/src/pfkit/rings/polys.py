"""Sparse multivariate polynomials over Z or a finite field.

A polynomial is a tuple of ``(exponents, coefficient)`` pairs sorted in
decreasing lexicographic order of exponents, coefficients being nonzero
:class:`RingValue` objects of the coefficient ring.  Division and gcd are
exact; the gcd uses primitive pseudo-remainder sequences, recursing on
contents, with the largest-index variable as main variable.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional, Sequence

from .base import Ring, RingValue

Poly = tuple  # tuple[tuple[tuple[int, ...], RingValue], ...]


def from_terms(terms: dict) -> Poly:
    return tuple(sorted(((e, c) for e, c in terms.items() if not c.is_zero()), key=lambda t: t[0], reverse=True))


def constant(K: Ring, n: int, c) -> Poly:
    c = c if isinstance(c, RingValue) else K.from_int(c)
    return () if c.is_zero() else (((0,) * n, c),)


def variable(K: Ring, n: int, i: int) -> Poly:
    e = [0] * n
    e[i] = 1
    return ((tuple(e), K.one()),)


def is_constant(a: Poly) -> bool:
    return not a or (len(a) == 1 and not any(a[0][0]))


def const_value(K: Ring, a: Poly) -> RingValue:
    return a[0][1] if a else K.zero()


def add(a: Poly, b: Poly) -> Poly:
    terms = dict(a)
    for e, c in b:
        terms[e] = terms[e] + c if e in terms else c
    return from_terms(terms)


def neg(a: Poly) -> Poly:
    return tuple((e, -c) for e, c in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def mul(a: Poly, b: Poly) -> Poly:
    terms: dict = {}
    for ea, ca in a:
        for eb, cb in b:
            e = tuple(x + y for x, y in zip(ea, eb))
            p = ca * cb
            terms[e] = terms[e] + p if e in terms else p
    return from_terms(terms)


def scale(a: Poly, c: RingValue) -> Poly:
    return from_terms({e: x * c for e, x in a})


def power(K: Ring, n: int, a: Poly, k: int) -> Poly:
    out = constant(K, n, 1)
    for _ in range(k):
        out = mul(out, a)
    return out


def _try_div_int(K: Ring, a: Poly, b: Poly) -> Optional[Poly]:
    # integer-coefficient division on raw ints; the remainder lives in a dict
    r = {e: c.data for e, c in a}
    b_terms = [(e, c.data) for e, c in b]
    lead_e, lead_c = b_terms[0]
    q: dict = {}
    while r:
        e = max(r)
        c = r[e]
        d = tuple(x - y for x, y in zip(e, lead_e))
        if min(d) < 0 or c % lead_c:
            return None
        qc = c // lead_c
        q[d] = qc
        for eb, cb in b_terms:
            k = tuple(x + y for x, y in zip(d, eb))
            v = r.get(k, 0) - qc * cb
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return tuple((e, K.from_int(c)) for e, c in sorted(q.items(), reverse=True))


def try_div(K: Ring, a: Poly, b: Poly) -> Optional[Poly]:
    """Exact quotient ``a / b`` or ``None``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if K.kind == "integers":
        return _try_div_int(K, a, b)
    lead_e, lead_c = b[0]
    q: dict = {}
    r = a
    while r:
        e, c = r[0]
        d = tuple(x - y for x, y in zip(e, lead_e))
        if min(d) < 0:
            return None
        try:
            qc = K.exact_div(c, lead_c)
        except ArithmeticError:
            return None
        q[d] = qc
        r = sub(r, mul(((d, qc),), b))
    return from_terms(q)


def degree_in(a: Poly, v: int) -> int:
    return max((e[v] for e, _ in a), default=-1)


def main_var(*polys: Poly) -> Optional[int]:
    best = None
    for a in polys:
        for e, _ in a:
            for i, x in enumerate(e):
                if x and (best is None or i > best):
                    best = i
    return best


def coeffs_in(a: Poly, v: int) -> dict[int, Poly]:
    """``a`` as a univariate polynomial in variable ``v``."""
    out: dict[int, dict] = {}
    for e, c in a:
        k = e[v]
        rest = e[:v] + (0,) + e[v + 1 :]
        out.setdefault(k, {})[rest] = c
    return {k: from_terms(t) for k, t in out.items()}


def _shift(a: Poly, v: int, k: int) -> Poly:
    return tuple((e[:v] + (e[v] + k,) + e[v + 1 :], c) for e, c in a)


def _is_field(K: Ring) -> bool:
    return K.is_field()


def normalize(K: Ring, a: Poly) -> Poly:
    """Unit-normal associate: positive leading coefficient over Z, monic over a field."""
    if not a:
        return a
    lc = a[0][1]
    if _is_field(K):
        return scale(a, K.inverse(lc))
    return neg(a) if lc.data < 0 else a


def unit_part(K: Ring, a: Poly) -> RingValue:
    """The unit ``u`` with ``a = u * normalize(a)``."""
    lc = a[0][1]
    if _is_field(K):
        return lc
    return K.from_int(-1 if lc.data < 0 else 1)


def _const_gcd(K: Ring, a: RingValue, b: RingValue) -> RingValue:
    if _is_field(K):
        return K.one() if not (a.is_zero() and b.is_zero()) else K.zero()
    return K.from_int(math.gcd(a.data, b.data))


def prem(K: Ring, a: Poly, b: Poly, v: int) -> Poly:
    """A pseudo-remainder of ``a`` by ``b`` in variable ``v`` (up to a nonzero factor)."""
    db = degree_in(b, v)
    lc_b = coeffs_in(b, v)[db]
    r = a
    while r and degree_in(r, v) >= db:
        dr = degree_in(r, v)
        lc_r = coeffs_in(r, v)[dr]
        r = sub(mul(lc_b, r), _shift(mul(lc_r, b), v, dr - db))
    return r


def content(K: Ring, a: Poly, v: int) -> Poly:
    g: Poly = ()
    for c in coeffs_in(a, v).values():
        g = gcd(K, g, c)
        if is_constant(g) and g and (g[0][1].is_one()):
            break
    return g


def primitive_part(K: Ring, a: Poly, v: int) -> Poly:
    if not a:
        return a
    q = try_div(K, a, content(K, a, v))
    assert q is not None
    return q


@lru_cache(maxsize=1 << 16)
def gcd(K: Ring, a: Poly, b: Poly) -> Poly:
    """Normalized greatest common divisor (memoized: unit words repeat the same pairs)."""
    if not a:
        return normalize(K, b)
    if not b:
        return normalize(K, a)
    v = main_var(a, b)
    n = len(a[0][0])
    if v is None:
        return constant(K, n, _const_gcd(K, const_value(K, a), const_value(K, b)))
    ca, cb = content(K, a, v), content(K, b, v)
    c = gcd(K, ca, cb)
    pa, pb = try_div(K, a, ca), try_div(K, b, cb)
    if degree_in(pa, v) < degree_in(pb, v):
        pa, pb = pb, pa
    while pb:
        if degree_in(pb, v) == 0:
            pa = constant(K, n, 1)
            break
        r = prem(K, pa, pb, v)
        pa, pb = pb, (primitive_part(K, r, v) if r else ())
    return normalize(K, mul(c, primitive_part(K, pa, v)))


def evaluate(a: Poly, coeff_image, images: Sequence[RingValue], target: Ring) -> RingValue:
    acc = target.zero()
    for e, c in a:
        term = coeff_image(c)
        for y, k in zip(images, e):
            if k:
                term = term * y**k
        acc = acc + term
    return acc
