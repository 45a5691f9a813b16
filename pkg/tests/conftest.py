from __future__ import annotations

import hypothesis.strategies as st
from hypothesis import settings

from pfkit.rings import (
    GaloisField,
    Integers,
    LocalizedIntegers,
    LocalizedPolynomialRing,
    ModularRing,
    NumberRing,
    ProductRing,
    Rationals,
)

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GOLDEN = NumberRing((-1, -1, 1), ((0, 1),))

BACKENDS = {
    "Z": Integers(),
    "Z[1/6]": LocalizedIntegers((2, 3)),
    "Q": Rationals(),
    "Z/12": ModularRing(12),
    "GF(5)": GaloisField(5),
    "GF(8)": GaloisField(2, 3),
    "golden": GOLDEN,
    "Z[i]": NumberRing((1, 0, 1)),
    "Z[x1,x2][1/x1]": LocalizedPolynomialRing(2, Integers(), ("x1", "x1+x2")),
    "GF(3)[x][1/(x+1)]": LocalizedPolynomialRing(1, GaloisField(3), ("x+1",)),
    "GF(2)xZ/4": ProductRing((GaloisField(2), ModularRing(4))),
}


def _atoms(ring):
    atoms = [ring.from_int(n) for n in (-2, -1, 0, 1, 2, 3)]
    atoms += list(ring.ring_generators())
    for g in [ring.from_int(2), ring.from_int(3), *ring.ring_generators()]:
        for u in (g, g + 1):
            try:
                atoms.append(ring.inverse(u))
            except Exception:
                pass
    return list(dict.fromkeys(atoms))


def ring_values(ring, depth: int = 3):
    """Random elements built from small integers, ring generators and their inverses."""
    base = st.sampled_from(_atoms(ring))
    return st.recursive(
        base,
        lambda inner: st.one_of(
            st.tuples(inner, inner).map(lambda t: t[0] + t[1]),
            st.tuples(inner, inner).map(lambda t: t[0] * t[1]),
            inner.map(lambda a: -a),
        ),
        max_leaves=2 ** depth,
    )
