"""Concrete ring maps between backends.

A ring map out of a backend is pinned down by the images of its ring
generators (``GeneratorMap``), by a projection from a product followed by a
map out of the factor (``ProjectionMap``), componentwise into a product
(``TupleMap``), by an explicit table on a finite ring (``TableMap``) or by
composition.  ``relations()`` lists what must hold for the map to be a
well-defined ring homomorphism, each with a verdict.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .rings import ProductRing, Ring, RingValue, Verdict, ring_from_json

FINITE_PAIR_LIMIT = 20_000  # most element pairs checked by an exhaustive table test


class RingMap:
    source: Ring
    target: Ring

    def apply(self, v: RingValue) -> RingValue:
        raise NotImplementedError

    def relations(self) -> list[tuple[str, Verdict]]:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class GeneratorMap(RingMap):
    source: Ring
    target: Ring
    images: tuple[RingValue, ...] = ()

    def __post_init__(self):
        if len(self.images) != len(self.source.ring_generators()):
            raise ValueError(
                f"{self.source} needs {len(self.source.ring_generators())} generator images, got {len(self.images)}"
            )

    def apply(self, v):
        return self.source.evaluate_map(v, self.images, self.target)

    def relations(self):
        return self.source.map_relations(self.images, self.target)

    def to_json(self):
        return {"generator_images": [str(y) for y in self.images]}


@dataclass(frozen=True)
class ProjectionMap(RingMap):
    """``v -> inner(v_j)`` for a product source; ``index`` is 0-based."""

    source: ProductRing
    index: int
    inner: RingMap

    @property
    def target(self) -> Ring:
        return self.inner.target

    def apply(self, v):
        return self.inner.apply(self.source.component(v, self.index))

    def relations(self):
        return self.inner.relations()

    def to_json(self):
        return {"projection": {"index": self.index + 1, **self.inner.to_json()}}


@dataclass(frozen=True)
class TupleMap(RingMap):
    source: Ring
    target: ProductRing
    components: tuple[RingMap, ...]

    def apply(self, v):
        return self.target.from_components([m.apply(v) for m in self.components])

    def relations(self):
        return [rel for m in self.components for rel in m.relations()]

    def to_json(self):
        return {"components": [m.to_json() for m in self.components]}


@dataclass(frozen=True)
class TableMap(RingMap):
    """An explicit map on a finite ring, checked exhaustively as a ring hom."""

    source: Ring
    target: Ring
    table: tuple[tuple[RingValue, RingValue], ...]

    @property
    def mapping(self) -> dict:
        return dict(self.table)

    def apply(self, v):
        return self.mapping[v]

    def relations(self):
        m = self.mapping
        elems = list(self.source.elements())
        if len(elems) ** 2 > FINITE_PAIR_LIMIT:
            return [("source small enough for an exhaustive check", Verdict.UNKNOWN)]
        if set(elems) != set(m):
            return [("table covers the whole ring", Verdict.NO)]
        if not m[self.source.one()].is_one():
            return [("1 -> 1", Verdict.NO)]
        for a, b in itertools.product(elems, repeat=2):
            if m[a + b] != m[a] + m[b]:
                return [(f"f({a}+{b}) = f({a})+f({b})", Verdict.NO)]
            if m[a * b] != m[a] * m[b]:
                return [(f"f({a}*{b}) = f({a})*f({b})", Verdict.NO)]
        return [("additive and multiplicative on all pairs", Verdict.YES)]

    def to_json(self):
        return {"ring_table": [[str(a), str(b)] for a, b in self.table]}


@dataclass(frozen=True)
class LiftedMap(RingMap):
    """``v -> outer(e_j-lift of v)``: restriction of a map out of a product to factor ``index``."""

    product: ProductRing
    index: int
    outer: RingMap

    @property
    def source(self) -> Ring:
        return self.product.factors[self.index]

    @property
    def target(self) -> Ring:
        return self.outer.target

    def _lift(self, v: RingValue) -> RingValue:
        comps = [F.zero() for F in self.product.factors]
        comps[self.index] = v
        return self.product.from_components(comps)

    def apply(self, v):
        return self.outer.apply(self._lift(v))

    def relations(self):
        if not self.source.is_finite():
            return [("restriction of a verified map out of the product", Verdict.UNKNOWN)]
        elems = list(self.source.elements())
        table = tuple((v, self.apply(v)) for v in elems)
        return TableMap(self.source, self.target, table).relations()

    def to_json(self):
        return {"lifted_from": {"index": self.index + 1, "product": self.product.to_json(), **self.outer.to_json()}}


@dataclass(frozen=True)
class ComposedMap(RingMap):
    first: RingMap
    second: RingMap

    @property
    def source(self) -> Ring:
        return self.first.source

    @property
    def target(self) -> Ring:
        return self.second.target

    def apply(self, v):
        return self.second.apply(self.first.apply(v))

    def relations(self):
        return self.first.relations() + self.second.relations()

    def to_json(self):
        return {
            "compose": {
                "via": self.first.target.to_json(),
                "first": self.first.to_json(),
                "second": self.second.to_json(),
            }
        }


def identity_map(R: Ring) -> RingMap:
    if isinstance(R, ProductRing):
        return TupleMap(
            R, R, tuple(ProjectionMap(R, j, identity_map(F)) for j, F in enumerate(R.factors))
        )
    return GeneratorMap(R, R, R.ring_generators())


def ring_map_from_json(obj: dict, source: Ring, target: Ring) -> RingMap:
    if "generator_images" in obj:
        return GeneratorMap(source, target, tuple(target.parse(str(t)) for t in obj["generator_images"]))
    if "projection" in obj:
        spec = dict(obj["projection"])
        j = int(spec.pop("index")) - 1
        if not isinstance(source, ProductRing):
            raise ValueError("projection maps need a product source")
        return ProjectionMap(source, j, ring_map_from_json(spec, source.factors[j], target))
    if "components" in obj:
        if not isinstance(target, ProductRing):
            raise ValueError("component maps need a product target")
        return TupleMap(
            source,
            target,
            tuple(ring_map_from_json(c, source, F) for c, F in zip(obj["components"], target.factors)),
        )
    if "compose" in obj:
        spec = obj["compose"]
        via = ring_from_json(spec["via"])
        return ComposedMap(ring_map_from_json(spec["first"], source, via), ring_map_from_json(spec["second"], via, target))
    if "lifted_from" in obj:
        spec = dict(obj["lifted_from"])
        j = int(spec.pop("index")) - 1
        product = ring_from_json(spec.pop("product"))
        if not isinstance(product, ProductRing) or product.factors[j] != source:
            raise ValueError("lifted map does not match its product")
        return LiftedMap(product, j, ring_map_from_json(spec, product, target))
    if "ring_table" in obj:
        return TableMap(
            source, target, tuple((source.parse(str(a)), target.parse(str(b))) for a, b in obj["ring_table"])
        )
    raise ValueError("unrecognised ring map description")


def all_generator_maps(source: Ring, target: Ring) -> list[RingMap]:
    """Every ring map source -> target (target finite), in lexicographic image order.

    Products map to fields only through a projection, so for a product source
    this lists the maps out of each factor, factor by factor.
    """
    from .rings import sort_key

    if isinstance(source, ProductRing):
        out: list[RingMap] = []
        for j, F in enumerate(source.factors):
            out.extend(ProjectionMap(source, j, m) for m in all_generator_maps(F, target))
        return out
    elems = sorted(target.elements(), key=sort_key)
    out = []
    for images in itertools.product(elems, repeat=len(source.ring_generators())):
        m = GeneratorMap(source, target, tuple(images))
        if all(v is Verdict.YES for _, v in m.relations()):
            out.append(m)
    return out
