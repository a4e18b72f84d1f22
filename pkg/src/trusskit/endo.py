"""Heap morphisms between abelian groups and the endomorphism truss of a group.

Every heap morphism G -> H splits uniquely as x -> f(x) + h0 with f a group
homomorphism and h0 the image of zero, so morphisms are stored in that
decomposed (linear, translation) form. Composition and the pointwise ternary
operation then act on the pairs:

    (f, a) o (g, b)      = (f o g, f(b) + a)
    [(f,a), (g,b), (h,c)] = (f - g + h, a - b + c)

The heap endomorphisms of G with these two operations form a truss E(G); the
same construction restricted to any composition- and difference-closed set of
homomorphisms (e.g. the module-linear ones) yields a sub-truss, so EndoTruss
takes the homomorphism family as a parameter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import NotAHeapMorphism, guard, resolve_max_enum
from .groups import (
    AbGroup,
    Element,
    GroupHom,
    compose_homs,
    hom_add,
    hom_enumerate,
    hom_sub,
    hom_ternary,
    identity_hom,
    invert_hom,
    np_add_table,
    np_elements,
    zero_hom,
)
from .heaps import FiniteHeap
from .trusses import FiniteTruss


@dataclass(frozen=True)
class HeapMorphism:
    """Map x -> linear(x) + translation between the heaps of two groups."""

    linear: GroupHom
    translation: Element

    def __post_init__(self) -> None:
        if not self.linear.target.contains(self.translation):
            raise ValueError("translation is not an element of the target group")

    @property
    def source(self) -> AbGroup:
        return self.linear.source

    @property
    def target(self) -> AbGroup:
        return self.linear.target

    def __call__(self, x: Element) -> Element:
        return self.target.add(self.linear(x), self.translation)

    def compose(self, other: "HeapMorphism") -> "HeapMorphism":
        """self o other (other applied first)."""
        if other.target != self.source:
            raise ValueError("cannot compose: groups do not match")
        lin = compose_homs(self.linear, other.linear)
        trans = self.target.add(self.linear(other.translation), self.translation)
        return HeapMorphism(lin, trans)

    @property
    def is_constant(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.linear.matrix)

    @property
    def is_isomorphism(self) -> bool:
        return self.linear.is_bijective

    def inverse(self) -> "HeapMorphism":
        """Inverse heap isomorphism: y -> f^{-1}(y) - f^{-1}(h0)."""
        inv = invert_hom(self.linear)
        return HeapMorphism(inv, self.source.neg(inv(self.translation)))

    def values(self) -> tuple[Element, ...]:
        return tuple(self(x) for x in self.source.elements())

    def to_json_dict(self) -> dict:
        return {
            "linear": [list(row) for row in self.linear.matrix],
            "translation": list(self.translation),
        }


def heap_ternary(f: HeapMorphism, g: HeapMorphism, h: HeapMorphism) -> HeapMorphism:
    """Pointwise [f,g,h]: linear parts and translations combine independently."""
    return HeapMorphism(
        hom_ternary(f.linear, g.linear, h.linear),
        f.target.ternary(f.translation, g.translation, h.translation),
    )


def constant_morphism(source: AbGroup, value: Element, target: AbGroup | None = None) -> HeapMorphism:
    """The heap morphism sending every element to `value`."""
    target = source if target is None else target
    return HeapMorphism(zero_hom(source, target), target.element(value))


def identity_morphism(g: AbGroup) -> HeapMorphism:
    return HeapMorphism(identity_hom(g), g.zero)


def evaluate(phi: HeapMorphism, x: Element) -> Element:
    return phi(x)


def decompose(
    source: AbGroup,
    target: AbGroup,
    values: Sequence[Element] | Mapping[Element, Element],
) -> HeapMorphism:
    """Split a total value table G -> H into (linear, translation).

    The translation is forced to be the image of zero and the linear part to be
    the translated table; raises NotAHeapMorphism when that candidate fails to
    be additive (checked on every element, not just generators).
    """
    if isinstance(values, Mapping):
        table = dict(values)
    else:
        values = tuple(values)
        if len(values) != source.cardinality:
            raise NotAHeapMorphism("value table does not cover the source group")
        table = dict(zip(source.elements(), values))
    if set(table) != set(source.elements()):
        raise NotAHeapMorphism("value table does not cover the source group")
    translation = target.element(table[source.zero])
    linear_values = {x: target.sub(table[x], translation) for x in table}
    rows = []
    for j in range(target.rank):
        row = []
        for i in range(source.rank):
            gen = source.element(1 if k == i else 0 for k in range(source.rank))
            row.append(linear_values[gen][j])
        rows.append(tuple(row))
    try:
        linear = GroupHom(source, target, tuple(rows))
    except ValueError as exc:
        raise NotAHeapMorphism(f"translated table is not additive: {exc}") from None
    for x, v in linear_values.items():
        if linear(x) != v:
            raise NotAHeapMorphism(
                f"translated table is not additive: disagrees at {x}"
            )
    return HeapMorphism(linear, translation)


def heap_morphisms(g: AbGroup, h: AbGroup, max_enum: int | None = None) -> tuple[HeapMorphism, ...]:
    """All heap morphisms g -> h as (hom, translation) pairs, hom-major order."""
    limit = resolve_max_enum(max_enum)
    homs = hom_enumerate(g, h, max_enum)
    guard(len(homs) * h.cardinality, limit, f"heap morphisms {g} -> {h}")
    return tuple(
        HeapMorphism(hom, trans) for hom in homs for trans in h.elements()
    )


def heap_isos(g: AbGroup, h: AbGroup, max_enum: int | None = None) -> tuple[HeapMorphism, ...]:
    """The bijective heap morphisms; count is |h| times the number of group
    isomorphisms g -> h."""
    return tuple(m for m in heap_morphisms(g, h, max_enum) if m.is_isomorphism)


@dataclass(frozen=True)
class EndoTruss:
    """The truss of heap endomorphisms of a group built on a homomorphism family.

    With `homs` = End(G) this is the full endomorphism truss E(G), realized as
    the semidirect-product carrier G x homs: carrier index h*|G| + e denotes the
    morphism (homs[h], element e). The family must contain the zero and identity
    maps and be closed under composition and pointwise difference; the full
    End(G) and the module-linear subfamilies used elsewhere all qualify.
    """

    group: AbGroup
    homs: tuple[GroupHom, ...]

    def __post_init__(self) -> None:
        for f in self.homs:
            if f.source != self.group or f.target != self.group:
                raise ValueError("every homomorphism must be an endomorphism of the group")
        if len(set(h.matrix for h in self.homs)) != len(self.homs):
            raise ValueError("homomorphism family contains duplicates")

    @property
    def size(self) -> int:
        return len(self.homs) * self.group.cardinality

    @cached_property
    def _m(self) -> int:
        return self.group.cardinality

    @cached_property
    def _elements(self) -> tuple[Element, ...]:
        return tuple(self.group.elements())

    @cached_property
    def _hom_pos(self) -> dict[tuple, int]:
        return {h.matrix: i for i, h in enumerate(self.homs)}

    @cached_property
    def carrier(self) -> tuple[HeapMorphism, ...]:
        return tuple(
            HeapMorphism(hom, e) for hom in self.homs for e in self._elements
        )

    @cached_property
    def unit(self) -> int:
        """Index of the identity morphism."""
        ident = identity_hom(self.group)
        return self._hom_index(ident) * self._m + self.group.index(self.group.zero)

    @cached_property
    def _zero_hom_pos(self) -> int:
        return self._hom_index(zero_hom(self.group, self.group))

    @cached_property
    def constant_indices(self) -> tuple[int, ...]:
        """Carrier indices of the constant morphisms, in element order."""
        base = self._zero_hom_pos * self._m
        return tuple(base + j for j in range(self._m))

    def _hom_index(self, f: GroupHom) -> int:
        try:
            return self._hom_pos[f.matrix]
        except KeyError:
            raise ValueError(
                "homomorphism family is not closed under the required operation"
            ) from None

    def morphism_at(self, i: int) -> HeapMorphism:
        return self.carrier[i]

    def index_of(self, phi: HeapMorphism) -> int:
        if phi.source != self.group or phi.target != self.group:
            raise ValueError("morphism does not act on this group")
        return self._hom_index(phi.linear) * self._m + self.group.index(phi.translation)

    def constant_index(self, a: Element) -> int:
        return self._zero_hom_pos * self._m + self.group.index(self.group.element(a))

    def mult(self, i: int, j: int) -> int:
        h1, e1 = divmod(i, self._m)
        h2, e2 = divmod(j, self._m)
        comp = self._compose_memo.get((h1, h2))
        if comp is None:
            comp = self._hom_index(compose_homs(self.homs[h1], self.homs[h2]))
            self._compose_memo[h1, h2] = comp
        g = self.group
        e = g.add(self.homs[h1](self._elements[e2]), self._elements[e1])
        return comp * self._m + g.index(e)

    def ternary(self, i: int, j: int, k: int) -> int:
        h1, e1 = divmod(i, self._m)
        h2, e2 = divmod(j, self._m)
        h3, e3 = divmod(k, self._m)
        key = (h1, h2, h3)
        pos = self._ternary_memo.get(key)
        if pos is None:
            pos = self._hom_index(hom_ternary(self.homs[h1], self.homs[h2], self.homs[h3]))
            self._ternary_memo[key] = pos
        g = self.group
        e = g.ternary(self._elements[e1], self._elements[e2], self._elements[e3])
        return pos * self._m + g.index(e)

    @cached_property
    def _compose_memo(self) -> dict:
        return {}

    @cached_property
    def _ternary_memo(self) -> dict:
        return {}

    def _hom_tables(self, max_enum: int | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(compose, ternary, apply) tables at the homomorphism level."""
        limit = resolve_max_enum(max_enum)
        H = len(self.homs)
        guard(H**3, limit, "homomorphism-level ternary table")
        comp = np.empty((H, H), dtype=np.int64)
        for a, b in itertools.product(range(H), repeat=2):
            comp[a, b] = self._hom_index(compose_homs(self.homs[a], self.homs[b]))
        tern = np.empty((H, H, H), dtype=np.int64)
        for a, b in itertools.product(range(H), repeat=2):
            d = hom_sub(self.homs[a], self.homs[b])
            for c in range(H):
                tern[a, b, c] = self._hom_index(hom_add(d, self.homs[c]))
        apply = np.empty((H, self._m), dtype=np.int64)
        for a in range(H):
            f = self.homs[a]
            for e in range(self._m):
                apply[a, e] = self.group.index(f(self._elements[e]))
        return comp, tern, apply

    def _dense_tables(self, max_enum: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        cached = self.__dict__.get("_dense_cache")
        if cached is not None:
            return cached
        limit = resolve_max_enum(max_enum)
        n, m = self.size, self._m
        guard(n**3, limit, f"dense tables of a {n}-element endomorphism truss")
        comp, tern, apply = self._hom_tables(max_enum)
        add_tab = np_add_table(self.group, max_enum)
        elems = np_elements(self.group)
        orders = np.array(self.group.orders, dtype=np.int64)
        strides = np.array(self.group._strides, dtype=np.int64)
        if self.group.rank:
            diff3 = (elems[:, None, None, :] - elems[None, :, None, :] + elems[None, None, :, :]) % orders
            etern = diff3 @ strides
        else:
            etern = np.zeros((1, 1, 1), dtype=np.int64)
        idx = np.arange(n)
        hi, ei = idx // m, idx % m
        mult = comp[hi[:, None], hi[None, :]] * m + add_tab[
            apply[hi[:, None], ei[None, :]], ei[:, None]
        ]
        tern_full = tern[hi[:, None, None], hi[None, :, None], hi[None, None, :]] * m + etern[
            ei[:, None, None], ei[None, :, None], ei[None, None, :]
        ]
        self.__dict__["_dense_cache"] = (mult, tern_full)
        return mult, tern_full

    def finite_heap(self, max_enum: int | None = None) -> FiniteHeap:
        _, tern = self._dense_tables(max_enum)
        return FiniteHeap(self.size, tuple(int(x) for x in tern.reshape(-1)))

    def to_finite_truss(self, max_enum: int | None = None) -> FiniteTruss:
        mult, tern = self._dense_tables(max_enum)
        heap = FiniteHeap(self.size, tuple(int(x) for x in tern.reshape(-1)))
        return FiniteTruss(heap, tuple(int(x) for x in mult.reshape(-1)), unit=self.unit)


def build_endo_truss(g: AbGroup, max_enum: int | None = None) -> EndoTruss:
    """E(g): all heap endomorphisms of g with composition and pointwise ternary."""
    homs = hom_enumerate(g, g, max_enum)
    guard(len(homs) * g.cardinality, resolve_max_enum(max_enum), f"carrier of E({g})")
    return EndoTruss(g, homs)


def constants(t: EndoTruss) -> tuple[int, ...]:
    """Carrier indices of the constant maps; a sub-truss of the carrier."""
    return t.constant_indices
