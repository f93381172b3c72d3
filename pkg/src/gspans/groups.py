"""Finite permutation groups with the subgroup data needed for canonical forms.

Composition convention, used everywhere in the package:
    (g * h)(i) = g(h(i)),  i.e. h acts first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import MalformedInputError, SizeLimitError

DEFAULT_MAX_ORDER = 10**6
MAX_ORDER_ENV = "GSPANS_MAX_GROUP_ORDER"


@dataclass(frozen=True)
class Perm:
    """A permutation of {1..deg}, stored as its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise MalformedInputError(f"not a permutation of 1..{n}: {self.images!r}")

    @staticmethod
    def identity(deg: int) -> "Perm":
        return Perm(tuple(range(1, deg + 1)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise MalformedInputError(
                f"degree mismatch: {self.degree} vs {other.degree}"
            )
        imgs = self.images
        return Perm(tuple(imgs[j - 1] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def __repr__(self) -> str:
        return f"Perm{self.images}"


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups: the minimal conjugate and its position."""

    representative: tuple[Perm, ...]
    index: int
    indices: frozenset[int] = field(compare=False, hash=False)

    @property
    def order(self) -> int:
        return len(self.representative)


class FiniteGroup:
    """A finite group of permutations, enumerated breadth-first from generators.

    ``elements[0]`` is the identity.  The enumeration order is deterministic and
    every canonical form downstream depends on it, so it must never change.
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Perm],
        max_order: Optional[int] = None,
    ):
        if degree < 0:
            raise MalformedInputError("degree must be nonnegative")
        for p in generators:
            if not isinstance(p, Perm):
                raise MalformedInputError(f"generator is not a Perm: {p!r}")
            if p.degree != degree:
                raise MalformedInputError(
                    f"generator degree {p.degree} != group degree {degree}"
                )
        if max_order is None:
            max_order = _max_order_limit()
        self.degree = degree
        self.generators = tuple(generators)
        ident = Perm.identity(degree)
        elements = [ident]
        index = {ident.images: 0}
        # parents[k] = (i, j) with elements[k] == generators[i] * elements[j]
        parents: list[tuple[int, int]] = [(-1, -1)]
        frontier = [0]
        while frontier:
            new = []
            for i, g in enumerate(self.generators):
                for j in frontier:
                    c = g * elements[j]
                    if c.images not in index:
                        if len(elements) >= max_order:
                            raise SizeLimitError(
                                f"group closure exceeds {max_order} elements"
                            )
                        index[c.images] = len(elements)
                        elements.append(c)
                        parents.append((i, j))
                        new.append(index[c.images])
            frontier = new
        self.elements: tuple[Perm, ...] = tuple(elements)
        self.order = len(elements)
        self._index = index
        self._parents = tuple(parents)
        self._gen_indices = tuple(self._index[g.images] for g in self.generators)
        self._mul_cache: dict[tuple[int, int], int] = {}
        self._inv_cache: dict[int, int] = {}
        self._subgroups: Optional[tuple[frozenset[int], ...]] = None
        self._classes: Optional[tuple[SubgroupClass, ...]] = None
        self._class_of: dict[frozenset[int], int] = {}
        self._normalizers: dict[int, frozenset[int]] = {}
        self._hash = hash((degree, tuple(p.images for p in self.generators)))

    # -- identity / hashing -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteGroup)
            and self.degree == other.degree
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteGroup(degree={self.degree}, order={self.order})"

    # -- elementary arithmetic on element indices ---------------------------

    @property
    def generator_indices(self) -> tuple[int, ...]:
        return self._gen_indices

    @property
    def parents(self) -> tuple[tuple[int, int], ...]:
        return self._parents

    def index_of(self, p: Perm) -> int:
        try:
            return self._index[p.images]
        except KeyError:
            raise MalformedInputError(f"{p!r} is not an element of {self!r}")

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        k = self._mul_cache.get(key)
        if k is None:
            k = self._index[(self.elements[i] * self.elements[j]).images]
            self._mul_cache[key] = k
        return k

    def inv(self, i: int) -> int:
        k = self._inv_cache.get(i)
        if k is None:
            k = self._index[self.elements[i].inverse().images]
            self._inv_cache[i] = k
        return k

    # -- subgroup machinery --------------------------------------------------

    def _closure(self, seed: Iterable[int]) -> frozenset[int]:
        gens = [i for i in seed if i != 0]
        els = {0}
        els.update(gens)
        frontier = list(els)
        while frontier:
            new = []
            for s in gens:
                for x in frontier:
                    y = self.mul(s, x)
                    if y not in els:
                        els.add(y)
                        new.append(y)
            frontier = new
        return frozenset(els)

    def subgroups(self) -> tuple[frozenset[int], ...]:
        """All subgroups, as frozensets of element indices.

        Enumerated by repeatedly adjoining one generator to known subgroups;
        every subgroup is finitely generated so this closure finds them all.
        """
        if self._subgroups is None:
            trivial = frozenset({0})
            subs = {trivial}
            frontier = [trivial]
            while frontier:
                new = []
                for h in frontier:
                    for x in range(1, self.order):
                        if x not in h:
                            k = self._closure(h | {x})
                            if k not in subs:
                                subs.add(k)
                                new.append(k)
                frontier = new
            self._subgroups = tuple(sorted(subs, key=lambda s: (len(s), sorted(s))))
        return self._subgroups

    def conjugate_subgroup(self, g: int, h: frozenset[int]) -> frozenset[int]:
        gi = self.inv(g)
        return frozenset(self.mul(self.mul(g, x), gi) for x in h)

    def _subgroup_key(self, h: frozenset[int]) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.elements[i].images for i in h))

    def subgroup_classes(self) -> tuple[SubgroupClass, ...]:
        """Conjugacy classes of subgroups, ordered by order then minimal key."""
        if self._classes is None:
            remaining = set(self.subgroups())
            classes = []
            while remaining:
                h = next(iter(remaining))
                members = {self.conjugate_subgroup(g, h) for g in range(self.order)}
                remaining -= members
                rep = min(members, key=self._subgroup_key)
                classes.append(rep)
            classes.sort(key=lambda h: (len(h), self._subgroup_key(h)))
            out = []
            for idx, h in enumerate(classes):
                perms = tuple(
                    sorted((self.elements[i] for i in h), key=lambda p: p.images)
                )
                out.append(SubgroupClass(representative=perms, index=idx, indices=h))
            self._classes = tuple(out)
        return self._classes

    def class_of_subgroup(self, h: frozenset[int]) -> int:
        """Index of the conjugacy class containing the subgroup ``h``."""
        hit = self._class_of.get(h)
        if hit is not None:
            return hit
        for cls in self.subgroup_classes():
            if len(cls.indices) == len(h):
                for g in range(self.order):
                    if self.conjugate_subgroup(g, h) == cls.indices:
                        self._class_of[h] = cls.index
                        return cls.index
        raise MalformedInputError("not a subgroup of this group")

    def conjugator_to_class_rep(self, h: frozenset[int]) -> int:
        """Some g with g h g^-1 equal to the representative of h's class."""
        target = self.subgroup_classes()[self.class_of_subgroup(h)].indices
        for g in range(self.order):
            if self.conjugate_subgroup(g, h) == target:
                return g
        raise MalformedInputError("not a subgroup of this group")

    def normalizer(self, class_index: int) -> frozenset[int]:
        hit = self._normalizers.get(class_index)
        if hit is None:
            rep = self.subgroup_classes()[class_index].indices
            hit = frozenset(
                g for g in range(self.order) if self.conjugate_subgroup(g, rep) == rep
            )
            self._normalizers[class_index] = hit
        return hit


def _max_order_limit() -> int:
    raw = os.environ.get(MAX_ORDER_ENV)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise MalformedInputError(f"bad {MAX_ORDER_ENV} value: {raw!r}")


# -- the operations of the module -------------------------------------------


def make_group(
    degree: int, generators: Sequence[Perm], max_order: Optional[int] = None
) -> FiniteGroup:
    return FiniteGroup(degree, generators, max_order=max_order)


def multiply(group: FiniteGroup, g: Perm, h: Perm) -> Perm:
    """Product g*h of two elements of the group (h acts first)."""
    group.index_of(g)
    group.index_of(h)
    return g * h


def subgroup_conjugacy_classes(group: FiniteGroup) -> list[SubgroupClass]:
    return list(group.subgroup_classes())


# -- standard presets --------------------------------------------------------


def trivial_group() -> FiniteGroup:
    return FiniteGroup(1, [])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise MalformedInputError("cyclic group needs n >= 1")
    if n == 1:
        return trivial_group()
    rot = Perm(tuple(range(2, n + 1)) + (1,))
    return FiniteGroup(n, [rot])


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon acting on its n vertices (n >= 3)."""
    if n < 3:
        raise MalformedInputError("dihedral group needs n >= 3")
    rot = Perm(tuple(range(2, n + 1)) + (1,))
    refl = Perm((1,) + tuple(range(n, 1, -1)))
    return FiniteGroup(n, [rot, refl])


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise MalformedInputError("symmetric group needs n >= 1")
    if n == 1:
        return trivial_group()
    swap = Perm((2, 1) + tuple(range(3, n + 1)))
    if n == 2:
        return FiniteGroup(2, [swap])
    rot = Perm(tuple(range(2, n + 1)) + (1,))
    return FiniteGroup(n, [swap, rot])


def klein_four_group() -> FiniteGroup:
    return FiniteGroup(4, [Perm((2, 1, 3, 4)), Perm((1, 2, 4, 3))])
