"""Finite G-sets in normal form (n, alpha), their maps, products and orbits.

A G-set is a carrier {1..n} together with one permutation per group element.
Constructions that carve out a subset of a carrier always renumber it to
{1..m} preserving the inherited order, so every value stays in normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import MalformedInputError, ShapeError
from .groups import FiniteGroup, Perm, SubgroupClass


class GSet:
    """A finite G-set (n, alpha): one Perm of degree n per group element."""

    __slots__ = ("group", "n", "action", "_hash")

    def __init__(
        self,
        group: FiniteGroup,
        n: int,
        action: Sequence[Perm],
        validate: bool = True,
    ):
        if n < 0:
            raise MalformedInputError("carrier size must be nonnegative")
        action = tuple(action)
        if len(action) != group.order:
            raise MalformedInputError(
                f"need one permutation per group element ({group.order}), "
                f"got {len(action)}"
            )
        self.group = group
        self.n = n
        self.action = action
        self._hash = hash((group, n, tuple(p.images for p in action)))
        if validate:
            self._validate()

    def _validate(self) -> None:
        for p in self.action:
            if p.degree != self.n:
                raise MalformedInputError("action permutation has wrong degree")
        if not self.action[0].is_identity():
            raise MalformedInputError("identity must act trivially")
        g = self.group
        # checking generators against all elements suffices for homomorphy
        for gi in g.generator_indices:
            pg = self.action[gi]
            for j in range(g.order):
                if self.action[g.mul(gi, j)].images != (pg * self.action[j]).images:
                    raise MalformedInputError("action is not a homomorphism")

    def act(self, g: int, point: int) -> int:
        return self.action[g](point)

    def points(self) -> range:
        return range(1, self.n + 1)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GSet)
            and self._hash == other._hash
            and self.n == other.n
            and self.group == other.group
            and all(p.images == q.images for p, q in zip(self.action, other.action))
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GSet(n={self.n}, |G|={self.group.order})"


@dataclass(frozen=True)
class GMap:
    """An equivariant map of G-sets, as the tuple of images of 1..source.n."""

    source: GSet
    target: GSet
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source.group != self.target.group:
            raise ShapeError("source and target live over different groups")
        if len(self.images) != self.source.n:
            raise MalformedInputError("image tuple has wrong length")
        for v in self.images:
            if not 1 <= v <= self.target.n:
                raise MalformedInputError(f"image {v} outside 1..{self.target.n}")
        grp = self.source.group
        for gi in grp.generator_indices:
            a = self.source.action[gi]
            b = self.target.action[gi]
            for i in range(1, self.source.n + 1):
                if self.images[a(i) - 1] != b(self.images[i - 1]):
                    raise MalformedInputError("map is not equivariant")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and self.is_injective()

    def compose(self, other: "GMap") -> "GMap":
        """self after other."""
        if other.target != self.source:
            raise ShapeError("maps are not composable")
        return GMap(other.source, self.target, tuple(self(v) for v in other.images))


@dataclass
class OrbitDecomposition:
    """Orbits of a G-set with, per orbit, a representative and its stabilizer class.

    ``transporters[k][p]`` is a group element index moving the k-th orbit's
    representative to the point p.
    """

    orbits: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    stabilizer_classes: tuple[int, ...]
    stabilizers: tuple[frozenset[int], ...]
    transporters: tuple[dict[int, int], ...]


# -- constructions ------------------------------------------------------------


def empty_gset(group: FiniteGroup) -> GSet:
    return GSet(group, 0, [Perm(()) for _ in range(group.order)], validate=False)


def one_point(group: FiniteGroup) -> GSet:
    return GSet(group, 1, [Perm((1,)) for _ in range(group.order)], validate=False)


def trivial_gset(group: FiniteGroup, n: int) -> GSet:
    ident = Perm.identity(n)
    return GSet(group, n, [ident for _ in range(group.order)], validate=False)


def regular_gset(group: FiniteGroup) -> GSet:
    """G acting on itself by left translation, points = element indices + 1."""
    action = []
    for g in range(group.order):
        action.append(Perm(tuple(group.mul(g, x) + 1 for x in range(group.order))))
    return GSet(group, group.order, action, validate=False)


def orbit_gset(
    group: FiniteGroup, subgroup: Union[SubgroupClass, frozenset]
) -> GSet:
    """The orbit G/H for a subgroup H, with cosets ordered by least element."""
    h = subgroup.indices if isinstance(subgroup, SubgroupClass) else frozenset(subgroup)
    seen: dict[int, int] = {}
    cosets: list[tuple[int, frozenset[int]]] = []
    for g in range(group.order):
        if g in seen:
            continue
        coset = frozenset(group.mul(g, x) for x in h)
        cosets.append((min(coset), coset))
        for y in coset:
            seen[y] = len(cosets) - 1
    cosets.sort(key=lambda t: t[0])
    point_of = {}
    for p, (_, coset) in enumerate(cosets, start=1):
        for y in coset:
            point_of[y] = p
    action = []
    for g in range(group.order):
        imgs = []
        for _, coset in cosets:
            rep = min(coset)
            imgs.append(point_of[group.mul(g, rep)])
        action.append(Perm(tuple(imgs)))
    return GSet(group, len(cosets), action)


def gset_from_generator_images(
    group: FiniteGroup, n: int, gen_perms: Sequence[Perm]
) -> GSet:
    """Extend permutations for the generators to a full action table."""
    if len(gen_perms) != len(group.generators):
        raise MalformedInputError("need one permutation per generator")
    for p in gen_perms:
        if p.degree != n:
            raise MalformedInputError("generator image has wrong degree")
    action: list[Optional[Perm]] = [None] * group.order
    action[0] = Perm.identity(n)
    for k in range(1, group.order):
        i, j = group.parents[k]
        prev = action[j]
        assert prev is not None
        action[k] = gen_perms[i] * prev
    return GSet(group, n, [p for p in action if p is not None])


def disjoint_union(d: GSet, e: GSet) -> GSet:
    if d.group != e.group:
        raise ShapeError("disjoint union needs a common group")
    s = d.n
    action = []
    for g in range(d.group.order):
        left = d.action[g].images
        right = tuple(v + s for v in e.action[g].images)
        action.append(Perm(left + right))
    return GSet(d.group, s + e.n, action, validate=False)


def pair_index(right_size: int, left: int, right: int) -> int:
    """Index of (left, right) in a lexicographically ordered product carrier."""
    return (left - 1) * right_size + right


def unpair_index(right_size: int, idx: int) -> tuple[int, int]:
    return (idx - 1) // right_size + 1, (idx - 1) % right_size + 1


def cartesian_product(d: GSet, e: GSet) -> GSet:
    """Product with carrier {1..st}, pairs (i,j) in lexicographic order."""
    if d.group != e.group:
        raise ShapeError("product needs a common group")
    t = e.n
    action = []
    for g in range(d.group.order):
        dp = d.action[g].images
        ep = e.action[g].images
        imgs = []
        for i in range(d.n):
            base = (dp[i] - 1) * t
            for j in range(t):
                imgs.append(base + ep[j])
        action.append(Perm(tuple(imgs)))
    return GSet(d.group, d.n * t, action, validate=False)


def triple_product(a: GSet) -> GSet:
    return cartesian_product(cartesian_product(a, a), a)


def diagonal(a: GSet) -> GMap:
    """The G-map a -> (a, a) into the lexicographic product carrier."""
    prod = cartesian_product(a, a)
    return GMap(a, prod, tuple(pair_index(a.n, i, i) for i in a.points()))


def fixed_points(a: GSet, subgroup: Union[SubgroupClass, frozenset]) -> tuple[int, ...]:
    h = subgroup.indices if isinstance(subgroup, SubgroupClass) else frozenset(subgroup)
    return tuple(
        i for i in a.points() if all(a.action[g](i) == i for g in h)
    )


def point_stabilizer(a: GSet, point: int) -> frozenset[int]:
    return frozenset(g for g in range(a.group.order) if a.action[g](point) == point)


def orbit_decomposition(a: GSet) -> OrbitDecomposition:
    group = a.group
    seen: set[int] = set()
    orbits = []
    reps = []
    classes = []
    stabs = []
    transporters = []
    for start in a.points():
        if start in seen:
            continue
        move = {start: 0}
        frontier = [start]
        while frontier:
            new = []
            for gi in group.generator_indices or (0,):
                for p in frontier:
                    q = a.action[gi](p)
                    if q not in move:
                        move[q] = group.mul(gi, move[p])
                        new.append(q)
            frontier = new
        orbit = tuple(sorted(move))
        seen.update(orbit)
        stab = point_stabilizer(a, start)
        orbits.append(orbit)
        reps.append(start)
        classes.append(group.class_of_subgroup(stab))
        stabs.append(stab)
        transporters.append(move)
    return OrbitDecomposition(
        orbits=tuple(orbits),
        representatives=tuple(reps),
        stabilizer_classes=tuple(classes),
        stabilizers=tuple(stabs),
        transporters=tuple(transporters),
    )


def gset_iso(a: GSet, b: GSet) -> Optional[GMap]:
    """An equivariant bijection a -> b if one exists.

    Orbits can be matched exactly when their stabilizer classes agree; inside
    a matched pair the image of the representative is found by exact
    stabilizer comparison.
    """
    if a.group != b.group:
        raise ShapeError("isomorphism test needs a common group")
    if a.n != b.n:
        return None
    da = orbit_decomposition(a)
    db = orbit_decomposition(b)
    if sorted(da.stabilizer_classes) != sorted(db.stabilizer_classes):
        return None
    available = list(range(len(db.orbits)))
    images = [0] * a.n
    for k, orbit in enumerate(da.orbits):
        rep = da.representatives[k]
        stab = da.stabilizers[k]
        hit = None
        for pos, m in enumerate(available):
            if db.stabilizer_classes[m] != da.stabilizer_classes[k]:
                continue
            for q in db.orbits[m]:
                if point_stabilizer(b, q) == stab:
                    hit = (pos, m, q)
                    break
            if hit:
                break
        if hit is None:
            return None
        pos, m, q = hit
        del available[pos]
        move = da.transporters[k]
        for p in orbit:
            images[p - 1] = b.action[move[p]](q)
    return GMap(a, b, tuple(images))
