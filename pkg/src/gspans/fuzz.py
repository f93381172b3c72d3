"""Seeded random generators for property suites and the verify subcommands."""

from __future__ import annotations

import random
from typing import Optional

from .gsets import (
    GMap,
    GSet,
    cartesian_product,
    disjoint_union,
    empty_gset,
    fixed_points,
    orbit_decomposition,
    orbit_gset,
    pair_index,
)
from .groups import FiniteGroup, Perm
from .operads import DEFAULT_MAX_LEVEL, FreeAlgObj, OperadObj, normalize
from .spans import Span, span_from_leg_pairs


def rand_perm(rng: random.Random, n: int) -> Perm:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Perm(tuple(images))


def rand_gset(rng: random.Random, group: FiniteGroup, max_points: int) -> GSet:
    """A random disjoint union of orbits with at most max_points points."""
    out = empty_gset(group)
    classes = group.subgroup_classes()
    while True:
        candidates = [
            c for c in classes if out.n + group.order // len(c.indices) <= max_points
        ]
        if not candidates or rng.random() < 0.3:
            return out
        out = disjoint_union(out, orbit_gset(group, rng.choice(candidates)))


def rand_span(
    rng: random.Random, a: GSet, b: GSet, max_orbits: int
) -> Span:
    """A random span a -> b assembled from transitive pieces."""
    group = a.group
    prod = cartesian_product(b, a)
    pieces: list[tuple[int, int]] = []  # (class index, image point) per orbit
    for _ in range(rng.randint(0, max_orbits)):
        cls = rng.choice(group.subgroup_classes())
        fix = fixed_points(prod, cls)
        if not fix:
            continue
        pieces.append((cls.index, rng.choice(fix)))
    apexes = []
    total = 0
    group_order = group.order
    for c, q in pieces:
        orb = orbit_gset(group, group.subgroup_classes()[c])
        apexes.append((orb, q, total))
        total += orb.n
    action = []
    for g in range(group_order):
        images = []
        for orb, _, offset in apexes:
            images.extend(v + offset for v in orb.action[g].images)
        action.append(Perm(tuple(images)))
    apex = GSet(group, total, action, validate=False)
    leg_images = []
    for orb, q, _ in apexes:
        # points of the orbit are cosets ordered by least element; transport q
        dec = orbit_decomposition(orb)
        move = dec.transporters[0]
        for p in orb.points():
            leg_images.append(prod.action[move[p]](q))
    leg = GMap(apex, prod, tuple(leg_images))
    return Span(src=a, tgt=b, apex=apex, leg=leg)


def relabel_span(rng: random.Random, s: Span) -> Span:
    """An isomorphic span with a shuffled apex carrier."""
    n = s.apex.n
    pi = rand_perm(rng, n)
    inv = pi.inverse()
    action = [pi * p * inv for p in s.apex.action]
    apex = GSet(s.apex.group, n, action, validate=False)
    images = [0] * n
    for d in range(1, n + 1):
        images[pi(d) - 1] = s.leg(d)
    leg = GMap(apex, s.leg.target, tuple(images))
    return Span(src=s.src, tgt=s.tgt, apex=apex, leg=leg)


def rand_operad_obj(rng: random.Random, group: FiniteGroup, arity: int) -> OperadObj:
    return OperadObj(
        group, arity, tuple(rand_perm(rng, arity) for _ in range(group.order))
    )


def rand_free_obj(
    rng: random.Random,
    over: GSet,
    max_level: int = DEFAULT_MAX_LEVEL,
    allow_basepoints: bool = False,
) -> FreeAlgObj:
    level = rng.randint(0, max_level)
    low = 0 if allow_basepoints and over.n > 0 else 1
    if over.n == 0:
        level = 0
    points = tuple(rng.randint(low, over.n) for _ in range(level))
    return normalize(over, rand_operad_obj(rng, over.group, level), points)


def rand_gmap(rng: random.Random, a: GSet, b: GSet) -> Optional[GMap]:
    """A random equivariant map a -> b, or None if none exists."""
    dec = orbit_decomposition(a)
    images = [0] * a.n
    for k in range(len(dec.orbits)):
        stab = dec.stabilizers[k]
        targets = fixed_points(b, stab)
        if not targets:
            return None
        t = rng.choice(targets)
        move = dec.transporters[k]
        for p in dec.orbits[k]:
            images[p - 1] = b.action[move[p]](t)
    return GMap(a, b, tuple(images))
