"""The bicategory of spans of finite G-sets.

A 1-cell A -> B is a G-set over B x A (apex plus leg).  Composition is by
chosen pullbacks: pairs (e, d) agreeing over the middle object, enumerated
with e outer and d inner, then renumbered order-preservingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import MalformedInputError, ShapeError
from .gsets import (
    GMap,
    GSet,
    cartesian_product,
    diagonal,
    disjoint_union,
    empty_gset,
    one_point,
    orbit_decomposition,
    pair_index,
    point_stabilizer,
    unpair_index,
)
from .groups import Perm


@dataclass(frozen=True)
class Span:
    """A span from src to tgt: apex D with an equivariant leg D -> tgt x src."""

    src: GSet
    tgt: GSet
    apex: GSet
    leg: GMap

    def __post_init__(self) -> None:
        if self.leg.source != self.apex:
            raise ShapeError("leg must start at the apex")
        if self.leg.target != cartesian_product(self.tgt, self.src):
            raise ShapeError("leg must land in tgt x src")

    @property
    def group(self):
        return self.src.group

    def leg_pair(self, d: int) -> tuple[int, int]:
        """The (tgt, src) coordinates of an apex point."""
        return unpair_index(self.src.n, self.leg(d))


@dataclass(frozen=True)
class TwoCell:
    """An isomorphism of spans: an equivariant bijection of apexes over tgt x src."""

    source: Span
    target: Span
    iso: GMap

    def __post_init__(self) -> None:
        if self.source.src != self.target.src or self.source.tgt != self.target.tgt:
            raise ShapeError("2-cell endpoints do not match")
        if self.iso.source != self.source.apex or self.iso.target != self.target.apex:
            raise ShapeError("2-cell must map apex to apex")
        if not self.iso.is_bijective():
            raise MalformedInputError("2-cell is not a bijection")
        for d in self.source.apex.points():
            if self.target.leg(self.iso(d)) != self.source.leg(d):
                raise MalformedInputError("2-cell does not commute with the legs")


def id_span(a: GSet) -> Span:
    return Span(src=a, tgt=a, apex=a, leg=diagonal(a))


def empty_span(a: GSet, b: GSet) -> Span:
    apex = empty_gset(a.group)
    return Span(src=a, tgt=b, apex=apex, leg=GMap(apex, cartesian_product(b, a), ()))


def span_from_leg_pairs(
    a: GSet, b: GSet, apex: GSet, pairs: list[tuple[int, int]]
) -> Span:
    leg = GMap(
        apex,
        cartesian_product(b, a),
        tuple(pair_index(a.n, bb, aa) for bb, aa in pairs),
    )
    return Span(src=a, tgt=b, apex=apex, leg=leg)


def compose_spans(s2: Span, s1: Span) -> Span:
    """The pullback composite of s2 : B -> C after s1 : A -> B."""
    if s2.group != s1.group:
        raise ShapeError("spans live over different groups")
    if s2.src != s1.tgt:
        raise ShapeError("middle objects do not match")
    group = s1.group
    e_mid = [s2.leg_pair(e)[1] for e in s2.apex.points()]
    d_mid = [s1.leg_pair(d)[0] for d in s1.apex.points()]
    kept = [
        (e, d)
        for e in s2.apex.points()
        for d in s1.apex.points()
        if e_mid[e - 1] == d_mid[d - 1]
    ]
    number = {ed: k for k, ed in enumerate(kept, start=1)}
    action = []
    for g in range(group.order):
        pe = s2.apex.action[g]
        pd = s1.apex.action[g]
        action.append(Perm(tuple(number[(pe(e), pd(d))] for e, d in kept)))
    apex = GSet(group, len(kept), action, validate=False)
    pairs = [(s2.leg_pair(e)[0], s1.leg_pair(d)[1]) for e, d in kept]
    return span_from_leg_pairs(s1.src, s2.tgt, apex, pairs)


def span_disjoint_union(s: Span, t: Span) -> Span:
    if s.src != t.src or s.tgt != t.tgt:
        raise ShapeError("spans must share both endpoints")
    apex = disjoint_union(s.apex, t.apex)
    leg = GMap(apex, s.leg.target, s.leg.images + t.leg.images)
    return Span(src=s.src, tgt=s.tgt, apex=apex, leg=leg)


def external_product(p: GMap, q: GMap) -> GMap:
    """The product of two G-sets over X and Y, as a G-set over X x Y."""
    src = cartesian_product(p.source, q.source)
    tgt = cartesian_product(p.target, q.target)
    imgs = []
    for i in p.source.points():
        base = p(i)
        for j in q.source.points():
            imgs.append(pair_index(q.target.n, base, q(j)))
    return GMap(src, tgt, tuple(imgs))


def span_external(s: Span, t: Span) -> Span:
    """The external product of s : A -> B and t : C -> D, a span A x C -> B x D."""
    if s.group != t.group:
        raise ShapeError("spans live over different groups")
    a, b = s.src, s.tgt
    c, d = t.src, t.tgt
    apex = cartesian_product(s.apex, t.apex)
    pairs = []
    for x in s.apex.points():
        bx, ax = s.leg_pair(x)
        for y in t.apex.points():
            dy, cy = t.leg_pair(y)
            pairs.append((pair_index(d.n, bx, dy), pair_index(c.n, ax, cy)))
    return span_from_leg_pairs(
        cartesian_product(a, c), cartesian_product(b, d), apex, pairs
    )


def epsilon_span(a: GSet) -> Span:
    """The Kronecker-delta span 1 <- A -> A x A from A x A to the point."""
    prod = cartesian_product(a, a)
    pairs = [(1, pair_index(a.n, i, i)) for i in a.points()]
    return span_from_leg_pairs(prod, one_point(a.group), a, pairs)


def eta_span(a: GSet) -> Span:
    """The reflection of epsilon_span: the span A x A <- A -> 1 from 1 to A x A."""
    prod = cartesian_product(a, a)
    pairs = [(pair_index(a.n, i, i), 1) for i in a.points()]
    return span_from_leg_pairs(one_point(a.group), prod, a, pairs)


def graph_span(f: GMap) -> Span:
    """The G-map f : A -> B as a span A -> B (apex A, legs f and the identity)."""
    pairs = [(f(i), i) for i in f.source.points()]
    return span_from_leg_pairs(f.source, f.target, f.source, pairs)


def reversed_graph_span(f: GMap) -> Span:
    """The wrong-way span B -> A carried by the graph of f : A -> B."""
    pairs = [(i, f(i)) for i in f.source.points()]
    return span_from_leg_pairs(f.target, f.source, f.source, pairs)


def span_iso(s: Span, t: Span) -> Optional[TwoCell]:
    """An equivariant bijection of apexes over tgt x src, if one exists.

    Orbits of the apexes are matched one at a time: an orbit with
    representative x, stabilizer S and leg value p maps onto an orbit of the
    other apex iff that orbit contains a point with stabilizer exactly S and
    leg value exactly p.  Matching is an equivalence on orbits, so greedy
    pairing with exact search inside each candidate is complete.
    """
    if s.src != t.src or s.tgt != t.tgt:
        raise ShapeError("spans must share both endpoints")
    if s.apex.n != t.apex.n:
        return None
    ds = orbit_decomposition(s.apex)
    dt = orbit_decomposition(t.apex)
    if len(ds.orbits) != len(dt.orbits):
        return None
    if sorted(ds.stabilizer_classes) != sorted(dt.stabilizer_classes):
        return None
    available = list(range(len(dt.orbits)))
    images = [0] * s.apex.n
    for k, orbit in enumerate(ds.orbits):
        stab = ds.stabilizers[k]
        legval = s.leg(ds.representatives[k])
        hit = None
        for pos, m in enumerate(available):
            if dt.stabilizer_classes[m] != ds.stabilizer_classes[k]:
                continue
            for q in dt.orbits[m]:
                if t.leg(q) == legval and point_stabilizer(t.apex, q) == stab:
                    hit = (pos, q)
                    break
            if hit:
                break
        if hit is None:
            return None
        pos, q = hit
        del available[pos]
        move = ds.transporters[k]
        for p in orbit:
            images[p - 1] = t.apex.action[move[p]](q)
    iso = GMap(s.apex, t.apex, tuple(images))
    return TwoCell(source=s, target=t, iso=iso)
