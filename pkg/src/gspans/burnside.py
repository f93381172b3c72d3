"""The additive Burnside category: span classes, hom groups, marks, duality.

A span with transitive apex is classified by a pair (c, q): the conjugacy
class c of a point stabilizer and the image in tgt x src of the orbit
representative, conjugated so the stabilizer is the class representative K
and then minimized over the normalizer of K.  Multisets of such labels
classify arbitrary spans; integer combinations of single-label classes form
the hom groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import ShapeError
from .gsets import (
    GMap,
    GSet,
    cartesian_product,
    fixed_points,
    one_point,
    orbit_decomposition,
    orbit_gset,
    pair_index,
)
from .groups import FiniteGroup
from .spans import (
    Span,
    compose_spans,
    eta_span,
    epsilon_span,
    graph_span,
    id_span,
    span_external,
    span_from_leg_pairs,
)

Label = tuple[int, int]


@dataclass(frozen=True)
class SpanClass:
    """The isomorphism class of a span, keyed by its multiset of orbit labels."""

    src: GSet
    tgt: GSet
    invariant: tuple[Label, ...]
    representative: Span = field(compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        if list(self.invariant) != sorted(self.invariant):
            raise ShapeError("invariant must be sorted")

    def is_indecomposable(self) -> bool:
        return len(self.invariant) == 1


@dataclass(frozen=True)
class MarksVector:
    """One integer per subgroup conjugacy class."""

    values: tuple[int, ...]

    def __mul__(self, other: "MarksVector") -> "MarksVector":
        return MarksVector(tuple(a * b for a, b in zip(self.values, other.values)))


class BurnsideElt:
    """An integer combination of indecomposable span classes from src to tgt."""

    __slots__ = ("src", "tgt", "coefficients")

    def __init__(self, src: GSet, tgt: GSet, coefficients: Mapping[SpanClass, int]):
        self.src = src
        self.tgt = tgt
        self.coefficients = {c: k for c, k in coefficients.items() if k != 0}
        for c in self.coefficients:
            if c.src != src or c.tgt != tgt:
                raise ShapeError("basis class endpoint mismatch")
            if not c.is_indecomposable():
                raise ShapeError("coefficients must live on indecomposable classes")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BurnsideElt)
            and self.src == other.src
            and self.tgt == other.tgt
            and self.coefficients == other.coefficients
        )

    def __add__(self, other: "BurnsideElt") -> "BurnsideElt":
        if self.src != other.src or self.tgt != other.tgt:
            raise ShapeError("cannot add morphisms with different endpoints")
        out = dict(self.coefficients)
        for c, k in other.coefficients.items():
            out[c] = out.get(c, 0) + k
        return BurnsideElt(self.src, self.tgt, out)

    def __neg__(self) -> "BurnsideElt":
        return BurnsideElt(
            self.src, self.tgt, {c: -k for c, k in self.coefficients.items()}
        )

    def __sub__(self, other: "BurnsideElt") -> "BurnsideElt":
        return self + (-other)

    def scale(self, k: int) -> "BurnsideElt":
        return BurnsideElt(
            self.src, self.tgt, {c: k * v for c, v in self.coefficients.items()}
        )

    def is_zero(self) -> bool:
        return not self.coefficients

    def terms(self) -> list[tuple[SpanClass, int]]:
        return sorted(self.coefficients.items(), key=lambda t: t[0].invariant)

    def __repr__(self) -> str:
        if not self.coefficients:
            return "BurnsideElt(0)"
        parts = [f"{k}*{c.invariant[0]}" for c, k in self.terms()]
        return "BurnsideElt(" + " + ".join(parts) + ")"


def zero_elt(a: GSet, b: GSet) -> BurnsideElt:
    return BurnsideElt(a, b, {})


# -- canonical labels ---------------------------------------------------------


def _orbit_labels(s: Span) -> list[Label]:
    """One (stabilizer class, canonical point) label per apex orbit."""
    group = s.group
    dec = orbit_decomposition(s.apex)
    prod = s.leg.target
    labels = []
    for k in range(len(dec.orbits)):
        stab = dec.stabilizers[k]
        c = dec.stabilizer_classes[k]
        g0 = group.conjugator_to_class_rep(stab)
        q0 = prod.action[g0](s.leg(dec.representatives[k]))
        qstar = min(prod.action[w](q0) for w in group.normalizer(c))
        labels.append((c, qstar))
    return labels


def span_class(s: Span) -> SpanClass:
    return SpanClass(
        src=s.src, tgt=s.tgt, invariant=tuple(sorted(_orbit_labels(s))), representative=s
    )


def _basis_representative(a: GSet, b: GSet, label: Label) -> Span:
    """The coset span G/K -> b x a through the canonical point of a label."""
    group = a.group
    c, q = label
    cls = group.subgroup_classes()[c]
    apex = orbit_gset(group, cls)
    prod = cartesian_product(b, a)
    # coset i corresponds to min-element transporter g_i with g_i K = coset
    cosets = []
    seen = set()
    for g in range(group.order):
        if g in seen:
            continue
        coset = frozenset(group.mul(g, x) for x in cls.indices)
        cosets.append(min(coset))
        seen.update(coset)
    cosets.sort()
    images = tuple(prod.action[g](q) for g in cosets)
    leg = GMap(apex, prod, images)
    return Span(src=a, tgt=b, apex=apex, leg=leg)


def basis_class(a: GSet, b: GSet, label: Label) -> SpanClass:
    return SpanClass(
        src=a,
        tgt=b,
        invariant=(label,),
        representative=_basis_representative(a, b, label),
    )


@lru_cache(maxsize=None)
def hom_basis(a: GSet, b: GSet) -> tuple[SpanClass, ...]:
    """All classes of transitive-apex spans a -> b, in canonical order."""
    if a.group != b.group:
        raise ShapeError("endpoints live over different groups")
    group = a.group
    prod = cartesian_product(b, a)
    out = []
    for cls in group.subgroup_classes():
        fix = set(fixed_points(prod, cls))
        norm = group.normalizer(cls.index)
        while fix:
            q = min(fix)
            orbit = {prod.action[w](q) for w in norm}
            fix -= orbit
            out.append((cls.index, min(orbit)))
    out.sort()
    return tuple(basis_class(a, b, label) for label in out)


def decompose_span(s: Span) -> BurnsideElt:
    coeffs: dict[SpanClass, int] = {}
    for label in _orbit_labels(s):
        cls = basis_class(s.src, s.tgt, label)
        coeffs[cls] = coeffs.get(cls, 0) + 1
    return BurnsideElt(s.src, s.tgt, coeffs)


def identity_elt(a: GSet) -> BurnsideElt:
    return decompose_span(id_span(a))


def compose_elts(y: BurnsideElt, x: BurnsideElt) -> BurnsideElt:
    """Bilinear extension of pullback composition: y : B -> C after x : A -> B."""
    if y.src != x.tgt:
        raise ShapeError("middle objects do not match")
    out = zero_elt(x.src, y.tgt)
    for cy, ky in y.coefficients.items():
        for cx, kx in x.coefficients.items():
            comp = compose_spans(cy.representative, cx.representative)
            out = out + decompose_span(comp).scale(ky * kx)
    return out


# -- the Burnside ring and marks ----------------------------------------------


@dataclass(frozen=True)
class BurnsideRing:
    """End(1) with its multiplication table in the canonical basis."""

    group: FiniteGroup
    basis: tuple[SpanClass, ...]
    table: tuple[tuple[tuple[int, ...], ...], ...]
    unit_index: int

    def multiply(self, i: int, j: int) -> tuple[int, ...]:
        return self.table[i][j]


def _coeff_vector(x: BurnsideElt, basis: tuple[SpanClass, ...]) -> tuple[int, ...]:
    vec = tuple(x.coefficients.get(c, 0) for c in basis)
    if sum(abs(v) for v in vec) != sum(abs(v) for v in x.coefficients.values()):
        raise ShapeError("element does not lie in the span of the given basis")
    return vec


def burnside_ring(group: FiniteGroup) -> BurnsideRing:
    pt = one_point(group)
    basis = hom_basis(pt, pt)
    table = []
    for bi in basis:
        row = []
        ei = BurnsideElt(pt, pt, {bi: 1})
        for bj in basis:
            ej = BurnsideElt(pt, pt, {bj: 1})
            row.append(_coeff_vector(compose_elts(ei, ej), basis))
        table.append(tuple(row))
    unit = identity_elt(pt)
    (unit_class,) = unit.coefficients
    return BurnsideRing(
        group=group,
        basis=basis,
        table=tuple(table),
        unit_index=basis.index(unit_class),
    )


def table_of_marks(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """m[K][H] = number of H-fixed points of G/K, classes in canonical order."""
    classes = group.subgroup_classes()
    rows = []
    for k in classes:
        orbit = orbit_gset(group, k)
        rows.append(tuple(len(fixed_points(orbit, h)) for h in classes))
    return tuple(rows)


def marks_of(x: BurnsideElt) -> MarksVector:
    group = x.src.group
    pt = one_point(group)
    if x.src != pt or x.tgt != pt:
        raise ShapeError("marks are defined on End(1) only")
    classes = group.subgroup_classes()
    total = [0] * len(classes)
    for cls, k in x.coefficients.items():
        apex = cls.representative.apex
        for j, h in enumerate(classes):
            total[j] += k * len(fixed_points(apex, h))
    return MarksVector(tuple(total))


# -- duality -------------------------------------------------------------------


def dual_of_gmap(f: GMap) -> BurnsideElt:
    """The dual of f : A -> B, evaluated as (eps ^ id) o (id ^ f ^ id) o (id ^ eta).

    The result is a morphism B -> A; for an inclusion it is the class of the
    retraction span, and for an orbit projection the transfer.
    """
    a, b = f.source, f.target
    first = span_external(id_span(b), eta_span(a))
    middle = span_external(id_span(b), span_external(graph_span(f), id_span(a)))
    last = span_external(epsilon_span(b), id_span(a))
    composite = compose_spans(last, compose_spans(middle, first))
    return decompose_span(composite)


def presheaf_at_orbits(b: GSet) -> tuple[int, ...]:
    """Rank of the hom group (G/H, b) for every subgroup class H, in order."""
    group = b.group
    return tuple(
        len(hom_basis(orbit_gset(group, cls), b))
        for cls in group.subgroup_classes()
    )
