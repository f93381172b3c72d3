"""Floating-point checks for the explicit point-set duality maps on
representation spheres.

V is the real permutation representation spanned by the points of a G-set A.
A sphere point is a coordinate tuple or the point at infinity; a smash point
is a basepoint or a tuple of labels together with a sphere point.  All maps
are piecewise formulas built from a tubular-neighborhood radius d < 1/2 and
a homeomorphism rho: [0, inf) -> [0, d).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import DomainError, MalformedInputError
from .gsets import GSet


class _Infinity:
    def __repr__(self) -> str:
        return "INFINITY"


class _Basepoint:
    def __repr__(self) -> str:
        return "BASEPOINT"


INFINITY = _Infinity()
BASEPOINT = _Basepoint()

Vector = tuple[float, ...]
SpherePoint = Union[Vector, _Infinity]
# (labels, sphere coordinate); an empty label tuple is a plain sphere point
SmashPoint = Union[_Basepoint, tuple[tuple[int, ...], Vector]]


@dataclass(frozen=True)
class TubularParams:
    """Radius d and the homeomorphism rho(t) = d*t/(1+t) with inverse s/(d-s)."""

    d: float = 0.25

    def __post_init__(self) -> None:
        # distinct basis points are sqrt(2) apart, so d < 1/2 keeps the
        # tubular balls disjoint and the case analysis well-posed
        if not 0.0 < self.d < 0.5:
            raise MalformedInputError("tubular radius must satisfy 0 < d < 1/2")

    def rho(self, t: float) -> float:
        if t < 0:
            raise DomainError("rho needs a nonnegative argument")
        return self.d * t / (1.0 + t)

    def rho_inv(self, s: float) -> float:
        if s < 0 or s >= self.d:
            raise DomainError(f"rho_inv needs 0 <= s < {self.d}")
        return s / (self.d - s)


DEFAULT_TUBULAR = TubularParams()


def rho(t: float, params: TubularParams = DEFAULT_TUBULAR) -> float:
    return params.rho(t)


def rho_inv(s: float, params: TubularParams = DEFAULT_TUBULAR) -> float:
    return params.rho_inv(s)


def _norm(v: Vector) -> float:
    return math.sqrt(sum(x * x for x in v))


def _scaled_collapse(w: Vector, params: TubularParams) -> Vector:
    """(rho_inv(|w|)/|w|) w, with the removable singularity at 0 sent to 0."""
    r = _norm(w)
    if r == 0.0:
        return tuple(0.0 for _ in w)
    factor = params.rho_inv(r) / r
    return tuple(factor * x for x in w)


def _nearest_basis_point(a: GSet, v: Vector, params: TubularParams) -> Optional[int]:
    """The unique basis point within distance d of v, if any."""
    for i in range(a.n):
        w = list(v)
        w[i] -= 1.0
        if _norm(tuple(w)) < params.d:
            return i + 1
    return None


def act_vector(a: GSet, g: int, v: Vector) -> Vector:
    """The permutation action on coordinates: (g.v) at g*i equals v at i."""
    out = [0.0] * a.n
    perm = a.action[g]
    for i in range(1, a.n + 1):
        out[perm(i) - 1] = v[i - 1]
    return tuple(out)


def act_smash(gsets: Sequence[GSet], g: int, p: SmashPoint) -> SmashPoint:
    if p is BASEPOINT:
        return BASEPOINT
    labels, v = p
    if len(labels) != len(gsets) - 1:
        raise MalformedInputError("one G-set per label plus one for the sphere")
    moved = tuple(gs.action[g](x) for gs, x in zip(gsets, labels))
    return (moved, act_vector(gsets[-1], g, v))


def eta_space(a: GSet, v: SpherePoint, params: TubularParams = DEFAULT_TUBULAR) -> SmashPoint:
    """The Pontryagin-Thom collapse followed by the Thom diagonal.

    Lands in A_+ ^ A_+ ^ S^V: within the tube of a basis point the sphere
    coordinate is expanded by rho_inv; everywhere else the value is the
    basepoint.
    """
    if v is INFINITY:
        return BASEPOINT
    hit = _nearest_basis_point(a, v, params)
    if hit is None:
        return BASEPOINT
    w = list(v)
    w[hit - 1] -= 1.0
    return ((hit, hit), _scaled_collapse(tuple(w), params))


def eps_smash_id(a: GSet, p: SmashPoint) -> SmashPoint:
    """Collapse the two leading labels by the Kronecker delta."""
    if p is BASEPOINT:
        return BASEPOINT
    labels, v = p
    if len(labels) < 2:
        raise MalformedInputError("need at least two labels")
    if labels[0] != labels[1]:
        return BASEPOINT
    return (labels[2:], v)


def xi_space(a: GSet, p: SmashPoint, params: TubularParams = DEFAULT_TUBULAR) -> SmashPoint:
    """The wedge of per-summand collapse maps on A_+ ^ S^V.

    The sphere coordinate is tested against the label of its own wedge
    summand only.
    """
    if p is BASEPOINT:
        return BASEPOINT
    labels, v = p
    if len(labels) != 1:
        raise MalformedInputError("xi expects a single label")
    (lab,) = labels
    w = list(v)
    w[lab - 1] -= 1.0
    if _norm(tuple(w)) >= params.d:
        return BASEPOINT
    return ((lab,), _scaled_collapse(tuple(w), params))


def homotopy_h(
    a: GSet, p: SmashPoint, t: float, params: TubularParams = DEFAULT_TUBULAR
) -> SmashPoint:
    """The straight-line homotopy from the identity (t=0) to the collapse (t=1).

    The formula is taken verbatim: the first branch applies when t = 0 or the
    sphere coordinate sits exactly at the labelled basis point.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError("homotopy parameter must lie in [0, 1]")
    if p is BASEPOINT:
        return BASEPOINT
    labels, v = p
    if len(labels) != 1:
        raise MalformedInputError("h expects a single label")
    (lab,) = labels
    center = tuple(1.0 if i == lab else 0.0 for i in range(1, a.n + 1))
    if t == 0.0 or v == center:
        return ((lab,), v)
    w = tuple(x - c for x, c in zip(v, center))
    r = _norm(w)
    if t * r >= params.d:
        return BASEPOINT
    if r == 0.0:
        scaled = tuple(0.0 for _ in w)
    else:
        factor = params.rho_inv(t * r) / r
        scaled = tuple(factor * x for x in w)
    return ((lab,), tuple((1.0 - t) * x + t * s for x, s in zip(v, scaled)))


# -- discrepancy measurement -----------------------------------------------------


def smash_distance(p: SmashPoint, q: SmashPoint) -> float:
    """Euclidean distance; structural mismatches count as infinite."""
    if p is BASEPOINT and q is BASEPOINT:
        return 0.0
    if p is BASEPOINT or q is BASEPOINT:
        return math.inf
    (lp, vp), (lq, vq) = p, q
    if lp != lq or len(vp) != len(vq):
        return math.inf
    return _norm(tuple(x - y for x, y in zip(vp, vq)))


@dataclass(frozen=True)
class DiscrepancyReport:
    name: str
    samples: int
    max_discrepancy: float
    argmax: str
    seed: int

    def line(self) -> str:
        return (
            f"{self.name}: samples={self.samples} "
            f"max_discrepancy={self.max_discrepancy!r} seed={self.seed} "
            f"argmax={self.argmax}"
        )


def sample_sphere_point(
    a: GSet, rng: random.Random, params: TubularParams = DEFAULT_TUBULAR
) -> SpherePoint:
    """Mixture covering every branch: tubular balls, far field, exact centers,
    boundary shells, and the point at infinity."""
    n = a.n
    mode = rng.random()
    if n == 0:
        return INFINITY if mode < 0.5 else ()
    if mode < 0.05:
        return INFINITY
    center = rng.randrange(n)
    base = [0.0] * n
    if mode < 0.45:
        base[center] = 1.0
        radius = params.d * 1.5 * rng.random()
    elif mode < 0.55:
        base[center] = 1.0
        radius = 0.0 if rng.random() < 0.5 else params.d
    else:
        radius = 3.0 * rng.random()
    direction = [rng.gauss(0.0, 1.0) for _ in range(n)]
    dn = _norm(tuple(direction))
    if dn == 0.0:
        direction = [1.0] + [0.0] * (n - 1)
        dn = 1.0
    return tuple(b + radius * d / dn for b, d in zip(base, direction))


def _label(a: GSet, rng: random.Random) -> int:
    return rng.randint(1, a.n)


def check_unit_diagram_left(
    b: GSet,
    a: GSet,
    samples: int,
    seed: int,
    params: TubularParams = DEFAULT_TUBULAR,
) -> tuple[DiscrepancyReport, DiscrepancyReport]:
    """Both strictly-commuting unit diagrams, evaluated pointwise.

    Left: on B_+ ^ A_+ ^ S^{R[A]} compare (id ^ eps ^ id) o (id ^ eta_A)
    with id ^ xi_A.  Right: on B_+ ^ A_+ ^ S^{R[B]} compare the symmetric
    composite through eta_B with xi_B ^ id.  Reports the maximum pointwise
    distance; any basepoint-versus-vector disagreement is infinite.
    """
    rng = random.Random(seed)
    worst_l = (0.0, "none")
    worst_r = (0.0, "none")
    count = 0
    for _ in range(samples):
        count += 1
        # left diagram: sphere coordinate in R[A]
        if b.n == 0 or a.n == 0:
            pass
        else:
            lb, la = _label(b, rng), _label(a, rng)
            v = sample_sphere_point(a, rng, params)
            if v is INFINITY:
                point: SmashPoint = BASEPOINT
            else:
                point = ((lb, la), v)
            if point is BASEPOINT:
                leg1: SmashPoint = BASEPOINT
                leg2: SmashPoint = BASEPOINT
            else:
                et = eta_space(a, v, params)
                if et is BASEPOINT:
                    leg1 = BASEPOINT
                else:
                    (a1, a2), w = et
                    leg1 = eps_smash_id(a, ((la, a1, a2, lb), w))
                    if leg1 is not BASEPOINT:
                        (rest, wv) = leg1
                        leg1 = ((lb, rest[0]), wv)
                x = xi_space(a, ((la,), v), params)
                leg2 = BASEPOINT if x is BASEPOINT else (((lb,) + x[0]), x[1])
            dist = smash_distance(leg1, leg2)
            if dist > worst_l[0]:
                worst_l = (dist, repr(point))
        # right diagram: sphere coordinate in R[B]
        if b.n == 0 or a.n == 0:
            continue
        lb, la = _label(b, rng), _label(a, rng)
        v = sample_sphere_point(b, rng, params)
        if v is INFINITY:
            point = BASEPOINT
        else:
            point = ((lb, la), v)
        if point is BASEPOINT:
            leg1 = BASEPOINT
            leg2 = BASEPOINT
        else:
            et = eta_space(b, v, params)
            if et is BASEPOINT:
                leg1 = BASEPOINT
            else:
                (b1, b2), w = et
                leg1 = eps_smash_id(b, ((b2, lb, b1, la), w))
                if leg1 is not BASEPOINT:
                    (rest, wv) = leg1
                    leg1 = ((rest[0], la), wv)
            x = xi_space(b, ((lb,), v), params)
            leg2 = BASEPOINT if x is BASEPOINT else ((x[0][0], la), x[1])
        dist = smash_distance(leg1, leg2)
        if dist > worst_r[0]:
            worst_r = (dist, repr(point))
    left = DiscrepancyReport("unit-diagram-left", count, worst_l[0], worst_l[1], seed)
    right = DiscrepancyReport("unit-diagram-right", count, worst_r[0], worst_r[1], seed)
    return left, right


EQUIVARIANCE_MAPS = ("eta", "xi", "eps", "h")


def check_equivariance(
    map_name: str,
    a: GSet,
    samples: int,
    seed: int,
    params: TubularParams = DEFAULT_TUBULAR,
    t: float = 0.5,
) -> DiscrepancyReport:
    """Compare f(g.p) with g.f(p) over sampled points and all group elements."""
    if map_name not in EQUIVARIANCE_MAPS:
        raise MalformedInputError(f"unknown map {map_name!r}")
    rng = random.Random(seed)
    group = a.group
    worst = (0.0, "none")
    count = 0
    for _ in range(samples):
        count += 1
        v = sample_sphere_point(a, rng, params)
        for g in range(group.order):
            if map_name == "eta":
                if v is INFINITY:
                    moved: SpherePoint = INFINITY
                else:
                    moved = act_vector(a, g, v)
                lhs = eta_space(a, moved, params)
                rhs = act_smash((a, a, a), g, eta_space(a, v, params))
            else:
                if a.n == 0:
                    continue
                lab = _label(a, rng)
                p: SmashPoint = BASEPOINT if v is INFINITY else ((lab,), v)
                if map_name == "xi":
                    lhs = xi_space(a, act_smash((a, a), g, p), params)
                    rhs = act_smash((a, a), g, xi_space(a, p, params))
                elif map_name == "h":
                    lhs = homotopy_h(a, act_smash((a, a), g, p), t, params)
                    rhs = act_smash((a, a), g, homotopy_h(a, p, t, params))
                else:  # eps on A_+ ^ A_+ ^ S^V
                    lab2 = _label(a, rng)
                    q: SmashPoint = BASEPOINT if v is INFINITY else ((lab, lab2), v)
                    lhs = eps_smash_id(a, act_smash((a, a, a), g, q))
                    rhs = act_smash((a,), g, eps_smash_id(a, q))
            dist = smash_distance(lhs, rhs)
            if dist > worst[0]:
                worst = (dist, f"g={g} p={v!r}")
    return DiscrepancyReport(f"equivariance-{map_name}", count, worst[0], worst[1], seed)
