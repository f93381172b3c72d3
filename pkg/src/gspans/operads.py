"""The categorical operad over a finite group and its free algebras.

An operad object of arity j is a function from the group to degree-j
permutations (the hom categories are chaotic, so objects carry all the
structure).  A free-algebra object over a G-set A is a canonical
representative of a class (op; a_1..a_n) modulo the symmetric group; the
canonical form is basepoint-free and minimizes, slot by slot, the pair
(tuple entry, operad column at that slot).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import MalformedInputError, NotFixedError, ShapeError
from .gsets import (
    GMap,
    GSet,
    cartesian_product,
    one_point,
    pair_index,
    triple_product,
    unpair_index,
)
from .groups import FiniteGroup, Perm

BASEPOINT = 0

# default cap on levels produced by random generation and CLI fuzzing;
# core operations themselves are not restricted
DEFAULT_MAX_LEVEL = 12


# -- symmetric group block calculus -------------------------------------------


def block_sum(perms: Sequence[Perm]) -> Perm:
    images: list[int] = []
    offset = 0
    for p in perms:
        images.extend(v + offset for v in p.images)
        offset += p.degree
    return Perm(tuple(images))


def block_perm(sigma: Perm, sizes: Sequence[int]) -> Perm:
    """The permutation moving blocks of the given sizes as sigma moves letters."""
    k = sigma.degree
    if len(sizes) != k:
        raise ShapeError("one block size per letter")
    in_off = [0] * k
    for i in range(1, k):
        in_off[i] = in_off[i - 1] + sizes[i - 1]
    # output slot m receives the block sigma^{-1}(m)
    inv = sigma.inverse()
    out_off = [0] * (k + 1)
    for m in range(1, k + 1):
        out_off[m] = out_off[m - 1] + sizes[inv(m) - 1]
    images = [0] * sum(sizes)
    for i in range(1, k + 1):
        dest = out_off[sigma(i) - 1]
        src = in_off[i - 1]
        for r in range(sizes[i - 1]):
            images[src + r] = dest + r + 1
    return Perm(tuple(images))


def gamma_sym(sigma: Perm, taus: Sequence[Perm]) -> Perm:
    """Operad substitution in symmetric groups: block permutation after block sum."""
    if len(taus) != sigma.degree:
        raise ShapeError(f"gamma needs {sigma.degree} inputs, got {len(taus)}")
    sizes = [t.degree for t in taus]
    return block_perm(sigma, sizes) * block_sum(taus)


def omega_sym(sigma: Perm, tau: Perm) -> Perm:
    """The block pairing Sigma_m x Sigma_n -> Sigma_mn.

    Pairs (i, j) are identified with integers (j-1)m + i, second coordinate
    major.  With this identification substitution into the first factor
    commutes with the pairing on the nose, which is what the composition
    and duality identities downstream rely on.
    """
    m = sigma.degree
    images = [0] * (m * tau.degree)
    for i in range(1, m + 1):
        si = sigma(i)
        for j in range(1, tau.degree + 1):
            images[(j - 1) * m + i - 1] = (tau(j) - 1) * m + si
    return Perm(tuple(images))


def delete_slot(sigma: Perm, i: int) -> Perm:
    """Restrict along the ordered inclusion missing input slot i."""
    n = sigma.degree
    if not 1 <= i <= n:
        raise MalformedInputError(f"slot {i} outside 1..{n}")
    gone = sigma(i)
    images = []
    for j in range(1, n + 1):
        if j == i:
            continue
        v = sigma(j)
        images.append(v - 1 if v > gone else v)
    return Perm(tuple(images))


def drei_shuffle(m: int, n: int, q: int) -> Perm:
    """The coordinate-matching permutation between the two composites
    gamma(omega(mu,nu); alpha^{mq}) and omega(gamma(mu;alpha^m), nu).

    Positions of the first composite: block (i,k) of omega(mu,nu) in slot
    order, then j within the block.  Positions of the second: slot (i,j) of
    gamma(mu;alpha^m), paired with k.  Matching the (i,j,k) coordinates of
    the two enumerations yields the mediating permutation; under the
    second-coordinate-major pairing the two enumerations coincide, so the
    permutation is the identity, computed here rather than assumed.
    """
    images = [0] * (m * n * q)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            for k in range(1, q + 1):
                left_pos = ((k - 1) * m + i - 1) * n + j
                right_pos = (k - 1) * m * n + (i - 1) * n + j
                images[right_pos - 1] = left_pos
    return Perm(tuple(images))


# -- operad objects ------------------------------------------------------------


@dataclass(frozen=True)
class OperadObj:
    """An object of the arity-j operad category: a function G -> Sigma_j."""

    group: FiniteGroup
    arity: int
    values: tuple[Perm, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.group.order:
            raise MalformedInputError("need one permutation per group element")
        for p in self.values:
            if p.degree != self.arity:
                raise MalformedInputError("value has wrong degree")

    def value(self, g: int) -> Perm:
        return self.values[g]

    def table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(p.images for p in self.values)


def constant_operad_obj(group: FiniteGroup, sigma: Perm) -> OperadObj:
    return OperadObj(group, sigma.degree, tuple(sigma for _ in range(group.order)))


def operad_obj_from_action(a: GSet) -> OperadObj:
    """A G-set's action homomorphism, viewed as a G-fixed operad object."""
    return OperadObj(a.group, a.n, a.action)


def operad_action(g: int, x: OperadObj) -> OperadObj:
    """The left G-action: (g . x)(h) = x(hg)."""
    grp = x.group
    return OperadObj(
        grp, x.arity, tuple(x.values[grp.mul(h, g)] for h in range(grp.order))
    )


def operad_sigma_action(x: OperadObj, sigma: Perm) -> OperadObj:
    """The right symmetric-group action: (x . sigma)(h) = x(h) o sigma."""
    if sigma.degree != x.arity:
        raise ShapeError("permutation degree must equal the arity")
    return OperadObj(x.group, x.arity, tuple(p * sigma for p in x.values))


def operad_gamma(x: OperadObj, ys: Sequence[OperadObj]) -> OperadObj:
    """Pointwise operad substitution."""
    if len(ys) != x.arity:
        raise ShapeError(f"gamma needs {x.arity} inputs, got {len(ys)}")
    for y in ys:
        if y.group != x.group:
            raise ShapeError("operad objects live over different groups")
    arity = sum(y.arity for y in ys)
    values = tuple(
        gamma_sym(x.values[g], [y.values[g] for y in ys])
        for g in range(x.group.order)
    )
    return OperadObj(x.group, arity, values)


def sigma_i(x: OperadObj, i: int) -> OperadObj:
    """The degeneracy deleting input slot i (pointwise slot deletion)."""
    if not 1 <= i <= x.arity:
        raise MalformedInputError(f"slot {i} outside 1..{x.arity}")
    return OperadObj(
        x.group, x.arity - 1, tuple(delete_slot(p, i) for p in x.values)
    )


def omega_pair(x: OperadObj, y: OperadObj) -> OperadObj:
    """Pointwise lexicographic pairing of operad objects."""
    if x.group != y.group:
        raise ShapeError("operad objects live over different groups")
    values = tuple(
        omega_sym(x.values[g], y.values[g]) for g in range(x.group.order)
    )
    return OperadObj(x.group, x.arity * y.arity, values)


# -- free algebra objects -------------------------------------------------------


@dataclass(frozen=True)
class FreeAlgObj:
    """A canonical representative of an object of the free algebra over a G-set."""

    over: GSet
    op: OperadObj
    points: tuple[int, ...]

    @property
    def level(self) -> int:
        return len(self.points)

    def key(self) -> tuple:
        return (self.points, self.op.table())

    def __repr__(self) -> str:
        return f"FreeAlgObj(level={self.level}, points={self.points})"


def normalize(over: GSet, op: OperadObj, points: Sequence[int]) -> FreeAlgObj:
    """Delete basepoint slots (rightmost first), then pick the minimal
    symmetric-group representative.

    The minimized key lists, slot by slot, the tuple entry followed by the
    operad values at that slot, so sorting the slots by that column realizes
    the full lexicographic minimum over all permutations.
    """
    pts = list(points)
    if len(pts) != op.arity:
        raise ShapeError("tuple length must equal the operad arity")
    for a in pts:
        if a != BASEPOINT and not 1 <= a <= over.n:
            raise MalformedInputError(f"point {a} outside the carrier")
    for i in range(len(pts), 0, -1):
        if pts[i - 1] == BASEPOINT:
            op = sigma_i(op, i)
            del pts[i - 1]
    n = len(pts)
    order = sorted(
        range(1, n + 1),
        key=lambda p: (pts[p - 1], tuple(v(p) for v in op.values)),
    )
    sigma = Perm(tuple(order))
    new_points = tuple(pts[p - 1] for p in order)
    return FreeAlgObj(over, operad_sigma_action(op, sigma), new_points)


def act_free(g: int, x: FreeAlgObj) -> FreeAlgObj:
    """The diagonal G-action on canonical forms."""
    moved = tuple(x.over.action[g](a) for a in x.points)
    return normalize(x.over, operad_action(g, x.op), moved)


def is_fixed(x: FreeAlgObj) -> bool:
    return all(
        act_free(g, x) == x for g in range(1, x.over.group.order)
    )


def level_zero(over: GSet) -> FreeAlgObj:
    group = over.group
    op = OperadObj(group, 0, tuple(Perm(()) for _ in range(group.order)))
    return FreeAlgObj(over, op, ())


def unit_obj(a: GSet) -> FreeAlgObj:
    """The unit (alpha; (1,1),...,(n,n)) of the endomorphism category of A."""
    prod = cartesian_product(a, a)
    diag = tuple(pair_index(a.n, i, i) for i in a.points())
    return normalize(prod, operad_obj_from_action(a), diag)


# -- based maps and functorialities ---------------------------------------------


@dataclass(frozen=True)
class BasedMap:
    """A based G-map source_+ -> target_+; image 0 is the basepoint."""

    source: GSet
    target: GSet
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source.group != self.target.group:
            raise ShapeError("based map endpoints over different groups")
        if len(self.images) != self.source.n:
            raise MalformedInputError("image tuple has wrong length")
        for v in self.images:
            if not 0 <= v <= self.target.n:
                raise MalformedInputError(f"image {v} outside 0..{self.target.n}")
        grp = self.source.group
        for gi in grp.generator_indices:
            a = self.source.action[gi]
            b = self.target.action[gi]
            for i in range(1, self.source.n + 1):
                lhs = self.images[a(i) - 1]
                v = self.images[i - 1]
                rhs = 0 if v == 0 else b(v)
                if lhs != rhs:
                    raise MalformedInputError("based map is not equivariant")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @staticmethod
    def from_gmap(f: GMap) -> "BasedMap":
        return BasedMap(f.source, f.target, f.images)


def f_lower(f: BasedMap, x: FreeAlgObj) -> FreeAlgObj:
    """Covariant functoriality: apply f to every tuple entry, then normalize."""
    if x.over != f.source:
        raise ShapeError("object does not live over the map's source")
    return normalize(f.target, x.op, tuple(f(a) for a in x.points))


def i_upper(i: GMap, y: FreeAlgObj) -> FreeAlgObj:
    """Contravariant functoriality along an injection, via its retraction."""
    if not i.is_injective():
        raise MalformedInputError("i_upper needs an injective map")
    if y.over != i.target:
        raise ShapeError("object does not live over the injection's target")
    r = [0] * i.target.n
    for a in i.source.points():
        r[i(a) - 1] = a
    return f_lower(BasedMap(i.target, i.source, tuple(r)), y)


# -- pairing, composition, duality maps ------------------------------------------


def omega_obj(x: FreeAlgObj, y: FreeAlgObj) -> FreeAlgObj:
    """The pairing of free algebras on objects, over the product G-set.

    Tuple slots follow the pairing's second-coordinate-major order; the
    entries themselves are points of the lexicographic product carrier.
    """
    over = cartesian_product(x.over, y.over)
    points = []
    for b in y.points:
        for a in x.points:
            points.append((a - 1) * y.over.n + b)
    return normalize(over, omega_pair(x.op, y.op), tuple(points))


def _delta_injection(c: GSet, b: GSet, a: GSet) -> GMap:
    """id x Delta x id : C x B x A -> C x B x B x A."""
    cba = cartesian_product(cartesian_product(c, b), a)
    cbba = cartesian_product(cartesian_product(cartesian_product(c, b), b), a)
    images = []
    for ci in c.points():
        for bi in b.points():
            for ai in a.points():
                idx = pair_index(
                    a.n, pair_index(b.n, pair_index(b.n, ci, bi), bi), ai
                )
                images.append(idx)
    return GMap(cba, cbba, tuple(images))


def _projection_map(c: GSet, b: GSet, a: GSet) -> BasedMap:
    """pi : C x B x A -> C x A as a based map."""
    cba = cartesian_product(cartesian_product(c, b), a)
    ca = cartesian_product(c, a)
    images = []
    for ci in c.points():
        for _ in b.points():
            for ai in a.points():
                images.append(pair_index(a.n, ci, ai))
    return BasedMap(cba, ca, tuple(images))


def ealg_compose(
    x: FreeAlgObj, y: FreeAlgObj, c: GSet, b: GSet, a: GSet
) -> FreeAlgObj:
    """Composition in the free-algebra category: pairing, then (id x Delta x id)^*,
    then projection pushforward.  x lives over C x B and y over B x A."""
    if x.over != cartesian_product(c, b):
        raise ShapeError("x must live over C x B")
    if y.over != cartesian_product(b, a):
        raise ShapeError("y must live over B x A")
    paired = omega_obj(x, y)
    pulled = i_upper(_delta_injection(c, b, a), paired)
    return f_lower(_projection_map(c, b, a), pulled)


def based_eps(a: GSet) -> BasedMap:
    """The Kronecker delta (x, y) -> 1 if x == y else basepoint."""
    prod = cartesian_product(a, a)
    images = []
    for x in a.points():
        for y in a.points():
            images.append(1 if x == y else 0)
    return BasedMap(prod, one_point(a.group), tuple(images))


def based_id_eps(a: GSet) -> BasedMap:
    """A x A x A -> A keeping the first coordinate when the last two agree."""
    p3 = triple_product(a)
    images = []
    for x in a.points():
        for y in a.points():
            for z in a.points():
                images.append(x if y == z else 0)
    return BasedMap(p3, a, tuple(images))


def based_eps_id(a: GSet) -> BasedMap:
    """A x A x A -> A keeping the last coordinate when the first two agree."""
    p3 = triple_product(a)
    images = []
    for x in a.points():
        for y in a.points():
            for z in a.points():
                images.append(z if x == y else 0)
    return BasedMap(p3, a, tuple(images))


def eps_alg(x: FreeAlgObj, a: GSet) -> FreeAlgObj:
    """Pushforward along the Kronecker delta; x lives over A x A."""
    if x.over != cartesian_product(a, a):
        raise ShapeError("eps needs an object over A x A")
    return f_lower(based_eps(a), x)


def eta_alg(a: GSet, x: FreeAlgObj) -> FreeAlgObj:
    """The free coevaluation: substitute the unit object for each slot of an
    object over the point."""
    if x.over != one_point(a.group):
        raise ShapeError("eta needs an object over the point")
    alpha = operad_obj_from_action(a)
    op = operad_gamma(x.op, [alpha] * x.level)
    diag = tuple(pair_index(a.n, i, i) for i in a.points())
    return normalize(cartesian_product(a, a), op, diag * x.level)


def _zeta(a: GSet, x: FreeAlgObj, left: bool) -> FreeAlgObj:
    if x.over != a:
        raise ShapeError("zeta needs an object over A")
    n = a.n
    alpha = operad_obj_from_action(a)
    op = operad_gamma(x.op, [alpha] * x.level)
    points = []
    for v in x.points:
        for i in a.points():
            if left:
                points.append(pair_index(n, pair_index(n, i, i), v))
            else:
                points.append(pair_index(n, pair_index(n, v, i), i))
    return normalize(triple_product(a), op, tuple(points))


def zeta_left(a: GSet, x: FreeAlgObj) -> FreeAlgObj:
    """The free extension of a -> (alpha; (1,1,a),...,(n,n,a))."""
    return _zeta(a, x, left=True)


def zeta_right(a: GSet, x: FreeAlgObj) -> FreeAlgObj:
    """The free extension of a -> (alpha; (a,1,1),...,(a,n,n))."""
    return _zeta(a, x, left=False)


# -- fixed objects and finite G-sets over A --------------------------------------


def gmap_to_fixed(p: GMap) -> FreeAlgObj:
    """A finite G-set over A, (B, p), as a G-fixed object of level |B|."""
    b = p.source
    return normalize(p.target, operad_obj_from_action(b), p.images)


def fixed_to_gmap(x: FreeAlgObj) -> GMap:
    """Interpret a G-fixed object as a G-map B -> A.

    For a fixed class the translation data sigma_g = op(e)^{-1} op(g) is
    forced, beta(h) = op(h) op(e)^{-1} is then a homomorphism, and the
    representative (beta; tuple o op(e)^{-1}) has an equivariant tuple.
    """
    grp = x.over.group
    op = x.op
    n = x.level
    e_inv = op.values[0].inverse()
    for g in range(grp.order):
        sg = e_inv * op.values[g]
        for h in range(grp.order):
            if (op.values[grp.mul(h, g)]).images != (op.values[h] * sg).images:
                raise NotFixedError("operad part admits no translation data")
        for j in range(1, n + 1):
            if x.over.action[g](x.points[j - 1]) != x.points[sg(j) - 1]:
                raise NotFixedError("tuple is not equivariant")
    beta = [op.values[h] * e_inv for h in range(grp.order)]
    points = tuple(x.points[e_inv(j) - 1] for j in range(1, n + 1))
    source = GSet(grp, n, beta)
    return GMap(source, x.over, points)


# -- enumeration helpers used by verification -------------------------------------


def action_homomorphisms(group: FiniteGroup, n: int) -> list[tuple[Perm, ...]]:
    """All homomorphisms G -> Sigma_n, as full value tables."""
    if n == 0:
        empty = Perm(())
        return [tuple(empty for _ in range(group.order))]
    perms = _all_perms(n)
    gens = group.generator_indices
    if not gens:
        return [tuple(Perm.identity(n) for _ in range(group.order))]
    out = []
    stack: list[list[Perm]] = [[]]
    while stack:
        partial = stack.pop()
        if len(partial) == len(gens):
            table = _extend_generator_table(group, n, partial)
            if table is not None:
                out.append(table)
            continue
        for p in perms:
            stack.append(partial + [p])
    out.sort(key=lambda t: tuple(p.images for p in t))
    return out


def _all_perms(n: int) -> list[Perm]:
    import itertools

    return [Perm(t) for t in itertools.permutations(range(1, n + 1))]


def _extend_generator_table(
    group: FiniteGroup, n: int, gen_perms: Sequence[Perm]
) -> Optional[tuple[Perm, ...]]:
    table: list[Optional[Perm]] = [None] * group.order
    table[0] = Perm.identity(n)
    for k in range(1, group.order):
        i, j = group.parents[k]
        prev = table[j]
        assert prev is not None
        table[k] = gen_perms[i] * prev
    full = [p for p in table if p is not None]
    for gi, gidx in enumerate(group.generator_indices):
        for j in range(group.order):
            if full[group.mul(gidx, j)].images != (gen_perms[gi] * full[j]).images:
                return None
    return tuple(full)


def fixed_objects_at_level(a: GSet, n: int) -> list[FreeAlgObj]:
    """All G-fixed canonical objects of the given level over A."""
    group = a.group
    out = []
    for table in action_homomorphisms(group, n):
        beta = GSet(group, n, table, validate=False)
        for pts in _equivariant_tuples(beta, a):
            out.append(gmap_to_fixed(GMap(beta, a, pts)))
    seen = set()
    unique = []
    for x in out:
        if x.key() not in seen:
            seen.add(x.key())
            unique.append(x)
    return unique


def _equivariant_tuples(b: GSet, a: GSet):
    """All equivariant maps b -> a, enumerated orbitwise."""
    from .gsets import fixed_points, orbit_decomposition

    dec = orbit_decomposition(b)
    choices = []
    for k in range(len(dec.orbits)):
        stab = dec.stabilizers[k]
        targets = fixed_points(a, stab)
        choices.append(targets)
    import itertools

    for combo in itertools.product(*choices):
        images = [0] * b.n
        for k, target in enumerate(combo):
            move = dec.transporters[k]
            for p in dec.orbits[k]:
                images[p - 1] = a.action[move[p]](target)
        yield tuple(images)


def fixed_iso(x: FreeAlgObj, y: FreeAlgObj) -> Optional[Perm]:
    """A G-fixed isomorphism between fixed objects, as a slot bijection.

    In homomorphism form the data is a permutation intertwining the two
    operad homomorphisms and carrying one tuple to the other.
    """
    if x.over != y.over or x.level != y.level:
        return None
    fx, fy = fixed_to_gmap(x), fixed_to_gmap(y)
    import itertools

    n = x.level
    grp = x.over.group
    for imgs in itertools.permutations(range(1, n + 1)):
        sigma = Perm(imgs)
        if any(fy.images[sigma(j) - 1] != fx.images[j - 1] for j in range(1, n + 1)):
            continue
        if all(
            (fy.source.action[g] * sigma).images == (sigma * fx.source.action[g]).images
            for g in range(grp.order)
        ):
            return sigma
    return None
