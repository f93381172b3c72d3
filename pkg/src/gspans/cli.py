"""Command-line surface: groups, G-sets, marks, the Burnside ring, span
composition, duals, transfers, presheaf ranks, verification suites, and the
numeric sampling checks.

Documents are JSON:
  group   {"degree": d, "generators": [[images], ...]}
  gset    {"group": <group>, "n": n, "action": [[images per generator], ...]}
  gmap    {"group": <group>, "src": <bare gset>, "tgt": <bare gset>,
           "images": [...]}
  span    {"group": <group>, "src": <bare>, "tgt": <bare>, "apex": <bare>,
           "leg": [...]}
  elt     {"group": <group>, "src": <bare>, "tgt": <bare>,
           "terms": [{"class": [c, q], "coeff": k}, ...]}

Exit codes: 0 pass, 1 verification failure, 2 usage or shape error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Optional

from .atiyah import (
    DEFAULT_TUBULAR,
    TubularParams,
    check_equivariance,
    check_unit_diagram_left,
)
from .burnside import (
    BurnsideElt,
    burnside_ring,
    compose_elts,
    decompose_span,
    dual_of_gmap,
    hom_basis,
    identity_elt,
    marks_of,
    presheaf_at_orbits,
    span_class,
    table_of_marks,
)
from .errors import GSpanError, MalformedInputError, ShapeError
from .fuzz import (
    rand_free_obj,
    rand_gmap,
    rand_gset,
    rand_operad_obj,
    rand_perm,
    rand_span,
    relabel_span,
)
from .gsets import (
    GMap,
    GSet,
    cartesian_product,
    disjoint_union,
    empty_gset,
    gset_from_generator_images,
    one_point,
    orbit_decomposition,
    orbit_gset,
    trivial_gset,
)
from .groups import (
    FiniteGroup,
    Perm,
    cyclic_group,
    dihedral_group,
    make_group,
    symmetric_group,
    trivial_group,
)
from .operads import (
    based_eps_id,
    based_id_eps,
    drei_shuffle,
    ealg_compose,
    f_lower,
    fixed_to_gmap,
    gmap_to_fixed,
    normalize,
    omega_obj,
    omega_pair,
    operad_gamma,
    operad_obj_from_action,
    operad_sigma_action,
    unit_obj,
    zeta_left,
    zeta_right,
)
from .spans import (
    Span,
    compose_spans,
    epsilon_span,
    eta_span,
    id_span,
    span_disjoint_union,
    span_external,
    span_iso,
)

SUITES = ("bicategory", "duality", "operad", "fixiso", "atiyah")


# -- documents ---------------------------------------------------------------


def group_doc(group: FiniteGroup) -> dict:
    return {
        "degree": group.degree,
        "generators": [list(p.images) for p in group.generators],
    }


def parse_group_doc(doc: Any) -> FiniteGroup:
    try:
        degree = int(doc["degree"])
        gens = [Perm(tuple(int(v) for v in images)) for images in doc["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"bad group document: {exc}")
    return make_group(degree, gens)


def bare_gset_doc(a: GSet) -> dict:
    gens = a.group.generator_indices
    return {"n": a.n, "action": [list(a.action[g].images) for g in gens]}


def gset_doc(a: GSet) -> dict:
    doc = {"group": group_doc(a.group)}
    doc.update(bare_gset_doc(a))
    return doc


def parse_bare_gset(group: FiniteGroup, doc: Any) -> GSet:
    try:
        n = int(doc["n"])
        gen_perms = [Perm(tuple(int(v) for v in row)) for row in doc["action"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"bad gset document: {exc}")
    return gset_from_generator_images(group, n, gen_perms)


def parse_gset_doc(doc: Any) -> GSet:
    return parse_bare_gset(parse_group_doc(doc["group"]), doc)


def span_doc(s: Span) -> dict:
    return {
        "group": group_doc(s.group),
        "src": bare_gset_doc(s.src),
        "tgt": bare_gset_doc(s.tgt),
        "apex": bare_gset_doc(s.apex),
        "leg": list(s.leg.images),
    }


def parse_span_doc(doc: Any) -> Span:
    group = parse_group_doc(doc["group"])
    src = parse_bare_gset(group, doc["src"])
    tgt = parse_bare_gset(group, doc["tgt"])
    apex = parse_bare_gset(group, doc["apex"])
    leg = GMap(apex, cartesian_product(tgt, src), tuple(int(v) for v in doc["leg"]))
    return Span(src=src, tgt=tgt, apex=apex, leg=leg)


def gmap_doc(f: GMap) -> dict:
    return {
        "group": group_doc(f.source.group),
        "src": bare_gset_doc(f.source),
        "tgt": bare_gset_doc(f.target),
        "images": list(f.images),
    }


def parse_gmap_doc(doc: Any) -> GMap:
    group = parse_group_doc(doc["group"])
    src = parse_bare_gset(group, doc["src"])
    tgt = parse_bare_gset(group, doc["tgt"])
    return GMap(src, tgt, tuple(int(v) for v in doc["images"]))


def elt_doc(x: BurnsideElt) -> dict:
    return {
        "group": group_doc(x.src.group),
        "src": bare_gset_doc(x.src),
        "tgt": bare_gset_doc(x.tgt),
        "terms": [
            {"class": list(cls.invariant[0]), "coeff": k} for cls, k in x.terms()
        ],
    }


def dump(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _emit(args, doc: Any) -> None:
    text = dump(doc)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)


# -- group specs ---------------------------------------------------------------


def group_from_spec(spec: list[str]) -> FiniteGroup:
    """A preset name with parameter, or 'generators <degree> <json images>'."""
    if not spec:
        raise MalformedInputError("empty group spec")
    name = spec[0]
    if name == "trivial":
        return trivial_group()
    if name in ("cyclic", "dihedral", "symmetric"):
        if len(spec) != 2:
            raise MalformedInputError(f"usage: {name} N")
        n = int(spec[1])
        return {"cyclic": cyclic_group, "dihedral": dihedral_group,
                "symmetric": symmetric_group}[name](n)
    if name == "generators":
        if len(spec) != 3:
            raise MalformedInputError("usage: generators <degree> <json list of image lists>")
        degree = int(spec[1])
        rows = json.loads(spec[2])
        return make_group(degree, [Perm(tuple(int(v) for v in r)) for r in rows])
    raise MalformedInputError(
        f"unknown group spec {name!r}; presets: trivial, cyclic N, dihedral N, "
        "symmetric N, generators DEG JSON"
    )


def _class_label(group: FiniteGroup, index: int) -> str:
    order = len(group.subgroup_classes()[index].indices)
    return f"H{index}(|H|={order})"


# -- commands -------------------------------------------------------------------


def cmd_group(args) -> int:
    group = group_from_spec(args.spec)
    classes = group.subgroup_classes()
    print(f"order={group.order} subgroup_classes={len(classes)}")
    _emit(args, group_doc(group))
    return 0


def cmd_gset(args) -> int:
    group = group_from_spec(args.group)
    kind = args.spec[0]
    if kind == "orbit":
        a = orbit_gset(group, group.subgroup_classes()[int(args.spec[1])])
    elif kind == "regular":
        from .gsets import regular_gset

        a = regular_gset(group)
    elif kind == "trivial":
        a = trivial_gset(group, int(args.spec[1]))
    elif kind == "empty":
        a = empty_gset(group)
    else:
        raise MalformedInputError("gset spec: orbit K | regular | trivial N | empty")
    dec = orbit_decomposition(a)
    stabs = ",".join(_class_label(group, c) for c in dec.stabilizer_classes)
    print(f"n={a.n} orbits={len(dec.orbits)} stabilizers=[{stabs}]")
    _emit(args, gset_doc(a))
    return 0


def cmd_marks(args) -> int:
    group = group_from_spec(args.group)
    marks = table_of_marks(group)
    classes = group.subgroup_classes()
    header = " ".join(f"{_class_label(group, c.index):>12}" for c in classes)
    print(f"{'orbit type':>12} {header}")
    for i, row in enumerate(marks):
        cells = " ".join(f"{v:>12}" for v in row)
        print(f"{'G/' + _class_label(group, i):>12} {cells}")
    _emit(args, {"marks": [list(r) for r in marks]})
    return 0


def cmd_ring(args) -> int:
    group = group_from_spec(args.group)
    ring = burnside_ring(group)
    names = [f"[G/{_class_label(group, b.invariant[0][0])}]" for b in ring.basis]
    print(f"basis: {' '.join(names)} unit={names[ring.unit_index]}")
    for i, bi in enumerate(names):
        for j, bj in enumerate(names):
            vec = ring.table[i][j]
            terms = [f"{k}*{names[t]}" for t, k in enumerate(vec) if k] or ["0"]
            print(f"{bi} * {bj} = {' + '.join(terms)}")
    _emit(args, {"table": [[list(v) for v in row] for row in ring.table]})
    return 0


def cmd_compose(args) -> int:
    with open(args.first) as fh:
        s2 = parse_span_doc(json.load(fh))
    with open(args.second) as fh:
        s1 = parse_span_doc(json.load(fh))
    try:
        comp = compose_spans(s2, s1)
    except ShapeError as exc:
        print(f"composition shape error: {exc}", file=sys.stderr)
        print(f"first: {s2.tgt.n}<-{s2.apex.n}->{s2.src.n} "
              f"second: {s1.tgt.n}<-{s1.apex.n}->{s1.src.n}", file=sys.stderr)
        return 2
    elt = decompose_span(comp)
    print(f"apex={comp.apex.n} terms={len(elt.coefficients)}")
    _emit(args, {"span": span_doc(comp), "decomposition": elt_doc(elt)})
    return 0


def cmd_dual(args) -> int:
    with open(args.gmap) as fh:
        f = parse_gmap_doc(json.load(fh))
    _emit(args, elt_doc(dual_of_gmap(f)))
    return 0


def cmd_transfer(args) -> int:
    group = group_from_spec(args.group)
    classes = group.subgroup_classes()
    h, k = classes[args.source_class], classes[args.target_class]
    conj = None
    for g in range(group.order):
        if group.conjugate_subgroup(g, h.indices) <= k.indices:
            conj = group.conjugate_subgroup(g, h.indices)
            break
    if conj is None:
        print("no projection: source class is not subconjugate to target", file=sys.stderr)
        return 2
    src = orbit_gset(group, conj)
    tgt = orbit_gset(group, k)
    # cosets xH -> xK, via any representative
    dec = orbit_decomposition(src)
    move = dec.transporters[0]
    tdec = orbit_decomposition(tgt)
    images = tuple(tgt.action[move[p]](1) for p in src.points())
    pi = GMap(src, tgt, images)
    elt = dual_of_gmap(pi)
    print(f"transfer {args.source_class}->{args.target_class}: "
          f"{len(elt.coefficients)} basis terms")
    _emit(args, elt_doc(elt))
    return 0


def cmd_presheaf(args) -> int:
    group = group_from_spec(args.group)
    if args.gset:
        with open(args.gset) as fh:
            b = parse_bare_gset(group, json.load(fh))
    else:
        b = one_point(group)
    ranks = presheaf_at_orbits(b)
    for c, r in enumerate(ranks):
        print(f"rank at G/{_class_label(group, c)} = {r}")
    _emit(args, {"ranks": list(ranks)})
    return 0


def cmd_atiyah_sample(args) -> int:
    group = group_from_spec(args.group)
    params = TubularParams(d=args.d) if args.d else DEFAULT_TUBULAR
    rng = random.Random(args.seed)
    a = rand_gset(rng, group, args.size_bound) if args.size_bound else one_point(group)
    b = rand_gset(rng, group, args.size_bound) if args.size_bound else one_point(group)
    left, right = check_unit_diagram_left(b, a, args.samples, args.seed, params)
    print(left.line())
    print(right.line())
    bad = max(left.max_discrepancy, right.max_discrepancy) >= args.tolerance
    for name in ("eta", "xi", "eps", "h"):
        rep = check_equivariance(name, a, max(args.samples // 10, 1), args.seed, params)
        print(rep.line())
        bad = bad or rep.max_discrepancy >= args.tolerance
    return 1 if bad else 0


# -- verification suites ----------------------------------------------------------


def _report(name: str, tried: int, failures: list, seed: int) -> bool:
    status = "ok" if not failures else "FAIL"
    print(f"{name} {status} tried={tried} failed={len(failures)} seed={seed}")
    for doc in failures[:3]:
        print(f"  counterexample: {dump(doc)}")
    return not failures


def _suite_bicategory(group: FiniteGroup, bound: int, seed: int) -> bool:
    rng = random.Random(seed)
    ok = True
    trials = 40
    fails_assoc, fails_unit, fails_inter = [], [], []
    for _ in range(trials):
        a, b, c, d = (rand_gset(rng, group, bound) for _ in range(4))
        s1 = rand_span(rng, a, b, 2)
        s2 = rand_span(rng, b, c, 2)
        s3 = rand_span(rng, c, d, 2)
        lhs = compose_spans(s3, compose_spans(s2, s1))
        rhs = compose_spans(compose_spans(s3, s2), s1)
        if span_iso(lhs, rhs) is None:
            fails_assoc.append(span_doc(s1))
        if span_iso(compose_spans(id_span(b), s1), s1) is None or span_iso(
            compose_spans(s1, id_span(a)), s1
        ) is None:
            fails_unit.append(span_doc(s1))
        t1 = rand_span(rng, a, b, 2)
        lhs2 = compose_spans(span_disjoint_union(s2, s2), span_disjoint_union(s1, t1))
        rhs2 = span_disjoint_union(compose_spans(s2, s1), compose_spans(s2, t1))
        if span_iso(lhs2, rhs2) is None:
            fails_inter.append(span_doc(t1))
    ok &= _report("bicategory.associativity-2cell", trials, fails_assoc, seed)
    ok &= _report("bicategory.unit-2cell", trials, fails_unit, seed)
    ok &= _report("bicategory.interchange", trials, fails_inter, seed)
    return ok


def _suite_duality(group: FiniteGroup, bound: int, seed: int) -> bool:
    rng = random.Random(seed)
    ok = True
    gsets = [rand_gset(rng, group, bound) for _ in range(6)]
    fails_span, fails_class, fails_dual = [], [], []
    for a in gsets:
        t1 = compose_spans(
            span_external(id_span(a), epsilon_span(a)),
            span_external(eta_span(a), id_span(a)),
        )
        t2 = compose_spans(
            span_external(epsilon_span(a), id_span(a)),
            span_external(id_span(a), eta_span(a)),
        )
        if span_iso(t1, id_span(a)) is None or span_iso(t2, id_span(a)) is None:
            fails_span.append(gset_doc(a))
        if decompose_span(t1) != identity_elt(a) or decompose_span(t2) != identity_elt(a):
            fails_class.append(gset_doc(a))
    for _ in range(20):
        a = rand_gset(rng, group, bound)
        b = rand_gset(rng, group, bound)
        f = rand_gmap(rng, a, b)
        g = rand_gmap(rng, b, a)
        if f is None or g is None:
            continue
        lhs = dual_of_gmap(f.compose(g))
        rhs = compose_elts(dual_of_gmap(g), dual_of_gmap(f))
        if lhs != rhs:
            fails_dual.append(gmap_doc(f))
    ok &= _report("duality.span-triangles", len(gsets) * 2, fails_span, seed)
    ok &= _report("duality.class-triangles", len(gsets) * 2, fails_class, seed)
    ok &= _report("duality.dual-contravariant", 20, fails_dual, seed)
    return ok


def _suite_operad(group: FiniteGroup, bound: int, seed: int) -> bool:
    rng = random.Random(seed)
    ok = True
    trials = 60
    fails_drei, fails_punch, fails_unit = [], [], []
    for _ in range(trials):
        m, q = rng.randint(1, 3), rng.randint(1, 3)
        mu = rand_operad_obj(rng, group, m)
        nu = rand_operad_obj(rng, group, q)
        a = rand_gset(rng, group, max(bound, 1))
        if a.n == 0:
            a = one_point(group)
        alpha = operad_obj_from_action(a)
        sig = drei_shuffle(m, a.n, q)
        lhs = operad_sigma_action(operad_gamma(omega_pair(mu, nu), [alpha] * (m * q)), sig)
        rhs = omega_pair(operad_gamma(mu, [alpha] * m), nu)
        if lhs != rhs:
            fails_drei.append({"m": m, "q": q, "n": a.n})
        x = rand_free_obj(rng, a, max_level=3)
        if (
            f_lower(based_id_eps(a), zeta_left(a, x)) != x
            or f_lower(based_eps_id(a), zeta_right(a, x)) != x
        ):
            fails_punch.append({"level": x.level})
        c = rand_gset(rng, group, max(bound, 1))
        if c.n == 0:
            c = one_point(group)
        ca = cartesian_product(c, a)
        y = rand_free_obj(rng, ca, max_level=3)
        if ealg_compose(unit_obj(c), y, c, c, a) != y:
            fails_unit.append({"level": y.level})
    ok &= _report("operad.drei", trials, fails_drei, seed)
    ok &= _report("operad.punch", trials, fails_punch, seed)
    ok &= _report("operad.left-unit", trials, fails_unit, seed)
    return ok


def _suite_fixiso(group: FiniteGroup, bound: int, seed: int) -> bool:
    rng = random.Random(seed)
    ok = True
    trials = 30
    fails_round, fails_comp = [], []
    for _ in range(trials):
        a = rand_gset(rng, group, bound)
        b = rand_gset(rng, group, bound)
        c = rand_gset(rng, group, bound)
        s1 = rand_span(rng, a, b, 2)
        s2 = rand_span(rng, b, c, 2)
        x2 = gmap_to_fixed(s2.leg)
        x1 = gmap_to_fixed(s1.leg)
        back = fixed_to_gmap(x1)
        if gmap_to_fixed(back) != x1:
            fails_round.append(span_doc(s1))
        z = ealg_compose(x2, x1, c, b, a)
        zmap = fixed_to_gmap(z)
        zspan = Span(src=a, tgt=c, apex=zmap.source, leg=zmap)
        if span_iso(zspan, compose_spans(s2, s1)) is None:
            fails_comp.append(span_doc(s1))
    ok &= _report("fixiso.round-trip", trials, fails_round, seed)
    ok &= _report("fixiso.composition", trials, fails_comp, seed)
    return ok


def _suite_atiyah(group: FiniteGroup, bound: int, seed: int, samples: int, tol: float) -> bool:
    rng = random.Random(seed)
    ok = True
    for trial in range(4):
        a = rand_gset(rng, group, max(bound, 1))
        b = rand_gset(rng, group, max(bound, 1))
        left, right = check_unit_diagram_left(b, a, samples, seed + trial)
        print(left.line())
        print(right.line())
        ok &= left.max_discrepancy < tol and right.max_discrepancy < tol
        for name in ("eta", "xi", "eps", "h"):
            rep = check_equivariance(name, a, max(samples // 10, 1), seed + trial)
            print(rep.line())
            ok &= rep.max_discrepancy < 1e-12
    print("atiyah", "ok" if ok else "FAIL")
    return ok


def cmd_verify(args) -> int:
    group = group_from_spec(args.group)
    if args.suite == "bicategory":
        ok = _suite_bicategory(group, args.size_bound, args.seed)
    elif args.suite == "duality":
        ok = _suite_duality(group, args.size_bound, args.seed)
    elif args.suite == "operad":
        ok = _suite_operad(group, args.size_bound, args.seed)
    elif args.suite == "fixiso":
        ok = _suite_fixiso(group, args.size_bound, args.seed)
    elif args.suite == "atiyah":
        ok = _suite_atiyah(group, args.size_bound, args.seed, args.samples, args.tolerance)
    else:
        raise MalformedInputError(f"unknown suite {args.suite!r}; choose from {SUITES}")
    return 0 if ok else 1


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gspans",
        description="Exact computation in the Burnside category of a finite group, "
        "with numeric checks of the point-set duality maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="build a group and print its summary")
    p.add_argument("spec", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("gset", help="build a standard G-set")
    p.add_argument("--group", nargs="+", required=True)
    p.add_argument("spec", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gset)

    p = sub.add_parser("marks", help="print the table of marks")
    p.add_argument("--group", nargs="+", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_marks)

    p = sub.add_parser("ring", help="print the Burnside ring multiplication table")
    p.add_argument("--group", nargs="+", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("compose", help="compose two span documents")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("dual", help="dual of a G-map document")
    p.add_argument("gmap")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("transfer", help="transfer of an orbit projection")
    p.add_argument("--group", nargs="+", required=True)
    p.add_argument("source_class", type=int)
    p.add_argument("target_class", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("presheaf", help="hom-group ranks at orbits")
    p.add_argument("--group", nargs="+", required=True)
    p.add_argument("--gset", help="path to a bare gset document; default the point")
    p.add_argument("--out")
    p.set_defaults(func=cmd_presheaf)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--group", nargs="+", required=True)
    p.add_argument("--size-bound", type=int, default=4)
    p.add_argument("--seed", type=int, default=20240801)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("atiyah-sample", help="sample the strict unit diagrams")
    p.add_argument("--group", nargs="+", required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=20240801)
    p.add_argument("--size-bound", type=int, default=3)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--d", type=float, default=None)
    p.set_defaults(func=cmd_atiyah_sample)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GSpanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
