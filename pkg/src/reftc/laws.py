"""Exhaustive checks of the structural laws on enumerated instances.

Each law quantifies over a finite, deterministic domain of small
carriers, families, maps and predicates.  The bound argument caps fibre
sizes; dimensions that would explode combinatorially (bases under
quantified maps, second-level families, powerset towers) carry fixed
documented caps instead, so every suite terminates at any bound.  A law
run reports the number of instances visited and every counterexample
found; the suites are expected to report zero.

Oracles here are deliberately naive: dependent products are compared
against a pointwise membership scan, coproduct predicates against a
direct union of tagged copies, and least fixed points against a scan of
all fixed points.  The kernel computes the same objects through the
categorical formulas, so agreement is evidence the formulas are right.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import LiftingUnsound, NotRefined
from .finset import (
    Carrier,
    FamMor,
    Family,
    FinMap,
    cart,
    comprehend,
    comprehend_mor,
    compose,
    cotuple,
    coprod_inj,
    fam_compose,
    fam_coprod,
    fn_apply,
    identity,
    inverse,
    kappa,
    pi,
    pi_counit,
    pi_intro,
    phi,
    phi_inv,
    reindex,
    reindex_mor,
    render_atom,
    section_of,
    sigma,
    struct_delta,
    struct_sigma,
    unit_family,
    unsection_of,
)
from .pred import Pred, pull
from .refined import (
    RefinedMor,
    RefinedObj,
    cart_lift,
    coprod_refined,
    pi_refined,
    sigma_refined,
)
from .effects import (
    MONADS,
    check_eq3,
    free_algebra,
    induce_fibred,
    lifted_monad_S,
    liftings_for,
    pi_algebra,
    reindex_algebra,
    star_of,
)
from .fixpoint import (
    MonoEndo,
    PointedPoset,
    PosetFamily,
    check_diagonal,
    check_dinaturality,
    check_naturality,
    conway,
    conway_lift_check,
    flat_pointed,
    lfp,
)


@dataclass(frozen=True)
class LawResult:
    suite: str
    law: str
    instances: int
    failures: tuple

    @property
    def ok(self):
        return not self.failures


_MAX_FAILURES = 5


class _Tally:
    def __init__(self):
        self.instances = 0
        self.failures = []

    def ok(self):
        self.instances += 1

    def fail(self, detail):
        self.instances += 1
        if len(self.failures) < _MAX_FAILURES:
            self.failures.append(detail)

    def check(self, cond, detail):
        if cond:
            self.ok()
        else:
            self.fail(detail)

    def result(self, suite, law):
        return LawResult(suite, law, self.instances, tuple(self.failures))


# -- enumeration domains -----------------------------------------------------


def bases(limit):
    return [Carrier(tuple(range(1, n + 1))) for n in range(1, limit + 1)]


def carriers(limit):
    return [Carrier(tuple(range(n))) for n in range(limit + 1)]


def fibre_families(base, limit):
    """Every assignment of fibre sizes 0..limit over the base."""
    out = []
    for sizes in product(range(limit + 1), repeat=len(base)):
        out.append(
            Family(base, {i: Carrier(tuple(range(s)))
                          for i, s in zip(base.elems, sizes)})
        )
    return out


_DEP_CAP = 4


def dep_families(total, limit):
    """Families over a comprehension total: the full assignment space
    when the total is small, constant sizes beyond the cap."""
    if len(total) <= _DEP_CAP:
        return fibre_families(total, limit)
    return [
        Family(total, {t: Carrier(tuple(range(s))) for t in total})
        for s in range(limit + 1)
    ]


def all_maps(dom, cod):
    if len(dom) == 0:
        return [FinMap(dom, cod, {})]
    if len(cod) == 0:
        return []
    return [
        FinMap(dom, cod, dict(zip(dom.elems, pick)))
        for pick in product(cod.elems, repeat=len(dom))
    ]


def verticals(x, y):
    """All vertical family morphisms x -> y."""
    per_fibre = [all_maps(x.at(i), y.at(i)) for i in x.base]
    out = []
    for pick in product(*per_fibre):
        out.append(
            FamMor(x, y, identity(x.base), dict(zip(x.base.elems, pick)))
        )
    return out


_SUBSET_CAP = 6


def subsets(elems):
    """All subsets when small, a degenerate spread otherwise."""
    elems = tuple(elems)
    if len(elems) <= _SUBSET_CAP:
        out = []
        for k in range(len(elems) + 1):
            out.extend(combinations(elems, k))
        return out
    singles = [(e,) for e in elems]
    return [(), elems] + singles


def refined_objects(base_limit=2, fibre_limit=2):
    """All refined objects within the caps: every family shape, every
    base predicate, every admissible total predicate."""
    out = []
    for base in bases(base_limit):
        for x in fibre_families(base, fibre_limit):
            total = comprehend(x).total
            for pm in subsets(base.elems):
                p = Pred(base, pm)
                under = tuple(t for t in total if t[0] in p)
                for qm in subsets(under):
                    out.append(RefinedObj(x, p, Pred(total, qm)))
    return out


def pointed_posets(limit):
    """All labeled partial orders with a least element on {0..n-1},
    n <= limit."""
    out = []
    for n in range(1, limit + 1):
        elems = tuple(range(n))
        pairs = [(a, b) for a in elems for b in elems if a != b]
        for pick in product((False, True), repeat=len(pairs)):
            rel = {(a, a) for a in elems}
            rel.update(p for p, on in zip(pairs, pick) if on)
            if not _is_partial_order(elems, rel):
                continue
            bottoms = [a for a in elems if all((a, b) in rel for b in elems)]
            if not bottoms:
                continue
            out.append(PointedPoset(Carrier(elems), rel, bottoms[0]))
    return out


def _is_partial_order(elems, rel):
    for a, b in list(rel):
        if (b, a) in rel and a != b:
            return False
        for c in elems:
            if (b, c) in rel and (a, c) not in rel:
                return False
    return True


def monotone_maps(p: PointedPoset, q: PointedPoset):
    return [
        f for f in all_maps(p.carrier, q.carrier) if _mono_between(p, q, f)
    ]


def _mono_between(p, q, f):
    return all(
        q.le(f(a), f(b))
        for a in p.carrier
        for b in p.carrier
        if p.le(a, b)
    )


# -- the finite-set kernel ---------------------------------------------------


def law_reindex_identity(bound):
    t = _Tally()
    for base in bases(bound):
        for x in fibre_families(base, bound):
            t.check(
                reindex(identity(base), x) == x,
                "identity reindexing changed %r" % x,
            )
    return t


def law_reindex_compose(bound):
    t = _Tally()
    cap = min(bound, 2)
    for bi in bases(cap):
        for bj in bases(cap):
            for bk in bases(cap):
                for u in all_maps(bj, bi):
                    for v in all_maps(bk, bj):
                        for x in fibre_families(bi, bound):
                            lhs = reindex(compose(u, v), x)
                            rhs = reindex(v, reindex(u, x))
                            t.check(
                                lhs == rhs,
                                "split functoriality broke at u=%r v=%r x=%r"
                                % (u, v, x),
                            )
    return t


def _sections(x):
    """All sections of the comprehension projection of x."""
    total = comprehend(x).total
    per_point = [
        [(i, a) for a in x.at(i)] for i in x.base
    ]
    out = []
    for pick in product(*per_point):
        out.append(
            FinMap(x.base, total, dict(zip(x.base.elems, pick)))
        )
    return out


def law_section_bijection(bound):
    t = _Tally()
    for base in bases(bound):
        for x in fibre_families(base, bound):
            for s in _sections(x):
                v = unsection_of(x, s)
                t.check(
                    section_of(v) == s,
                    "section round trip failed for %r" % s,
                )
            for v in verticals(unit_family(base), x):
                s = section_of(v)
                back = unsection_of(x, s)
                t.check(
                    back == v,
                    "global element round trip failed for %r" % v,
                )
    return t


def law_phi_bijection(bound):
    t = _Tally()
    domains = [(1, bound), (2, 1)]
    for base_size, fl in domains:
        base = Carrier(tuple(range(1, base_size + 1)))
        for x in fibre_families(base, fl):
            yp_base = comprehend(x).total
            for y in fibre_families(base, fl):
                ypull = reindex(comprehend(x).proj, y)
                for v in verticals(unit_family(yp_base), ypull):
                    f = phi(x, y, v)
                    t.check(
                        phi_inv(x, y, f) == v,
                        "phi round trip failed",
                    )
                for f in verticals(x, y):
                    v = phi_inv(x, y, f)
                    t.check(
                        phi(x, y, v) == f,
                        "phi_inv round trip failed",
                    )
    return t


def law_kappa_bijective(bound):
    t = _Tally()
    for base in bases(min(bound, 2)):
        for x in fibre_families(base, bound):
            total = comprehend(x).total
            for y in dep_families(total, min(bound, 2)):
                k = kappa(x, y)
                ki = inverse(k)
                t.check(
                    compose(ki, k).is_identity()
                    and compose(k, ki).is_identity(),
                    "kappa is not an isomorphism at x=%r y=%r" % (x, y),
                )
    return t


def law_pi_triangles(bound):
    t = _Tally()
    cap = min(bound, 2)
    for base in bases(cap):
        for x in fibre_families(base, cap):
            total = comprehend(x).total
            for y in dep_families(total, cap):
                eps = pi_counit(x, y)
                proj = comprehend(x).proj
                for v in verticals(unit_family(total), y):
                    tr = pi_intro(x, y, v)
                    back = fam_compose(eps, reindex_mor(proj, tr))
                    t.check(back == v, "counit triangle failed")
                pxy = pi(x, y)
                for w in verticals(unit_family(base), pxy):
                    ev = fam_compose(eps, reindex_mor(proj, w))
                    t.check(
                        pi_intro(x, y, ev) == w,
                        "unit triangle failed",
                    )
    return t


def law_sigma_delta(bound):
    t = _Tally()
    for base in bases(min(bound, 2)):
        for x in fibre_families(base, bound):
            cx = comprehend(x)
            d = struct_delta(x)
            xx = reindex(cx.proj, x)
            t.check(
                compose(comprehend(xx).proj, d).is_identity(),
                "projection after diagonal is not the identity",
            )
            weak = comprehend_mor(cart(cx.proj, x))
            t.check(
                compose(weak, d).is_identity(),
                "weakening after diagonal is not the identity",
            )
            for y in fibre_families(base, min(bound, 2)):
                s = struct_sigma(x, y)
                s2 = struct_sigma(y, x)
                t.check(
                    compose(s2, s).is_identity(),
                    "symmetry is not an involution",
                )
    return t


def law_bc(bound):
    t = _Tally()
    cap = min(bound, 2)
    for bi in bases(2):
        for bj in bases(2):
            for u in all_maps(bj, bi):
                for x in fibre_families(bi, cap):
                    xu = reindex(u, x)
                    ubar = comprehend_mor(cart(u, x))
                    for y in dep_families(comprehend(x).total, cap):
                        yu = reindex(ubar, y)
                        t.check(
                            reindex(u, sigma(x, y)) == sigma(xu, yu),
                            "sum Beck-Chevalley failed",
                        )
                        t.check(
                            reindex(u, pi(x, y)) == pi(xu, yu),
                            "product Beck-Chevalley failed",
                        )
    return t


# -- refined structure against extensional oracles ---------------------------


def _pi_oracle(o: RefinedObj, inner: RefinedObj) -> Pred:
    z = pi(o.x, inner.x)
    total = comprehend(z).total
    members = []
    for i, g in total:
        if i not in o.p:
            continue
        if all(
            (i, a) not in o.q or ((i, a), fn_apply(g, a)) in inner.q
            for a in o.x.at(i)
        ):
            members.append((i, g))
    return Pred(total, members)


def _inner_refined(o: RefinedObj, fibre_limit):
    """Refined objects over the comprehension of o sharing its total
    predicate, within caps."""
    total = comprehend(o.x).total
    out = []
    for y in dep_families(total, fibre_limit):
        ytotal = comprehend(y).total
        under = tuple(t for t in ytotal if t[0] in o.q)
        for rm in subsets(under):
            out.append(RefinedObj(y, o.q, Pred(ytotal, rm)))
    return out


def law_pi_formula(bound):
    t = _Tally()
    cap = min(bound, 2)
    for o in refined_objects(2, cap):
        if len(comprehend(o.x).total) > _DEP_CAP:
            continue
        for inner in _inner_refined(o, 1):
            got = pi_refined(o, inner)
            want = _pi_oracle(o, inner)
            t.check(
                got.q == want and got.p == o.p,
                "product refinement formula disagrees with the scan at "
                "x=%r" % o.x,
            )
    return t


def law_sigma_formula(bound):
    t = _Tally()
    cap = min(bound, 2)
    for o in refined_objects(2, cap):
        if len(comprehend(o.x).total) > _DEP_CAP:
            continue
        for inner in _inner_refined(o, 1):
            got = sigma_refined(o, inner)
            members = [
                (i, (a, b))
                for ((i, a), b) in inner.q.sorted_members()
            ]
            want = Pred(comprehend(sigma(o.x, inner.x)).total, members)
            t.check(
                got.q == want,
                "sum refinement disagrees with retagging at x=%r" % o.x,
            )
    return t


def law_cart_lift(bound):
    t = _Tally()
    cap = min(bound, 2)
    for o in refined_objects(2, cap):
        for bj in bases(2):
            for u in all_maps(bj, o.x.base):
                pulled = pull(u, o.p)
                for pm in subsets(pulled.sorted_members()):
                    p_new = Pred(bj, pm)
                    lifted, mor = cart_lift(u, p_new, o)
                    ubar = comprehend_mor(cart(u, o.x))
                    total = comprehend(lifted.x).total
                    want = Pred(
                        total,
                        [
                            s
                            for s in total
                            if s[0] in p_new and ubar(s) in o.q
                        ],
                    )
                    t.check(
                        lifted.q == want,
                        "cartesian lifting is not the largest admissible "
                        "predicate",
                    )
    return t


def law_coprod_formula(bound):
    t = _Tally()
    cap = min(bound, 2)
    groups = {}
    for o in refined_objects(2, cap):
        groups.setdefault((o.x.base, o.p), []).append(o)
    for objs in groups.values():
        for o1 in objs:
            for o2 in objs:
                got = coprod_refined(o1, o2)
                total = comprehend(fam_coprod(o1.x, o2.x)).total
                members = [
                    (i, ("inl", a)) for (i, a) in o1.q.sorted_members()
                ] + [(i, ("inr", b)) for (i, b) in o2.q.sorted_members()]
                want = Pred(total, members)
                t.check(
                    got.q == want,
                    "coproduct refinement disagrees with tagged union",
                )
    return t


def law_coprod_universal(bound):
    t = _Tally()
    domains = [(1, min(bound, 2)), (2, 1)]
    for base_size, fl in domains:
        base = Carrier(tuple(range(1, base_size + 1)))
        fams = fibre_families(base, fl)
        for x in fams:
            for y in fams:
                xy = fam_coprod(x, y)
                jl = coprod_inj(x, y, "inl")
                jr = coprod_inj(x, y, "inr")
                for z in fams:
                    for f in verticals(x, z):
                        for g in verticals(y, z):
                            h = cotuple(f, g)
                            t.check(
                                fam_compose(h, jl) == f
                                and fam_compose(h, jr) == g,
                                "cotupling does not restrict to its "
                                "components",
                            )
                    for h in verticals(xy, z):
                        back = cotuple(
                            fam_compose(h, jl), fam_compose(h, jr)
                        )
                        t.check(
                            back == h,
                            "a map out of the coproduct escapes cotupling",
                        )
    return t


# -- monads, the comparison map, liftings ------------------------------------


def _monad_carrier_cap(name, bound):
    return 1 if name == "powerset" else bound


def law_monad_units(bound):
    t = _Tally()
    for name, desc in sorted(MONADS.items()):
        for c in carriers(bound + 1 if name != "powerset" else 2):
            tc = desc.on_carrier(c)
            unit = desc.unit(c)
            mult = desc.mult(c)
            tunit = desc.on_map(unit)
            unit_t = desc.unit(tc)
            for a in tc:
                t.check(
                    mult(unit_t(a)) == a and mult(tunit(a)) == a,
                    "%s unit laws failed at %s" % (name, render_atom(a)),
                )
    return t


def law_monad_assoc(bound):
    t = _Tally()
    for name, desc in sorted(MONADS.items()):
        for c in carriers(_monad_carrier_cap(name, bound)):
            tc = desc.on_carrier(c)
            ttc = desc.on_carrier(tc)
            tttc = desc.on_carrier(ttc)
            mult = desc.mult(c)
            mult_t = desc.mult(tc)
            tmult = desc.on_map(mult)
            for a in tttc:
                t.check(
                    mult(mult_t(a)) == mult(tmult(a)),
                    "%s associativity failed at %s" % (name, render_atom(a)),
                )
    return t


def law_monad_map_natural(bound):
    t = _Tally()
    for name, desc in sorted(MONADS.items()):
        cap = min(bound, 2) if name == "powerset" else bound
        for c in carriers(cap):
            for d in carriers(cap):
                for u in all_maps(c, d):
                    tu = desc.on_map(u)
                    t.check(
                        compose(tu, desc.unit(c)) == compose(desc.unit(d), u),
                        "%s unit is not natural" % name,
                    )
                    t.check(
                        compose(tu, desc.mult(c))
                        == compose(desc.mult(d), desc.on_map(tu)),
                        "%s multiplication is not natural" % name,
                    )
    return t


def law_theta_coherence(bound):
    t = _Tally()
    for name in sorted(MONADS):
        fm = induce_fibred(name)
        desc = fm.desc
        cap = 1 if name == "powerset" else min(bound, 2)
        for base in bases(2):
            for x in fibre_families(base, cap):
                cx = comprehend(x)
                theta = fm.theta_at(x)
                unit_sq = compose(theta, comprehend_mor(fm.unit_at(x)))
                t.check(
                    unit_sq == desc.unit(cx.total),
                    "%s comparison map breaks the unit square" % name,
                )
                tx = fm.on_family(x)
                theta_t = fm.theta_at(tx)
                lhs = compose(theta, comprehend_mor(fm.mult_at(x)))
                rhs = compose(
                    desc.mult(cx.total),
                    compose(desc.on_map(theta), theta_t),
                )
                t.check(
                    lhs == rhs,
                    "%s comparison map breaks the multiplication square"
                    % name,
                )
                for y in fibre_families(base, cap):
                    theta_y = fm.theta_at(y)
                    for f in verticals(x, y):
                        sq1 = compose(
                            theta_y, comprehend_mor(fm.on_vertical(f))
                        )
                        sq2 = compose(
                            desc.on_map(comprehend_mor(f)), theta
                        )
                        t.check(
                            sq1 == sq2,
                            "%s comparison map is not natural" % name,
                        )
    return t


_LIFTING_PAIRS = (
    ("none", "id"),
    ("maybe", "partial"),
    ("maybe", "total"),
    ("powerset", "may"),
    ("powerset", "must"),
)


def law_eq3(bound):
    t = _Tally()
    cap = min(bound, 2)
    for monad, lname in _LIFTING_PAIRS:
        fm = induce_fibred(monad)
        lifting = liftings_for(monad)[lname]
        for o in refined_objects(2, cap):
            bad = check_eq3(fm, lifting, o)
            t.check(
                bad is None,
                "lifting %s/%s violates the soundness inequality at %s"
                % (monad, lname, render_atom(bad)),
            )
    return t


def law_s_monad(bound):
    t = _Tally()
    cap = min(bound, 2)
    for monad, lname in _LIFTING_PAIRS:
        fm = induce_fibred(monad)
        lifting = liftings_for(monad)[lname]
        for o in refined_objects(2, cap):
            try:
                so = lifted_monad_S(fm, lifting, o)
                sso = lifted_monad_S(fm, lifting, so)
                RefinedMor(o, so, fm.unit_at(o.x))
                unit_ok = True
            except (LiftingUnsound, NotRefined):
                unit_ok = False
            t.check(
                unit_ok,
                "lifted unit is not a refined morphism under %s/%s"
                % (monad, lname),
            )
            if not unit_ok:
                continue
            try:
                RefinedMor(sso, so, fm.mult_at(o.x))
                mult_ok = True
            except NotRefined:
                mult_ok = False
            t.check(
                mult_ok,
                "lifted multiplication is not a refined morphism under "
                "%s/%s" % (monad, lname),
            )
    return t


# -- algebras ----------------------------------------------------------------


def _em_laws(t, alg, label):
    bad = alg.check_unit_law()
    t.check(bad is None, "%s unit law failed at %s" % (label, bad))
    bad = alg.check_mult_law()
    t.check(bad is None, "%s multiplication law failed at %s" % (label, bad))


def law_em_free(bound):
    t = _Tally()
    for name in sorted(MONADS):
        fm = induce_fibred(name)
        cap = 1 if name == "powerset" else bound
        for base in bases(2):
            for x in fibre_families(base, cap):
                _em_laws(t, free_algebra(fm, x), "free algebra")
    return t


def law_em_reindex(bound):
    t = _Tally()
    for name in sorted(MONADS):
        fm = induce_fibred(name)
        cap = 1 if name == "powerset" else min(bound, 2)
        for bi in bases(2):
            for bj in bases(2):
                for u in all_maps(bj, bi):
                    for x in fibre_families(bi, cap):
                        alg = reindex_algebra(u, free_algebra(fm, x))
                        _em_laws(t, alg, "reindexed algebra")
    return t


def law_em_pi(bound):
    t = _Tally()
    for name in sorted(MONADS):
        fm = induce_fibred(name)
        keys_cap = 1 if name == "powerset" else min(bound, 2)
        inner_cap = min(bound, 2) if name != "powerset" else 1
        for base in bases(2):
            for x in fibre_families(base, keys_cap):
                total = comprehend(x).total
                for y in dep_families(total, inner_cap):
                    alg = pi_algebra(fm, x, free_algebra(fm, y))
                    _em_laws(t, alg, "product algebra")
    return t


# -- fixpoints ---------------------------------------------------------------


def law_lfp_least(bound):
    t = _Tally()
    for p in pointed_posets(bound):
        for f in monotone_maps(p, p):
            fix = lfp(MonoEndo(p, f))
            fixed = [a for a in p.carrier if f(a) == a]
            t.check(
                f(fix) == fix and all(p.le(fix, a) for a in fixed),
                "least fixed point is not least for %r" % f,
            )
    return t


def _poset_families(base, size_limit):
    catalog = pointed_posets(size_limit)
    out = []
    for pick in product(range(len(catalog)), repeat=len(base)):
        out.append(
            PosetFamily(
                base, {i: catalog[k] for i, k in zip(base.elems, pick)}
            )
        )
    return out


def _monotone_verticals(pf):
    x = pf.underlying()
    per_fibre = [
        monotone_maps(pf.at(i), pf.at(i)) for i in pf.base
    ]
    out = []
    for pick in product(*per_fibre):
        out.append(
            FamMor(x, x, identity(pf.base), dict(zip(pf.base.elems, pick)))
        )
    return out


def law_conway_naturality(bound):
    t = _Tally()
    domains = [(1, bound), (2, 2)]
    for base_size, cat in domains:
        bi = Carrier(tuple(range(1, base_size + 1)))
        for pf in _poset_families(bi, cat):
            for f in _monotone_verticals(pf):
                for bj in bases(2):
                    for u in all_maps(bj, bi):
                        t.check(
                            check_naturality(pf, f, u),
                            "fixpoints do not commute with reindexing",
                        )
    return t


def law_conway_dinaturality(bound):
    t = _Tally()
    one = Carrier((1,))
    for p in pointed_posets(bound):
        for q in pointed_posets(bound):
            pf_x = PosetFamily(one, {1: p})
            pf_y = PosetFamily(one, {1: q})
            for fg in product(monotone_maps(p, q), monotone_maps(q, p)):
                f = FamMor(
                    pf_x.underlying(), pf_y.underlying(),
                    identity(one), {1: fg[0]},
                )
                g = FamMor(
                    pf_y.underlying(), pf_x.underlying(),
                    identity(one), {1: fg[1]},
                )
                t.check(
                    check_dinaturality(pf_x, pf_y, f, g),
                    "dinaturality failed for %r and %r" % (fg[0], fg[1]),
                )
    return t


def law_conway_diagonal(bound):
    t = _Tally()
    one = Carrier((1,))
    held = vacuous = 0
    for p in pointed_posets(bound):
        pf = PosetFamily(one, {1: p})
        monos = monotone_maps(p, p)
        for pick in product(range(len(monos)), repeat=len(p.carrier)):
            comps = {
                (1, a): monos[k] for a, k in zip(p.carrier.elems, pick)
            }
            verdict = check_diagonal(pf, comps)
            if verdict == "holds":
                held += 1
                t.ok()
            elif verdict == "vacuous" or (
                isinstance(verdict, tuple) and verdict[0] == "one-sided"
            ):
                vacuous += 1
                t.ok()
            else:
                t.fail("diagonal law failed at %s" % render_atom(verdict))
    if held == 0:
        t.fail("diagonal law was never exercised")
    return t


def law_conway_lift_gate(bound):
    t = _Tally()
    domains = [(1, min(bound, 2)), (2, 1)]
    for base_size, cap in domains:
        base = Carrier(tuple(range(1, base_size + 1)))
        for x in fibre_families(base, cap):
            pf = PosetFamily(
                base,
                {
                    i: flat_pointed(
                        Carrier(x.at(i).elems + (star_of(x.at(i)),)),
                        star_of(x.at(i)),
                    )
                    for i in x.base
                },
            )
            lifted = pf.underlying()
            total = comprehend(lifted).total
            for f in _monotone_verticals(pf):
                s = conway(pf, f)
                for pm in subsets(base.elems):
                    p = Pred(base, pm)
                    under = tuple(a for a in total if a[0] in p)
                    for qm in subsets(under):
                        o = RefinedObj(lifted, p, Pred(total, qm))
                        got = conway_lift_check(o, pf, f)
                        brute = None
                        for i in p.sorted_members():
                            if s(i) not in o.q:
                                brute = i
                                break
                        t.check(
                            got == brute,
                            "gate disagrees with the scan at %s"
                            % render_atom((got, brute)),
                        )
    return t


# -- suite registry ----------------------------------------------------------


SUITES = {
    "ccompc": (
        ("reindex-identity", law_reindex_identity),
        ("reindex-compose", law_reindex_compose),
        ("section-bijection", law_section_bijection),
        ("phi-bijection", law_phi_bijection),
        ("kappa-bijective", law_kappa_bijective),
        ("pi-triangles", law_pi_triangles),
        ("sigma-delta", law_sigma_delta),
        ("beck-chevalley", law_bc),
        ("pi-formula", law_pi_formula),
        ("sigma-formula", law_sigma_formula),
        ("cart-lift", law_cart_lift),
    ),
    "coprod": (
        ("universal-property", law_coprod_universal),
        ("refined-formula", law_coprod_formula),
    ),
    "monad": (
        ("units", law_monad_units),
        ("associativity", law_monad_assoc),
        ("naturality", law_monad_map_natural),
        ("theta-coherence", law_theta_coherence),
        ("lifted-monad", law_s_monad),
    ),
    "eq3": (
        ("soundness-inequality", law_eq3),
    ),
    "em": (
        ("free", law_em_free),
        ("reindexed", law_em_reindex),
        ("product", law_em_pi),
    ),
    "conway": (
        ("lfp-least", law_lfp_least),
        ("naturality", law_conway_naturality),
        ("dinaturality", law_conway_dinaturality),
        ("diagonal", law_conway_diagonal),
        ("lift-gate", law_conway_lift_gate),
    ),
}


_DEEP_SUITES = ("ccompc", "conway")


def run_suite(name, bound):
    if name not in SUITES:
        raise KeyError("unknown law suite %r" % name)
    return [fn(bound).result(name, law) for law, fn in SUITES[name]]


def run_all(bound, kernel_bound=None):
    """Run every suite; kernel_bound, when given, raises the bound for
    the kernel and fixpoint suites only."""
    out = []
    for name in SUITES:
        b = kernel_bound if kernel_bound and name in _DEEP_SUITES else bound
        out.extend(run_suite(name, b))
    return out
