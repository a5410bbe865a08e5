"""Refined object tests.

The dependent product construction has two independent descriptions: the
kernel builds it from the symmetry iso, evaluation, and a quantified
implication, while this file re-derives membership extensionally, one
function atom at a time.  The two must agree on every enumerated
instance; the same dual-route scheme covers sums, coproducts, and
cartesian liftings.
"""

import itertools

import pytest

from reftc.errors import BaseMismatch, NotRefined, SharingMismatch
from reftc.finset import (
    Carrier,
    FinMap,
    comprehend,
    fam_identity,
    fn_apply,
    identity,
    unit_family,
)
from reftc.pred import Pred, pull, top
from reftc.refined import (
    RefinedMor,
    RefinedObj,
    cart_lift,
    comprehend_refined,
    coprod_refined,
    pi_refined,
    semantic_subtype,
    sigma_refined,
    subtype_counterexample,
    unit_refined,
)
from test_finset import expected_total, fam


def robj(x, p_members, q_members):
    total = comprehend(x).total
    return RefinedObj(
        x, Pred(x.base, p_members), Pred(total, q_members)
    )


BASE = Carrier((0, 1))
X = fam((0, 1), {0: (5, 6), 1: (5,)})


# -- the refined object invariant ---------------------------------------------


def test_total_members_must_project_into_base_pred():
    with pytest.raises(NotRefined):
        robj(X, (0,), (((1, 5)),))


def test_predicates_must_live_over_the_right_carriers():
    p = Pred(Carrier((7,)), ())
    with pytest.raises(BaseMismatch):
        RefinedObj(X, p, Pred(comprehend(X).total, ()))


def test_unit_refined_total_mirrors_base():
    p = Pred(BASE, (1,))
    o = unit_refined(p)
    assert o.x == unit_family(BASE)
    assert o.q.members == frozenset({(1, "*")})
    assert comprehend_refined(o) is o.q


# -- refined morphisms --------------------------------------------------------


def test_refined_mor_checks_both_predicates():
    o = robj(X, (0,), ((0, 5),))
    worse = robj(X, (0,), ())
    RefinedMor(worse, o, fam_identity(X))
    with pytest.raises(NotRefined):
        RefinedMor(o, worse, fam_identity(X))


def test_refined_mor_base_violation_reports_the_point():
    narrow = robj(X, (0,), ())
    wide = robj(X, (0, 1), ())
    with pytest.raises(NotRefined):
        RefinedMor(wide, narrow, fam_identity(X))


# -- cartesian lifting --------------------------------------------------------


def largest_admissible(u, p_new, o):
    """The biggest predicate on the pulled-back comprehension compatible
    with p_new and o.q, described directly."""
    xu_total = []
    for j in u.dom:
        for a in o.x.at(u(j)):
            xu_total.append((j, a))
    return frozenset(
        (j, a)
        for (j, a) in xu_total
        if j in p_new and (u(j), a) in o.q
    )


def test_cart_lift_matches_largest_admissible():
    o = robj(X, (0, 1), ((0, 5), (1, 5)))
    u = FinMap(Carrier(("a", "b")), BASE, {"a": 0, "b": 1})
    for newp in [(), ("a",), ("a", "b")]:
        p_new = Pred(u.dom, newp)
        lifted, m = cart_lift(u, p_new, o)
        assert lifted.q.members == largest_admissible(u, p_new, o)
        assert m.src is lifted and m.dst is o


def test_cart_lift_requires_p_below_pullback():
    o = robj(X, (0,), ())
    u = identity(BASE)
    with pytest.raises(NotRefined):
        cart_lift(u, Pred(BASE, (1,)), o)


# -- dependent sum ------------------------------------------------------------


def inner_over(o, fibres_and_q):
    """Build an inner refined object over the comprehension of o, with
    the sharing discipline the constructions demand."""
    fibres, q_members = fibres_and_q
    total = comprehend(o.x).total
    y = fam(list(total), {t: fibres[t] for t in total})
    ty = comprehend(y).total
    return RefinedObj(y, o.q, Pred(ty, q_members))


def test_sigma_refined_retags_inner_members():
    o = robj(X, (0, 1), ((0, 5), (1, 5)))
    inner = inner_over(
        o,
        (
            {(0, 5): ("a",), (0, 6): ("b",), (1, 5): ("c", "d")},
            (((0, 5), "a"), ((1, 5), "d")),
        ),
    )
    s = sigma_refined(o, inner)
    want = {(0, (5, "a")), (1, (5, "d"))}
    assert s.q.members == frozenset(want)
    assert s.p == o.p


def test_sigma_refined_enforces_sharing():
    o = robj(X, (0, 1), ((0, 5),))
    y = fam(expected_total(X), {t: ("a",) for t in expected_total(X)})
    bad_inner = RefinedObj(
        y, top(comprehend(X).total), Pred(comprehend(y).total, ())
    )
    with pytest.raises(SharingMismatch):
        sigma_refined(o, bad_inner)


# -- dependent product: formula vs extension ----------------------------------


def extensional_pi_members(o, inner):
    """A function atom (i, g) belongs to the refined product exactly when
    i satisfies the base predicate and g sends every fibre element whose
    pair lies in o.q to a value making the inner predicate true."""
    from reftc.finset import pi

    z = pi(o.x, inner.x)
    out = []
    for i in z.base:
        for g in z.at(i):
            if i not in o.p:
                continue
            if all(
                ((i, a), fn_apply(g, a)) in inner.q
                for a in o.x.at(i)
                if (i, a) in o.q
            ):
                out.append((i, g))
    return frozenset(out)


def enumerate_pi_instances():
    x = fam((0, 1), {0: (5, 6), 1: (5,)})
    total = expected_total(x)
    inner_fibres = {(0, 5): ("a", "b"), (0, 6): ("a",), (1, 5): ("a", "b")}
    y = fam(total, inner_fibres)
    ty = list(comprehend(y).total)
    for p_members in [(0, 1), (1,)]:
        p = Pred(x.base, p_members)
        q_pool = [t for t in total if t[0] in p.members]
        for q_members in itertools.chain.from_iterable(
            itertools.combinations(q_pool, k) for k in range(len(q_pool) + 1)
        ):
            o = RefinedObj(x, p, Pred(Carrier(total), q_members))
            iq_pool = [t for t in ty if t[0] in o.q]
            for iq in [(), tuple(iq_pool[:1]), tuple(iq_pool)]:
                inner = RefinedObj(y, o.q, Pred(comprehend(y).total, iq))
                yield o, inner


def test_pi_refined_formula_agrees_with_extension():
    seen = 0
    for o, inner in enumerate_pi_instances():
        got = pi_refined(o, inner)
        assert got.q.members == extensional_pi_members(o, inner)
        assert got.p == o.p
        seen += 1
    assert seen >= 30


def test_pi_refined_vacuous_fibres_admit_every_function():
    """With the total predicate empty the implication is vacuous, so
    every function over a base point in p is accepted."""
    o = robj(X, (0,), ())
    y = fam(expected_total(X), {t: ("a", "b") for t in expected_total(X)})
    inner = RefinedObj(y, o.q, Pred(comprehend(y).total, ()))
    got = pi_refined(o, inner)
    from reftc.finset import pi

    z = pi(o.x, y)
    assert got.q.members == frozenset((0, g) for g in z.at(0))


# -- coproducts ---------------------------------------------------------------


def test_coprod_refined_is_the_tagged_union():
    o1 = robj(X, (0, 1), ((0, 5),))
    o2 = robj(X, (0, 1), ((1, 5), (0, 6)))
    c = coprod_refined(o1, o2)
    want = {(0, ("inl", 5)), (1, ("inr", 5)), (0, ("inr", 6))}
    assert c.q.members == frozenset(want)


def test_coprod_refined_requires_shared_base_pred():
    o1 = robj(X, (0,), ())
    o2 = robj(X, (0, 1), ())
    with pytest.raises(SharingMismatch):
        coprod_refined(o1, o2)


# -- subtyping ----------------------------------------------------------------


def test_semantic_subtype_is_total_pred_inclusion():
    a = robj(X, (0, 1), ((0, 5),))
    b = robj(X, (0, 1), ((0, 5), (1, 5)))
    assert semantic_subtype(a, b)
    assert not semantic_subtype(b, a)
    assert subtype_counterexample(a, b) is None
    assert subtype_counterexample(b, a) == (1, 5)


def test_subtype_counterexample_reports_shape_mismatch():
    a = robj(X, (0, 1), ())
    b = robj(X, (0,), ())
    assert subtype_counterexample(a, b) == "shape"
