"""Effect layer tests.

Lifting membership tables are frozen by hand here so regressions in the
lifting definitions surface as explicit set diffs.  The monad laws are
checked directly from the element operations rather than through the
derived family-level wrappers, which get their own naturality tests.
"""

from types import SimpleNamespace

import pytest

from reftc.effects import (
    MONADS,
    STAR,
    EMAlgebra,
    FibredMonad,
    PredLifting,
    check_eq3,
    free_algebra,
    get_lifting,
    induce_fibred,
    lifted_monad_S,
    liftings_for,
    pi_algebra,
    reindex_algebra,
    set_atom,
    star_of,
)
from reftc.errors import (
    BaseMismatch,
    LiftingUnsound,
    NotVertical,
    Unsupported,
)
from reftc.finset import (
    Carrier,
    FamMor,
    FinMap,
    comprehend,
    compose,
    fam_compose,
    fn_atom,
    identity,
    pi,
)
from reftc.pred import Pred
from reftc.refined import RefinedObj
from test_finset import fam


# -- the fresh divergence atom ------------------------------------------------


def test_star_of_escalates_past_collisions():
    assert star_of(Carrier((0, 1))) == STAR
    assert star_of(Carrier((0, STAR))) == (STAR, 1)
    assert star_of(Carrier((STAR, (STAR, 1)))) == (STAR, 2)


def test_set_atom_sorts_and_dedups():
    assert set_atom((2, 0, 2, 1)) == ("set", (0, 1, 2))
    assert set_atom(()) == ("set", ())


# -- carrier monads -----------------------------------------------------------


def test_powerset_carrier_is_listed_in_size_order():
    tc = MONADS["powerset"].on_carrier(Carrier((0, 1)))
    assert tc.elems == (
        ("set", ()),
        ("set", (0,)),
        ("set", (1,)),
        ("set", (0, 1)),
    )


def test_maybe_carrier_appends_the_fresh_atom():
    tc = MONADS["maybe"].on_carrier(Carrier((0, 1)))
    assert set(tc.elems) == {0, 1, STAR}


SMALL = Carrier((0, 1))
OTHER = Carrier(("x", "y", "z"))
F = FinMap(SMALL, OTHER, {0: "y", 1: "x"})
G = FinMap(OTHER, SMALL, {"x": 1, "y": 0, "z": 1})


@pytest.mark.parametrize("name", sorted(MONADS))
def test_functor_laws(name):
    desc = MONADS[name]
    assert desc.on_map(identity(SMALL)) == identity(desc.on_carrier(SMALL))
    assert desc.on_map(compose(G, F)) == compose(desc.on_map(G), desc.on_map(F))


@pytest.mark.parametrize("name", sorted(MONADS))
def test_monad_unit_laws(name):
    desc = MONADS[name]
    tc = desc.on_carrier(SMALL)
    left = compose(desc.mult(SMALL), desc.unit(tc))
    right = compose(desc.mult(SMALL), desc.on_map(desc.unit(SMALL)))
    assert left == identity(tc)
    assert right == identity(tc)


@pytest.mark.parametrize("name", sorted(MONADS))
def test_monad_associativity(name):
    desc = MONADS[name]
    tc = desc.on_carrier(SMALL)
    outer = compose(desc.mult(SMALL), desc.mult(tc))
    inner = compose(desc.mult(SMALL), desc.on_map(desc.mult(SMALL)))
    assert outer == inner


@pytest.mark.parametrize("name", sorted(MONADS))
def test_unit_and_mult_are_natural(name):
    desc = MONADS[name]
    assert compose(desc.on_map(F), desc.unit(SMALL)) == compose(
        desc.unit(OTHER), F
    )
    tf = desc.on_map(F)
    assert compose(tf, desc.mult(SMALL)) == compose(
        desc.mult(OTHER), desc.on_map(tf)
    )


# -- the fibrewise action -----------------------------------------------------


X = fam((0, 1), {0: (5, 6), 1: (7,)})


def test_on_family_acts_fibrewise():
    fm = induce_fibred("maybe")
    tx = fm.on_family(X)
    assert set(tx.at(0).elems) == {5, 6, STAR}
    assert set(tx.at(1).elems) == {7, STAR}


def test_on_vertical_rejects_non_vertical_maps():
    fm = induce_fibred("maybe")
    y = fam((0, 1), {0: (5,), 1: (5,)})
    shuffle = FamMor(
        y,
        y,
        FinMap(y.base, y.base, {0: 1, 1: 0}),
        {0: identity(Carrier((5,))), 1: identity(Carrier((5,)))},
    )
    with pytest.raises(NotVertical):
        fm.on_vertical(shuffle)


def test_unit_square_commutes_for_vertical_maps():
    fm = induce_fibred("powerset")
    y = fam((0, 1), {0: (8, 9), 1: (8,)})
    f = FamMor(
        X,
        y,
        identity(X.base),
        {
            0: FinMap(X.at(0), y.at(0), {5: 9, 6: 8}),
            1: FinMap(X.at(1), y.at(1), {7: 8}),
        },
    )
    left = fam_compose(fm.on_vertical(f), fm.unit_at(X))
    right = fam_compose(fm.unit_at(y), f)
    assert left == right


def test_theta_at_maybe_graph():
    fm = induce_fibred("maybe")
    theta = fm.theta_at(X)
    assert theta((0, 5)) == (0, 5)
    assert theta((1, 7)) == (1, 7)
    assert theta((0, STAR)) == STAR
    assert theta((1, STAR)) == STAR


def test_theta_at_powerset_graph():
    fm = induce_fibred("powerset")
    theta = fm.theta_at(fam((0,), {0: (5, 6)}))
    assert theta((0, set_atom((5, 6)))) == set_atom(((0, 5), (0, 6)))
    assert theta((0, set_atom(()))) == set_atom(())


# -- predicate liftings -------------------------------------------------------


P = Pred(Carrier((0, 1, 2)), (0, 1))


def test_identity_lifting_is_identity():
    assert get_lifting("none", "id").apply(P) == P


def test_partial_lifting_adds_the_star():
    got = get_lifting("maybe", "partial").apply(P)
    assert got.members == frozenset({0, 1, STAR})


def test_total_lifting_keeps_the_members():
    got = get_lifting("maybe", "total").apply(P)
    assert got.members == frozenset({0, 1})
    assert STAR in got.over


def test_may_lifting_is_nonempty_intersection():
    got = get_lifting("powerset", "may").apply(P)
    want = {
        set_atom(s)
        for s in [(0,), (1,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    }
    assert got.members == frozenset(want)


def test_must_lifting_is_containment():
    got = get_lifting("powerset", "must").apply(P)
    want = {set_atom(s) for s in [(), (0,), (1,), (0, 1)]}
    assert got.members == frozenset(want)


def test_lifting_lookup_errors():
    with pytest.raises(Unsupported):
        liftings_for("continuation")
    with pytest.raises(Unsupported, match="partial, total"):
        get_lifting("maybe", "may")


# -- the soundness guard ------------------------------------------------------


def small_refined_objects():
    x = fam((0, 1), {0: (5,), 1: (5, 6)})
    total = tuple(comprehend(x).total)
    for p_members in [(), (0,), (0, 1)]:
        p = Pred(x.base, p_members)
        pool = [t for t in total if t[0] in p]
        import itertools

        for k in range(len(pool) + 1):
            for q_members in itertools.combinations(pool, k):
                yield RefinedObj(x, p, Pred(Carrier(total), q_members))


def every_lifting():
    for monad_name in sorted(MONADS):
        fm = induce_fibred(monad_name)
        for lifting in liftings_for(monad_name).values():
            yield fm, lifting


def test_canonical_liftings_pass_the_guard_everywhere():
    """The refined-object invariant already forces the inequality for
    any pointwise lifting, so the guard must never fire here."""
    count = 0
    for fm, lifting in every_lifting():
        for o in small_refined_objects():
            assert check_eq3(fm, lifting, o) is None
            count += 1
    assert count > 50


def invariant_breaking_input():
    """q sticks out past the base predicate, which RefinedObj forbids;
    the guard is exactly the check that catches such raw data."""
    x = fam((0, 1), {0: (5,), 1: (5,)})
    total = comprehend(x).total
    return SimpleNamespace(
        x=x,
        p=Pred(x.base, (0,)),
        q=Pred(total, ((0, 5), (1, 5))),
    )


def threshold_lifting():
    """Not fibred: jumps to the full predicate once two members appear."""
    desc = MONADS["maybe"]

    def fn(desc, p):
        tc = desc.on_carrier(p.over)
        if len(p.members) >= 2:
            return Pred(tc, tuple(tc.elems))
        return Pred(tc, tuple(p.members))

    return PredLifting("threshold", desc, fn)


def test_guard_catches_a_non_fibred_lifting():
    fm = induce_fibred("maybe")
    bad = check_eq3(fm, threshold_lifting(), invariant_breaking_input())
    assert bad == (0, STAR)


def test_lifted_monad_S_raises_on_guard_failure():
    fm = induce_fibred("maybe")
    with pytest.raises(LiftingUnsound) as err:
        lifted_monad_S(fm, threshold_lifting(), invariant_breaking_input())
    assert err.value.counterexample == (0, STAR)


def test_lifted_monad_S_partial_object():
    x = fam((0,), {0: (5, 6)})
    total = comprehend(x).total
    o = RefinedObj(x, Pred(x.base, (0,)), Pred(total, ((0, 5),)))
    fm = induce_fibred("maybe")
    got = lifted_monad_S(fm, get_lifting("maybe", "partial"), o)
    assert got.q.members == frozenset({(0, 5), (0, STAR)})
    assert set(got.x.at(0).elems) == {5, 6, STAR}


def test_lifted_monad_S_total_object():
    x = fam((0,), {0: (5, 6)})
    total = comprehend(x).total
    o = RefinedObj(x, Pred(x.base, (0,)), Pred(total, ((0, 5),)))
    fm = induce_fibred("maybe")
    got = lifted_monad_S(fm, get_lifting("maybe", "total"), o)
    assert got.q.members == frozenset({(0, 5)})


# -- algebras -----------------------------------------------------------------


def flat_structure(bottom_image):
    def fn(i, t):
        return bottom_image if t == STAR else t

    return fn


def test_free_algebra_satisfies_both_laws():
    for name in sorted(MONADS):
        fm = induce_fibred(name)
        alg = free_algebra(fm, X)
        assert alg.check_unit_law() is None
        assert alg.check_mult_law() is None


def test_flat_algebra_satisfies_both_laws():
    fm = induce_fibred("maybe")
    carrier = fm.on_family(fam((0,), {0: (5, 6)}))
    alg = EMAlgebra(fm, carrier, flat_structure(5))
    # carrier fibre is (5, 6, ⋆) so the flat structure must also absorb
    # the escalated atom the double application introduces
    alg2 = EMAlgebra(
        fm,
        fam((0,), {0: (5, 6)}),
        flat_structure(5),
    )
    assert alg2.check_unit_law() is None
    assert alg2.check_mult_law() is None


def test_constant_structure_breaks_the_unit_law():
    fm = induce_fibred("maybe")
    alg = EMAlgebra(fm, fam((0,), {0: (5, 6)}), lambda i, t: 5)
    assert alg.check_unit_law() == (0, 6)


def test_wrong_empty_set_image_breaks_the_mult_law():
    """max with an arbitrary value at the empty set respects units but
    not flattening: collapsing {∅, {0}} differs between the two routes."""
    fm = induce_fibred("powerset")

    def almost_max(i, t):
        return 1 if t == set_atom(()) else max(t[1])

    alg = EMAlgebra(fm, fam((0,), {0: (0, 1)}), almost_max)
    assert alg.check_unit_law() is None
    bad = alg.check_mult_law()
    assert bad is not None
    i, tt = bad
    assert i == 0


def test_true_max_satisfies_the_mult_law():
    fm = induce_fibred("powerset")

    def sup(i, t):
        return max(t[1], default=0)

    alg = EMAlgebra(fm, fam((0,), {0: (0, 1)}), sup)
    assert alg.check_unit_law() is None
    assert alg.check_mult_law() is None


def test_materialize_builds_the_structure_morphism():
    fm = induce_fibred("maybe")
    alg = EMAlgebra(fm, fam((0,), {0: (5, 6)}), flat_structure(6))
    m = alg.materialize()
    assert m.at(0)(STAR) == 6
    assert m.at(0)(5) == 5


def test_algebra_equality_compares_materialized_structure():
    fm = induce_fibred("maybe")
    c = fam((0,), {0: (5, 6)})
    a = EMAlgebra(fm, c, flat_structure(5))
    b = EMAlgebra(fm, c, lambda i, t: 5 if t == STAR else t)
    d = EMAlgebra(fm, c, flat_structure(6))
    assert a.equals(b)
    assert not a.equals(d)


def test_reindex_algebra_precomposes_the_base():
    fm = induce_fibred("maybe")
    base = Carrier((0, 1))
    c = fam((0, 1), {0: (5,), 1: (6, 7)})
    alg = EMAlgebra(
        fm, c, lambda i, t: (5 if i == 0 else 6) if t == STAR else t
    )
    u = FinMap(Carrier(("a",)), base, {"a": 1})
    got = reindex_algebra(u, alg)
    assert got.carrier.at("a") == c.at(1)
    assert got.apply("a", STAR) == 6
    assert got.check_unit_law() is None
    assert got.check_mult_law() is None


def test_reindex_algebra_checks_the_base():
    fm = induce_fibred("maybe")
    alg = free_algebra(fm, X)
    with pytest.raises(BaseMismatch):
        reindex_algebra(identity(Carrier(("q",))), alg)


def test_pi_algebra_is_pointwise():
    fm = induce_fibred("maybe")
    x = fam((0,), {0: (7, 8)})
    total = comprehend(x).total
    inner_c = fam(list(total), {t: (5, 6) for t in total})
    inner = EMAlgebra(fm, inner_c, flat_structure(5))
    alg = pi_algebra(fm, x, inner)
    assert alg.carrier == pi(x, inner_c)
    assert alg.apply(0, STAR) == fn_atom({7: 5, 8: 5})
    g = fn_atom({7: 6, 8: 5})
    assert alg.apply(0, g) == g
    assert alg.check_unit_law() is None
    assert alg.check_mult_law() is None


def test_pi_algebra_checks_the_inner_base():
    fm = induce_fibred("maybe")
    inner = free_algebra(fm, fam((9,), {9: (5,)}))
    with pytest.raises(BaseMismatch):
        pi_algebra(fm, X, inner)
