"""Kernel tests: carriers, maps, families, and the categorical structure.

Expected values for the structured constructions (comprehension totals,
dependent function carriers, the pairing comparison) are computed here
by independent enumeration before being compared with the kernel.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reftc.errors import BaseMismatch, KernelError
from reftc.finset import (
    Carrier,
    FamMor,
    Family,
    FinMap,
    TERMINAL,
    UNIT,
    atom_key,
    bang,
    cart,
    comprehend,
    comprehend_mor,
    compose,
    constant_family,
    cotuple,
    coprod_inj,
    fam_compose,
    fam_coprod,
    fam_identity,
    fn_apply,
    fn_atom,
    identity,
    inverse,
    is_mono,
    kappa,
    phi,
    phi_inv,
    pi,
    pi_counit,
    pi_intro,
    reindex,
    render_atom,
    section_of,
    sigma,
    struct_delta,
    struct_sigma,
    unit_family,
    unsection_of,
)


def fam(base_elems, fibres):
    base = Carrier(base_elems)
    return Family(base, {i: Carrier(fibres[i]) for i in base})


# -- atoms and carriers -------------------------------------------------------


def test_atom_key_orders_ints_before_strings_before_tuples():
    atoms = [("a", 1), "z", 3, (), 0, "a", (0, 1)]
    ordered = sorted(atoms, key=atom_key)
    assert ordered == [0, 3, "a", "z", (), (0, 1), ("a", 1)]


def test_atom_key_tuples_by_length_then_pointwise():
    assert sorted([(1, 1), (0,), (0, 2)], key=atom_key) == [(0,), (0, 2), (1, 1)]


@given(st.lists(st.integers(-5, 5), unique=True))
def test_carrier_canonicalises_any_insertion_order(elems):
    a = Carrier(elems)
    b = Carrier(reversed(elems))
    assert a == b
    assert list(a) == sorted(elems)


def test_carrier_rejects_duplicates():
    with pytest.raises(KernelError):
        Carrier((1, 2, 1))


def test_render_atom_nested():
    assert render_atom((UNIT, (0, "x"))) == "(* (0 x))"


# -- finite maps --------------------------------------------------------------


def test_finmap_must_cover_domain():
    c = Carrier((0, 1))
    with pytest.raises(KernelError):
        FinMap(c, c, {0: 0})


def test_finmap_values_must_land_in_codomain():
    c = Carrier((0, 1))
    with pytest.raises(KernelError):
        FinMap(c, c, {0: 0, 1: 7})


def test_compose_and_identity():
    c = Carrier((0, 1, 2))
    f = FinMap(c, c, {0: 1, 1: 2, 2: 0})
    assert compose(f, identity(c)) == f
    assert compose(identity(c), f) == f
    assert compose(f, compose(f, f)).is_identity()


def test_compose_requires_matching_middle():
    c, d = Carrier((0,)), Carrier((1,))
    with pytest.raises(BaseMismatch):
        compose(FinMap(c, c, {0: 0}), FinMap(d, d, {1: 1}))


def test_bang_and_terminal():
    c = Carrier((3, 4))
    assert bang(c).cod == TERMINAL
    assert set(bang(c).image()) == {UNIT}


def test_is_mono():
    c = Carrier((0, 1))
    assert is_mono(FinMap(c, c, {0: 1, 1: 0}))
    assert not is_mono(FinMap(c, c, {0: 0, 1: 0}))


# -- families and reindexing --------------------------------------------------


def test_family_fibres_are_looked_up_by_base_element():
    x = fam((0, 1), {0: (5,), 1: (6, 7)})
    assert list(x.at(1)) == [6, 7]


def test_reindex_pulls_fibres_back():
    x = fam((0, 1), {0: (5,), 1: (6, 7)})
    u = FinMap(Carrier(("a", "b")), Carrier((0, 1)), {"a": 1, "b": 1})
    y = reindex(u, x)
    assert list(y.at("a")) == [6, 7]
    assert list(y.at("b")) == [6, 7]


def test_reindex_identity_is_identity():
    x = fam((0, 1), {0: (5,), 1: (6, 7)})
    assert reindex(identity(x.base), x) == x


def test_cart_lies_over_u():
    x = fam((0, 1), {0: (5,), 1: (6, 7)})
    u = FinMap(Carrier(("a",)), Carrier((0, 1)), {"a": 0})
    m = cart(u, x)
    assert m.base_map == u
    assert m.src == reindex(u, x)
    assert m.dst == x


def test_fam_compose_associates_on_example():
    x = fam((0,), {0: (1, 2)})
    f = fam_identity(x)
    assert fam_compose(f, fam_compose(f, f)) == fam_compose(fam_compose(f, f), f)


# -- comprehension ------------------------------------------------------------


def expected_total(x: Family):
    """Independent enumeration of the comprehension total."""
    return sorted(
        ((i, a) for i in x.base for a in x.at(i)), key=atom_key
    )


def test_comprehend_total_is_the_pairs():
    x = fam((0, 1), {0: (5,), 1: (6, 7)})
    cx = comprehend(x)
    assert list(cx.total) == expected_total(x)
    assert all(cx.proj((i, a)) == i for (i, a) in cx.total)


@st.composite
def small_families(draw):
    base = draw(st.lists(st.integers(0, 3), unique=True, max_size=3))
    fibres = {
        i: Carrier(draw(st.lists(st.integers(0, 3), unique=True, max_size=3)))
        for i in base
    }
    return Family(Carrier(base), fibres)


@settings(max_examples=60, deadline=None)
@given(small_families())
def test_comprehension_total_matches_enumeration(x):
    assert list(comprehend(x).total) == expected_total(x)


def vertical_maps(x: Family, y: Family):
    """All vertical morphisms x -> y over a shared base, by enumeration."""
    per_point = []
    for i in x.base:
        graphs = [
            dict(zip(x.at(i), choice))
            for choice in itertools.product(y.at(i), repeat=len(x.at(i)))
        ]
        per_point.append([(i, g) for g in graphs])
    for combo in itertools.product(*per_point):
        fibre_maps = {
            i: FinMap(x.at(i), y.at(i), g) for i, g in combo
        }
        yield FamMor(x, y, identity(x.base), fibre_maps)


def test_section_unsection_bijection():
    x = fam((0, 1), {0: (5, 6), 1: (7,)})
    one = unit_family(x.base)
    count = 0
    for v in vertical_maps(one, x):
        s = section_of(v)
        assert compose(comprehend(x).proj, s) == identity(x.base)
        assert unsection_of(x, s) == v
        count += 1
    assert count == 2


def test_unsection_rejects_non_sections():
    y = fam((0, 1), {0: (5,), 1: (6,)})
    twisted = FinMap(
        y.base, comprehend(y).total, {0: (0, 5), 1: (0, 5)}
    )
    with pytest.raises(KernelError):
        unsection_of(y, twisted)


# -- dependent sums -----------------------------------------------------------


def test_sigma_fibres_are_dependent_pairs():
    x = fam((0, 1), {0: (5,), 1: (6, 7)})
    y = fam(
        expected_total(x),
        {(0, 5): ("a",), (1, 6): ("b", "c"), (1, 7): ()},
    )
    s = sigma(x, y)
    assert list(s.at(1)) == [(6, "b"), (6, "c")]
    assert list(s.at(0)) == [(5, "a")]


def test_kappa_is_a_bijection_onto_nested_pairs():
    x = fam((0,), {0: (5, 6)})
    y = fam(expected_total(x), {(0, 5): ("a",), (0, 6): ("b",)})
    k = kappa(x, y)
    want = {((0, 5), "a"): (0, (5, "a")), ((0, 6), "b"): (0, (6, "b"))}
    assert dict(k.graph) == want
    assert compose(inverse(k), k).is_identity()
    assert compose(k, inverse(k)).is_identity()


def test_inverse_requires_bijection():
    c = Carrier((0, 1))
    with pytest.raises(KernelError):
        inverse(FinMap(c, c, {0: 0, 1: 0}))


def test_struct_sigma_swaps_reindexed_layers():
    x = fam((0,), {0: (5, 6)})
    y = fam((0,), {0: ("a",)})
    s = struct_sigma(x, y)
    pairs = dict(s.graph)
    assert pairs[((0, 5), "a")] == ((0, "a"), 5)
    assert pairs[((0, 6), "a")] == ((0, "a"), 6)


def test_struct_delta_duplicates_the_fibre_coordinate():
    x = fam((0,), {0: (5, 6)})
    d = struct_delta(x)
    assert dict(d.graph)[(0, 5)] == ((0, 5), 5)


# -- dependent products -------------------------------------------------------


def expected_pi_fibre(x: Family, y: Family, i):
    """All dependent choice functions at one base point, independently."""
    keys = list(x.at(i))
    pools = [list(y.at((i, a))) for a in keys]
    out = []
    for choice in itertools.product(*pools):
        out.append(fn_atom(tuple(zip(keys, choice))))
    return sorted(out, key=atom_key)


def test_pi_carrier_matches_choice_functions():
    x = fam((0, 1), {0: (5,), 1: (6, 7)})
    y = fam(
        expected_total(x),
        {(0, 5): ("a", "b"), (1, 6): ("c",), (1, 7): ("d", "e")},
    )
    z = pi(x, y)
    for i in x.base:
        assert list(z.at(i)) == expected_pi_fibre(x, y, i)
    assert len(z.at(1)) == 2


def test_pi_counit_evaluates():
    x = fam((0,), {0: (5, 6)})
    y = fam(expected_total(x), {(0, 5): ("a", "b"), (0, 6): ("c",)})
    eps = pi_counit(x, y)
    g = fn_atom(((5, "a"), (6, "c")))
    assert eps.at((0, 5))(g) == "a"
    assert eps.at((0, 6))(g) == "c"


def test_fn_apply_reads_the_graph():
    g = fn_atom(((0, "x"), (1, "y")))
    assert fn_apply(g, 1) == "y"
    with pytest.raises(KernelError):
        fn_apply(g, 9)


def test_phi_and_phi_inv_are_mutually_inverse():
    x = fam((0,), {0: (5, 6)})
    y = fam((0,), {0: ("a", "b")})
    total = comprehend(x).total
    yp = reindex(comprehend(x).proj, y)
    count = 0
    for v in vertical_maps(unit_family(total), yp):
        f = phi(x, y, v)
        assert f.src == x and f.dst == y and f.is_vertical()
        assert phi_inv(x, y, f) == v
        count += 1
    assert count == 2 ** 2


def test_pi_intro_transposes_pointwise():
    x = fam((0,), {0: (5, 6)})
    y = fam(expected_total(x), {(0, 5): ("a", "b"), (0, 6): ("c",)})
    total = comprehend(x).total
    for v in vertical_maps(unit_family(total), y):
        s = pi_intro(x, y, v)
        assert s.dst == pi(x, y)
        want = fn_atom({a: v.at((0, a))(UNIT) for a in x.at(0)})
        assert s.at(0)(UNIT) == want


# -- coproducts ---------------------------------------------------------------


def test_fam_coprod_tags_fibres():
    x = fam((0,), {0: (5,)})
    y = fam((0,), {0: (6, 7)})
    xy = fam_coprod(x, y)
    assert list(xy.at(0)) == [("inl", 5), ("inr", 6), ("inr", 7)]


def test_cotuple_restricts_to_injections():
    x = fam((0,), {0: (5,)})
    y = fam((0,), {0: (6,)})
    z = fam((0,), {0: ("a", "b")})
    f = FamMor(x, z, identity(x.base), {0: FinMap(x.at(0), z.at(0), {5: "a"})})
    g = FamMor(y, z, identity(y.base), {0: FinMap(y.at(0), z.at(0), {6: "b"})})
    h = cotuple(f, g)
    assert fam_compose(h, coprod_inj(x, y, "inl")) == f
    assert fam_compose(h, coprod_inj(x, y, "inr")) == g
