"""Surface syntax tests: reading, printing, and the binder calculus.

Printing then re-reading must reproduce every corpus program up to
alpha equivalence, which the positional representation makes literal
equality of the binder-relevant fields.  The shift and substitution
identities are checked on randomly generated terms; scope resolution
and the annotation conventions of the reader get targeted cases.
"""

from hypothesis import given
from hypothesis import strategies as st
import pytest

import reftc.syntax as S
from reftc.errors import ParseError
from reftc.parse import (
    BaseTypeDecl,
    CheckDecl,
    ConstDecl,
    DefDecl,
    PredDecl,
    parse_program,
    parse_term,
    parse_type,
    read_sexprs,
    show_program,
    show_term,
    show_type,
)
from reftc.syntax import alpha_eq, erase, is_underlying, shift, subst, uses_var
from conftest import corpus_files, read_header


def term(src, scope=()):
    return parse_term(read_sexprs(src)[0], list(scope))


def vtype(src, scope=()):
    return parse_type(read_sexprs(src)[0], list(scope))


# -- reading ------------------------------------------------------------------


def test_symbols_resolve_to_the_innermost_binding():
    t = term("(lam (x (unit)) (lam (x (unit)) (return x)))")
    assert t.body.body.val.index == 0
    t2 = term("(lam (x (unit)) (lam (y (unit)) (return x)))")
    assert t2.body.body.val.index == 1


def test_unbound_symbols_become_constants():
    t = term("(return zero)")
    assert t.val == S.Const("zero")


def test_mu_unwraps_the_thunk_annotation():
    t = term("(mu (f (U (F (unit)))) (force f (F (unit))))")
    assert isinstance(t, S.Mu)
    assert alpha_eq(t.ann, S.TF(S.TUnit()))
    assert alpha_eq(t.body.ann, S.TF(S.TUnit()))


def test_mu_rejects_a_bare_annotation():
    with pytest.raises(ParseError, match="thunked computation"):
        term("(mu (f (F (unit))) (force f (F (unit))))")


def test_force_annotation_is_the_computation_type():
    t = term("(force x (F (unit)))", scope=("x",))
    assert alpha_eq(t.ann, S.TF(S.TUnit()))


def test_pm_motive_is_read_under_its_own_binder():
    t = term(
        "(pm p ((a (unit)) (b (unit))) (z (F (sigma (w (unit)) (unit))))"
        " (return (pair a b (w (unit)) (unit))))",
        scope=("p",),
    )
    assert isinstance(t, S.Pm)
    assert isinstance(t.motive, S.TF)
    assert t.hz == "z"


def test_pm_motive_can_mention_the_scrutinee_binder():
    t = term(
        "(pm p ((a (unit)) (b (unit))) (z (F (base fin z)))"
        " (return (unit-val)))",
        scope=("p",),
    )
    assert t.motive.val.arg == S.Var(0)


def test_case_branches_bind_one_variable_each():
    t = term(
        "(case s (z (F (unit)))"
        " ((l (unit)) (return l))"
        " ((r (unit)) (return r)))",
        scope=("s",),
    )
    assert isinstance(t, S.Case)
    assert t.lbranch.val == S.Var(0)
    assert t.rbranch.val == S.Var(0)
    assert alpha_eq(t.motive, S.TF(S.TUnit()))


def test_refined_types_read_both_shapes():
    r = vtype("(ref w (base int5 (unit-val)) (nonneg w))")
    assert isinstance(r, S.TRefBase)
    assert r.body == S.FApp("nonneg", S.Var(0))
    u = vtype("(ref w (unit) (top))")
    assert isinstance(u, S.TRefUnit)
    with pytest.raises(ParseError, match="base types and unit"):
        vtype("(ref w (sum (unit) (unit)) (top))")


def test_reader_reports_positions():
    with pytest.raises(ParseError) as err:
        parse_program("(def d () (unit)\n  (unit-val)")
    assert err.value.line is not None


def test_unknown_forms_are_rejected():
    with pytest.raises(ParseError, match="unknown term form"):
        term("(twist x)", scope=("x",))
    with pytest.raises(ParseError, match="unknown type form"):
        vtype("(tensor (unit) (unit))")
    with pytest.raises(ParseError, match="unknown declaration form"):
        parse_program("(axiom x)")


# -- printing round-trips -----------------------------------------------------


def forms_equiv(a, b) -> bool:
    if type(a) is not type(b):
        return False
    match a:
        case BaseTypeDecl():
            return a.name == b.name and alpha_eq(a.arg, b.arg) and a.spec == b.spec
        case ConstDecl():
            return a.name == b.name and alpha_eq(a.ty, b.ty) and a.elem == b.elem
        case PredDecl():
            return (
                a.name == b.name
                and alpha_eq(a.arg, b.arg)
                and a.elems == b.elems
            )
        case DefDecl():
            return (
                a.name == b.name
                and len(a.ctx) == len(b.ctx)
                and all(
                    alpha_eq(t1, t2)
                    for (_, t1), (_, t2) in zip(a.ctx, b.ctx)
                )
                and alpha_eq(a.ty, b.ty)
                and alpha_eq(a.term, b.term)
            )
        case CheckDecl():
            return (
                a.kind == b.kind
                and len(a.ctx) == len(b.ctx)
                and all(
                    alpha_eq(t1, t2)
                    for (_, t1), (_, t2) in zip(a.ctx, b.ctx)
                )
                and len(a.parts) == len(b.parts)
                and all(alpha_eq(p1, p2) for p1, p2 in zip(a.parts, b.parts))
            )
    return False


def roundtrip_files():
    out = []
    for kind in ("pos", "neg"):
        for path in corpus_files(kind):
            _, fails = read_header(path)
            if fails and fails[0] == "parse":
                continue
            out.append(path)
    return out


@pytest.mark.parametrize("path", roundtrip_files(), ids=lambda p: p.stem)
def test_print_then_reread_is_alpha_identity(path):
    prog = parse_program(path.read_text(encoding="utf-8"))
    again = parse_program(show_program(prog))
    assert len(again.forms) == len(prog.forms)
    for a, b in zip(prog.forms, again.forms):
        assert forms_equiv(a, b)


def test_printer_freshens_shadowed_hints():
    t = term("(lam (x (unit)) (lam (x (unit)) (return x)))")
    printed = show_term(t, [])
    assert alpha_eq(term(printed), t)


def test_printer_handles_dependent_motives():
    src = (
        "(pm p ((a (unit)) (b (unit))) (z (F (base fin z)))"
        " (return (unit-val)))"
    )
    t = term(src, scope=("p",))
    printed = show_term(t, ["p"])
    assert alpha_eq(term(printed, scope=("p",)), t)


# -- the binder calculus ------------------------------------------------------


def _terms():
    leaves = st.one_of(
        st.integers(min_value=0, max_value=3).map(S.Var),
        st.just(S.UnitVal()),
        st.just(S.Const("k")),
    )

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(
                lambda p: S.Pair(p[0], p[1], S.TUnit(), S.TUnit())
            ),
            children.map(lambda v: S.Thunk(S.Return(v))),
            children.map(lambda v: S.Lam(S.TUnit(), S.Return(v))),
            st.tuples(children, children).map(
                lambda p: S.ToIn(
                    S.Return(p[0]), S.TUnit(), S.TF(S.TUnit()), S.Return(p[1])
                )
            ),
            children.map(lambda v: S.Inl(v, S.TSum(S.TUnit(), S.TUnit()))),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(_terms())
def test_shift_by_zero_is_identity(t):
    assert shift(t, 0) == t


@given(_terms(), st.integers(min_value=0, max_value=2))
def test_substitution_undoes_weakening(t, j):
    assert subst(shift(t, 1, j), S.Const("swapped"), j) == t


@given(_terms(), st.integers(min_value=1, max_value=2), st.integers(min_value=1, max_value=2))
def test_shifts_compose(t, d1, d2):
    assert shift(shift(t, d1), d2) == shift(t, d1 + d2)


def test_subst_lifts_the_replacement_under_binders():
    t = S.Lam(S.TUnit(), S.Return(S.Var(1)))
    got = subst(t, S.Var(4))
    assert got == S.Lam(S.TUnit(), S.Return(S.Var(5)))


def test_subst_renumbers_variables_above_the_target():
    assert subst(S.Var(2), S.UnitVal(), 0) == S.Var(1)
    assert subst(S.Var(0), S.UnitVal(), 0) == S.UnitVal()


def test_alpha_eq_ignores_hints_and_locations():
    a = S.Lam(S.TUnit(), S.Return(S.Var(0)), hint="a", loc=(1, 1))
    b = S.Lam(S.TUnit(), S.Return(S.Var(0)), hint="b", loc=(9, 9))
    assert alpha_eq(a, b)
    assert not alpha_eq(a, S.Lam(S.TUnit(), S.Return(S.UnitVal())))


def test_uses_var_tracks_binder_depth():
    assert uses_var(S.Var(0), 0)
    assert not uses_var(S.Lam(S.TUnit(), S.Return(S.Var(0))), 0)
    assert uses_var(S.Lam(S.TUnit(), S.Return(S.Var(1))), 0)


# -- erasure ------------------------------------------------------------------


def test_erase_strips_refinements_structurally():
    r = vtype("(sigma (w (ref v (base int5 (unit-val)) (nonneg v))) (ref u (unit) (top)))")
    got = erase(r)
    assert got == S.TSigma(S.TBase("int5", S.UnitVal()), S.TUnit())
    assert is_underlying(got)
    assert not is_underlying(r)


def test_erase_reaches_annotations_inside_terms():
    t = S.Inl(
        S.UnitVal(),
        S.TSum(S.TRefUnit(S.FTop()), S.TUnit()),
    )
    assert erase(t) == S.Inl(S.UnitVal(), S.TSum(S.TUnit(), S.TUnit()))


def test_erase_is_idempotent_on_corpus_programs():
    for path in roundtrip_files():
        prog = parse_program(path.read_text(encoding="utf-8"))
        for d in prog.defs:
            once = erase(d.term)
            assert erase(once) == once
            assert is_underlying(once)
