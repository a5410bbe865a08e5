"""Denotations in the finite backend, for both layers.

A signature file declares finite carriers for base types, elements for
constants, and subsets for predicate symbols.  From those this module
interprets underlying contexts as carriers of nested environment pairs,
underlying types as families, computation types as algebras for the
chosen monad, and terms as sections mapping each environment to an
element.  The refinement layer reinterprets contexts as predicates over
the underlying carriers and types as refined objects, reusing the
lifting constructions; formulas become predicates by brute evaluation.

Categorical composites (pullbacks of sections, evaluation, symmetry,
the pairing comparison) are evaluated literally rather than through a
shortcut evaluator, so the soundness checks exercise the same formulas
the kernel modules define.

The soundness verifier restricts the underlying section of a term to
the members of the refined context predicate and tests membership in
the refined target; for returned values it also tests the composite
through the comparison map into the lifted predicate.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import syntax as S
from .errors import ModelError, Unchecked, Unsupported
from .finset import (
    Carrier,
    FamMor,
    Family,
    FinMap,
    TERMINAL,
    UNIT,
    bang,
    cart,
    comprehend,
    comprehend_mor,
    compose,
    constant_family,
    fam_coprod,
    fn_apply,
    fn_atom,
    reindex,
    reindex_mor,
    render_atom,
    section_of,
    sigma,
    unsection_of,
)
from .pred import (
    Pred,
    equality_pred,
    forall_along,
    implies,
    meet,
    pull,
    top,
)
from .refined import (
    RefinedObj,
    coprod_refined,
    pi_refined,
    sigma_refined,
)
from .effects import (
    EMAlgebra,
    free_algebra,
    get_lifting,
    induce_fibred,
    lifted_monad_S,
    pi_algebra,
    star_of,
)
from .fixpoint import PosetFamily, conway, flat_pointed, pointwise_fn_poset
from .parse import BaseTypeDecl, ConstDecl, DefDecl, PredDecl, Program


_DEFAULT_LIFTING = {"none": "id", "maybe": "partial", "powerset": "may"}


class ModelEnv:
    """A loaded signature plus the chosen monad and predicate lifting.

    Base type carriers live over the comprehension of their closed
    argument type, constants are single elements, predicate symbols are
    subsets.  Constants are validated against their declared types at
    load time; a refined declaration whose element escapes the
    refinement is rejected here rather than surfacing later as a
    soundness failure.
    """

    def __init__(self, program: Program, monad="none", lifting=None,
                 layer="refinement"):
        self.fm = induce_fibred(monad)
        self.lifting = get_lifting(monad, lifting or _DEFAULT_LIFTING[monad])
        self.recursion = monad == "maybe"
        self.layer = layer
        self.basetypes = {}
        self.consts = {}
        self.preds = {}
        self._memo = {}
        self.enforce_checked = False
        self._checked = set()
        for form in program.forms:
            if isinstance(form, BaseTypeDecl):
                self._load_basetype(form)
            elif isinstance(form, ConstDecl):
                self._load_const(form)
            elif isinstance(form, PredDecl):
                self._load_pred(form)

    # -- signature loading ---------------------------------------------------

    def _closed_arg_total(self, arg: S.Node) -> Carrier:
        if not S.is_underlying(arg):
            raise ModelError("argument types of declarations must be unrefined")
        fam = denote_vtype(self, (), arg)
        return comprehend(fam).total

    def _load_basetype(self, d: BaseTypeDecl):
        if d.name in self.basetypes:
            raise ModelError("base type %r declared twice" % d.name)
        total = self._closed_arg_total(d.arg)
        kind, data = d.spec
        if kind == "const":
            fam = constant_family(total, Carrier(data))
        else:
            table = {key: Carrier(atoms) for key, atoms in data}
            if len(table) != len(data):
                raise ModelError("duplicate carrier key for base type %r" % d.name)
            missing = [t for t in total if t[1] not in table]
            if missing or len(table) != len(total):
                raise ModelError(
                    "carrier table for base type %r does not match its "
                    "argument type" % d.name
                )
            fam = Family(total, {t: table[t[1]] for t in total})
        self.basetypes[d.name] = (d.arg, fam)

    def _load_const(self, d: ConstDecl):
        if d.name in self.consts:
            raise ModelError("constant %r declared twice" % d.name)
        under = S.erase(d.ty)
        try:
            fam = denote_vtype(self, (), under)
        except KeyError as e:
            raise ModelError(
                "constant %r refers to an unknown declaration: %s" % (d.name, e)
            )
        fibre = fam.at(UNIT)
        if d.elem not in fibre:
            raise ModelError(
                "constant %r denotes %s, not an element of its type"
                % (d.name, render_atom(d.elem))
            )
        if self.layer == "refinement" and not S.is_underlying(d.ty):
            o = denote_rvtype(self, (), d.ty)
            if (UNIT, d.elem) not in o.q:
                raise ModelError(
                    "constant %r denotes %s, which violates its declared "
                    "refinement" % (d.name, render_atom(d.elem))
                )
        self.consts[d.name] = (d.ty, d.elem)

    def _load_pred(self, d: PredDecl):
        if d.name in self.preds:
            raise ModelError("predicate %r declared twice" % d.name)
        total = self._closed_arg_total(d.arg)
        members = []
        for e in d.elems:
            if (UNIT, e) not in total:
                raise ModelError(
                    "predicate %r lists %s, not an element of its argument "
                    "type" % (d.name, render_atom(e))
                )
            members.append((UNIT, e))
        self.preds[d.name] = (d.arg, Pred(total, members))

    # -- bookkeeping ---------------------------------------------------------

    def const_type(self, name: str) -> S.Node:
        if name not in self.consts:
            raise ModelError("unknown constant %r" % name)
        return self.consts[name][0]

    def memo(self, key, thunk):
        if key not in self._memo:
            self._memo[key] = thunk()
        return self._memo[key]

    def mark_checked(self, ctx, term):
        self._checked.add((ctx, term))

    def assert_checked(self, ctx, term):
        if self.enforce_checked and (ctx, term) not in self._checked:
            raise Unchecked("term was not accepted by the checker")


# -- type synthesis from annotations -----------------------------------------
#
# Terms carry enough annotations to reconstruct their underlying types
# without any checking; the checker separately validates that these
# shapes are derivable.  Everything here is syntax only.


def type_of_value(env: ModelEnv, ctx: tuple, v: S.Node) -> S.Node:
    match v:
        case S.Var(index=k):
            return S.shift(ctx[len(ctx) - 1 - k], k + 1)
        case S.Const(name=n):
            return S.erase(env.const_type(n))
        case S.UnitVal():
            return S.TUnit()
        case S.Pair(dom=d, cod=c):
            return S.TSigma(d, c)
        case S.Thunk(comp=m):
            return S.TU(type_of_comp(env, ctx, m))
        case S.Inl(ann=a) | S.Inr(ann=a):
            return a
    raise ModelError("not a value term: %r" % (v,))


def type_of_comp(env: ModelEnv, ctx: tuple, m: S.Node) -> S.Node:
    match m:
        case S.Return(val=v):
            return S.TF(type_of_value(env, ctx, v))
        case S.ToIn(res=r):
            return r
        case S.Force(ann=a):
            return a
        case S.Lam(dom=d, body=b):
            return S.TPi(d, type_of_comp(env, ctx + (d,), b))
        case S.App(arg=v, cod=c):
            return S.subst(c, v)
        case S.Pm(scrut=v, motive=mo):
            return S.subst(mo, v)
        case S.Case(scrut=v, motive=mo):
            return S.subst(mo, v)
        case S.Mu(ann=a):
            return a
    raise ModelError("not a computation term: %r" % (m,))


# -- underlying layer: contexts and types ------------------------------------


def denote_ctx(env: ModelEnv, ctx: tuple) -> Carrier:
    """Environments as nested pairs; the empty context is the one-point
    carrier."""
    def build():
        if not ctx:
            return TERMINAL
        fam = denote_vtype(env, ctx[:-1], ctx[-1])
        return comprehend(fam).total

    return env.memo(("ctx", ctx), build)


def _weakening_to_closed(env: ModelEnv, base: Carrier, arg: S.Node) -> FinMap:
    """Comprehension of the cartesian lifting of the bang map, i.e. the
    map {bang* X} -> {X} for the closed argument family."""
    closed = denote_vtype(env, (), arg)
    return comprehend_mor(cart(bang(base), closed))


def denote_vtype(env: ModelEnv, ctx: tuple, a: S.Node) -> Family:
    def build():
        base = denote_ctx(env, ctx)
        match a:
            case S.TUnit():
                return constant_family(base, TERMINAL)
            case S.TBase(name=n, arg=v):
                if n not in env.basetypes:
                    raise ModelError("unknown base type %r" % n)
                arg_ty, fam = env.basetypes[n]
                s = denote_vterm(env, ctx, v)
                return reindex(compose(_weakening_to_closed(env, base, arg_ty), s), fam)
            case S.TSigma(dom=d, cod=c):
                x = denote_vtype(env, ctx, d)
                y = denote_vtype(env, ctx + (d,), c)
                return sigma(x, y)
            case S.TU(comp=cm):
                return denote_ctype(env, ctx, cm).carrier
            case S.TSum(left=l, right=r):
                return fam_coprod(
                    denote_vtype(env, ctx, l), denote_vtype(env, ctx, r)
                )
        raise ModelError("not an unrefined value type: %r" % (a,))

    return env.memo(("vtype", ctx, a), build)


def denote_ctype(env: ModelEnv, ctx: tuple, c: S.Node) -> EMAlgebra:
    def build():
        match c:
            case S.TF(val=a):
                return free_algebra(env.fm, denote_vtype(env, ctx, a))
            case S.TPi(dom=d, cod=cm):
                x = denote_vtype(env, ctx, d)
                inner = denote_ctype(env, ctx + (d,), cm)
                return pi_algebra(env.fm, x, inner)
        raise ModelError("not a computation type: %r" % (c,))

    return env.memo(("ctype", ctx, c), build)


# -- underlying layer: terms -------------------------------------------------


def _env_lookup(gamma, k: int):
    for _ in range(k):
        gamma = gamma[0]
    return gamma[1]


def _section(base: Carrier, fam: Family, values) -> FinMap:
    total = comprehend(fam).total
    return FinMap(base, total, {g: (g, values(g)) for g in base})


def denote_vterm(env: ModelEnv, ctx: tuple, v: S.Node) -> FinMap:
    """The section of the term's type family: each environment maps to
    the pair of itself and the element the term denotes."""

    def build():
        env.assert_checked(ctx, v)
        base = denote_ctx(env, ctx)
        fam = denote_vtype(env, ctx, type_of_value(env, ctx, v))
        elem = _value_elem(env, ctx, v)
        return _section(base, fam, elem)

    return env.memo(("vterm", ctx, v), build)


def _value_elem(env: ModelEnv, ctx: tuple, v: S.Node):
    match v:
        case S.Var(index=k):
            return lambda g: _env_lookup(g, k)
        case S.Const(name=n):
            e = env.consts[n][1]
            return lambda g: e
        case S.UnitVal():
            return lambda g: UNIT
        case S.Pair(fst=f, snd=s):
            fe = _value_elem(env, ctx, f)
            se = _value_elem(env, ctx, s)
            return lambda g: (fe(g), se(g))
        case S.Thunk(comp=m):
            sec = denote_cterm(env, ctx, m, type_of_comp(env, ctx, m))
            return lambda g: sec(g)[1]
        case S.Inl(val=w):
            we = _value_elem(env, ctx, w)
            return lambda g: ("inl", we(g))
        case S.Inr(val=w):
            we = _value_elem(env, ctx, w)
            return lambda g: ("inr", we(g))
    raise ModelError("not a value term: %r" % (v,))


def denote_cterm(env: ModelEnv, ctx: tuple, m: S.Node, cty: S.Node) -> FinMap:
    """The section of the algebra carrier of cty, the term's type."""

    def build():
        env.assert_checked(ctx, m)
        base = denote_ctx(env, ctx)
        alg = denote_ctype(env, ctx, cty)
        elem = _comp_elem(env, ctx, m, cty, alg)
        return _section(base, alg.carrier, elem)

    return env.memo(("cterm", ctx, m, cty), build)


def _comp_elem(env: ModelEnv, ctx: tuple, m: S.Node, cty: S.Node, alg: EMAlgebra):
    desc = env.fm.desc
    match m:
        case S.Return(val=v):
            ve = _value_elem(env, ctx, v)
            match cty:
                case S.TF(val=a):
                    fam = denote_vtype(env, ctx, a)
                    return lambda g: desc.unit_elem(fam.at(g), ve(g))
            raise ModelError("return requires a lifted type")
        case S.ToIn(src=src, dom=d, res=r, body=n):
            fam = denote_vtype(env, ctx, d)
            msec = denote_cterm(env, ctx, src, S.TF(d))
            nsec = denote_cterm(env, ctx + (d,), n, S.shift(r, 1))

            def run(g):
                t = msec(g)[1]
                mapped = desc.map_elem(
                    fam.at(g), alg.carrier.at(g), lambda a: nsec((g, a))[1], t
                )
                return alg.apply(g, mapped)

            return run
        case S.Force(val=v):
            ve = _value_elem(env, ctx, v)
            return ve
        case S.Lam(dom=d, body=b):
            match cty:
                case S.TPi(cod=cm):
                    bsec = denote_cterm(env, ctx + (d,), b, cm)
                    fam = denote_vtype(env, ctx, d)
                    return lambda g: fn_atom(
                        {a: bsec((g, a))[1] for a in fam.at(g)}
                    )
            raise ModelError("lambda requires a dependent product type")
        case S.App(fn=f, arg=v, dom=d, cod=cm):
            fsec = denote_cterm(env, ctx, f, S.TPi(d, cm))
            ve = _value_elem(env, ctx, v)
            return lambda g: fn_apply(fsec(g)[1], ve(g))
        case S.Pm(scrut=v, dom=d, cod=c, motive=mo, body=b):
            ve = _value_elem(env, ctx, v)
            inner = S.subst(
                S.shift(mo, 2, 1),
                S.Pair(S.Var(1), S.Var(0), S.shift(d, 2), S.shift(c, 2, 1)),
            )
            bsec = denote_cterm(env, ctx + (d, c), b, inner)
            return lambda g: bsec(((g, ve(g)[0]), ve(g)[1]))[1]
        case S.Case(scrut=v, motive=mo, lty=lt, lbranch=lb, rty=rt, rbranch=rb):
            ve = _value_elem(env, ctx, v)
            sumty = S.TSum(lt, rt)
            lty_in = S.subst(
                S.shift(mo, 1, 1), S.Inl(S.Var(0), S.shift(sumty, 1))
            )
            rty_in = S.subst(
                S.shift(mo, 1, 1), S.Inr(S.Var(0), S.shift(sumty, 1))
            )
            lsec = denote_cterm(env, ctx + (lt,), lb, lty_in)
            rsec = denote_cterm(env, ctx + (rt,), rb, rty_in)

            def run(g):
                tag, a = ve(g)
                return lsec((g, a))[1] if tag == "inl" else rsec((g, a))[1]

            return run
        case S.Mu(ann=a, body=b):
            sec = denote_mu(env, ctx, m)
            return lambda g: sec(g)[1]
    raise ModelError("not a computation term: %r" % (m,))


def denote_ctype_posets(env: ModelEnv, ctx: tuple, c: S.Node) -> PosetFamily:
    """Carriers of a computation type ordered for fixpoint iteration:
    lifted types are flat with the divergence atom at the bottom and
    products are ordered pointwise.  Only the maybe monad admits this."""
    if not env.recursion:
        raise Unsupported("recursion requires the maybe monad")
    base = denote_ctx(env, ctx)
    match c:
        case S.TF(val=a):
            fam = denote_vtype(env, ctx, a)
            return PosetFamily(
                base,
                {
                    g: flat_pointed(
                        env.fm.desc.on_carrier(fam.at(g)), star_of(fam.at(g))
                    )
                    for g in base
                },
            )
        case S.TPi(dom=d, cod=cm):
            fam = denote_vtype(env, ctx, d)
            inner = denote_ctype_posets(env, ctx + (d,), cm)
            return PosetFamily(
                base,
                {
                    g: pointwise_fn_poset(
                        fam.at(g).elems, {a: inner.at((g, a)) for a in fam.at(g)}
                    )
                    for g in base
                },
            )
    raise ModelError("not a computation type: %r" % (c,))


def mu_endo(env: ModelEnv, ctx: tuple, m: S.Node) -> tuple[PosetFamily, FamMor]:
    """The fibrewise endomap whose least fixed point interprets a
    recursive term, together with the order on its carriers."""
    match m:
        case S.Mu(ann=a, body=b):
            pf = denote_ctype_posets(env, ctx, a)
            uc = S.TU(a)
            bsec = denote_cterm(env, ctx + (uc,), b, S.shift(a, 1))
            x = pf.underlying()
            f = FamMor(
                x,
                x,
                FinMap(x.base, x.base, {g: g for g in x.base}),
                {
                    g: FinMap(
                        x.at(g),
                        x.at(g),
                        {t: bsec((g, t))[1] for t in x.at(g)},
                    )
                    for g in x.base
                },
            )
            return pf, f
    raise ModelError("not a recursion term: %r" % (m,))


def denote_mu(env: ModelEnv, ctx: tuple, m: S.Node) -> FinMap:
    pf, f = mu_endo(env, ctx, m)
    return conway(pf, f)


# -- formulas ----------------------------------------------------------------


def interpret_formula(env: ModelEnv, ctx: tuple, p: S.Node) -> Pred:
    def build():
        base = denote_ctx(env, ctx)
        match p:
            case S.FTop():
                return top(base)
            case S.FAnd(left=l, right=r):
                return meet(
                    interpret_formula(env, ctx, l), interpret_formula(env, ctx, r)
                )
            case S.FImp(left=l, right=r):
                return implies(
                    interpret_formula(env, ctx, l), interpret_formula(env, ctx, r)
                )
            case S.FAll(dom=d, body=b):
                fam = denote_vtype(env, ctx, d)
                inner = interpret_formula(env, ctx + (d,), b)
                return forall_along(comprehend(fam).proj, inner)
            case S.FEq(ann=a, left=l, right=r):
                return _eq_formula(env, ctx, a, l, r)
            case S.FApp(name=n, arg=v):
                if n not in env.preds:
                    raise ModelError("unknown predicate symbol %r" % n)
                arg_ty, pr = env.preds[n]
                s = denote_vterm(env, ctx, v)
                return pull(
                    compose(_weakening_to_closed(env, base, arg_ty), s), pr
                )
        raise ModelError("not a formula: %r" % (p,))

    return env.memo(("formula", ctx, p), build)


def _eq_formula(env: ModelEnv, ctx: tuple, a: S.Node, l: S.Node, r: S.Node) -> Pred:
    """Equality via the diagonal: pull the image of the diagonal back
    along the weakened right section, then along the left section."""
    x = denote_vtype(env, ctx, a)
    cx = comprehend(x)
    sl = denote_vterm(env, ctx, l)
    sr = denote_vterm(env, ctx, r)
    weakened = reindex_mor(cx.proj, unsection_of(x, sr))
    eq = equality_pred(x)
    return pull(sl, pull(section_of(weakened), eq))


# -- refinement layer --------------------------------------------------------


def erase_ctx(rctx: tuple) -> tuple:
    return tuple(S.erase(a) for a in rctx)


def denote_rctx(env: ModelEnv, rctx: tuple) -> Pred:
    def build():
        if not rctx:
            return top(TERMINAL)
        o = denote_rvtype(env, rctx[:-1], rctx[-1])
        return o.q

    return env.memo(("rctx", rctx), build)


def denote_rvtype(env: ModelEnv, rctx: tuple, a: S.Node) -> RefinedObj:
    def build():
        ctx = erase_ctx(rctx)
        p = denote_rctx(env, rctx)
        match a:
            case S.TRefBase(name=n, arg=v, body=q):
                x = denote_vtype(env, ctx, S.TBase(n, v))
                inner = interpret_formula(env, ctx + (S.TBase(n, v),), q)
                return RefinedObj(
                    x, p, meet(pull(comprehend(x).proj, p), inner)
                )
            case S.TRefUnit(body=q):
                x = denote_vtype(env, ctx, S.TUnit())
                inner = interpret_formula(env, ctx + (S.TUnit(),), q)
                return RefinedObj(
                    x, p, meet(pull(comprehend(x).proj, p), inner)
                )
            case S.TSigma(dom=d, cod=c):
                return sigma_refined(
                    denote_rvtype(env, rctx, d),
                    denote_rvtype(env, rctx + (d,), c),
                )
            case S.TU(comp=cm):
                return denote_rctype(env, rctx, cm).refined
            case S.TSum(left=l, right=r):
                return coprod_refined(
                    denote_rvtype(env, rctx, l), denote_rvtype(env, rctx, r)
                )
        raise ModelError("not a refinement value type: %r" % (a,))

    return env.memo(("rvtype", rctx, a), build)


@dataclass(frozen=True)
class RefinedAlgebra:
    """A computation type at the refinement layer: the underlying
    algebra together with the refined object of its carrier."""

    alg: EMAlgebra
    refined: RefinedObj


def denote_rctype(env: ModelEnv, rctx: tuple, c: S.Node) -> RefinedAlgebra:
    def build():
        ctx = erase_ctx(rctx)
        match c:
            case S.TF(val=a):
                o = denote_rvtype(env, rctx, a)
                return RefinedAlgebra(
                    free_algebra(env.fm, o.x),
                    lifted_monad_S(env.fm, env.lifting, o),
                )
            case S.TPi(dom=d, cod=cm):
                o = denote_rvtype(env, rctx, d)
                inner = denote_rctype(env, rctx + (d,), cm)
                return RefinedAlgebra(
                    pi_algebra(env.fm, o.x, inner.alg),
                    pi_refined(o, inner.refined),
                )
        raise ModelError("not a computation type: %r" % (c,))

    return env.memo(("rctype", rctx, c), build)


# -- the soundness verifier --------------------------------------------------


@dataclass(frozen=True)
class Soundness:
    """Outcome of verifying one judgement against the model.

    ok means every environment satisfying the context predicate maps to
    an element satisfying the target; the witness lists those images.
    A failure carries the first violating environment.
    """

    ok: bool
    witness: tuple = ()
    counterexample: object = None

    def describe(self) -> str:
        if self.ok:
            return "certified on %d environments" % len(self.witness)
        return "violated at environment %s" % render_atom(self.counterexample)


def verify_value(env: ModelEnv, rctx: tuple, v: S.Node, a: S.Node) -> Soundness:
    ctx = erase_ctx(rctx)
    sec = denote_vterm(env, ctx, v)
    p = denote_rctx(env, rctx)
    o = denote_rvtype(env, rctx, a)
    witness = []
    for g in p.sorted_members():
        image = sec(g)
        if image not in o.q:
            return Soundness(False, counterexample=g)
        witness.append(image)
    return Soundness(True, witness=tuple(witness))


def verify_comp(env: ModelEnv, rctx: tuple, m: S.Node, c: S.Node) -> Soundness:
    ctx = erase_ctx(rctx)
    ra = denote_rctype(env, rctx, c)
    sec = denote_cterm(env, ctx, m, S.erase(c))
    p = denote_rctx(env, rctx)
    witness = []
    for g in p.sorted_members():
        image = sec(g)
        if image not in ra.refined.q:
            return Soundness(False, counterexample=g)
        witness.append(image)
    match c:
        case S.TF(val=a):
            o = denote_rvtype(env, rctx, a)
            theta = env.fm.theta_at(o.x)
            lifted = env.lifting.apply(o.q)
            for g in p.sorted_members():
                if theta(sec(g)) not in lifted:
                    return Soundness(False, counterexample=g)
    return Soundness(True, witness=tuple(witness))


# -- erasure commutation -----------------------------------------------------


def erasure_commutes_ctx(env: ModelEnv, rctx: tuple) -> bool:
    """The refined context predicate lives over exactly the carrier the
    erased context denotes."""
    return denote_rctx(env, rctx).over == denote_ctx(env, erase_ctx(rctx))


def erasure_commutes_vtype(env: ModelEnv, rctx: tuple, a: S.Node) -> bool:
    o = denote_rvtype(env, rctx, a)
    return o.x == denote_vtype(env, erase_ctx(rctx), S.erase(a))


def erasure_commutes_ctype(env: ModelEnv, rctx: tuple, c: S.Node) -> bool:
    ra = denote_rctype(env, rctx, c)
    alg = denote_ctype(env, erase_ctx(rctx), S.erase(c))
    return ra.alg.equals(alg)


# -- denotation dumps --------------------------------------------------------


def dump_family(fam: Family) -> list[str]:
    out = ["base %s" % render_atom(tuple(fam.base.elems))]
    for i, c in fam.fibres:
        out.append("fibre %s %s" % (render_atom(i), render_atom(tuple(c.elems))))
    return out


def dump_section(sec: FinMap) -> list[str]:
    return [
        "at %s = %s" % (render_atom(g), render_atom(e[1]))
        for g, e in sec.graph
    ]


def dump_pred(p: Pred) -> list[str]:
    return ["member %s" % render_atom(a) for a in p.sorted_members()]
