"""Bidirectional type checking for both layers.

Terms carry full underlying annotations, so the underlying layer is a
synthesis pass plus definitional equality at the leaves.  Definitional
equality tries alpha-equivalence first and falls back to comparing
denotations in the loaded model, which decides the beta and eta laws
extensionally.

The refinement layer reuses the same terms.  Introductions whose
refined type cannot be reconstructed from underlying annotations
(pairs, injections, lambdas, recursion) must appear in checking
position; variables selfify to an equational refinement, and
eliminations synthesize and apply subsumption at their argument sites.
Sequencing, pattern matching and case synthesize only when the body's
refined type does not mention the bound variables, since the refined
motive is not annotated anywhere.

Subtype checking on base and unit refinements discharges an implication
between formulas by brute evaluation: the collected context refinement
and the left body must cut out a subset of the right body over the
erased context.  Recursion at the refinement layer additionally runs
the fixpoint admissibility gate: every least fixed point over an
environment satisfying the context predicate must satisfy the target
refinement.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import interp
from . import parse as P
from . import syntax as S
from .errors import CheckError, Unsupported
from .finset import render_atom
from .fixpoint import conway_lift_check
from .interp import ModelEnv


@dataclass(frozen=True)
class Derivation:
    """One node of a typing derivation: the rule applied, the judgement
    it concludes, and the subderivations."""

    rule: str
    judgement: str
    children: tuple = ()

    def lines(self, indent=0):
        out = ["%s%s  [%s]" % ("  " * indent, self.judgement, self.rule)]
        for c in self.children:
            out.extend(c.lines(indent + 1))
        return out

    def render(self) -> str:
        return "\n".join(self.lines())

    def rules(self) -> set:
        out = {self.rule}
        for c in self.children:
            out |= c.rules()
        return out


def _fail(msg, code, loc):
    raise CheckError(msg, code=code, loc=loc)


def _types(ctx):
    return tuple(ty for _, ty in ctx)


def _names(ctx):
    return [n for n, _ in ctx]


# -- underlying layer --------------------------------------------------------


class UnderlyingChecker:
    """Checks types and terms with refinements already erased.  Context
    entries are (name, type) pairs; names only feed diagnostics."""

    def __init__(self, env: ModelEnv):
        self.env = env

    # definitional equality

    def defeq_vtype(self, ctx, a, b, loc=None):
        if S.alpha_eq(a, b):
            return
        if interp.denote_vtype(self.env, _types(ctx), a) == interp.denote_vtype(
            self.env, _types(ctx), b
        ):
            return
        _fail(
            "types %s and %s are not equal"
            % (P.show_type(a, _names(ctx)), P.show_type(b, _names(ctx))),
            "E-DEFEQ",
            loc,
        )

    def defeq_ctype(self, ctx, a, b, loc=None):
        if S.alpha_eq(a, b):
            return
        if interp.denote_ctype(self.env, _types(ctx), a).equals(
            interp.denote_ctype(self.env, _types(ctx), b)
        ):
            return
        _fail(
            "computation types %s and %s are not equal"
            % (P.show_type(a, _names(ctx)), P.show_type(b, _names(ctx))),
            "E-DEFEQ",
            loc,
        )

    def defeq_vterm(self, ctx, v, w, ty, loc=None):
        """Equality of checked values at a common type, decided in the
        model when the terms are not alpha-equal."""
        if S.alpha_eq(v, w):
            return
        if interp.denote_vterm(self.env, _types(ctx), v) == interp.denote_vterm(
            self.env, _types(ctx), w
        ):
            return
        _fail(
            "terms %s and %s are not equal at type %s"
            % (
                P.show_term(v, _names(ctx)),
                P.show_term(w, _names(ctx)),
                P.show_type(ty, _names(ctx)),
            ),
            "E-DEFEQ",
            loc,
        )

    # type well-formedness

    def wf_vtype(self, ctx, a):
        match a:
            case S.TUnit():
                return
            case S.TBase(name=n, arg=v, loc=loc):
                if n not in self.env.basetypes:
                    _fail("unknown base type %r" % n, "E-CONST", loc)
                arg_ty = S.shift(self.env.basetypes[n][0], len(ctx))
                self.check_value(ctx, v, arg_ty)
                return
            case S.TSigma(dom=d, cod=c, hint=h):
                self.wf_vtype(ctx, d)
                self.wf_vtype(ctx + ((h or "x", d),), c)
                return
            case S.TU(comp=cm):
                self.wf_ctype(ctx, cm)
                return
            case S.TSum(left=l, right=r):
                self.wf_vtype(ctx, l)
                self.wf_vtype(ctx, r)
                return
        _fail(
            "refinement types do not belong to the underlying layer"
            if isinstance(a, (S.TRefBase, S.TRefUnit))
            else "not a value type",
            "E-TYPE",
            a.loc,
        )

    def wf_ctype(self, ctx, c):
        match c:
            case S.TF(val=a):
                self.wf_vtype(ctx, a)
                return
            case S.TPi(dom=d, cod=cm, hint=h):
                self.wf_vtype(ctx, d)
                self.wf_ctype(ctx + ((h or "x", d),), cm)
                return
        _fail("not a computation type", "E-TYPE", c.loc)

    # terms

    def synth_value(self, ctx, v):
        match v:
            case S.Var(index=k, hint=h, loc=loc):
                if not 0 <= k < len(ctx):
                    _fail("unbound variable %s" % (h or k), "E-SCOPE", loc)
                ty = S.shift(ctx[len(ctx) - 1 - k][1], k + 1)
                return ty, Derivation("var", self._jv(ctx, v, ty))
            case S.Const(name=n, loc=loc):
                if n not in self.env.consts:
                    _fail("unknown constant %r" % n, "E-CONST", loc)
                ty = S.shift(S.erase(self.env.const_type(n)), len(ctx))
                return ty, Derivation("const", self._jv(ctx, v, ty))
            case S.UnitVal():
                return S.TUnit(), Derivation("unit", self._jv(ctx, v, S.TUnit()))
            case S.Pair(fst=f, snd=s, dom=d, cod=c, hint=h):
                self.wf_vtype(ctx, d)
                self.wf_vtype(ctx + ((h or "x", d),), c)
                d1 = self.check_value(ctx, f, d)
                d2 = self.check_value(ctx, s, S.subst(c, f))
                ty = S.TSigma(d, c, hint=h)
                return ty, Derivation("pair", self._jv(ctx, v, ty), (d1, d2))
            case S.Thunk(comp=m):
                cty, d1 = self.synth_comp(ctx, m)
                ty = S.TU(cty)
                return ty, Derivation("thunk", self._jv(ctx, v, ty), (d1,))
            case S.Inl(val=w, ann=a, loc=loc) | S.Inr(val=w, ann=a, loc=loc):
                match a:
                    case S.TSum(left=l, right=r):
                        self.wf_vtype(ctx, a)
                        side = l if isinstance(v, S.Inl) else r
                        d1 = self.check_value(ctx, w, side)
                        rule = "inl" if isinstance(v, S.Inl) else "inr"
                        return a, Derivation(rule, self._jv(ctx, v, a), (d1,))
                _fail("injection annotation must be a sum type", "E-SUM", loc)
        _fail("not a value term", "E-TYPE", v.loc)

    def check_value(self, ctx, v, ty):
        got, d = self.synth_value(ctx, v)
        self.defeq_vtype(ctx, got, ty, v.loc)
        return d

    def synth_comp(self, ctx, m):
        match m:
            case S.Return(val=v):
                a, d1 = self.synth_value(ctx, v)
                ty = S.TF(a)
                return ty, Derivation("return", self._jc(ctx, m, ty), (d1,))
            case S.ToIn(src=src, dom=a, res=r, body=n, hint=h):
                self.wf_vtype(ctx, a)
                self.wf_ctype(ctx, r)
                d1 = self.check_comp(ctx, src, S.TF(a))
                d2 = self.check_comp(
                    ctx + ((h or "x", a),), n, S.shift(r, 1)
                )
                return r, Derivation("seq", self._jc(ctx, m, r), (d1, d2))
            case S.Force(val=v, ann=c):
                self.wf_ctype(ctx, c)
                d1 = self.check_value(ctx, v, S.TU(c))
                return c, Derivation("force", self._jc(ctx, m, c), (d1,))
            case S.Lam(dom=a, body=b, hint=h):
                self.wf_vtype(ctx, a)
                cty, d1 = self.synth_comp(ctx + ((h or "x", a),), b)
                ty = S.TPi(a, cty, hint=h)
                return ty, Derivation("lam", self._jc(ctx, m, ty), (d1,))
            case S.App(fn=f, arg=v, dom=a, cod=c, hint=h):
                self.wf_vtype(ctx, a)
                self.wf_ctype(ctx + ((h or "x", a),), c)
                d1 = self.check_comp(ctx, f, S.TPi(a, c, hint=h))
                d2 = self.check_value(ctx, v, a)
                ty = S.subst(c, v)
                return ty, Derivation("app", self._jc(ctx, m, ty), (d1, d2))
            case S.Pm(scrut=v, dom=a, cod=b, motive=mo, body=n, hx=hx, hy=hy, hz=hz):
                self.wf_vtype(ctx, a)
                self.wf_vtype(ctx + ((hx or "x", a),), b)
                sig = S.TSigma(a, b, hint=hx)
                self.wf_ctype(ctx + ((hz or "z", sig),), mo)
                d1 = self.check_value(ctx, v, sig)
                inner = S.subst(
                    S.shift(mo, 2, 1),
                    S.Pair(S.Var(1), S.Var(0), S.shift(a, 2), S.shift(b, 2, 1)),
                )
                d2 = self.check_comp(
                    ctx + ((hx or "x", a), (hy or "y", b)), n, inner
                )
                ty = S.subst(mo, v)
                return ty, Derivation("split", self._jc(ctx, m, ty), (d1, d2))
            case S.Case(
                scrut=v, motive=mo, lty=lt, lbranch=lb, rty=rt, rbranch=rb,
                hz=hz, hx=hx, hy=hy,
            ):
                self.wf_vtype(ctx, lt)
                self.wf_vtype(ctx, rt)
                sty = S.TSum(lt, rt)
                self.wf_ctype(ctx + ((hz or "z", sty),), mo)
                d1 = self.check_value(ctx, v, sty)
                lexp = S.subst(
                    S.shift(mo, 1, 1), S.Inl(S.Var(0), S.shift(sty, 1))
                )
                rexp = S.subst(
                    S.shift(mo, 1, 1), S.Inr(S.Var(0), S.shift(sty, 1))
                )
                d2 = self.check_comp(ctx + ((hx or "x", lt),), lb, lexp)
                d3 = self.check_comp(ctx + ((hy or "y", rt),), rb, rexp)
                ty = S.subst(mo, v)
                return ty, Derivation("case", self._jc(ctx, m, ty), (d1, d2, d3))
            case S.Mu(ann=c, body=b, hint=h, loc=loc):
                if not self.env.recursion:
                    raise Unsupported(
                        "recursion requires the maybe monad backend"
                    )
                self.wf_ctype(ctx, c)
                d1 = self.check_comp(
                    ctx + ((h or "x", S.TU(c)),), b, S.shift(c, 1)
                )
                return c, Derivation("rec", self._jc(ctx, m, c), (d1,))
        _fail("not a computation term", "E-TYPE", m.loc)

    def check_comp(self, ctx, m, ty):
        got, d = self.synth_comp(ctx, m)
        self.defeq_ctype(ctx, got, ty, m.loc)
        return d

    def check_context(self, ctx_decl):
        ctx = ()
        for name, ty in ctx_decl:
            self.wf_vtype(ctx, ty)
            ctx = ctx + ((name, ty),)
        return ctx

    def _jv(self, ctx, v, ty):
        ns = _names(ctx)
        return "%s : %s" % (P.show_term(v, ns), P.show_type(ty, ns))

    def _jc(self, ctx, m, ty):
        ns = _names(ctx)
        return "%s : %s" % (P.show_term(m, ns), P.show_type(ty, ns))


# -- refinement layer --------------------------------------------------------


def collect_context(rctx) -> S.Node:
    """The conjunction of all refinement bodies in scope, as one formula
    over the erased context: entry k of n is weakened by n-1-k so every
    body speaks about the variable it refines."""
    n = len(rctx)
    out = S.FTop()
    for k, (_, ty) in enumerate(rctx):
        match ty:
            case S.TRefBase(body=p) | S.TRefUnit(body=p):
                out = S.FAnd(out, S.shift(p, n - 1 - k))
            case _:
                pass
    return out


class RefinementChecker:
    """Checks refined types and the refined layer of terms.  Context
    entries are (name, refined type) pairs; the underlying checker runs
    first on the erasure, so this layer may assume underlying shapes."""

    def __init__(self, env: ModelEnv):
        self.env = env
        self.under = UnderlyingChecker(env)
        self.subtype_log = []

    def erased(self, rctx):
        return tuple((n, S.erase(t)) for n, t in rctx)

    # the implication oracle

    def implication(self, rctx, under_ty, p, q):
        """Does the collected context refinement together with p imply q
        over the erased context extended by under_ty?  None, or a
        counterexample environment."""
        ctx_u = _types(self.erased(rctx)) + (under_ty,)
        collected = S.shift(collect_context(rctx), 1)
        lhs = interp.interpret_formula(
            self.env, ctx_u, S.FAnd(collected, p)
        )
        rhs = interp.interpret_formula(self.env, ctx_u, q)
        for g in lhs.sorted_members():
            if g not in rhs:
                return g
        return None

    def _implies_or_fail(self, rctx, under_ty, p, q, loc):
        bad = self.implication(rctx, under_ty, p, q)
        if bad is not None:
            ns = _names(rctx) + ["v"]
            _fail(
                "refinement %s does not imply %s, failing at environment %s"
                % (
                    P.show_formula(p, ns),
                    P.show_formula(q, ns),
                    render_atom(bad),
                ),
                "E-SUB",
                loc,
            )

    # refined type well-formedness

    def wf_rvtype(self, rctx, a):
        euctx = self.erased(rctx)
        match a:
            case S.TRefBase(name=n, arg=v, body=p, hint=h):
                self.under.wf_vtype(euctx, S.TBase(n, v, loc=a.loc))
                self.wf_formula(euctx + ((h or "v", S.TBase(n, v)),), p)
                return
            case S.TRefUnit(body=p, hint=h):
                self.wf_formula(euctx + ((h or "v", S.TUnit()),), p)
                return
            case S.TSigma(dom=d, cod=c, hint=h):
                self.wf_rvtype(rctx, d)
                self.wf_rvtype(rctx + ((h or "x", d),), c)
                return
            case S.TU(comp=cm):
                self.wf_rctype(rctx, cm)
                return
            case S.TSum(left=l, right=r):
                self.wf_rvtype(rctx, l)
                self.wf_rvtype(rctx, r)
                return
            case S.TUnit() | S.TBase():
                _fail(
                    "bare base and unit types are not refinement types, "
                    "wrap them in a trivial ref",
                    "E-REFINE",
                    a.loc,
                )
        _fail("not a refinement value type", "E-REFINE", a.loc)

    def wf_rctype(self, rctx, c):
        match c:
            case S.TF(val=a):
                self.wf_rvtype(rctx, a)
                return
            case S.TPi(dom=d, cod=cm, hint=h):
                self.wf_rvtype(rctx, d)
                self.wf_rctype(rctx + ((h or "x", d),), cm)
                return
        _fail("not a computation type", "E-REFINE", c.loc)

    def wf_formula(self, uctx, p):
        """Formulas live over underlying contexts; quantifier domains and
        equation annotations are underlying types."""
        match p:
            case S.FTop():
                return
            case S.FAnd(left=l, right=r) | S.FImp(left=l, right=r):
                self.wf_formula(uctx, l)
                self.wf_formula(uctx, r)
                return
            case S.FAll(dom=d, body=b, hint=h):
                self.under.wf_vtype(uctx, d)
                self.wf_formula(uctx + ((h or "x", d),), b)
                return
            case S.FEq(ann=a, left=l, right=r):
                self.under.wf_vtype(uctx, a)
                self.under.check_value(uctx, l, a)
                self.under.check_value(uctx, r, a)
                return
            case S.FApp(name=n, arg=v, loc=loc):
                if n not in self.env.preds:
                    _fail("unknown predicate symbol %r" % n, "E-CONST", loc)
                arg_ty = S.shift(self.env.preds[n][0], len(uctx))
                self.under.check_value(uctx, v, arg_ty)
                return
        _fail("not a formula", "E-REFINE", p.loc)

    def check_rcontext(self, rctx_decl):
        rctx = ()
        for name, ty in rctx_decl:
            self.wf_rvtype(rctx, ty)
            rctx = rctx + ((name, ty),)
        return rctx

    # subtyping

    def subtype(self, rctx, a, b, loc=None) -> Derivation:
        d = self._subtype(rctx, a, b, loc)
        self.subtype_log.append(("value", rctx, a, b))
        return d

    def _subtype(self, rctx, a, b, loc) -> Derivation:
        ns = _names(rctx)
        j = "%s <: %s" % (P.show_type(a, ns), P.show_type(b, ns))
        match (a, b):
            case (
                S.TRefBase(name=n1, arg=v1, body=p1),
                S.TRefBase(name=n2, arg=v2, body=p2),
            ):
                if n1 != n2:
                    _fail(
                        "base refinements over different base types: "
                        "%s and %s" % (n1, n2),
                        "E-SUB",
                        loc,
                    )
                euctx = self.erased(rctx)
                arg_ty = S.shift(self.env.basetypes[n1][0], len(rctx))
                self.under.defeq_vterm(euctx, v1, v2, arg_ty, loc)
                self._implies_or_fail(rctx, S.TBase(n1, v1), p1, p2, loc)
                return Derivation("sub-base", j)
            case (S.TRefUnit(body=p1), S.TRefUnit(body=p2)):
                self._implies_or_fail(rctx, S.TUnit(), p1, p2, loc)
                return Derivation("sub-unit", j)
            case (
                S.TSigma(dom=d1, cod=c1, hint=h),
                S.TSigma(dom=d2, cod=c2),
            ):
                s1 = self.subtype(rctx, d1, d2, loc)
                s2 = self.subtype(rctx + ((h or "x", d1),), c1, c2, loc)
                return Derivation("sub-sigma", j, (s1, s2))
            case (S.TU(comp=c1), S.TU(comp=c2)):
                s1 = self.subtype_comp(rctx, c1, c2, loc)
                return Derivation("sub-thunk", j, (s1,))
            case (S.TSum(left=l1, right=r1), S.TSum(left=l2, right=r2)):
                s1 = self.subtype(rctx, l1, l2, loc)
                s2 = self.subtype(rctx, r1, r2, loc)
                return Derivation("sub-sum", j, (s1, s2))
        _fail(
            "no subtyping between %s and %s"
            % (P.show_type(a, ns), P.show_type(b, ns)),
            "E-SUB",
            loc,
        )

    def subtype_comp(self, rctx, a, b, loc=None) -> Derivation:
        d = self._subtype_comp(rctx, a, b, loc)
        self.subtype_log.append(("comp", rctx, a, b))
        return d

    def _subtype_comp(self, rctx, a, b, loc) -> Derivation:
        ns = _names(rctx)
        j = "%s <: %s" % (P.show_type(a, ns), P.show_type(b, ns))
        match (a, b):
            case (S.TF(val=a1), S.TF(val=a2)):
                s1 = self.subtype(rctx, a1, a2, loc)
                return Derivation("sub-lift", j, (s1,))
            case (S.TPi(dom=d1, cod=c1), S.TPi(dom=d2, cod=c2, hint=h)):
                s1 = self.subtype(rctx, d2, d1, loc)
                s2 = self.subtype_comp(rctx + ((h or "x", d2),), c1, c2, loc)
                return Derivation("sub-pi", j, (s1, s2))
        _fail(
            "no subtyping between computation types %s and %s"
            % (P.show_type(a, ns), P.show_type(b, ns)),
            "E-SUB",
            loc,
        )

    def subtype_context(self, rctx1, rctx2, loc=None):
        """Pointwise subtyping, each entry compared under the stronger
        prefix."""
        if len(rctx1) != len(rctx2):
            _fail("contexts have different lengths", "E-SUB", loc)
        derivs = []
        for k in range(len(rctx1)):
            derivs.append(
                self.subtype(rctx1[:k], rctx1[k][1], rctx2[k][1], loc)
            )
        return tuple(derivs)

    # refined terms

    def selfify(self, rctx, k, ty):
        """A variable of base refinement type re-refines to the equation
        with itself; other types pass through."""
        match ty:
            case S.TRefBase(name=n, arg=v, hint=h):
                eq = S.FEq(S.TBase(n, S.shift(v, 1)), S.Var(0), S.Var(k + 1))
                return S.TRefBase(n, v, eq, hint=h)
            case _:
                return ty

    def synth_value(self, rctx, v):
        match v:
            case S.Var(index=k, hint=h, loc=loc):
                if not 0 <= k < len(rctx):
                    _fail("unbound variable %s" % (h or k), "E-SCOPE", loc)
                ty = S.shift(rctx[len(rctx) - 1 - k][1], k + 1)
                ty = self.selfify(rctx, k, ty)
                return ty, Derivation("self", self._jv(rctx, v, ty))
            case S.Const(name=n, loc=loc):
                if n not in self.env.consts:
                    _fail("unknown constant %r" % n, "E-CONST", loc)
                declared = self.env.const_type(n)
                ty = self._const_rtype(n, declared, loc)
                ty = S.shift(ty, len(rctx))
                return ty, Derivation("const", self._jv(rctx, v, ty))
            case S.UnitVal():
                ty = S.TRefUnit(S.FTop())
                return ty, Derivation("unit", self._jv(rctx, v, ty))
            case S.Thunk(comp=m):
                cty, d1 = self.synth_comp(rctx, m)
                ty = S.TU(cty)
                return ty, Derivation("thunk", self._jv(rctx, v, ty), (d1,))
            case S.Pair(loc=loc):
                _fail(
                    "pairs need a checking position at the refinement layer",
                    "E-SYNTH",
                    loc,
                )
            case S.Inl(loc=loc) | S.Inr(loc=loc):
                _fail(
                    "injections need a checking position at the refinement "
                    "layer",
                    "E-SYNTH",
                    loc,
                )
        _fail("not a value term", "E-REFINE", v.loc)

    def _const_rtype(self, name, declared, loc):
        """Constants declared at a bare base type selfify to the equation
        refinement; refined declarations are used as written."""
        if not S.is_underlying(declared):
            return declared
        match declared:
            case S.TBase(name=n, arg=a):
                eq = S.FEq(
                    S.TBase(n, S.shift(a, 1)), S.Var(0), S.Const(name)
                )
                return S.TRefBase(n, a, eq)
            case S.TUnit():
                return S.TRefUnit(S.FTop())
        _fail(
            "constant %r has no refinement type; declare it with a ref type"
            % name,
            "E-REFINE",
            loc,
        )

    def check_value(self, rctx, v, ty) -> Derivation:
        match (v, ty):
            case (S.Pair(fst=f, snd=s, dom=ud, cod=uc, loc=loc),
                  S.TSigma(dom=d, cod=c, hint=h)):
                self._erase_match_v(rctx, d, ud, loc)
                self._erase_match_v(rctx + ((h or "x", d),), c, uc, loc)
                d1 = self.check_value(rctx, f, d)
                d2 = self.check_value(rctx, s, S.subst(c, f))
                return Derivation(
                    "pair", self._jv(rctx, v, ty), (d1, d2)
                )
            case (S.Inl(val=w, ann=ua, loc=loc), S.TSum(left=l)):
                self._erase_match_v(rctx, ty, ua, loc)
                d1 = self.check_value(rctx, w, l)
                return Derivation("inl", self._jv(rctx, v, ty), (d1,))
            case (S.Inr(val=w, ann=ua, loc=loc), S.TSum(right=r)):
                self._erase_match_v(rctx, ty, ua, loc)
                d1 = self.check_value(rctx, w, r)
                return Derivation("inr", self._jv(rctx, v, ty), (d1,))
            case (S.Thunk(comp=m), S.TU(comp=cm)):
                d1 = self.check_comp(rctx, m, cm)
                return Derivation("thunk", self._jv(rctx, v, ty), (d1,))
            case _:
                got, d = self.synth_value(rctx, v)
                s = self.subtype(rctx, got, ty, v.loc)
                return Derivation(
                    "sub", self._jv(rctx, v, ty), (d, s)
                )

    def synth_comp(self, rctx, m):
        match m:
            case S.Return(val=v):
                a, d1 = self.synth_value(rctx, v)
                ty = S.TF(a)
                return ty, Derivation("return", self._jc(rctx, m, ty), (d1,))
            case S.ToIn(src=src, dom=ud, res=ur, body=n, hint=h, loc=loc):
                a, d1 = self._synth_lifted(rctx, src)
                self._erase_match_v(rctx, a, ud, loc)
                cty, d2 = self.synth_comp(rctx + ((h or "x", a),), n)
                if S.uses_var(cty, 0):
                    _fail(
                        "the refined type of the sequencing body mentions "
                        "the bound variable; use a checking position",
                        "E-SYNTH",
                        loc,
                    )
                cty = S.shift(cty, -1)
                self._erase_match_c(rctx, cty, ur, loc)
                return cty, Derivation("seq", self._jc(rctx, m, cty), (d1, d2))
            case S.Force(val=v, ann=uc, loc=loc):
                ty, d1 = self.synth_value(rctx, v)
                match ty:
                    case S.TU(comp=cm):
                        self._erase_match_c(rctx, cm, uc, loc)
                        return cm, Derivation(
                            "force", self._jc(rctx, m, cm), (d1,)
                        )
                _fail("forcing a non-thunk", "E-REFINE", loc)
            case S.App(fn=f, arg=v, dom=ud, cod=uc, loc=loc):
                fty, d1 = self.synth_comp(rctx, f)
                match fty:
                    case S.TPi(dom=a, cod=c, hint=h):
                        self._erase_match_v(rctx, a, ud, loc)
                        self._erase_match_c(
                            rctx + ((h or "x", a),), c, uc, loc
                        )
                        d2 = self.check_value(rctx, v, a)
                        ty = S.subst(c, v)
                        return ty, Derivation(
                            "app", self._jc(rctx, m, ty), (d1, d2)
                        )
                _fail("applying a non-function", "E-REFINE", loc)
            case S.Pm(scrut=v, dom=ud, cod=uc, body=n, hx=hx, hy=hy, loc=loc):
                ty, d1 = self.synth_value(rctx, v)
                match ty:
                    case S.TSigma(dom=a, cod=b):
                        self._erase_match_v(rctx, a, ud, loc)
                        self._erase_match_v(
                            rctx + ((hx or "x", a),), b, uc, loc
                        )
                        inner_ctx = rctx + ((hx or "x", a), (hy or "y", b))
                        cty, d2 = self.synth_comp(inner_ctx, n)
                        if S.uses_var(cty, 0) or S.uses_var(cty, 1):
                            _fail(
                                "the refined type of the match body mentions "
                                "a bound component; use a checking position",
                                "E-SYNTH",
                                loc,
                            )
                        cty = S.shift(cty, -2)
                        return cty, Derivation(
                            "split", self._jc(rctx, m, cty), (d1, d2)
                        )
                _fail("splitting a non-pair", "E-REFINE", loc)
            case S.Case(
                scrut=v, lty=ul, lbranch=lb, rty=ur, rbranch=rb,
                hx=hx, hy=hy, loc=loc,
            ):
                ty, d1 = self.synth_value(rctx, v)
                match ty:
                    case S.TSum(left=a, right=b):
                        self._erase_match_v(rctx, a, ul, loc)
                        self._erase_match_v(rctx, b, ur, loc)
                        lt, d2 = self.synth_comp(rctx + ((hx or "x", a),), lb)
                        rt, d3 = self.synth_comp(rctx + ((hy or "y", b),), rb)
                        if S.uses_var(lt, 0) or S.uses_var(rt, 0):
                            _fail(
                                "a branch type mentions the bound variable; "
                                "use a checking position",
                                "E-SYNTH",
                                loc,
                            )
                        lt = S.shift(lt, -1)
                        rt = S.shift(rt, -1)
                        if not S.alpha_eq(lt, rt):
                            _fail(
                                "case branches synthesize different refined "
                                "types; use a checking position",
                                "E-SYNTH",
                                loc,
                            )
                        return lt, Derivation(
                            "case", self._jc(rctx, m, lt), (d1, d2, d3)
                        )
                _fail("case on a non-sum", "E-REFINE", loc)
            case S.Lam(loc=loc):
                _fail(
                    "lambdas need a checking position at the refinement layer",
                    "E-SYNTH",
                    loc,
                )
            case S.Mu(loc=loc):
                _fail(
                    "recursion needs a checking position at the refinement "
                    "layer",
                    "E-SYNTH",
                    loc,
                )
        _fail("not a computation term", "E-REFINE", m.loc)

    def _synth_lifted(self, rctx, m):
        ty, d = self.synth_comp(rctx, m)
        match ty:
            case S.TF(val=a):
                return a, d
        _fail("sequencing a non-lifted computation", "E-REFINE", m.loc)

    def check_comp(self, rctx, m, ty) -> Derivation:
        match (m, ty):
            case (S.Lam(dom=ud, body=b, loc=loc), S.TPi(dom=a, cod=c, hint=h)):
                self._erase_match_v(rctx, a, ud, loc)
                d1 = self.check_comp(rctx + ((h or "x", a),), b, c)
                return Derivation("lam", self._jc(rctx, m, ty), (d1,))
            case (S.ToIn(src=src, dom=ud, res=ur, body=n, hint=h, loc=loc), _):
                a, d1 = self._synth_lifted(rctx, src)
                self._erase_match_v(rctx, a, ud, loc)
                self._erase_match_c(rctx, ty, ur, loc)
                d2 = self.check_comp(
                    rctx + ((h or "x", a),), n, S.shift(ty, 1)
                )
                return Derivation("seq", self._jc(rctx, m, ty), (d1, d2))
            case (S.Pm(scrut=v, dom=ud, cod=uc, body=n, hx=hx, hy=hy, loc=loc), _):
                sty, d1 = self.synth_value(rctx, v)
                match sty:
                    case S.TSigma(dom=a, cod=b):
                        self._erase_match_v(rctx, a, ud, loc)
                        self._erase_match_v(
                            rctx + ((hx or "x", a),), b, uc, loc
                        )
                        d2 = self.check_comp(
                            rctx + ((hx or "x", a), (hy or "y", b)),
                            n,
                            S.shift(ty, 2),
                        )
                        return Derivation(
                            "split", self._jc(rctx, m, ty), (d1, d2)
                        )
                _fail("splitting a non-pair", "E-REFINE", loc)
            case (
                S.Case(
                    scrut=v, lty=ul, lbranch=lb, rty=ur, rbranch=rb,
                    hx=hx, hy=hy, loc=loc,
                ),
                _,
            ):
                sty, d1 = self.synth_value(rctx, v)
                match sty:
                    case S.TSum(left=a, right=b):
                        self._erase_match_v(rctx, a, ul, loc)
                        self._erase_match_v(rctx, b, ur, loc)
                        d2 = self.check_comp(
                            rctx + ((hx or "x", a),), lb, S.shift(ty, 1)
                        )
                        d3 = self.check_comp(
                            rctx + ((hy or "y", b),), rb, S.shift(ty, 1)
                        )
                        return Derivation(
                            "case", self._jc(rctx, m, ty), (d1, d2, d3)
                        )
                _fail("case on a non-sum", "E-REFINE", loc)
            case (S.Mu(ann=uc, body=b, hint=h, loc=loc), _):
                if not self.env.recursion:
                    raise Unsupported(
                        "recursion requires the maybe monad backend"
                    )
                self._erase_match_c(rctx, ty, uc, loc)
                d1 = self.check_comp(
                    rctx + ((h or "x", S.TU(ty)),), b, S.shift(ty, 1)
                )
                self._recursion_gate(rctx, m, ty, loc)
                return Derivation("rec", self._jc(rctx, m, ty), (d1,))
            case _:
                got, d = self.synth_comp(rctx, m)
                s = self.subtype_comp(rctx, got, ty, m.loc)
                return Derivation("sub", self._jc(rctx, m, ty), (d, s))

    def _recursion_gate(self, rctx, m, ty, loc):
        """Admissibility of the refined type under least fixed points:
        the fixpoint of the erased body must satisfy the refinement at
        every environment allowed by the context."""
        ctx_u = _types(self.erased(rctx))
        erased = S.erase(m)
        pf, f = interp.mu_endo(self.env, ctx_u, erased)
        ra = interp.denote_rctype(self.env, _types(rctx), ty)
        bad = conway_lift_check(ra.refined, pf, f)
        if bad is not None:
            _fail(
                "the refinement is not preserved by the least fixed point "
                "at environment %s" % render_atom(bad),
                "E-REC",
                loc,
            )

    # erasure compatibility of annotations

    def _erase_match_v(self, rctx, refined, annotated, loc):
        self.under.defeq_vtype(
            self.erased(rctx), S.erase(refined), annotated, loc
        )

    def _erase_match_c(self, rctx, refined, annotated, loc):
        self.under.defeq_ctype(
            self.erased(rctx), S.erase(refined), annotated, loc
        )

    def _jv(self, rctx, v, ty):
        ns = _names(rctx)
        return "%s : %s" % (P.show_term(v, ns), P.show_type(ty, ns))

    def _jc(self, rctx, m, ty):
        ns = _names(rctx)
        return "%s : %s" % (P.show_term(m, ns), P.show_type(ty, ns))


# -- program-level entry points ----------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    """Outcome of checking one declaration."""

    name: str
    kind: str
    ok: bool
    detail: str
    derivation: Derivation | None = None


def _is_comp_type(ty) -> bool:
    return isinstance(ty, S.COMP_TYPES)


def check_def_underlying(env: ModelEnv, d: P.DefDecl) -> CheckResult:
    ch = UnderlyingChecker(env)
    ctx_decl = tuple((n, S.erase(t)) for n, t in d.ctx)
    ctx = ch.check_context(ctx_decl)
    ty = S.erase(d.ty)
    term = S.erase(d.term)
    if _is_comp_type(ty):
        ch.wf_ctype(ctx, ty)
        deriv = ch.check_comp(ctx, term, ty)
    else:
        ch.wf_vtype(ctx, ty)
        deriv = ch.check_value(ctx, term, ty)
    env.mark_checked(_types(ctx), term)
    return CheckResult(d.name, "def", True, "well typed", deriv)


def check_def_refinement(env: ModelEnv, d: P.DefDecl, ch=None) -> CheckResult:
    if not S.alpha_eq(S.erase(d.term), d.term):
        _fail(
            "type annotations inside terms must be underlying types",
            "E-REFINE",
            d.loc,
        )
    check_def_underlying(env, d)
    ch = ch or RefinementChecker(env)
    rctx = ch.check_rcontext(d.ctx)
    if _is_comp_type(d.ty):
        ch.wf_rctype(rctx, d.ty)
        deriv = ch.check_comp(rctx, d.term, d.ty)
    else:
        ch.wf_rvtype(rctx, d.ty)
        deriv = ch.check_value(rctx, d.term, d.ty)
    return CheckResult(d.name, "def", True, "well typed", deriv)


def check_check_decl(env: ModelEnv, c: P.CheckDecl, ch=None) -> CheckResult:
    ch = ch or RefinementChecker(env)
    name = c.kind
    match c.kind:
        case "subtype":
            rctx = ch.check_rcontext(c.ctx)
            a, b = c.parts
            ch.wf_rvtype(rctx, a)
            ch.wf_rvtype(rctx, b)
            deriv = ch.subtype(rctx, a, b, c.loc)
            return CheckResult(name, "check", True, "subtype holds", deriv)
        case "subtype-comp":
            rctx = ch.check_rcontext(c.ctx)
            a, b = c.parts
            ch.wf_rctype(rctx, a)
            ch.wf_rctype(rctx, b)
            deriv = ch.subtype_comp(rctx, a, b, c.loc)
            return CheckResult(name, "check", True, "subtype holds", deriv)
        case "equal":
            uch = UnderlyingChecker(env)
            ctx_decl = tuple((n, S.erase(t)) for n, t in c.ctx)
            ctx = uch.check_context(ctx_decl)
            ty, v, w = c.parts
            ty = S.erase(ty)
            if _is_comp_type(ty):
                uch.wf_ctype(ctx, ty)
                uch.check_comp(ctx, v, ty)
                uch.check_comp(ctx, w, ty)
                got_v = interp.denote_cterm(env, _types(ctx), v, ty)
                got_w = interp.denote_cterm(env, _types(ctx), w, ty)
                if got_v != got_w:
                    _fail(
                        "computations differ in the model", "E-DEFEQ", c.loc
                    )
            else:
                uch.wf_vtype(ctx, ty)
                uch.check_value(ctx, v, ty)
                uch.check_value(ctx, w, ty)
                uch.defeq_vterm(ctx, v, w, ty, c.loc)
            return CheckResult(name, "check", True, "terms equal", None)
    _fail("unknown check kind %r" % c.kind, "E-TYPE", c.loc)


@dataclass(frozen=True)
class ProgramReport:
    """All per-declaration results plus the subtype judgements derived
    along the way, for later semantic cross-checking."""

    results: tuple
    subtype_log: tuple


def check_program(env: ModelEnv, prog: P.Program, layer: str) -> ProgramReport:
    """Check every definition and check form, stopping at the first
    failure, which propagates as CheckError."""
    ch = RefinementChecker(env)
    results = []
    for form in prog.forms:
        if isinstance(form, P.DefDecl):
            if layer == "underlying":
                results.append(check_def_underlying(env, form))
            else:
                results.append(check_def_refinement(env, form, ch))
        elif isinstance(form, P.CheckDecl):
            results.append(check_check_decl(env, form, ch))
    return ProgramReport(tuple(results), tuple(ch.subtype_log))
