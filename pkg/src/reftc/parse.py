"""Concrete syntax: an s-expression reader, the surface-to-core
resolver, and the inverse printer.

A program is a sequence of forms:

    (basetype NAME arg TYPE carrier SPEC)
    (const NAME type TYPE denotes ELEM)
    (pred NAME arg TYPE denotes (ELEM ...))
    (def NAME ((x TYPE) ...) TYPE TERM)
    (check subtype ((x TYPE) ...) TYPE TYPE)
    (check subtype-comp ((x TYPE) ...) TYPE TYPE)
    (check equal ((x TYPE) ...) TYPE TERM TERM)

SPEC is either a plain list of atoms (a carrier independent of the
argument) or a list of (ELEM (ATOM ...)) pairs keyed by argument value.
Comments run from a semicolon to the end of the line.  The full grammar
for types, terms, formulas and elements is documented in the README.

Symbols in term position resolve to the innermost binder of that name,
or to a declared constant when no binder matches; binders never shadow
syntactic form heads because heads are only interpreted in head
position.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .finset import fn_atom
from .effects import STAR, set_atom
from . import syntax as S


@dataclass(frozen=True)
class SE:
    """One s-expression with its source position."""

    val: object
    line: int
    col: int

    def is_list(self):
        return isinstance(self.val, list)

    def loc(self):
        return (self.line, self.col)


def tokenize(text: str):
    line, col = 1, 0
    i = 0
    out = []
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 0
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch in "()":
            out.append((ch, line, col))
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < len(text) and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            out.append((text[start:i], line, start_col))
    return out


def _atom_value(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def read_sexprs(text: str) -> list[SE]:
    toks = tokenize(text)
    stack = [[]]
    opens = []
    for tok, line, col in toks:
        if tok == "(":
            stack.append([])
            opens.append((line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unmatched closing parenthesis", line, col)
            done = stack.pop()
            oline, ocol = opens.pop()
            stack[-1].append(SE(done, oline, ocol))
        else:
            stack[-1].append(SE(_atom_value(tok), line, col))
    if len(stack) > 1:
        line, col = opens[-1]
        raise ParseError("unclosed parenthesis", line, col)
    return stack[0]


# -- element expressions -----------------------------------------------------


def parse_elem(se: SE):
    if not se.is_list():
        return se.val
    items = se.val
    if not items or items[0].is_list():
        raise ParseError("malformed element", se.line, se.col)
    head = items[0].val
    args = items[1:]
    match head:
        case "star":
            if not args:
                return STAR
            if len(args) == 1 and isinstance(args[0].val, int):
                return (STAR, args[0].val)
        case "fn":
            graph = []
            for pair in args:
                if not pair.is_list() or len(pair.val) != 2:
                    raise ParseError(
                        "fn entries are (key value) pairs", pair.line, pair.col
                    )
                graph.append((parse_elem(pair.val[0]), parse_elem(pair.val[1])))
            return fn_atom(graph)
        case "inl" | "inr":
            if len(args) == 1:
                return (head, parse_elem(args[0]))
        case "set":
            return set_atom(parse_elem(a) for a in args)
        case "tup":
            if len(args) == 2:
                return (parse_elem(args[0]), parse_elem(args[1]))
    raise ParseError("malformed element", se.line, se.col)


# -- types, terms, formulas --------------------------------------------------

_TYPE_HEADS = {"unit", "base", "sigma", "U", "sum", "ref", "F", "pi"}
_TERM_HEADS = {
    "unit-val", "pair", "thunk", "inl", "inr",
    "return", "to", "force", "lam", "app", "pm", "case", "mu",
}
_FORMULA_HEADS = {"top", "and", "implies", "forall", "eq"}


def _need(se: SE, n: int, what: str) -> list[SE]:
    if not se.is_list() or len(se.val) != n:
        raise ParseError("malformed %s" % what, se.line, se.col)
    return se.val


def _symbol(se: SE, what: str) -> str:
    if se.is_list() or not isinstance(se.val, str):
        raise ParseError("expected a %s name" % what, se.line, se.col)
    return se.val


def _binding(se: SE, scope: list, what="binding") -> tuple[str, S.Node]:
    items = _need(se, 2, what)
    name = _symbol(items[0], "variable")
    ty = parse_type(items[1], scope)
    return name, ty


def parse_type(se: SE, scope: list) -> S.Node:
    loc = se.loc()
    if not se.is_list():
        raise ParseError("expected a type", se.line, se.col)
    items = se.val
    if not items or items[0].is_list():
        raise ParseError("expected a type", se.line, se.col)
    head = items[0].val
    match head:
        case "unit":
            _need(se, 1, "unit type")
            return S.TUnit(loc=loc)
        case "base":
            parts = _need(se, 3, "base type")
            return S.TBase(
                _symbol(parts[1], "base type"),
                parse_term(parts[2], scope),
                loc=loc,
            )
        case "sigma":
            parts = _need(se, 3, "sigma type")
            name, dom = _binding(parts[1], scope)
            cod = parse_type(parts[2], scope + [name])
            return S.TSigma(dom, cod, hint=name, loc=loc)
        case "U":
            parts = _need(se, 2, "U type")
            return S.TU(parse_type(parts[1], scope), loc=loc)
        case "sum":
            parts = _need(se, 3, "sum type")
            return S.TSum(
                parse_type(parts[1], scope), parse_type(parts[2], scope), loc=loc
            )
        case "ref":
            parts = _need(se, 4, "refinement type")
            name = _symbol(parts[1], "refinement variable")
            under = parts[2]
            body_scope = scope + [name]
            if under.is_list() and under.val and under.val[0].val == "unit":
                _need(under, 1, "unit type")
                return S.TRefUnit(
                    parse_formula(parts[3], body_scope), hint=name, loc=loc
                )
            if under.is_list() and under.val and under.val[0].val == "base":
                bparts = _need(under, 3, "base type")
                return S.TRefBase(
                    _symbol(bparts[1], "base type"),
                    parse_term(bparts[2], scope),
                    parse_formula(parts[3], body_scope),
                    hint=name,
                    loc=loc,
                )
            raise ParseError(
                "refinements apply to base types and unit", under.line, under.col
            )
        case "F":
            parts = _need(se, 2, "F type")
            return S.TF(parse_type(parts[1], scope), loc=loc)
        case "pi":
            parts = _need(se, 3, "pi type")
            name, dom = _binding(parts[1], scope)
            cod = parse_type(parts[2], scope + [name])
            return S.TPi(dom, cod, hint=name, loc=loc)
    raise ParseError("unknown type form %r" % head, se.line, se.col)


def parse_term(se: SE, scope: list) -> S.Node:
    loc = se.loc()
    if not se.is_list():
        if isinstance(se.val, str):
            if se.val in scope:
                index = len(scope) - 1 - max(
                    i for i, n in enumerate(scope) if n == se.val
                )
                return S.Var(index, hint=se.val, loc=loc)
            return S.Const(se.val, loc=loc)
        raise ParseError("expected a term", se.line, se.col)
    items = se.val
    if not items or items[0].is_list():
        raise ParseError("expected a term", se.line, se.col)
    head = items[0].val
    match head:
        case "unit-val":
            _need(se, 1, "unit value")
            return S.UnitVal(loc=loc)
        case "pair":
            parts = _need(se, 5, "pair")
            name, dom = _binding(parts[3], scope)
            return S.Pair(
                parse_term(parts[1], scope),
                parse_term(parts[2], scope),
                dom,
                parse_type(parts[4], scope + [name]),
                hint=name,
                loc=loc,
            )
        case "thunk":
            parts = _need(se, 2, "thunk")
            return S.Thunk(parse_term(parts[1], scope), loc=loc)
        case "inl" | "inr":
            parts = _need(se, 3, head)
            cls = S.Inl if head == "inl" else S.Inr
            return cls(
                parse_term(parts[1], scope), parse_type(parts[2], scope), loc=loc
            )
        case "return":
            parts = _need(se, 2, "return")
            return S.Return(parse_term(parts[1], scope), loc=loc)
        case "to":
            parts = _need(se, 5, "sequencing")
            name, dom = _binding(parts[2], scope)
            return S.ToIn(
                parse_term(parts[1], scope),
                dom,
                parse_type(parts[3], scope),
                parse_term(parts[4], scope + [name]),
                hint=name,
                loc=loc,
            )
        case "force":
            parts = _need(se, 3, "force")
            return S.Force(
                parse_term(parts[1], scope), parse_type(parts[2], scope), loc=loc
            )
        case "lam":
            parts = _need(se, 3, "lambda")
            name, dom = _binding(parts[1], scope)
            return S.Lam(
                dom, parse_term(parts[2], scope + [name]), hint=name, loc=loc
            )
        case "app":
            parts = _need(se, 5, "application")
            name, dom = _binding(parts[3], scope)
            return S.App(
                parse_term(parts[1], scope),
                parse_term(parts[2], scope),
                dom,
                parse_type(parts[4], scope + [name]),
                hint=name,
                loc=loc,
            )
        case "pm":
            parts = _need(se, 5, "pattern match")
            binders = parts[2]
            if not binders.is_list() or len(binders.val) != 2:
                raise ParseError(
                    "pattern match needs two binders", binders.line, binders.col
                )
            hx, dom = _binding(binders.val[0], scope)
            hy, cod = _binding(binders.val[1], scope + [hx])
            mparts = _need(parts[3], 2, "motive binding")
            hz = _symbol(mparts[0], "variable")
            motive = parse_type(mparts[1], scope + [hz])
            body = parse_term(parts[4], scope + [hx, hy])
            return S.Pm(
                parse_term(parts[1], scope),
                dom, cod, motive, body,
                hx=hx, hy=hy, hz=hz, loc=loc,
            )
        case "case":
            parts = _need(se, 5, "case")
            mparts = _need(parts[2], 2, "motive binding")
            hz = _symbol(mparts[0], "variable")
            motive = parse_type(mparts[1], scope + [hz])
            lparts = _need(parts[3], 2, "case branch")
            hx, lty = _binding(lparts[0], scope)
            lbranch = parse_term(lparts[1], scope + [hx])
            rparts = _need(parts[4], 2, "case branch")
            hy, rty = _binding(rparts[0], scope)
            rbranch = parse_term(rparts[1], scope + [hy])
            return S.Case(
                parse_term(parts[1], scope),
                motive, lty, lbranch, rty, rbranch,
                hz=hz, hx=hx, hy=hy, loc=loc,
            )
        case "mu":
            parts = _need(se, 3, "recursion")
            binder = _need(parts[1], 2, "recursion binder")
            name = _symbol(binder[0], "variable")
            ann = parse_type(binder[1], scope)
            if not isinstance(ann, S.TU):
                raise ParseError(
                    "recursion binds a thunked computation, annotate with (U ...)",
                    binder[1].line, binder[1].col,
                )
            body = parse_term(parts[2], scope + [name])
            return S.Mu(ann.comp, body, hint=name, loc=loc)
    raise ParseError("unknown term form %r" % head, se.line, se.col)


def parse_formula(se: SE, scope: list) -> S.Node:
    loc = se.loc()
    if not se.is_list():
        raise ParseError("expected a formula", se.line, se.col)
    items = se.val
    if not items or items[0].is_list():
        raise ParseError("expected a formula", se.line, se.col)
    head = items[0].val
    match head:
        case "top":
            _need(se, 1, "truth")
            return S.FTop(loc=loc)
        case "and":
            parts = _need(se, 3, "conjunction")
            return S.FAnd(
                parse_formula(parts[1], scope),
                parse_formula(parts[2], scope),
                loc=loc,
            )
        case "implies":
            parts = _need(se, 3, "implication")
            return S.FImp(
                parse_formula(parts[1], scope),
                parse_formula(parts[2], scope),
                loc=loc,
            )
        case "forall":
            parts = _need(se, 3, "universal")
            name, dom = _binding(parts[1], scope)
            return S.FAll(
                dom, parse_formula(parts[2], scope + [name]), hint=name, loc=loc
            )
        case "eq":
            parts = _need(se, 4, "equation")
            return S.FEq(
                parse_type(parts[1], scope),
                parse_term(parts[2], scope),
                parse_term(parts[3], scope),
                loc=loc,
            )
        case _:
            parts = _need(se, 2, "predicate application")
            return S.FApp(
                _symbol(parts[0], "predicate"),
                parse_term(parts[1], scope),
                loc=loc,
            )


# -- top-level forms ---------------------------------------------------------


@dataclass(frozen=True)
class BaseTypeDecl:
    name: str
    arg: S.Node
    spec: tuple
    loc: tuple


@dataclass(frozen=True)
class ConstDecl:
    name: str
    ty: S.Node
    elem: object
    loc: tuple


@dataclass(frozen=True)
class PredDecl:
    name: str
    arg: S.Node
    elems: tuple
    loc: tuple


@dataclass(frozen=True)
class DefDecl:
    name: str
    ctx: tuple
    ty: S.Node
    term: S.Node
    loc: tuple


@dataclass(frozen=True)
class CheckDecl:
    kind: str
    ctx: tuple
    parts: tuple
    loc: tuple


@dataclass(frozen=True)
class Program:
    forms: tuple

    @property
    def defs(self):
        return tuple(f for f in self.forms if isinstance(f, DefDecl))

    @property
    def checks(self):
        return tuple(f for f in self.forms if isinstance(f, CheckDecl))


def _parse_context(se: SE) -> tuple:
    if not se.is_list():
        raise ParseError("expected a context", se.line, se.col)
    ctx = []
    scope = []
    for b in se.val:
        name, ty = _binding(b, scope)
        ctx.append((name, ty))
        scope.append(name)
    return tuple(ctx)


def _parse_carrier_spec(se: SE) -> tuple:
    if not se.is_list():
        raise ParseError("expected a carrier", se.line, se.col)
    items = se.val
    dependent = items and all(
        it.is_list() and len(it.val) == 2 and it.val[1].is_list()
        for it in items
    )
    if dependent:
        rows = []
        for it in items:
            key = parse_elem(it.val[0])
            atoms = tuple(parse_elem(a) for a in it.val[1].val)
            rows.append((key, atoms))
        return ("dep", tuple(rows))
    return ("const", tuple(parse_elem(a) for a in items))


def _keyword(se: SE, word: str):
    if se.is_list() or se.val != word:
        raise ParseError("expected the keyword %r" % word, se.line, se.col)


def parse_form(se: SE):
    if not se.is_list() or not se.val or se.val[0].is_list():
        raise ParseError("expected a declaration form", se.line, se.col)
    head = se.val[0].val
    items = se.val
    loc = se.loc()
    match head:
        case "basetype":
            _need(se, 6, "basetype declaration")
            _keyword(items[2], "arg")
            _keyword(items[4], "carrier")
            return BaseTypeDecl(
                _symbol(items[1], "base type"),
                parse_type(items[3], []),
                _parse_carrier_spec(items[5]),
                loc,
            )
        case "const":
            _need(se, 6, "constant declaration")
            _keyword(items[2], "type")
            _keyword(items[4], "denotes")
            return ConstDecl(
                _symbol(items[1], "constant"),
                parse_type(items[3], []),
                parse_elem(items[5]),
                loc,
            )
        case "pred":
            _need(se, 6, "predicate declaration")
            _keyword(items[2], "arg")
            _keyword(items[4], "denotes")
            if not items[5].is_list():
                raise ParseError(
                    "predicate denotation is a list", items[5].line, items[5].col
                )
            return PredDecl(
                _symbol(items[1], "predicate"),
                parse_type(items[3], []),
                tuple(parse_elem(e) for e in items[5].val),
                loc,
            )
        case "def":
            _need(se, 5, "definition")
            ctx = _parse_context(items[2])
            scope = [n for n, _ in ctx]
            return DefDecl(
                _symbol(items[1], "definition"),
                ctx,
                parse_type(items[3], scope),
                parse_term(items[4], scope),
                loc,
            )
        case "check":
            kind = _symbol(items[1], "check kind") if len(items) > 1 else None
            match kind:
                case "subtype" | "subtype-comp":
                    _need(se, 5, "subtype check")
                    ctx = _parse_context(items[2])
                    scope = [n for n, _ in ctx]
                    return CheckDecl(
                        kind,
                        ctx,
                        (
                            parse_type(items[3], scope),
                            parse_type(items[4], scope),
                        ),
                        loc,
                    )
                case "equal":
                    _need(se, 6, "equality check")
                    ctx = _parse_context(items[2])
                    scope = [n for n, _ in ctx]
                    return CheckDecl(
                        kind,
                        ctx,
                        (
                            parse_type(items[3], scope),
                            parse_term(items[4], scope),
                            parse_term(items[5], scope),
                        ),
                        loc,
                    )
            raise ParseError("unknown check kind %r" % kind, se.line, se.col)
    raise ParseError("unknown declaration form %r" % head, se.line, se.col)


def parse_program(text: str) -> Program:
    return Program(tuple(parse_form(se) for se in read_sexprs(text)))


# -- printing ----------------------------------------------------------------


def _fresh(hint: str, scope: list) -> str:
    name = hint or "x"
    while name in scope:
        name += "'"
    return name


def show_elem(e) -> str:
    if isinstance(e, tuple):
        if e and e[0] == "fn":
            inner = " ".join(
                "(%s %s)" % (show_elem(k), show_elem(v)) for k, v in e[1]
            )
            return "(fn%s%s)" % (" " if inner else "", inner)
        if e and e[0] in ("inl", "inr") and len(e) == 2:
            return "(%s %s)" % (e[0], show_elem(e[1]))
        if e and e[0] == "set":
            inner = " ".join(show_elem(x) for x in e[1])
            return "(set%s%s)" % (" " if inner else "", inner)
        if e and e[0] == STAR and len(e) == 2:
            return "(star %d)" % e[1]
        if len(e) == 2:
            return "(tup %s %s)" % (show_elem(e[0]), show_elem(e[1]))
    if e == STAR:
        return "(star)"
    return str(e)


def show_type(t: S.Node, scope: list) -> str:
    match t:
        case S.TUnit():
            return "(unit)"
        case S.TBase(name=n, arg=a):
            return "(base %s %s)" % (n, show_term(a, scope))
        case S.TSigma(dom=d, cod=c, hint=h):
            x = _fresh(h, scope)
            return "(sigma (%s %s) %s)" % (
                x, show_type(d, scope), show_type(c, scope + [x])
            )
        case S.TU(comp=c):
            return "(U %s)" % show_type(c, scope)
        case S.TSum(left=l, right=r):
            return "(sum %s %s)" % (show_type(l, scope), show_type(r, scope))
        case S.TRefBase(name=n, arg=a, body=p, hint=h):
            v = _fresh(h, scope)
            return "(ref %s (base %s %s) %s)" % (
                v, n, show_term(a, scope), show_formula(p, scope + [v])
            )
        case S.TRefUnit(body=p, hint=h):
            v = _fresh(h, scope)
            return "(ref %s (unit) %s)" % (v, show_formula(p, scope + [v]))
        case S.TF(val=a):
            return "(F %s)" % show_type(a, scope)
        case S.TPi(dom=d, cod=c, hint=h):
            x = _fresh(h, scope)
            return "(pi (%s %s) %s)" % (
                x, show_type(d, scope), show_type(c, scope + [x])
            )
    raise ValueError("not a type: %r" % (t,))


def show_term(t: S.Node, scope: list) -> str:
    match t:
        case S.Var(index=i, hint=h):
            if 0 <= i < len(scope):
                return scope[len(scope) - 1 - i]
            return "%s#%d" % (h, i)
        case S.UnitVal():
            return "(unit-val)"
        case S.Const(name=n):
            return n
        case S.Pair(fst=f, snd=s, dom=d, cod=c, hint=h):
            x = _fresh(h, scope)
            return "(pair %s %s (%s %s) %s)" % (
                show_term(f, scope), show_term(s, scope),
                x, show_type(d, scope), show_type(c, scope + [x]),
            )
        case S.Thunk(comp=m):
            return "(thunk %s)" % show_term(m, scope)
        case S.Inl(val=v, ann=a):
            return "(inl %s %s)" % (show_term(v, scope), show_type(a, scope))
        case S.Inr(val=v, ann=a):
            return "(inr %s %s)" % (show_term(v, scope), show_type(a, scope))
        case S.Return(val=v):
            return "(return %s)" % show_term(v, scope)
        case S.ToIn(src=m, dom=d, res=r, body=n, hint=h):
            x = _fresh(h, scope)
            return "(to %s (%s %s) %s %s)" % (
                show_term(m, scope), x, show_type(d, scope),
                show_type(r, scope), show_term(n, scope + [x]),
            )
        case S.Force(val=v, ann=a):
            return "(force %s %s)" % (show_term(v, scope), show_type(a, scope))
        case S.Lam(dom=d, body=m, hint=h):
            x = _fresh(h, scope)
            return "(lam (%s %s) %s)" % (
                x, show_type(d, scope), show_term(m, scope + [x])
            )
        case S.App(fn=m, arg=v, dom=d, cod=c, hint=h):
            x = _fresh(h, scope)
            return "(app %s %s (%s %s) %s)" % (
                show_term(m, scope), show_term(v, scope),
                x, show_type(d, scope), show_type(c, scope + [x]),
            )
        case S.Pm(scrut=v, dom=d, cod=c, motive=mo, body=m, hx=hx, hy=hy, hz=hz):
            x = _fresh(hx, scope)
            y = _fresh(hy, scope + [x])
            z = _fresh(hz, scope)
            return "(pm %s ((%s %s) (%s %s)) (%s %s) %s)" % (
                show_term(v, scope),
                x, show_type(d, scope),
                y, show_type(c, scope + [x]),
                z, show_type(mo, scope + [z]),
                show_term(m, scope + [x, y]),
            )
        case S.Case(
            scrut=v, motive=mo, lty=lt, lbranch=lb, rty=rt, rbranch=rb,
            hz=hz, hx=hx, hy=hy,
        ):
            z = _fresh(hz, scope)
            x = _fresh(hx, scope)
            y = _fresh(hy, scope)
            return "(case %s (%s %s) ((%s %s) %s) ((%s %s) %s))" % (
                show_term(v, scope),
                z, show_type(mo, scope + [z]),
                x, show_type(lt, scope), show_term(lb, scope + [x]),
                y, show_type(rt, scope), show_term(rb, scope + [y]),
            )
        case S.Mu(ann=c, body=m, hint=h):
            x = _fresh(h, scope)
            return "(mu (%s (U %s)) %s)" % (
                x, show_type(c, scope), show_term(m, scope + [x])
            )
    raise ValueError("not a term: %r" % (t,))


def show_formula(p: S.Node, scope: list) -> str:
    match p:
        case S.FTop():
            return "(top)"
        case S.FAnd(left=l, right=r):
            return "(and %s %s)" % (
                show_formula(l, scope), show_formula(r, scope)
            )
        case S.FImp(left=l, right=r):
            return "(implies %s %s)" % (
                show_formula(l, scope), show_formula(r, scope)
            )
        case S.FAll(dom=d, body=b, hint=h):
            x = _fresh(h, scope)
            return "(forall (%s %s) %s)" % (
                x, show_type(d, scope), show_formula(b, scope + [x])
            )
        case S.FEq(ann=a, left=l, right=r):
            return "(eq %s %s %s)" % (
                show_type(a, scope), show_term(l, scope), show_term(r, scope)
            )
        case S.FApp(name=n, arg=v):
            return "(%s %s)" % (n, show_term(v, scope))
    raise ValueError("not a formula: %r" % (p,))


def show_form(form) -> str:
    match form:
        case BaseTypeDecl(name=n, arg=a, spec=spec):
            if spec[0] == "const":
                body = "(%s)" % " ".join(show_elem(e) for e in spec[1])
            else:
                body = "(%s)" % " ".join(
                    "(%s (%s))" % (
                        show_elem(k), " ".join(show_elem(x) for x in atoms)
                    )
                    for k, atoms in spec[1]
                )
            return "(basetype %s arg %s carrier %s)" % (
                n, show_type(a, []), body
            )
        case ConstDecl(name=n, ty=t, elem=e):
            return "(const %s type %s denotes %s)" % (
                n, show_type(t, []), show_elem(e)
            )
        case PredDecl(name=n, arg=a, elems=es):
            return "(pred %s arg %s denotes (%s))" % (
                n, show_type(a, []), " ".join(show_elem(e) for e in es)
            )
        case DefDecl(name=n, ctx=ctx, ty=t, term=m):
            scope = [x for x, _ in ctx]
            binds = " ".join(
                "(%s %s)" % (x, show_type(ty_, [y for y, _ in ctx][:i]))
                for i, (x, ty_) in enumerate(ctx)
            )
            return "(def %s (%s) %s %s)" % (
                n, binds, show_type(t, scope), show_term(m, scope)
            )
        case CheckDecl(kind=k, ctx=ctx, parts=parts):
            scope = [x for x, _ in ctx]
            binds = " ".join(
                "(%s %s)" % (x, show_type(ty_, scope[:i]))
                for i, (x, ty_) in enumerate(ctx)
            )
            shown = []
            for part in parts:
                if isinstance(part, (S.TUnit, S.TBase, S.TSigma, S.TU,
                                     S.TSum, S.TRefBase, S.TRefUnit,
                                     S.TF, S.TPi)):
                    shown.append(show_type(part, scope))
                else:
                    shown.append(show_term(part, scope))
            return "(check %s (%s) %s)" % (k, binds, " ".join(shown))
    raise ValueError("not a form: %r" % (form,))


def show_program(p: Program) -> str:
    return "\n".join(show_form(f) for f in p.forms) + "\n"
