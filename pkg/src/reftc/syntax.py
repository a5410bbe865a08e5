"""Abstract syntax for the object language.

Terms are shared between the underlying and the refinement type system:
binders are positional (de Bruijn indices), surface names survive only
as printing hints and never influence equality, so structural equality
of nodes is exactly alpha equivalence.  All annotations required by the
typing rules are mandatory fields here; the refinement layer expects
annotations inside terms to be refinement-free, which the checker
enforces.

One declarative table drives shifting and substitution: it records, per
node class, how many binders each child field sits under.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field


def _hint():
    return field(default="x", compare=False)


def _loc():
    return field(default=None, compare=False, kw_only=True)


@dataclass(frozen=True)
class Node:
    pass


# -- value types -------------------------------------------------------------


@dataclass(frozen=True)
class TUnit(Node):
    loc: object = _loc()


@dataclass(frozen=True)
class TBase(Node):
    name: str
    arg: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class TSigma(Node):
    dom: "Node"
    cod: "Node"
    hint: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class TU(Node):
    comp: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class TSum(Node):
    left: "Node"
    right: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class TRefBase(Node):
    name: str
    arg: "Node"
    body: "Node"
    hint: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class TRefUnit(Node):
    body: "Node"
    hint: str = _hint()
    loc: object = _loc()


# -- computation types -------------------------------------------------------


@dataclass(frozen=True)
class TF(Node):
    val: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class TPi(Node):
    dom: "Node"
    cod: "Node"
    hint: str = _hint()
    loc: object = _loc()


# -- value terms -------------------------------------------------------------


@dataclass(frozen=True)
class Var(Node):
    index: int
    hint: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class UnitVal(Node):
    loc: object = _loc()


@dataclass(frozen=True)
class Const(Node):
    name: str
    loc: object = _loc()


@dataclass(frozen=True)
class Pair(Node):
    fst: "Node"
    snd: "Node"
    dom: "Node"
    cod: "Node"
    hint: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class Thunk(Node):
    comp: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class Inl(Node):
    val: "Node"
    ann: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class Inr(Node):
    val: "Node"
    ann: "Node"
    loc: object = _loc()


# -- computation terms -------------------------------------------------------


@dataclass(frozen=True)
class Return(Node):
    val: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class ToIn(Node):
    src: "Node"
    dom: "Node"
    res: "Node"
    body: "Node"
    hint: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class Force(Node):
    val: "Node"
    ann: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class Lam(Node):
    dom: "Node"
    body: "Node"
    hint: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class App(Node):
    fn: "Node"
    arg: "Node"
    dom: "Node"
    cod: "Node"
    hint: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class Pm(Node):
    scrut: "Node"
    dom: "Node"
    cod: "Node"
    motive: "Node"
    body: "Node"
    hx: str = _hint()
    hy: str = _hint()
    hz: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class Case(Node):
    scrut: "Node"
    motive: "Node"
    lty: "Node"
    lbranch: "Node"
    rty: "Node"
    rbranch: "Node"
    hz: str = _hint()
    hx: str = _hint()
    hy: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class Mu(Node):
    ann: "Node"
    body: "Node"
    hint: str = _hint()
    loc: object = _loc()


# -- formulas ----------------------------------------------------------------


@dataclass(frozen=True)
class FTop(Node):
    loc: object = _loc()


@dataclass(frozen=True)
class FAnd(Node):
    left: "Node"
    right: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class FImp(Node):
    left: "Node"
    right: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class FAll(Node):
    dom: "Node"
    body: "Node"
    hint: str = _hint()
    loc: object = _loc()


@dataclass(frozen=True)
class FEq(Node):
    ann: "Node"
    left: "Node"
    right: "Node"
    loc: object = _loc()


@dataclass(frozen=True)
class FApp(Node):
    name: str
    arg: "Node"
    loc: object = _loc()


# how many binders each child field sits under
_OFFSETS = {
    TUnit: {},
    TBase: {"arg": 0},
    TSigma: {"dom": 0, "cod": 1},
    TU: {"comp": 0},
    TSum: {"left": 0, "right": 0},
    TRefBase: {"arg": 0, "body": 1},
    TRefUnit: {"body": 1},
    TF: {"val": 0},
    TPi: {"dom": 0, "cod": 1},
    Var: {},
    UnitVal: {},
    Const: {},
    Pair: {"fst": 0, "snd": 0, "dom": 0, "cod": 1},
    Thunk: {"comp": 0},
    Inl: {"val": 0, "ann": 0},
    Inr: {"val": 0, "ann": 0},
    Return: {"val": 0},
    ToIn: {"src": 0, "dom": 0, "res": 0, "body": 1},
    Force: {"val": 0, "ann": 0},
    Lam: {"dom": 0, "body": 1},
    App: {"fn": 0, "arg": 0, "dom": 0, "cod": 1},
    Pm: {"scrut": 0, "dom": 0, "cod": 1, "motive": 1, "body": 2},
    Case: {
        "scrut": 0, "motive": 1,
        "lty": 0, "lbranch": 1,
        "rty": 0, "rbranch": 1,
    },
    Mu: {"ann": 0, "body": 1},
    FTop: {},
    FAnd: {"left": 0, "right": 0},
    FImp: {"left": 0, "right": 0},
    FAll: {"dom": 0, "body": 1},
    FEq: {"ann": 0, "left": 0, "right": 0},
    FApp: {"arg": 0},
}


def _transform(node: Node, depth: int, on_var) -> Node:
    if isinstance(node, Var):
        return on_var(node, depth)
    offs = _OFFSETS[type(node)]
    changes = {}
    for name, d in offs.items():
        child = getattr(node, name)
        new = _transform(child, depth + d, on_var)
        if new is not child:
            changes[name] = new
    return dataclasses.replace(node, **changes) if changes else node


def shift(node: Node, d: int, cutoff: int = 0) -> Node:
    """Add d to every variable index at or above cutoff."""

    def on_var(v, depth):
        if v.index >= depth + cutoff:
            return dataclasses.replace(v, index=v.index + d)
        return v

    return _transform(node, 0, on_var)


def subst(node: Node, repl: Node, j: int = 0) -> Node:
    """Substitute repl for variable j, closing that binder.

    repl lives in the context of node with entry j removed, so crossing
    depth binders lifts it by depth.
    """

    def on_var(v, depth):
        if v.index == depth + j:
            return shift(repl, depth)
        if v.index > depth + j:
            return dataclasses.replace(v, index=v.index - 1)
        return v

    return _transform(node, 0, on_var)


def alpha_eq(a: Node, b: Node) -> bool:
    """Hints and locations are excluded from equality, so this is alpha."""
    return a == b


def uses_var(node: Node, j: int = 0) -> bool:
    found = []

    def on_var(v, depth):
        if v.index == depth + j:
            found.append(v)
        return v

    _transform(node, 0, on_var)
    return bool(found)


def erase(node: Node) -> Node:
    """Strip refinements from a type (or from annotations in a term)."""
    match node:
        case TRefBase(name=n, arg=a, loc=loc):
            return TBase(n, erase(a), loc=loc)
        case TRefUnit(loc=loc):
            return TUnit(loc=loc)
        case Var() | UnitVal() | Const():
            return node
        case _:
            offs = _OFFSETS[type(node)]
            changes = {}
            for name in offs:
                child = getattr(node, name)
                new = erase(child)
                if new is not child:
                    changes[name] = new
            return dataclasses.replace(node, **changes) if changes else node


def is_underlying(node: Node) -> bool:
    if isinstance(node, (TRefBase, TRefUnit)):
        return False
    return all(
        is_underlying(getattr(node, name)) for name in _OFFSETS[type(node)]
    )


VALUE_TYPES = (TUnit, TBase, TSigma, TU, TSum, TRefBase, TRefUnit)
COMP_TYPES = (TF, TPi)
VALUE_TERMS = (Var, UnitVal, Const, Pair, Thunk, Inl, Inr)
COMP_TERMS = (Return, ToIn, Force, Lam, App, Pm, Case, Mu)
FORMULAS = (FTop, FAnd, FImp, FAll, FEq, FApp)
