"""Subset predicates over finite carriers, and binary relations on them.

Predicates over a fixed carrier form a boolean (hence Heyting) algebra;
reindexing is preimage, and both quantifiers exist along arbitrary maps,
satisfying Frobenius and Beck-Chevalley.  Equality predicates are the
left adjoint to reindexing along the diagonal.

The relations backend realises binary relations on I as predicates over
I x I; reindexing a relation along u is reindexing the predicate along
u x u.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BaseMismatch
from .finset import (
    Carrier,
    Family,
    FinMap,
    comprehend,
    reindex,
    render_atom,
    struct_delta,
)


@dataclass(frozen=True)
class Pred:
    """A subset of a carrier."""

    over: Carrier
    members: frozenset

    def __init__(self, over, members):
        members = frozenset(members)
        for a in members:
            if a not in over:
                raise BaseMismatch(
                    "predicate member %s outside its carrier" % render_atom(a)
                )
        object.__setattr__(self, "over", over)
        object.__setattr__(self, "members", members)

    def __contains__(self, a):
        return a in self.members

    def sorted_members(self):
        from .finset import atom_key

        return sorted(self.members, key=atom_key)

    def __repr__(self):
        return "Pred{%s}" % ", ".join(render_atom(a) for a in self.sorted_members())


def top(c: Carrier) -> Pred:
    return Pred(c, c.elems)

def bottom(c: Carrier) -> Pred:
    return Pred(c, ())


def _same_carrier(p: Pred, q: Pred):
    if p.over != q.over:
        raise BaseMismatch("predicates live over different carriers")


def meet(p: Pred, q: Pred) -> Pred:
    _same_carrier(p, q)
    return Pred(p.over, p.members & q.members)


def join(p: Pred, q: Pred) -> Pred:
    _same_carrier(p, q)
    return Pred(p.over, p.members | q.members)


def implies(p: Pred, q: Pred) -> Pred:
    """Heyting implication; boolean here, so complement-or."""
    _same_carrier(p, q)
    return Pred(p.over, (frozenset(p.over.elems) - p.members) | q.members)


def leq(p: Pred, q: Pred) -> bool:
    _same_carrier(p, q)
    return p.members <= q.members


def pull(u: FinMap, p: Pred) -> Pred:
    """Reindexing: preimage along u."""
    if u.cod != p.over:
        raise BaseMismatch("reindexing map does not land in the predicate carrier")
    return Pred(u.dom, tuple(a for a in u.dom if u(a) in p))


def exists_along(u: FinMap, p: Pred) -> Pred:
    """Direct image: left adjoint to pull along u."""
    if u.dom != p.over:
        raise BaseMismatch("quantification map does not start at the predicate carrier")
    return Pred(u.cod, tuple(u(a) for a in p.members))


def forall_along(u: FinMap, p: Pred) -> Pred:
    """Right adjoint to pull along u."""
    if u.dom != p.over:
        raise BaseMismatch("quantification map does not start at the predicate carrier")
    blocked = {u(a) for a in u.dom if a not in p}
    return Pred(u.cod, tuple(b for b in u.cod if b not in blocked))


def equality_pred(x: Family, p: Pred | None = None) -> Pred:
    """Push a predicate over {x} forward along the diagonal into {proj* x}.

    With p omitted this is the equality predicate on x: the image of the
    diagonal, i.e. all ((i, a), a).
    """
    cx = comprehend(x)
    if p is None:
        p = top(cx.total)
    if p.over != cx.total:
        raise BaseMismatch("equality expects a predicate over the comprehension")
    return exists_along(struct_delta(x), p)


# -- relations ---------------------------------------------------------------


def square(c: Carrier) -> Carrier:
    return Carrier(tuple((a, b) for a in c for b in c))


def square_map(u: FinMap) -> FinMap:
    return FinMap(
        square(u.dom),
        square(u.cod),
        {(a, b): (u(a), u(b)) for a in u.dom for b in u.dom},
    )


@dataclass(frozen=True)
class Rel:
    """A binary relation on a carrier, backed by a predicate on its square."""

    over: Carrier
    pred: Pred

    def __init__(self, over, pairs):
        if isinstance(pairs, Pred):
            pred = pairs
            if pred.over != square(over):
                raise BaseMismatch("relation predicate must live over the square")
        else:
            pred = Pred(square(over), pairs)
        object.__setattr__(self, "over", over)
        object.__setattr__(self, "pred", pred)

    def __contains__(self, pair):
        return pair in self.pred

    def __repr__(self):
        return "Rel{%s}" % ", ".join(
            render_atom(a) for a in self.pred.sorted_members()
        )


def rel_pull(u: FinMap, r: Rel) -> Rel:
    """Change of base: reindex the underlying predicate along u x u."""
    if u.cod != r.over:
        raise BaseMismatch("reindexing map does not land in the relation carrier")
    return Rel(u.dom, pull(square_map(u), r.pred))


def rel_top(c: Carrier) -> Rel:
    return Rel(c, top(square(c)))


def rel_meet(r: Rel, s: Rel) -> Rel:
    return Rel(r.over, meet(r.pred, s.pred))


def rel_join(r: Rel, s: Rel) -> Rel:
    return Rel(r.over, join(r.pred, s.pred))


def rel_implies(r: Rel, s: Rel) -> Rel:
    return Rel(r.over, implies(r.pred, s.pred))


def rel_eq(c: Carrier) -> Rel:
    """The diagonal relation, equality on c."""
    return Rel(c, tuple((a, a) for a in c))


def rel_exists_along(u: FinMap, r: Rel) -> Rel:
    if u.dom != r.over:
        raise BaseMismatch("quantification map does not start at the relation carrier")
    return Rel(u.cod, exists_along(square_map(u), r.pred))


def rel_forall_along(u: FinMap, r: Rel) -> Rel:
    if u.dom != r.over:
        raise BaseMismatch("quantification map does not start at the relation carrier")
    return Rel(u.cod, forall_along(square_map(u), r.pred))
