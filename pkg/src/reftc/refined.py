"""Families refined by predicates on base and total: the lifted fibration.

A refined object is a triple (x, p, q): a family x over I, a predicate
p on I, and a predicate q on the comprehension total of x lying below
the preimage of p.  These are the objects interpreting refinement
types; p constrains the context, q the dependent carrier.

The structure mirrors the one on plain families: cartesian liftings,
units, comprehension (which is just q), dependent sums and products,
fibrewise coproducts, and a posetal notion of subtyping.  Dependent
products follow the closed formula built from the symmetry iso, the
evaluation map and a universally quantified implication; tests verify
it against the extensional membership description.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BaseMismatch, NotRefined, SharingMismatch
from .finset import (
    FamMor,
    Family,
    FinMap,
    cart,
    comprehend,
    comprehend_mor,
    coprod_inj,
    fam_coprod,
    kappa,
    inverse,
    pi,
    pi_counit,
    reindex,
    render_atom,
    sigma,
    struct_sigma,
    unit_family,
)
from .pred import (
    Pred,
    exists_along,
    forall_along,
    implies,
    join,
    leq,
    meet,
    pull,
)


@dataclass(frozen=True)
class RefinedObj:
    x: Family
    p: Pred
    q: Pred

    def __init__(self, x, p, q):
        cx = comprehend(x)
        if p.over != x.base:
            raise BaseMismatch("base predicate must live over the family base")
        if q.over != cx.total:
            raise BaseMismatch("total predicate must live over the comprehension")
        bound = pull(cx.proj, p)
        for a in q.sorted_members():
            if a not in bound:
                raise NotRefined(
                    "total member %s projects outside the base predicate"
                    % render_atom(a),
                    offending=a,
                )
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __repr__(self):
        return "RefinedObj(%r, %r, %r)" % (self.x, self.p, self.q)


def mk_refined(x: Family, p: Pred, q: Pred) -> RefinedObj:
    return RefinedObj(x, p, q)


@dataclass(frozen=True)
class RefinedMor:
    """A family morphism that respects both predicate components.

    The two predicate conditions are propositions, not data, because the
    predicate fibration is posetal; the constructor checks them.
    """

    src: RefinedObj
    dst: RefinedObj
    f: FamMor

    def __init__(self, src, dst, f):
        if f.src != src.x or f.dst != dst.x:
            raise BaseMismatch("underlying morphism does not match the refined ends")
        for i in src.p.sorted_members():
            if f.base_map(i) not in dst.p:
                raise NotRefined(
                    "base predicate not respected at %s" % render_atom(i),
                    offending=i,
                )
        cm = comprehend_mor(f)
        for a in src.q.sorted_members():
            if cm(a) not in dst.q:
                raise NotRefined(
                    "total predicate not respected at %s" % render_atom(a),
                    offending=a,
                )
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "f", f)


def cart_lift(u: FinMap, p_new: Pred, o: RefinedObj) -> tuple[RefinedObj, RefinedMor]:
    """Cartesian lifting of (u, p_new <= pull(u, p)) against o."""
    if not leq(p_new, pull(u, o.p)):
        raise NotRefined("new base predicate must lie below the pulled-back one")
    xu = reindex(u, o.x)
    cu = cart(u, o.x)
    cxu = comprehend(xu)
    q_new = meet(pull(cxu.proj, p_new), pull(comprehend_mor(cu), o.q))
    lifted = RefinedObj(xu, p_new, q_new)
    return lifted, RefinedMor(lifted, o, cu)


def unit_refined(p: Pred) -> RefinedObj:
    one = unit_family(p.over)
    return RefinedObj(one, p, pull(comprehend(one).proj, p))


def comprehend_refined(o: RefinedObj) -> Pred:
    return o.q


def sigma_refined(o: RefinedObj, inner: RefinedObj) -> RefinedObj:
    if inner.x.base != comprehend(o.x).total:
        raise BaseMismatch("inner family must live over the comprehension of the outer")
    if inner.p != o.q:
        raise SharingMismatch("inner base predicate must equal the outer total one")
    k = kappa(o.x, inner.x)
    return RefinedObj(sigma(o.x, inner.x), o.p, pull(inverse(k), inner.q))


def pi_refined(o: RefinedObj, inner: RefinedObj) -> RefinedObj:
    if inner.x.base != comprehend(o.x).total:
        raise BaseMismatch("inner family must live over the comprehension of the outer")
    if inner.p != o.q:
        raise SharingMismatch("inner base predicate must equal the outer total one")
    x, y = o.x, inner.x
    z = pi(x, y)
    cz = comprehend(z)
    # body over {proj_x* z}: membership of q, pulled back, implies membership
    # of the inner total predicate under evaluation
    eps = pi_counit(x, y)
    xz = reindex(comprehend(x).proj, z)
    body = implies(
        pull(comprehend(xz).proj, o.q),
        pull(comprehend_mor(eps), inner.q),
    )
    zx = reindex(cz.proj, x)
    swapped = pull(struct_sigma(z, x), body)
    q = meet(
        pull(cz.proj, o.p),
        forall_along(comprehend(zx).proj, swapped),
    )
    return RefinedObj(z, o.p, q)


def coprod_refined(o1: RefinedObj, o2: RefinedObj) -> RefinedObj:
    if o1.x.base != o2.x.base:
        raise BaseMismatch("coproduct needs refined objects over one base")
    if o1.p != o2.p:
        raise SharingMismatch("coproduct needs a common base predicate")
    xy = fam_coprod(o1.x, o2.x)
    j1 = comprehend_mor(coprod_inj(o1.x, o2.x, "inl"))
    j2 = comprehend_mor(coprod_inj(o1.x, o2.x, "inr"))
    return RefinedObj(
        xy, o1.p, join(exists_along(j1, o1.q), exists_along(j2, o2.q))
    )


def semantic_subtype(a: RefinedObj, b: RefinedObj) -> bool:
    """Same family, same base predicate, smaller total predicate."""
    return a.x == b.x and a.p == b.p and leq(a.q, b.q)


def subtype_counterexample(a: RefinedObj, b: RefinedObj):
    """None when a is a semantic subtype of b, else a witness atom."""
    if a.x != b.x or a.p != b.p:
        return "shape"
    for m in a.q.sorted_members():
        if m not in b.q:
            return m
    return None


def project_u(o: RefinedObj) -> Family:
    """Forget the predicates."""
    return o.x


def project_r(o: RefinedObj) -> Pred:
    """Forget the family, keep the base predicate."""
    return o.p
