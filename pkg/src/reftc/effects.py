"""Monads on finite carriers, their fibrewise lifts to families, and
predicate liftings.

Three monads are available: the identity monad (pure programs), the
maybe monad adding one fresh divergence atom, and the finite powerset
monad (including the empty set).  Each induces a monad on families
acting on every fibre, together with a comparison map theta from the
comprehension of the lifted family into the monad applied to the
comprehension; theta is the cotupling of the maps T(inj_i).

A predicate lifting turns a predicate on a carrier into one on the
monad's image carrier.  The maybe monad has a partial lifting (adds
the divergence atom) and a total one (does not); the powerset monad
has may (meets the predicate) and must (contained in it).  A lifting
together with theta produces the effect layer on refined objects:

    S(x, p, q) = (T x fibrewise, p, proj* p  meet  theta* (lift q))

guarded by the soundness inequality relating it to lifting the
conjunction directly; violations raise with a counterexample.

Eilenberg-Moore algebras keep their structure maps pointwise (a
callable) because materialising T at a doubly-applied powerset carrier
is exponential; law checks materialise on demand at small sizes.
"""

from __future__ import annotations

from itertools import combinations

from .errors import BaseMismatch, LiftingUnsound, Unsupported
from .finset import (
    Carrier,
    FamMor,
    Family,
    FinMap,
    atom_key,
    comprehend,
    fn_apply,
    fn_atom,
    identity,
    pi,
    reindex,
)
from .pred import Pred, leq, meet, pull
from .refined import RefinedObj

STAR = "⋆"


def star_of(c: Carrier):
    """The fresh divergence atom for a carrier; escalates on collision."""
    if STAR not in c:
        return STAR
    n = 1
    while (STAR, n) in c:
        n += 1
    return (STAR, n)


def set_atom(elems) -> tuple:
    return ("set", tuple(sorted(set(elems), key=atom_key)))


class MonadDesc:
    """A monad on finite carriers, with pointwise element operations.

    map_elem takes both carriers because the maybe monad must know where
    the fresh atom of the codomain lives.
    """

    name: str

    def on_carrier(self, c: Carrier) -> Carrier:
        raise NotImplementedError

    def map_elem(self, dom: Carrier, cod: Carrier, f, a):
        """Apply T(f) to one element of T(dom), f a callable dom -> cod."""
        raise NotImplementedError

    def unit_elem(self, c: Carrier, a):
        raise NotImplementedError

    def mult_elem(self, c: Carrier, a):
        """Flatten one element of T(T(c)) into T(c)."""
        raise NotImplementedError

    def on_map(self, u: FinMap) -> FinMap:
        tc, td = self.on_carrier(u.dom), self.on_carrier(u.cod)
        return FinMap(tc, td, {a: self.map_elem(u.dom, u.cod, u, a) for a in tc})

    def unit(self, c: Carrier) -> FinMap:
        return FinMap(c, self.on_carrier(c), {a: self.unit_elem(c, a) for a in c})

    def mult(self, c: Carrier) -> FinMap:
        tc = self.on_carrier(c)
        ttc = self.on_carrier(tc)
        return FinMap(ttc, tc, {a: self.mult_elem(c, a) for a in ttc})


class IdentityMonad(MonadDesc):
    name = "none"

    def on_carrier(self, c):
        return c

    def map_elem(self, dom, cod, f, a):
        return f(a)

    def unit_elem(self, c, a):
        return a

    def mult_elem(self, c, a):
        return a


class MaybeMonad(MonadDesc):
    """Adds one fresh atom; the chosen coproduct keeps old atoms as-is."""

    name = "maybe"

    def on_carrier(self, c):
        return Carrier(c.elems + (star_of(c),))

    def map_elem(self, dom, cod, f, a):
        if a == star_of(dom):
            return star_of(cod)
        return f(a)

    def unit_elem(self, c, a):
        return a

    def mult_elem(self, c, a):
        tc = self.on_carrier(c)
        if a == star_of(tc):
            return star_of(c)
        return a


class PowersetMonad(MonadDesc):
    name = "powerset"

    def on_carrier(self, c):
        out = []
        for k in range(len(c) + 1):
            for sub in combinations(c.elems, k):
                out.append(set_atom(sub))
        return Carrier(out)

    def map_elem(self, dom, cod, f, a):
        return set_atom(f(x) for x in a[1])

    def unit_elem(self, c, a):
        return set_atom((a,))

    def mult_elem(self, c, a):
        out = []
        for s in a[1]:
            out.extend(s[1])
        return set_atom(out)


MONADS = {
    "none": IdentityMonad(),
    "maybe": MaybeMonad(),
    "powerset": PowersetMonad(),
}


# -- the induced monad on families -------------------------------------------


class FibredMonad:
    """The fibrewise action of a carrier monad on families."""

    def __init__(self, desc: MonadDesc):
        self.desc = desc
        self.name = desc.name

    def on_family(self, x: Family) -> Family:
        return Family(x.base, {i: self.desc.on_carrier(x.at(i)) for i in x.base})

    def on_vertical(self, f: FamMor) -> FamMor:
        f.require_vertical()
        return FamMor(
            self.on_family(f.src),
            self.on_family(f.dst),
            f.base_map,
            {i: self.desc.on_map(f.at(i)) for i in f.src.base},
        )

    def unit_at(self, x: Family) -> FamMor:
        return FamMor(
            x,
            self.on_family(x),
            identity(x.base),
            {i: self.desc.unit(x.at(i)) for i in x.base},
        )

    def mult_at(self, x: Family) -> FamMor:
        tx = self.on_family(x)
        return FamMor(
            self.on_family(tx),
            tx,
            identity(x.base),
            {i: self.desc.mult(x.at(i)) for i in x.base},
        )

    def theta_at(self, x: Family) -> FinMap:
        """Cotupling of the maps T(inj_i): {T x} -> T {x}."""
        cx = comprehend(x)
        ctx = comprehend(self.on_family(x))
        t_total = self.desc.on_carrier(cx.total)
        graph = {}
        for i, t in ctx.total:
            fibre = x.at(i)
            graph[(i, t)] = self.desc.map_elem(
                fibre, cx.total, lambda a, i=i: (i, a), t
            )
        return FinMap(ctx.total, t_total, graph)


def induce_fibred(name: str) -> FibredMonad:
    if name not in MONADS:
        raise Unsupported("unknown monad %r" % name)
    return FibredMonad(MONADS[name])


# -- predicate liftings ------------------------------------------------------


class PredLifting:
    """A fibred lifting of predicates along a monad."""

    def __init__(self, name: str, desc: MonadDesc, fn):
        self.name = name
        self.desc = desc
        self._fn = fn

    def apply(self, p: Pred) -> Pred:
        return self._fn(self.desc, p)


def _lift_identity(desc, p):
    return p


def _lift_partial(desc, p):
    return Pred(
        desc.on_carrier(p.over), tuple(p.members) + (star_of(p.over),)
    )


def _lift_total(desc, p):
    return Pred(desc.on_carrier(p.over), p.members)


def _lift_may(desc, p):
    tc = desc.on_carrier(p.over)
    return Pred(tc, tuple(s for s in tc if any(x in p for x in s[1])))


def _lift_must(desc, p):
    tc = desc.on_carrier(p.over)
    return Pred(tc, tuple(s for s in tc if all(x in p for x in s[1])))


_LIFTINGS = {
    "none": {"id": _lift_identity},
    "maybe": {"partial": _lift_partial, "total": _lift_total},
    "powerset": {"may": _lift_may, "must": _lift_must},
}


def liftings_for(monad_name: str) -> dict[str, PredLifting]:
    if monad_name not in _LIFTINGS:
        raise Unsupported("unknown monad %r" % monad_name)
    desc = MONADS[monad_name]
    return {
        name: PredLifting(name, desc, fn)
        for name, fn in _LIFTINGS[monad_name].items()
    }


def get_lifting(monad_name: str, lifting_name: str) -> PredLifting:
    table = liftings_for(monad_name)
    if lifting_name not in table:
        raise Unsupported(
            "lifting %r is not available for monad %r (choose from %s)"
            % (lifting_name, monad_name, ", ".join(sorted(table)))
        )
    return table[lifting_name]


# -- the effect layer on refined objects -------------------------------------


def check_eq3(fm: FibredMonad, lifting: PredLifting, o: RefinedObj):
    """Soundness inequality for a lifting at one refined object.

    Returns None when it holds, else a counterexample atom from the
    comprehension of the lifted family.
    """
    cx = comprehend(o.x)
    theta = fm.theta_at(o.x)
    tx = fm.on_family(o.x)
    lhs = meet(
        pull(comprehend(tx).proj, o.p),
        pull(theta, lifting.apply(o.q)),
    )
    rhs = pull(theta, lifting.apply(meet(pull(cx.proj, o.p), o.q)))
    for a in lhs.sorted_members():
        if a not in rhs:
            return a
    return None


def lifted_monad_S(fm: FibredMonad, lifting: PredLifting, o: RefinedObj) -> RefinedObj:
    """Apply the lifted monad to one refined object, guarded by check_eq3."""
    bad = check_eq3(fm, lifting, o)
    if bad is not None:
        raise LiftingUnsound(
            "lifting %s is unsound at this object" % lifting.name,
            counterexample=bad,
        )
    tx = fm.on_family(o.x)
    q = meet(
        pull(comprehend(tx).proj, o.p),
        pull(fm.theta_at(o.x), lifting.apply(o.q)),
    )
    return RefinedObj(tx, o.p, q)


# -- Eilenberg-Moore algebras ------------------------------------------------


class EMAlgebra:
    """An algebra for the fibrewise monad, structure kept pointwise."""

    def __init__(self, fm: FibredMonad, carrier: Family, structure_fn):
        self.fm = fm
        self.carrier = carrier
        self.structure_fn = structure_fn
        self._materialized = None

    def apply(self, i, t):
        """Structure map at base point i on one element of T(fibre)."""
        return self.structure_fn(i, t)

    def materialize(self) -> FamMor:
        """The structure map as a family morphism; exponential for nested
        powerset carriers, so call only at small sizes."""
        if self._materialized is None:
            tc = self.fm.on_family(self.carrier)
            self._materialized = FamMor(
                tc,
                self.carrier,
                identity(self.carrier.base),
                {
                    i: FinMap(
                        tc.at(i),
                        self.carrier.at(i),
                        {t: self.structure_fn(i, t) for t in tc.at(i)},
                    )
                    for i in self.carrier.base
                },
            )
        return self._materialized

    def equals(self, other: "EMAlgebra") -> bool:
        if self.fm.name != other.fm.name or self.carrier != other.carrier:
            return False
        return self.materialize() == other.materialize()

    def check_unit_law(self):
        """structure . unit = id; returns a counterexample pair or None."""
        for i in self.carrier.base:
            for a in self.carrier.at(i):
                t = self.fm.desc.unit_elem(self.carrier.at(i), a)
                if self.structure_fn(i, t) != a:
                    return (i, a)
        return None

    def check_mult_law(self):
        """structure . mult = structure . T structure, checked by
        materialising T(T(fibre)); keep the carrier small."""
        desc = self.fm.desc
        for i in self.carrier.base:
            fibre = self.carrier.at(i)
            tf = desc.on_carrier(fibre)
            ttf = desc.on_carrier(tf)
            for tt in ttf:
                via_mult = self.structure_fn(i, desc.mult_elem(fibre, tt))
                via_map = self.structure_fn(
                    i,
                    desc.map_elem(tf, fibre, lambda t: self.structure_fn(i, t), tt),
                )
                if via_mult != via_map:
                    return (i, tt)
        return None


def free_algebra(fm: FibredMonad, x: Family) -> EMAlgebra:
    carrier = fm.on_family(x)
    return EMAlgebra(
        fm, carrier, lambda i, tt: fm.desc.mult_elem(x.at(i), tt)
    )


def reindex_algebra(u: FinMap, alg: EMAlgebra) -> EMAlgebra:
    if u.cod != alg.carrier.base:
        raise BaseMismatch("reindexing map does not land in the algebra base")
    return EMAlgebra(
        alg.fm,
        reindex(u, alg.carrier),
        lambda j, t: alg.structure_fn(u(j), t),
    )


def pi_algebra(fm: FibredMonad, x: Family, inner: EMAlgebra) -> EMAlgebra:
    """Pointwise algebra on the dependent product of algebra carriers."""
    if inner.carrier.base != comprehend(x).total:
        raise BaseMismatch("inner algebra must live over the comprehension total")
    carrier = pi(x, inner.carrier)

    def structure(i, t):
        dom = x.at(i)
        pf = carrier.at(i)
        return fn_atom(
            {
                a: inner.structure_fn(
                    (i, a),
                    fm.desc.map_elem(
                        pf, inner.carrier.at((i, a)),
                        lambda g, a=a: fn_apply(g, a), t
                    ),
                )
                for a in dom
            }
        )

    return EMAlgebra(fm, carrier, structure)
