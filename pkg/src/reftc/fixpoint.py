"""Finite pointed posets, monotone endomaps, and fibrewise least fixed
points, packaged as the recursion backend.

A poset family assigns a pointed poset to every base element.  A
vertical monotone endomap on such a family has a least fixed point in
every fibre, computed by Kleene iteration from the bottom element; the
resulting section is the fixpoint operator used to interpret recursive
computations.  The three equational laws of such operators (naturality
under reindexing, dinaturality, and the diagonal property) are
evaluated here instance by instance; the law suite enumerates.

The diagonal law involves transposing a section into a fibrewise map,
which need not be monotone; an instance where either side fails to be
monotone is reported as vacuous rather than as a violation, and a
violation means both sides exist and differ.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BaseMismatch, KernelError, NotMonotone
from .finset import (
    Carrier,
    FamMor,
    Family,
    FinMap,
    atom_key,
    comprehend,
    fn_apply,
    fn_atom,
    reindex,
    render_atom,
)
from .refined import RefinedObj


@dataclass(frozen=True)
class PointedPoset:
    carrier: Carrier
    leq: frozenset
    bottom: object

    def __init__(self, carrier, leq, bottom):
        leq = frozenset(leq)
        elems = carrier.elems
        for a, b in leq:
            if a not in carrier or b not in carrier:
                raise KernelError("order pair outside the carrier")
        for a in elems:
            if (a, a) not in leq:
                raise KernelError("order not reflexive at %s" % render_atom(a))
        for a, b in leq:
            if a != b and (b, a) in leq:
                raise KernelError("order not antisymmetric")
            for c in elems:
                if (b, c) in leq and (a, c) not in leq:
                    raise KernelError("order not transitive")
        if bottom not in carrier:
            raise KernelError("bottom element outside the carrier")
        for a in elems:
            if (bottom, a) not in leq:
                raise KernelError("designated bottom is not least")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "bottom", bottom)

    def le(self, a, b) -> bool:
        return (a, b) in self.leq


def flat_pointed(c: Carrier, bottom) -> PointedPoset:
    """The flat order: bottom below everything, all else incomparable."""
    pairs = [(a, a) for a in c] + [(bottom, a) for a in c]
    return PointedPoset(c, pairs, bottom)


def pointwise_fn_poset(keys, sub) -> PointedPoset:
    """Functions ordered pointwise; sub maps each key to a PointedPoset."""
    from itertools import product

    keys = tuple(sorted(keys, key=atom_key))
    choices = [sub[k].carrier.elems for k in keys]
    elems = [fn_atom(zip(keys, pick)) for pick in product(*choices)]
    carrier = Carrier(elems)
    pairs = []
    for g in elems:
        for h in elems:
            if all(sub[k].le(fn_apply(g, k), fn_apply(h, k)) for k in keys):
                pairs.append((g, h))
    return PointedPoset(
        carrier, pairs, fn_atom({k: sub[k].bottom for k in keys})
    )


def is_monotone(p: PointedPoset, f: FinMap) -> bool:
    return all(p.le(f(a), f(b)) for a, b in p.leq)


@dataclass(frozen=True)
class MonoEndo:
    poset: PointedPoset
    graph: FinMap

    def __init__(self, poset, graph):
        if graph.dom != poset.carrier or graph.cod != poset.carrier:
            raise BaseMismatch("endomap does not match the poset carrier")
        if not is_monotone(poset, graph):
            raise NotMonotone("endomap is not monotone")
        object.__setattr__(self, "poset", poset)
        object.__setattr__(self, "graph", graph)


def lfp(endo: MonoEndo):
    """Kleene iteration from bottom; stabilises within the carrier size."""
    a = endo.poset.bottom
    for _ in range(len(endo.poset.carrier) + 1):
        b = endo.graph(a)
        if b == a:
            return a
        a = b
    raise KernelError("fixpoint iteration failed to stabilise")


@dataclass(frozen=True)
class PosetFamily:
    base: Carrier
    posets: tuple

    def __init__(self, base, posets):
        if isinstance(posets, dict):
            posets = tuple(posets.items())
        table = dict(posets)
        if set(table) != set(base.elems):
            raise BaseMismatch("poset fibres do not match the base carrier")
        object.__setattr__(self, "base", base)
        object.__setattr__(
            self, "posets", tuple((i, table[i]) for i in base.elems)
        )

    def at(self, i) -> PointedPoset:
        return dict(self.posets)[i]

    def underlying(self) -> Family:
        return Family(self.base, {i: p.carrier for i, p in self.posets})


def reindex_posets(u: FinMap, pf: PosetFamily) -> PosetFamily:
    if u.cod != pf.base:
        raise BaseMismatch("reindexing map does not land in the poset family base")
    return PosetFamily(u.dom, {j: pf.at(u(j)) for j in u.dom})


def conway(pf: PosetFamily, f: FamMor) -> FinMap:
    """Fibrewise least fixed point of a vertical monotone endomap,
    as a section of the projection of the underlying family."""
    f.require_vertical()
    x = pf.underlying()
    if f.src != x or f.dst != x:
        raise BaseMismatch("endomap does not match the poset family")
    total = comprehend(x).total
    graph = {}
    for i in pf.base:
        p = pf.at(i)
        if not is_monotone(p, f.at(i)):
            raise NotMonotone(
                "endomap is not monotone at fibre %s" % render_atom(i), fibre=i
            )
        graph[i] = (i, lfp(MonoEndo(p, f.at(i))))
    return FinMap(pf.base, total, graph)


def conway_lift_check(o: RefinedObj, pf: PosetFamily, f: FamMor):
    """The admissibility gate for refined recursion: every fixpoint over
    a base point satisfying p must land in q.  None, or a counterexample."""
    if pf.underlying() != o.x:
        raise BaseMismatch("poset family does not match the refined object")
    s = conway(pf, f)
    for i in o.p.sorted_members():
        if s(i) not in o.q:
            return i
    return None


# -- the three operator laws, instance by instance ---------------------------


def check_naturality(pf: PosetFamily, f: FamMor, u: FinMap) -> bool:
    """Reindexing the fixpoint section equals the fixpoint of the
    reindexed endomap."""
    s = conway(pf, f)
    pfu = reindex_posets(u, pf)
    fu = FamMor(
        pfu.underlying(),
        pfu.underlying(),
        FinMap(u.dom, u.dom, {j: j for j in u.dom}),
        {j: f.at(u(j)) for j in u.dom},
    )
    su = conway(pfu, fu)
    return all(su(j) == (j, s(u(j))[1]) for j in u.dom)


def check_dinaturality(
    pf_x: PosetFamily, pf_y: PosetFamily, f: FamMor, g: FamMor
) -> bool:
    """lfp(g . f) = g(lfp(f . g)) fibre by fibre."""
    if pf_x.base != pf_y.base:
        raise BaseMismatch("dinaturality needs families over one base")
    for i in pf_x.base:
        px, py = pf_x.at(i), pf_y.at(i)
        fi, gi = f.at(i), g.at(i)
        gf = FinMap(px.carrier, px.carrier, {a: gi(fi(a)) for a in px.carrier})
        fg = FinMap(py.carrier, py.carrier, {b: fi(gi(b)) for b in py.carrier})
        left = lfp(MonoEndo(px, gf))
        right = gi(lfp(MonoEndo(py, fg)))
        if left != right:
            return False
    return True


def check_diagonal(pf: PosetFamily, comps: dict):
    """Diagonal law at one poset family.

    comps maps each pair (i, a) of the comprehension to a monotone endo
    graph on the fibre at i, i.e. an endomap of the pulled-back family.
    Returns "holds", "vacuous", or a counterexample pair (i, lhs_rhs).
    """
    x = pf.underlying()
    total = comprehend(x).total
    outer = {}
    diag = {}
    for i in pf.base:
        p = pf.at(i)
        fibre = p.carrier
        lfp_graph = {}
        diag_graph = {}
        for a in fibre:
            endo = comps[(i, a)]
            if not is_monotone(p, endo):
                raise NotMonotone("inner endomap not monotone", fibre=(i, a))
            lfp_graph[a] = lfp(MonoEndo(p, endo))
            diag_graph[a] = endo(a)
        outer[i] = FinMap(fibre, fibre, lfp_graph)
        diag[i] = FinMap(fibre, fibre, diag_graph)
    lhs = {}
    rhs = {}
    for i in pf.base:
        p = pf.at(i)
        lhs_ok = is_monotone(p, outer[i])
        rhs_ok = is_monotone(p, diag[i])
        if not (lhs_ok and rhs_ok):
            if lhs_ok != rhs_ok:
                return ("one-sided", i)
            return "vacuous"
        lhs[i] = lfp(MonoEndo(p, outer[i]))
        rhs[i] = lfp(MonoEndo(p, diag[i]))
        if lhs[i] != rhs[i]:
            return (i, (lhs[i], rhs[i]))
    return "holds"
