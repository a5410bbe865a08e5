"""Finite sets, finite maps, and set-indexed families of finite sets.

This is the semantic kernel.  A Family over a base carrier I assigns a
finite carrier to every element of I; together these form the total
category of the families fibration, and every higher layer (predicates,
refined objects, effects) is built on the operations here.

Atoms are immutable Python values: ints, strings, and tuples of atoms.
Tuples encode structured elements:

    (i, x)            an element of a comprehension total
    (x, y)            an element of a dependent-sum fibre
    ("fn", ((k, v), ...))   a dependent function, graph sorted by key
    ("inl", x) / ("inr", y) coproduct elements
    ("set", (x, ...))       a finite powerset element

All carriers keep their elements in one canonical order (atom_key), so
equality of carriers, maps and families is plain structural equality and
printed output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import BaseMismatch, KernelError, NotVertical

UNIT = "*"


@lru_cache(maxsize=None)
def atom_key(a):
    """Total order on atoms; ints, then strings, then tuples recursively."""
    if isinstance(a, int):
        return (0, a)
    if isinstance(a, str):
        return (1, a)
    return (2, len(a), tuple(atom_key(x) for x in a))


def render_atom(a) -> str:
    if isinstance(a, tuple):
        return "(" + " ".join(render_atom(x) for x in a) + ")"
    return str(a)


@dataclass(frozen=True)
class Carrier:
    """A finite set of atoms, canonically ordered."""

    elems: tuple
    _set: frozenset = field(init=False, compare=False, repr=False, hash=False)

    def __init__(self, elems, name=None):
        ordered = tuple(sorted(elems, key=atom_key))
        for a, b in zip(ordered, ordered[1:]):
            if a == b:
                raise KernelError("duplicate carrier element %s" % render_atom(a))
        object.__setattr__(self, "elems", ordered)
        object.__setattr__(self, "_set", frozenset(ordered))

    def __contains__(self, a):
        return a in self._set

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return len(self.elems)

    def __repr__(self):
        return "{%s}" % ", ".join(render_atom(a) for a in self.elems)


TERMINAL = Carrier((UNIT,))


@dataclass(frozen=True)
class FinMap:
    """A function between carriers, given by its graph."""

    dom: Carrier
    cod: Carrier
    graph: tuple
    _lookup: dict = field(init=False, compare=False, repr=False, hash=False)

    def __init__(self, dom, cod, graph):
        if isinstance(graph, dict):
            graph = tuple(graph.items())
        table = dict(graph)
        if len(table) != len(graph):
            raise KernelError("map graph has duplicate keys")
        if set(table) != set(dom.elems):
            raise KernelError("map graph does not cover its domain")
        for v in table.values():
            if v not in cod:
                raise KernelError("map value %s outside codomain" % render_atom(v))
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(
            self, "graph", tuple(sorted(table.items(), key=lambda kv: atom_key(kv[0])))
        )
        object.__setattr__(self, "_lookup", table)

    def __call__(self, a):
        return self._lookup[a]

    def __repr__(self):
        return "FinMap(%s)" % ", ".join(
            "%s->%s" % (render_atom(k), render_atom(v)) for k, v in self.graph
        )

    def is_identity(self) -> bool:
        return self.dom == self.cod and all(k == v for k, v in self.graph)

    def image(self) -> frozenset:
        return frozenset(v for _, v in self.graph)


def identity(c: Carrier) -> FinMap:
    return FinMap(c, c, {a: a for a in c})


def compose(g: FinMap, f: FinMap) -> FinMap:
    """g after f."""
    if f.cod != g.dom:
        raise BaseMismatch("composition mismatch: %r then %r" % (f, g))
    return FinMap(f.dom, g.cod, {a: g(f(a)) for a in f.dom})


def bang(c: Carrier) -> FinMap:
    """The unique map into the terminal carrier."""
    return FinMap(c, TERMINAL, {a: UNIT for a in c})


def is_mono(u: FinMap) -> bool:
    return len(u.image()) == len(u.dom)


@dataclass(frozen=True)
class Family:
    """A finite family of carriers indexed by a base carrier."""

    base: Carrier
    fibres: tuple
    _at: dict = field(init=False, compare=False, repr=False, hash=False)

    def __init__(self, base, fibres):
        if isinstance(fibres, dict):
            fibres = tuple(fibres.items())
        table = dict(fibres)
        if set(table) != set(base.elems):
            raise BaseMismatch("family fibres do not match the base carrier")
        object.__setattr__(self, "base", base)
        object.__setattr__(
            self, "fibres", tuple((i, table[i]) for i in base.elems)
        )
        object.__setattr__(self, "_at", table)

    def at(self, i) -> Carrier:
        return self._at[i]

    def __repr__(self):
        return "Family(%s)" % ", ".join(
            "%s:%r" % (render_atom(i), c) for i, c in self.fibres
        )


def constant_family(base: Carrier, fibre: Carrier) -> Family:
    return Family(base, {i: fibre for i in base})


def unit_family(base: Carrier) -> Family:
    return constant_family(base, TERMINAL)


@dataclass(frozen=True)
class FamMor:
    """A morphism of families: a base map plus a map on each fibre.

    Vertical means the base map is the identity.
    """

    src: Family
    dst: Family
    base_map: FinMap
    parts: tuple
    _at: dict = field(init=False, compare=False, repr=False, hash=False)

    def __init__(self, src, dst, base_map, parts):
        if isinstance(parts, dict):
            parts = tuple(parts.items())
        if base_map.dom != src.base or base_map.cod != dst.base:
            raise BaseMismatch("base map does not match the families")
        table = dict(parts)
        if set(table) != set(src.base.elems):
            raise BaseMismatch("fibre maps do not cover the source base")
        for i, f in table.items():
            if f.dom != src.at(i) or f.cod != dst.at(base_map(i)):
                raise BaseMismatch(
                    "fibre map at %s has the wrong end points" % render_atom(i)
                )
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "base_map", base_map)
        object.__setattr__(
            self, "parts", tuple((i, table[i]) for i in src.base.elems)
        )
        object.__setattr__(self, "_at", table)

    def at(self, i) -> FinMap:
        return self._at[i]

    def is_vertical(self) -> bool:
        return self.base_map.is_identity()

    def require_vertical(self):
        if not self.is_vertical():
            raise NotVertical("expected a vertical family morphism")


def fam_identity(x: Family) -> FamMor:
    return FamMor(x, x, identity(x.base), {i: identity(x.at(i)) for i in x.base})


def fam_compose(g: FamMor, f: FamMor) -> FamMor:
    if f.dst != g.src:
        raise BaseMismatch("family morphisms do not compose")
    return FamMor(
        f.src,
        g.dst,
        compose(g.base_map, f.base_map),
        {i: compose(g.at(f.base_map(i)), f.at(i)) for i in f.src.base},
    )


def reindex(u: FinMap, x: Family) -> Family:
    """Pull a family back along a base map.  Strictly functorial."""
    if u.cod != x.base:
        raise BaseMismatch("reindexing map does not land in the family base")
    return Family(u.dom, {j: x.at(u(j)) for j in u.dom})


def cart(u: FinMap, x: Family) -> FamMor:
    """The chosen cartesian morphism reindex(u, x) -> x over u."""
    xu = reindex(u, x)
    return FamMor(xu, x, u, {j: identity(xu.at(j)) for j in u.dom})


def reindex_mor(u: FinMap, f: FamMor) -> FamMor:
    """Pull a vertical morphism back along a base map."""
    f.require_vertical()
    if u.cod != f.src.base:
        raise BaseMismatch("reindexing map does not land in the morphism base")
    return FamMor(
        reindex(u, f.src),
        reindex(u, f.dst),
        identity(u.dom),
        {j: f.at(u(j)) for j in u.dom},
    )


@dataclass(frozen=True)
class ComprehensionObj:
    """Total carrier of a family together with its projection to the base."""

    total: Carrier
    proj: FinMap


def comprehend(x: Family) -> ComprehensionObj:
    total = Carrier(tuple((i, a) for i in x.base for a in x.at(i)))
    proj = FinMap(total, x.base, {(i, a): i for i, a in total})
    return ComprehensionObj(total, proj)


def comprehend_mor(f: FamMor) -> FinMap:
    """The action of comprehension on morphisms."""
    src = comprehend(f.src).total
    dst = comprehend(f.dst).total
    return FinMap(
        src, dst, {(i, a): (f.base_map(i), f.at(i)(a)) for i, a in src}
    )


def section_of(v: FamMor) -> FinMap:
    """Turn a vertical map 1_I -> X into a section of the projection of X."""
    v.require_vertical()
    if v.src != unit_family(v.src.base):
        raise KernelError("section source must be the unit family")
    total = comprehend(v.dst).total
    return FinMap(v.src.base, total, {i: (i, v.at(i)(UNIT)) for i in v.src.base})


def unsection_of(x: Family, s: FinMap) -> FinMap | FamMor:
    """Inverse of section_of: a section of the projection as a vertical map."""
    c = comprehend(x)
    if s.dom != x.base or s.cod != c.total:
        raise BaseMismatch("not a section of the projection of this family")
    for i in x.base:
        if c.proj(s(i)) != i:
            raise KernelError("map is not a section at %s" % render_atom(i))
    return FamMor(
        unit_family(x.base),
        x,
        identity(x.base),
        {i: FinMap(TERMINAL, x.at(i), {UNIT: s(i)[1]}) for i in x.base},
    )


# -- dependent sums ----------------------------------------------------------


def sigma(x: Family, y: Family) -> Family:
    """Dependent sum along x; y must live over the comprehension of x."""
    cx = comprehend(x)
    if y.base != cx.total:
        raise BaseMismatch("inner family must live over the comprehension total")
    return Family(
        x.base,
        {i: Carrier(tuple((a, b) for a in x.at(i) for b in y.at((i, a))))
         for i in x.base},
    )


def kappa(x: Family, y: Family) -> FinMap:
    """Comparison iso {y} -> {sigma(x, y)}, witnessing strong sums."""
    sxy = sigma(x, y)
    src = comprehend(y).total
    dst = comprehend(sxy).total
    return FinMap(src, dst, {((i, a), b): (i, (a, b)) for (i, a), b in src})


def inverse(u: FinMap) -> FinMap:
    if len(u.image()) != len(u.cod) or not is_mono(u):
        raise KernelError("map is not a bijection")
    return FinMap(u.cod, u.dom, {v: k for k, v in u.graph})


# -- dependent products ------------------------------------------------------


def fn_atom(graph) -> tuple:
    if isinstance(graph, dict):
        graph = graph.items()
    return ("fn", tuple(sorted(graph, key=lambda kv: atom_key(kv[0]))))


def fn_apply(a, x):
    tag, graph = a
    if tag != "fn":
        raise KernelError("atom %s is not a function" % render_atom(a))
    for k, v in graph:
        if k == x:
            return v
    raise KernelError("function atom undefined at %s" % render_atom(x))


def pi(x: Family, y: Family) -> Family:
    """Dependent product along x; fibres are sets of dependent functions."""
    cx = comprehend(x)
    if y.base != cx.total:
        raise BaseMismatch("inner family must live over the comprehension total")
    fibres = {}
    for i in x.base:
        dom = x.at(i).elems
        choices = [y.at((i, a)).elems for a in dom]
        fibres[i] = Carrier(
            tuple(fn_atom(zip(dom, pick)) for pick in product(*choices))
        )
    return Family(x.base, fibres)


def pi_counit(x: Family, y: Family) -> FamMor:
    """Evaluation: the pullback of pi(x, y) along the projection, mapped to y."""
    pxy = pi(x, y)
    cx = comprehend(x)
    src = reindex(cx.proj, pxy)
    return FamMor(
        src,
        y,
        identity(cx.total),
        {
            (i, a): FinMap(
                src.at((i, a)),
                y.at((i, a)),
                {g: fn_apply(g, a) for g in src.at((i, a))},
            )
            for i, a in cx.total
        },
    )


def pi_intro(x: Family, y: Family, v: FamMor) -> FamMor:
    """Transpose a vertical map 1_{x} -> y to a vertical map 1 -> pi(x, y)."""
    v.require_vertical()
    cx = comprehend(x)
    if v.src != unit_family(cx.total) or v.dst != y:
        raise BaseMismatch("transpose source must be a global element of y over {x}")
    pxy = pi(x, y)
    parts = {}
    for i in x.base:
        g = fn_atom({a: v.at((i, a))(UNIT) for a in x.at(i)})
        parts[i] = FinMap(TERMINAL, pxy.at(i), {UNIT: g})
    return FamMor(unit_family(x.base), pxy, identity(x.base), parts)


# -- the comprehension/unit bijection and its friends ------------------------


def phi(x: Family, y: Family, v: FamMor) -> FamMor:
    """Currying iso: vertical 1_{x} -> reindex(proj, y) becomes x -> y."""
    v.require_vertical()
    cx = comprehend(x)
    if v.src != unit_family(cx.total) or v.dst != reindex(cx.proj, y):
        raise BaseMismatch("phi expects a global element of the pulled-back family")
    return FamMor(
        x,
        y,
        identity(x.base),
        {
            i: FinMap(x.at(i), y.at(i), {a: v.at((i, a))(UNIT) for a in x.at(i)})
            for i in x.base
        },
    )


def phi_inv(x: Family, y: Family, f: FamMor) -> FamMor:
    f.require_vertical()
    if f.src != x or f.dst != y:
        raise BaseMismatch("phi_inv expects a vertical morphism x -> y")
    cx = comprehend(x)
    yp = reindex(cx.proj, y)
    return FamMor(
        unit_family(cx.total),
        yp,
        identity(cx.total),
        {
            (i, a): FinMap(TERMINAL, yp.at((i, a)), {UNIT: f.at(i)(a)})
            for i, a in cx.total
        },
    )


def struct_sigma(x: Family, y: Family) -> FinMap:
    """Symmetry {reindex(proj_x, y)} -> {reindex(proj_y, x)}."""
    if x.base != y.base:
        raise BaseMismatch("symmetry needs families over one base")
    src = comprehend(reindex(comprehend(x).proj, y)).total
    dst = comprehend(reindex(comprehend(y).proj, x)).total
    return FinMap(src, dst, {((i, a), b): ((i, b), a) for (i, a), b in src})


def struct_delta(x: Family) -> FinMap:
    """Diagonal {x} -> {reindex(proj_x, x)}."""
    cx = comprehend(x)
    dst = comprehend(reindex(cx.proj, x)).total
    return FinMap(cx.total, dst, {(i, a): ((i, a), a) for i, a in cx.total})


# -- fibred coproducts -------------------------------------------------------


def fam_coprod(x: Family, y: Family) -> Family:
    if x.base != y.base:
        raise BaseMismatch("coproduct needs families over one base")
    return Family(
        x.base,
        {
            i: Carrier(
                tuple(("inl", a) for a in x.at(i))
                + tuple(("inr", b) for b in y.at(i))
            )
            for i in x.base
        },
    )


def coprod_inj(x: Family, y: Family, side: str) -> FamMor:
    xy = fam_coprod(x, y)
    src = x if side == "inl" else y
    return FamMor(
        src,
        xy,
        identity(x.base),
        {
            i: FinMap(src.at(i), xy.at(i), {a: (side, a) for a in src.at(i)})
            for i in x.base
        },
    )


def cotuple(f: FamMor, g: FamMor) -> FamMor:
    """Mediating morphism out of a fibrewise coproduct."""
    f.require_vertical()
    g.require_vertical()
    if f.dst != g.dst or f.src.base != g.src.base:
        raise BaseMismatch("cotupling needs a common target over one base")
    xy = fam_coprod(f.src, g.src)
    parts = {}
    for i in xy.base:
        table = {("inl", a): f.at(i)(a) for a in f.src.at(i)}
        table.update({("inr", b): g.at(i)(b) for b in g.src.at(i)})
        parts[i] = FinMap(xy.at(i), f.dst.at(i), table)
    return FamMor(xy, f.dst, identity(xy.base), parts)
