"""Finite groups as Cayley tables, homomorphisms, and diagram constructions.

Elements are indices 0..order-1 with the identity at index 0 (tables are
relabeled at construction if needed).  All operations are pure; every
search iterates in increasing index order.  Group operation is written
additively throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (
    DomainMismatch,
    ImagesDoNotCommute,
    MalformedTable,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotHomomorphism,
    OrderCapExceeded,
)

DEFAULT_ORDER_CAP = 512
_order_cap = DEFAULT_ORDER_CAP


def set_order_cap(cap: int) -> None:
    """Set the global desk-scale guard for group construction."""
    global _order_cap
    _order_cap = int(cap)


def get_order_cap() -> int:
    return _order_cap


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full composition table.

    ``table[a, b]`` is the index of a+b; the identity is index 0 and
    ``inv[a]`` is -a.  Instances are immutable and compared structurally
    (the optional ``name`` is a display label only).
    """

    table: np.ndarray
    inv: np.ndarray
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def add(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def neg(self, a: int) -> int:
        return int(self.inv[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.table[a, self.inv[b]])

    def conj(self, g: int, x: int) -> int:
        """g + x - g."""
        return int(self.table[self.table[g, x], self.inv[g]])

    def add_many(self, *elems: int) -> int:
        acc = 0
        for e in elems:
            acc = int(self.table[acc, e])
        return acc

    def element_order(self, a: int) -> int:
        k, acc = 1, a
        while acc != 0:
            acc = int(self.table[acc, a])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def elements(self) -> range:
        return range(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(
            self.table, other.table
        )

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<{label}: order {self.order}>"


def _as_table(table) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise MalformedTable(f"table must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        raise MalformedTable("empty table")
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedTable("table entries must be element indices < order")
    return arr


def build_group(table, name: str = "") -> FiniteGroup:
    """Validate a Cayley table and return the group, identity relabeled to 0."""
    arr = _as_table(table)
    n = arr.shape[0]
    if n > _order_cap:
        raise OrderCapExceeded(f"order {n} exceeds cap {_order_cap}")

    witness = _kernels.assoc_violation(arr)
    if witness is not None:
        raise NotAssociative(f"({witness[0]}+{witness[1]})+{witness[2]} != "
                             f"{witness[0]}+({witness[1]}+{witness[2]})")

    ident = None
    for e in range(n):
        if np.array_equal(arr[e], np.arange(n)) and np.array_equal(
            arr[:, e], np.arange(n)
        ):
            ident = e
            break
    if ident is None:
        raise NoIdentity("no two-sided identity element")

    if ident != 0:
        # swap the identity into slot 0 with a transposition relabeling
        perm = np.arange(n)
        perm[0], perm[ident] = ident, 0
        arr = perm[arr[np.ix_(perm, perm)]]

    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.where(arr[a] == 0)[0]
        if len(hits) == 0 or arr[hits[0], a] != 0:
            raise NoInverse(f"element {a} has no two-sided inverse")
        inv[a] = hits[0]

    arr.setflags(write=False)
    inv.setflags(write=False)
    return FiniteGroup(table=arr, inv=inv, name=name)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by its value table ``map`` on dom indices."""

    dom: FiniteGroup
    cod: FiniteGroup
    map: np.ndarray
    name: str = field(default="", compare=False)

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(int(v) for v in self.map)))

    def kernel_elements(self) -> tuple[int, ...]:
        return tuple(int(a) for a in np.where(self.map == 0)[0])

    def is_injective(self) -> bool:
        return len(set(self.map.tolist())) == self.dom.order

    def is_surjective(self) -> bool:
        return len(set(self.map.tolist())) == self.cod.order

    def is_zero(self) -> bool:
        return bool(np.all(self.map == 0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupHom)
            and self.dom == other.dom
            and self.cod == other.cod
            and np.array_equal(self.map, other.map)
        )

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.map.tobytes()))

    def __repr__(self) -> str:
        label = self.name or "hom"
        return f"<{label}: {self.dom!r} -> {self.cod!r}>"


def build_hom(dom: FiniteGroup, cod: FiniteGroup, mapping, name: str = "") -> GroupHom:
    m = np.asarray(mapping, dtype=np.int64)
    if m.shape != (dom.order,):
        raise NotHomomorphism(
            f"map has length {m.shape}, expected ({dom.order},)"
        )
    if m.min() < 0 or m.max() >= cod.order:
        raise NotHomomorphism("map values must be codomain indices")
    witness = _kernels.hom_violation(dom.table, cod.table, m)
    if witness is not None:
        a, b = witness
        raise NotHomomorphism(
            f"f({a}+{b}) = f({dom.add(a, b)}) = {m[dom.add(a, b)]} but "
            f"f({a})+f({b}) = {cod.add(int(m[a]), int(m[b]))}"
        )
    m.setflags(write=False)
    return GroupHom(dom=dom, cod=cod, map=m, name=name)


def identity_hom(g: FiniteGroup) -> GroupHom:
    return build_hom(g, g, np.arange(g.order), name="id")


def zero_hom(dom: FiniteGroup, cod: FiniteGroup) -> GroupHom:
    return build_hom(dom, cod, np.zeros(dom.order, dtype=np.int64), name="0")


def compose(outer: GroupHom, inner: GroupHom) -> GroupHom:
    """outer . inner (apply inner first)."""
    if inner.cod != outer.dom:
        raise DomainMismatch("composition: codomain/domain mismatch")
    return GroupHom(dom=inner.dom, cod=outer.cod, map=outer.map[inner.map])


def neg_hom(f: GroupHom) -> GroupHom:
    """a |-> -f(a); a homomorphism whenever the image lies in an abelian part."""
    m = f.cod.inv[f.map]
    return build_hom(f.dom, f.cod, m)


# --- subgroups and quotients ---------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup realized as a group in its own right plus an embedding."""

    parent: FiniteGroup
    elements: tuple[int, ...]
    group: FiniteGroup
    embedding: GroupHom

    def index_of(self, parent_elem: int) -> int:
        return self.elements.index(parent_elem)


def close_under_group(g: FiniteGroup, seed) -> tuple[int, ...]:
    """Smallest subset containing seed, 0, closed under + and inverse."""
    elems = {0}
    frontier = list(dict.fromkeys(seed))
    for a in frontier:
        elems.add(int(a))
        elems.add(g.neg(int(a)))
    changed = True
    while changed:
        changed = False
        current = sorted(elems)
        for a in current:
            for b in current:
                c = g.add(a, b)
                if c not in elems:
                    elems.add(c)
                    changed = True
    return tuple(sorted(elems))


def subgroup_from_elements(parent: FiniteGroup, elements) -> Subgroup:
    elems = tuple(sorted(set(int(e) for e in elements)))
    if 0 not in elems:
        raise MalformedTable("subgroup must contain the identity")
    pos = {e: i for i, e in enumerate(elems)}
    k = len(elems)
    table = np.zeros((k, k), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            c = parent.add(a, b)
            if c not in pos:
                raise MalformedTable(
                    f"subset not closed: {a}+{b} = {c} outside subset"
                )
            table[i, j] = pos[c]
    group = build_group(table)
    emb = build_hom(group, parent, np.asarray(elems, dtype=np.int64))
    return Subgroup(parent=parent, elements=elems, group=group, embedding=emb)


def kernel(f: GroupHom) -> Subgroup:
    return subgroup_from_elements(f.dom, f.kernel_elements())


def normal_closure(g: FiniteGroup, seed) -> tuple[int, ...]:
    """Smallest normal subgroup containing seed."""
    elems = set(close_under_group(g, seed))
    changed = True
    while changed:
        changed = False
        for x in sorted(elems):
            for h in g.elements():
                c = g.conj(h, x)
                if c not in elems:
                    elems.update(close_under_group(g, sorted(elems) + [c]))
                    changed = True
                    break
            if changed:
                break
    return tuple(sorted(elems))


def is_normal(g: FiniteGroup, elements) -> bool:
    elems = set(int(e) for e in elements)
    return all(g.conj(h, x) in elems for x in elems for h in g.elements())


def quotient_by(g: FiniteGroup, normal_elements) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup; cosets labeled by least member.

    The identity coset contains 0, hence sorts first; remaining cosets are
    ordered by least member, which makes the labeling reproducible.
    """
    nelems = sorted(set(int(e) for e in normal_elements))
    assert is_normal(g, nelems), "quotient_by requires a normal subgroup"
    rep = np.full(g.order, -1, dtype=np.int64)
    for a in g.elements():
        if rep[a] >= 0:
            continue
        coset = sorted(g.add(a, x) for x in nelems)
        least = coset[0]
        for e in coset:
            rep[e] = least
    labels = sorted(set(int(r) for r in rep))
    pos = {lab: i for i, lab in enumerate(labels)}
    k = len(labels)
    table = np.zeros((k, k), dtype=np.int64)
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            table[i, j] = pos[int(rep[g.add(a, b)])]
    q = build_group(table)
    proj = build_hom(g, q, np.asarray([pos[int(rep[a])] for a in g.elements()]))
    return q, proj


def cokernel(f: GroupHom) -> tuple[FiniteGroup, GroupHom]:
    """Quotient of cod by the normal closure of image(f), with projection."""
    n = normal_closure(f.cod, f.image())
    return quotient_by(f.cod, n)


# --- products, pullbacks, semidirect products -----------------------------


@dataclass(frozen=True)
class ProductResult:
    group: FiniteGroup
    inj1: GroupHom
    inj2: GroupHom
    proj1: GroupHom
    proj2: GroupHom

    def pair_index(self, a: int, b: int) -> int:
        return a * self.inj2.dom.order + b


def direct_product(g: FiniteGroup, h: FiniteGroup) -> ProductResult:
    """G x H with pair (a, b) at index a*|H| + b."""
    ng, nh = g.order, h.order
    a = np.repeat(np.arange(ng), nh)
    b = np.tile(np.arange(nh), ng)
    table = g.table[np.ix_(a, a)] * nh + h.table[np.ix_(b, b)]
    prod = build_group(table, name=f"{g.name}x{h.name}" if g.name and h.name else "")
    inj1 = build_hom(g, prod, np.arange(ng) * nh)
    inj2 = build_hom(h, prod, np.arange(nh))
    proj1 = build_hom(prod, g, a)
    proj2 = build_hom(prod, h, b)
    return ProductResult(prod, inj1, inj2, proj1, proj2)


@dataclass(frozen=True)
class PullbackResult:
    group: FiniteGroup
    p1: GroupHom
    p2: GroupHom
    embedding: GroupHom  # into A x B


def pullback(f: GroupHom, g: GroupHom) -> PullbackResult:
    """Subgroup {(a, b) : f(a) = g(b)} of A x B with its projections."""
    if f.cod != g.cod:
        raise DomainMismatch("pullback requires a shared codomain")
    prod = direct_product(f.dom, g.dom)
    nb = g.dom.order
    members = [
        a * nb + b
        for a in f.dom.elements()
        for b in g.dom.elements()
        if f(a) == g(b)
    ]
    sub = subgroup_from_elements(prod.group, members)
    p1 = compose(prod.proj1, sub.embedding)
    p2 = compose(prod.proj2, sub.embedding)
    return PullbackResult(sub.group, p1, p2, sub.embedding)


@dataclass(frozen=True)
class SemidirectResult:
    group: FiniteGroup
    inj_normal: GroupHom    # N -> N x| G, n |-> (n, 0)
    inj_actor: GroupHom     # G -> N x| G, g |-> (0, g)
    retraction: GroupHom    # N x| G -> G


def semidirect_product(action) -> SemidirectResult:
    """N x| G with (n, g) + (n', g') = (n + g*n', g + g'), index n*|G| + g."""
    n_grp, g_grp, act = action.object, action.actor, action.act
    nn, ng = n_grp.order, g_grp.order
    size = nn * ng
    table = np.zeros((size, size), dtype=np.int64)
    for n1 in range(nn):
        for g1 in range(ng):
            i = n1 * ng + g1
            twisted = act[g1]  # g1 * n'
            for n2 in range(nn):
                row = n_grp.table[n1, twisted[n2]] * ng
                table[i, n2 * ng: (n2 + 1) * ng] = row + g_grp.table[g1]
    grp = build_group(table)
    inj_normal = build_hom(n_grp, grp, np.arange(nn) * ng)
    inj_actor = build_hom(g_grp, grp, np.arange(ng))
    retraction = build_hom(grp, g_grp, np.tile(np.arange(ng), nn))
    return SemidirectResult(grp, inj_normal, inj_actor, retraction)


def cooperator(kappa: GroupHom, iota: GroupHom) -> GroupHom:
    """(x, y) |-> kappa(x) + iota(y), defined when the images commute."""
    if kappa.cod != iota.cod:
        raise DomainMismatch("cooperator requires a shared codomain")
    f = kappa.cod
    for x in kappa.dom.elements():
        for y in iota.dom.elements():
            u, v = kappa(x), iota(y)
            if f.add(u, v) != f.add(v, u):
                raise ImagesDoNotCommute(
                    f"kappa({x}) = {u} and iota({y}) = {v} do not commute"
                )
    prod = direct_product(kappa.dom, iota.dom)
    ny = iota.dom.order
    m = np.asarray(
        [
            f.add(kappa(x), iota(y))
            for x in kappa.dom.elements()
            for y in range(ny)
        ]
    )
    return build_hom(prod.group, f, m)


def is_short_exact(kappa: GroupHom, gamma: GroupHom) -> bool:
    """True iff kappa is injective, gamma surjective, im(kappa) = ker(gamma)."""
    if kappa.cod != gamma.dom:
        raise DomainMismatch("is_short_exact: cod(kappa) must equal dom(gamma)")
    return (
        kappa.is_injective()
        and gamma.is_surjective()
        and kappa.image() == gamma.kernel_elements()
    )


# --- homomorphism searches ------------------------------------------------


def generating_sequence(g: FiniteGroup) -> tuple[int, ...]:
    """Greedy generating set scanned in increasing index order."""
    gens: list[int] = []
    closed = {0}
    for a in g.elements():
        if a not in closed:
            gens.append(a)
            closed = set(close_under_group(g, gens))
    return tuple(gens)


def _extend_by_generators(g: FiniteGroup, h: FiniteGroup, gens, images):
    """Propagate a generator assignment to a full map, or None on conflict."""
    m = np.full(g.order, -1, dtype=np.int64)
    m[0] = 0
    frontier = [0]
    while frontier:
        new_frontier = []
        for a in frontier:
            for gen, img in zip(gens, images):
                b = g.add(a, gen)
                v = h.add(int(m[a]), img)
                if m[b] < 0:
                    m[b] = v
                    new_frontier.append(b)
                elif m[b] != v:
                    return None
        frontier = new_frontier
    if (m < 0).any():
        return None
    return m


def all_homs(g: FiniteGroup, h: FiniteGroup, limit: int | None = None) -> list[GroupHom]:
    """All homomorphisms G -> H, sorted lexicographically by value table."""
    gens = generating_sequence(g)
    if not gens:
        return [zero_hom(g, h)]
    orders = [g.element_order(a) for a in gens]
    candidates = [
        [x for x in h.elements() if orders[i] % h.element_order(x) == 0]
        for i in range(len(gens))
    ]
    found = []
    for images in itertools.product(*candidates):
        m = _extend_by_generators(g, h, gens, images)
        if m is None:
            continue
        if _kernels.hom_violation(g.table, h.table, m) is None:
            found.append(m)
    found.sort(key=lambda m: m.tolist())
    if limit is not None:
        found = found[:limit]
    return [GroupHom(dom=g, cod=h, map=m) for m in found]


def find_isomorphisms(
    g: FiniteGroup, h: FiniteGroup, limit: int | None = None
) -> list[GroupHom]:
    """All isomorphisms G -> H, sorted lexicographically, truncated at limit."""
    if g.order != h.order:
        return []
    isos = [f for f in all_homs(g, h) if f.is_injective()]
    if limit is not None:
        isos = isos[:limit]
    return isos


def hom_from_cosets(
    proj: GroupHom, quotient_map_target: GroupHom
) -> GroupHom:
    """Unique hom q -> T with result . proj = quotient_map_target.

    Requires the target map to be constant on proj-fibres.
    """
    q = proj.cod
    t = quotient_map_target.cod
    m = np.full(q.order, -1, dtype=np.int64)
    for a in proj.dom.elements():
        i = proj(a)
        v = quotient_map_target(a)
        if m[i] < 0:
            m[i] = v
        elif m[i] != v:
            raise NotHomomorphism("map does not factor through the quotient")
    return build_hom(q, t, m)
