"""Group actions by automorphisms and modules over a fixed base group.

A module here is an abelian coefficient group together with an action of
the base group by automorphisms; module morphisms are the equivariant
homomorphisms between coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BaseMismatch, NotAbelian, NotAnAction, NotEquivariant
from .groups import (
    FiniteGroup,
    GroupHom,
    ProductResult,
    build_hom,
    direct_product,
)


@dataclass(frozen=True)
class GroupAction:
    """An action of ``actor`` on ``object`` by automorphisms.

    ``act[g, x]`` is g*x.
    """

    actor: FiniteGroup
    object: FiniteGroup
    act: np.ndarray

    def __call__(self, g: int, x: int) -> int:
        return int(self.act[g, x])

    def is_trivial(self) -> bool:
        return bool(np.array_equal(self.act, np.tile(np.arange(self.object.order),
                                                     (self.actor.order, 1))))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupAction)
            and self.actor == other.actor
            and self.object == other.object
            and np.array_equal(self.act, other.act)
        )

    def __hash__(self) -> int:
        return hash((self.actor, self.object, self.act.tobytes()))


def build_action(actor: FiniteGroup, obj: FiniteGroup, act) -> GroupAction:
    arr = np.asarray(act, dtype=np.int64)
    if arr.shape != (actor.order, obj.order):
        raise NotAnAction(
            f"act table has shape {arr.shape}, expected "
            f"({actor.order}, {obj.order})"
        )
    if arr.min() < 0 or arr.max() >= obj.order:
        raise NotAnAction("act entries must be object element indices")
    if not np.array_equal(arr[0], np.arange(obj.order)):
        x = int(np.argwhere(arr[0] != np.arange(obj.order))[0][0])
        raise NotAnAction(f"identity must act trivially; 0*{x} = {arr[0, x]}")
    witness = _kernels.action_compat_violation(actor.table, arr)
    if witness is not None:
        g, h, x = witness
        raise NotAnAction(f"({g}+{h})*{x} != {g}*({h}*{x})")
    for g in actor.elements():
        row = arr[g]
        if len(set(row.tolist())) != obj.order:
            raise NotAnAction(f"{g}*(-) is not a bijection")
        w = _kernels.hom_violation(obj.table, obj.table, row)
        if w is not None:
            raise NotAnAction(
                f"{g}*(-) is not an automorphism: fails at ({w[0]}, {w[1]})"
            )
    arr = arr.copy()
    arr.setflags(write=False)
    return GroupAction(actor=actor, object=obj, act=arr)


def trivial_action(actor: FiniteGroup, obj: FiniteGroup) -> GroupAction:
    act = np.tile(np.arange(obj.order), (actor.order, 1))
    act.setflags(write=False)
    return GroupAction(actor=actor, object=obj, act=act)


@dataclass(frozen=True)
class CModule:
    """Abelian coefficients with a base-group action by automorphisms."""

    base: FiniteGroup
    coeff: FiniteGroup
    action: GroupAction

    def xi(self, c: int, b: int) -> int:
        return int(self.action.act[c, b])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CModule)
            and self.base == other.base
            and self.coeff == other.coeff
            and self.action == other.action
        )

    def __hash__(self) -> int:
        return hash((self.base, self.coeff, self.action))

    def __repr__(self) -> str:
        kind = "trivial" if self.action.is_trivial() else "twisted"
        return (f"<module: base order {self.base.order}, coeff order "
                f"{self.coeff.order}, {kind}>")


def build_cmodule(base: FiniteGroup, coeff: FiniteGroup, action) -> CModule:
    if not coeff.is_abelian():
        a = next(
            (a, b)
            for a in coeff.elements()
            for b in coeff.elements()
            if coeff.add(a, b) != coeff.add(b, a)
        )
        raise NotAbelian(f"coefficients must be abelian; {a} do not commute")
    if isinstance(action, GroupAction):
        if action.actor != base or action.object != coeff:
            raise BaseMismatch("action does not match base/coefficients")
        act = build_action(base, coeff, action.act)
    else:
        act = build_action(base, coeff, action)
    return CModule(base=base, coeff=coeff, action=act)


def trivial_module(base: FiniteGroup, coeff: FiniteGroup) -> CModule:
    return build_cmodule(base, coeff, trivial_action(base, coeff))


@dataclass(frozen=True)
class CModuleMorphism:
    """Equivariant homomorphism between modules over the same base."""

    dom: CModule
    cod: CModule
    hom: GroupHom

    def __call__(self, b: int) -> int:
        return self.hom(b)

    def is_identity(self) -> bool:
        return self.dom == self.cod and np.array_equal(
            self.hom.map, np.arange(self.dom.coeff.order)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CModuleMorphism)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.hom == other.hom
        )

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.hom))


def cmodule_morphism(dom: CModule, cod: CModule, hom) -> CModuleMorphism:
    if dom.base != cod.base:
        raise BaseMismatch("module morphisms require the same base group")
    if not isinstance(hom, GroupHom):
        hom = build_hom(dom.coeff, cod.coeff, hom)
    if hom.dom != dom.coeff or hom.cod != cod.coeff:
        raise BaseMismatch("hom does not match module coefficients")
    for c in dom.base.elements():
        for b in dom.coeff.elements():
            if hom(dom.xi(c, b)) != cod.xi(c, hom(b)):
                raise NotEquivariant(
                    f"f(xi({c},{b})) = {hom(dom.xi(c, b))} but "
                    f"xi'({c}, f({b})) = {cod.xi(c, hom(b))}"
                )
    return CModuleMorphism(dom=dom, cod=cod, hom=hom)


def identity_morphism(m: CModule) -> CModuleMorphism:
    return cmodule_morphism(m, m, np.arange(m.coeff.order))


def zero_morphism(dom: CModule, cod: CModule) -> CModuleMorphism:
    return cmodule_morphism(dom, cod, np.zeros(dom.coeff.order, dtype=np.int64))


def negate(beta: CModuleMorphism) -> CModuleMorphism:
    """b |-> -beta(b); valid because the codomain is abelian."""
    m = beta.cod.coeff.inv[beta.hom.map]
    return cmodule_morphism(beta.dom, beta.cod, m)


def add_morphisms(f: CModuleMorphism, g: CModuleMorphism) -> CModuleMorphism:
    """Pointwise sum of parallel morphisms (abelian hom-sets)."""
    if f.dom != g.dom or f.cod != g.cod:
        raise BaseMismatch("can only add parallel module morphisms")
    b = f.cod.coeff
    m = b.table[f.hom.map, g.hom.map]
    return cmodule_morphism(f.dom, f.cod, m)


def compose_morphisms(outer: CModuleMorphism, inner: CModuleMorphism) -> CModuleMorphism:
    if inner.cod != outer.dom:
        raise BaseMismatch("module morphism composition mismatch")
    return cmodule_morphism(inner.dom, outer.cod, outer.hom.map[inner.hom.map])


@dataclass(frozen=True)
class ModuleProductResult:
    module: CModule
    proj1: CModuleMorphism
    proj2: CModuleMorphism
    inj1: CModuleMorphism
    inj2: CModuleMorphism
    product: ProductResult


def cmodule_product(m1: CModule, m2: CModule) -> ModuleProductResult:
    """Componentwise action on coeff1 x coeff2, with projections."""
    if m1.base != m2.base:
        raise BaseMismatch("module product requires the same base group")
    prod = direct_product(m1.coeff, m2.coeff)
    n2 = m2.coeff.order
    act = np.zeros((m1.base.order, prod.group.order), dtype=np.int64)
    for c in m1.base.elements():
        for b1 in m1.coeff.elements():
            for b2 in m2.coeff.elements():
                act[c, b1 * n2 + b2] = m1.xi(c, b1) * n2 + m2.xi(c, b2)
    module = build_cmodule(m1.base, prod.group, act)
    proj1 = cmodule_morphism(module, m1, prod.proj1)
    proj2 = cmodule_morphism(module, m2, prod.proj2)
    inj1 = cmodule_morphism(m1, module, prod.inj1)
    inj2 = cmodule_morphism(m2, module, prod.inj2)
    return ModuleProductResult(module, proj1, proj2, inj1, inj2, prod)


def codiagonal(m: CModule) -> tuple[ModuleProductResult, CModuleMorphism]:
    """The product module M x M and the sum map (b1, b2) |-> b1 + b2."""
    prod = cmodule_product(m, m)
    n = m.coeff.order
    vals = [m.coeff.add(b1, b2) for b1 in range(n) for b2 in range(n)]
    return prod, cmodule_morphism(prod.module, m, np.asarray(vals))


def pair_codiagonal(prod: ModuleProductResult, target: CModule) -> CModuleMorphism:
    """Codiagonal for a product of two copies of ``target``."""
    n = target.coeff.order
    vals = [
        target.coeff.add(b1, b2) for b1 in range(n) for b2 in range(n)
    ]
    return cmodule_morphism(prod.module, target, np.asarray(vals))


def all_module_morphisms(dom: CModule, cod: CModule) -> list[CModuleMorphism]:
    """All equivariant homomorphisms dom -> cod, deterministic order."""
    from .groups import all_homs

    out = []
    for h in all_homs(dom.coeff, cod.coeff):
        try:
            out.append(cmodule_morphism(dom, cod, h))
        except NotEquivariant:
            continue
    return out
