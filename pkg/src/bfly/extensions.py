"""Abelian extensions of a group and their Baer-sum tensor structure.

The groupoid of abelian extensions with a fixed kernel module carries a
symmetric 2-group structure: the tensor is the Baer sum (pullback over
the base, then pushforward along the codiagonal of the kernel), the unit
is the split extension coming from the semidirect product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .actions import (
    CModule,
    CModuleMorphism,
    build_action,
    build_cmodule,
)
from .errors import (
    KernelNotAbelian,
    ModuleMismatch,
    NotExact,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    build_hom,
    compose,
    hom_from_cosets,
    is_short_exact,
    pullback,
    quotient_by,
    semidirect_product,
)

SECTION_SCAN_LIMIT = 8  # try every section when the base is at most this big


@dataclass(frozen=True)
class AbelianExtension:
    """Short exact sequence with abelian kernel and its induced module."""

    kernel_arrow: GroupHom      # B -> E
    quotient_arrow: GroupHom    # E -> C
    module: CModule

    @property
    def middle(self) -> FiniteGroup:
        return self.kernel_arrow.cod

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AbelianExtension)
            and self.kernel_arrow == other.kernel_arrow
            and self.quotient_arrow == other.quotient_arrow
        )

    def __hash__(self) -> int:
        return hash((self.kernel_arrow, self.quotient_arrow))


@dataclass(frozen=True)
class ExtensionMorphism:
    """Morphism in the fibre: identity on kernel and base."""

    dom: AbelianExtension
    cod: AbelianExtension
    mid: GroupHom               # E -> E'

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtensionMorphism)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.mid == other.mid
        )

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.mid))


@dataclass(frozen=True)
class ExtensionLift:
    """Cocartesian lift data for a pushforward along beta."""

    source: AbelianExtension
    beta: CModuleMorphism
    mid: GroupHom               # E -> E'
    target: AbelianExtension


def _induced_module(kappa: GroupHom, gamma: GroupHom) -> CModule:
    """Conjugation module on the kernel; section-independent for abelian B."""
    b_grp, e_grp, c_grp = kappa.dom, kappa.cod, gamma.cod
    in_b = {kappa(b): b for b in b_grp.elements()}
    fibres: dict[int, list[int]] = {c: [] for c in c_grp.elements()}
    for e in e_grp.elements():
        fibres[gamma(e)].append(e)
    act = np.zeros((c_grp.order, b_grp.order), dtype=np.int64)
    scan_all = c_grp.order <= SECTION_SCAN_LIMIT
    for c in c_grp.elements():
        reps = fibres[c] if scan_all else fibres[c][:1]
        for b in b_grp.elements():
            imgs = {e_grp.conj(e, kappa(b)) for e in reps}
            if len(imgs) != 1:
                raise NotExact(
                    f"conjugation module is section-dependent at c={c}, b={b}"
                )
            img = imgs.pop()
            if img not in in_b:
                raise NotExact(f"kernel is not normal at c={c}, b={b}")
            act[c, b] = in_b[img]
    return build_cmodule(c_grp, b_grp, act)


def build_extension(kappa: GroupHom, gamma: GroupHom) -> AbelianExtension:
    if not kappa.dom.is_abelian():
        raise KernelNotAbelian("extension kernel must be abelian")
    if not is_short_exact(kappa, gamma):
        raise NotExact("(kernel, quotient) is not short exact")
    module = _induced_module(kappa, gamma)
    return AbelianExtension(kernel_arrow=kappa, quotient_arrow=gamma, module=module)


def unit_extension(module: CModule) -> AbelianExtension:
    """The split extension through the semidirect product of the action."""
    sd = semidirect_product(module.action)
    ext = build_extension(sd.inj_normal, sd.retraction)
    if ext.module != module:
        raise ModuleMismatch("semidirect extension does not induce the module")
    return ext


def baer_sum(e1: AbelianExtension, e2: AbelianExtension) -> AbelianExtension:
    """Pullback over the base, then quotient by the antidiagonal kernel."""
    if e1.module != e2.module:
        raise ModuleMismatch("Baer sum requires the same kernel module")
    k1, g1 = e1.kernel_arrow, e1.quotient_arrow
    k2, g2 = e2.kernel_arrow, e2.quotient_arrow
    pb = pullback(g1, g2)
    b_grp = k1.dom
    n2 = k2.cod.order
    pair_pos = {
        (pb.p1(i), pb.p2(i)): i for i in range(pb.group.order)
    }
    anti = [pair_pos[(k1(b), k2.cod.neg(k2(b)))] for b in b_grp.elements()]
    q_grp, proj = quotient_by(pb.group, anti)
    kernel_arrow = build_hom(
        b_grp, q_grp, [proj(pair_pos[(k1(b), 0)]) for b in b_grp.elements()]
    )
    quotient_arrow = hom_from_cosets(proj, compose(g1, pb.p1))
    ext = build_extension(kernel_arrow, quotient_arrow)
    if ext.module != e1.module:
        raise ModuleMismatch("Baer sum does not induce the expected module")
    return ext


def pushforward_extension(
    ext: AbelianExtension, beta: CModuleMorphism
) -> ExtensionLift:
    """Cocartesian lift of an extension along a module morphism.

    The total group before quotienting is B' twisted by the base action of
    the middle group (so the identified subgroup is normal).
    """
    if beta.dom != ext.module:
        raise ModuleMismatch("beta must start at the extension's module")
    kappa, gamma = ext.kernel_arrow, ext.quotient_arrow
    e_grp = ext.middle
    bp = beta.cod.coeff
    act = np.asarray(
        [[beta.cod.xi(gamma(e), b) for b in bp.elements()]
         for e in e_grp.elements()]
    )
    sd = semidirect_product(build_action(e_grp, bp, act))
    ne = e_grp.order
    ident = [
        beta(b) * ne + e_grp.neg(kappa(b))
        for b in ext.module.coeff.elements()
    ]
    q_grp, proj = quotient_by(sd.group, ident)
    kernel_arrow = build_hom(
        bp, q_grp, [proj(b * ne) for b in bp.elements()]
    )
    quotient_arrow = hom_from_cosets(
        proj, build_hom(sd.group, gamma.cod,
                        [gamma(e) for _ in bp.elements() for e in e_grp.elements()])
    )
    target = build_extension(kernel_arrow, quotient_arrow)
    if target.module != beta.cod:
        raise ModuleMismatch("pushforward does not land in the target module")
    mid = build_hom(e_grp, q_grp, [proj(e) for e in e_grp.elements()])
    return ExtensionLift(source=ext, beta=beta, mid=mid, target=target)


def fibre_morphisms(
    e1: AbelianExtension, e2: AbelianExtension
) -> list[ExtensionMorphism]:
    """Every morphism over (id_B, id_C), found by exhaustive section scan."""
    if e1.module != e2.module:
        raise ModuleMismatch("fibre morphisms require the same module")
    k1, g1 = e1.kernel_arrow, e1.quotient_arrow
    k2, g2 = e2.kernel_arrow, e2.quotient_arrow
    em, en = e1.middle, e2.middle
    c_grp = g1.cod
    b_grp = k1.dom
    in_b = {k1(b): b for b in b_grp.elements()}
    section = {}
    for e in em.elements():           # least-index section of g1
        section.setdefault(g1(e), e)
    fibres2 = {c: [] for c in c_grp.elements()}
    for e in en.elements():
        fibres2[g2(e)].append(e)
    cs = sorted(c_grp.elements())
    out = []
    for choice in itertools.product(*[fibres2[c] for c in cs]):
        t = dict(zip(cs, choice))
        mapping = np.zeros(em.order, dtype=np.int64)
        for e in em.elements():
            c = g1(e)
            b = in_b[em.sub(e, section[c])]
            mapping[e] = en.add(k2(b), t[c])
        from . import _kernels

        if _kernels.hom_violation(em.table, en.table, mapping) is not None:
            continue
        mid = GroupHom(dom=em, cod=en, map=mapping)
        if compose(mid, k1) != k2 or compose(g2, mid) != g1:
            continue
        out.append(ExtensionMorphism(dom=e1, cod=e2, mid=mid))
    out.sort(key=lambda m: m.mid.map.tolist())
    return out


def are_fibre_isomorphic(e1: AbelianExtension, e2: AbelianExtension) -> bool:
    return bool(fibre_morphisms(e1, e2))


def pi1_group(module: CModule) -> tuple[FiniteGroup, list[ExtensionMorphism]]:
    """Automorphism group of the unit extension, under composition."""
    unit = unit_extension(module)
    autos = fibre_morphisms(unit, unit)
    key = {m.mid.map.tobytes(): i for i, m in enumerate(autos)}
    table = [
        [key[compose(a.mid, b.mid).map.tobytes()] for b in autos]
        for a in autos
    ]
    from .groups import build_group

    return build_group(table), autos


def pi1_h2(module: CModule) -> FiniteGroup:
    """Automorphism group of the unit extension, as a bare group."""
    return pi1_group(module)[0]
