"""Universal-property checkers for cocartesian lifts.

Exhaustive at desk scale: morphism sets are enumerated outright, so a
passed check is a proof for the instance at hand.
"""

from __future__ import annotations

import itertools

import numpy as np

from .actions import CModuleMorphism, compose_morphisms
from .butterflies import CrossedExtension, XExtMorphism, build_xext_morphism
from .errors import ModuleMismatch
from .extensions import AbelianExtension, ExtensionLift, ExtensionMorphism
from .groups import GroupHom, all_homs, close_under_group, compose


def extension_morphisms_over(
    e: AbelianExtension, g: AbelianExtension, beta: CModuleMorphism
) -> list[GroupHom]:
    """All mid: E -> G with mid.kappa = kappa_g.beta and gamma_g.mid = gamma."""
    if beta.dom != e.module or beta.cod != g.module:
        raise ModuleMismatch("beta must run between the two kernel modules")
    k1, g1 = e.kernel_arrow, e.quotient_arrow
    k2, g2 = g.kernel_arrow, g.quotient_arrow
    em, en = e.middle, g.middle
    c_grp, b_grp = g1.cod, k1.dom
    in_b = {k1(b): b for b in b_grp.elements()}
    section = {}
    for x in em.elements():
        section.setdefault(g1(x), x)
    fibres2: dict[int, list[int]] = {c: [] for c in c_grp.elements()}
    for x in en.elements():
        fibres2[g2(x)].append(x)
    cs = sorted(c_grp.elements())
    out = []
    from . import _kernels

    for choice in itertools.product(*[fibres2[c] for c in cs]):
        t = dict(zip(cs, choice))
        mapping = np.zeros(em.order, dtype=np.int64)
        for x in em.elements():
            c = g1(x)
            b = in_b[em.sub(x, section[c])]
            mapping[x] = en.add(k2(beta(b)), t[c])
        if _kernels.hom_violation(em.table, en.table, mapping) is not None:
            continue
        mid = GroupHom(dom=em, cod=en, map=mapping)
        if compose(mid, k1) != compose(k2, beta.hom) or compose(g2, mid) != g1:
            continue
        out.append(mid)
    out.sort(key=lambda m: m.map.tolist())
    return out


def check_cocartesian_extension(
    lift: ExtensionLift,
    dom: AbelianExtension,
    g: AbelianExtension,
    beta2: CModuleMorphism,
) -> bool:
    """Every morphism dom -> g over beta2.beta factors once through the lift."""
    total = compose_morphisms(beta2, lift.beta)
    tests = extension_morphisms_over(dom, g, total)
    candidates = extension_morphisms_over(lift.target, g, beta2)
    for h in tests:
        matches = [u for u in candidates if compose(u, lift.mid) == h]
        if len(matches) != 1:
            return False
    return True


def xext_morphisms_over(
    e: CrossedExtension, g: CrossedExtension, beta: CModuleMorphism
) -> list[XExtMorphism]:
    """All crossed-extension morphisms over beta, by exhaustive hom scan."""
    if beta.dom != e.module or beta.cod != g.module:
        raise ModuleMismatch("beta must run between the two kernel modules")
    f1s = [
        f1 for f1 in all_homs(e.e1, g.e1) if compose(g.p, f1) == e.p
    ]
    kernel_target = compose(g.j, beta.hom)
    out = []
    for f2 in all_homs(e.e2, g.e2):
        if compose(f2, e.j) != kernel_target:
            continue
        for f1 in f1s:
            if compose(g.xm.boundary, f2) != compose(f1, e.xm.boundary):
                continue
            if any(
                f2(e.xm.act(h, x)) != g.xm.act(f1(h), f2(x))
                for h in e.e1.elements()
                for x in e.e2.elements()
            ):
                continue
            out.append(
                XExtMorphism(dom=e, cod=g, beta=beta, f2=f2, f1=f1)
            )
    out.sort(key=lambda m: (m.f1.map.tolist(), m.f2.map.tolist()))
    return out


def check_cocartesian_xext(
    lift: XExtMorphism, g: CrossedExtension, beta2: CModuleMorphism
) -> bool:
    """Cocartesian universal property of a crossed-extension lift."""
    total = compose_morphisms(beta2, lift.beta)
    tests = xext_morphisms_over(lift.dom, g, total)
    candidates = xext_morphisms_over(lift.cod, g, beta2)
    for h in tests:
        matches = [
            u
            for u in candidates
            if compose(u.f2, lift.f2) == h.f2 and compose(u.f1, lift.f1) == h.f1
        ]
        if len(matches) != 1:
            return False
    return True


def jointly_generate_square(b) -> bool:
    """(0,1) and (1,-1) images jointly generate B x B."""
    n = b.order
    from .groups import direct_product

    prod = direct_product(b, b)
    seed = [0 * n + x for x in b.elements()]
    seed += [x * n + b.neg(x) for x in b.elements()]
    return len(close_under_group(prod.group, seed)) == prod.group.order


def extension_product(
    a: AbelianExtension, b: AbelianExtension
) -> AbelianExtension:
    """Fibre product over the shared base: middle E x_C E', kernel B x B'."""
    from .actions import cmodule_product
    from .extensions import build_extension
    from .groups import build_hom, pullback

    if a.quotient_arrow.cod != b.quotient_arrow.cod:
        raise ModuleMismatch("fibre product requires the same base group")
    pm = cmodule_product(a.module, b.module)
    pb = pullback(a.quotient_arrow, b.quotient_arrow)
    pair_pos = {(pb.p1(i), pb.p2(i)): i for i in range(pb.group.order)}
    kappa = build_hom(
        pm.module.coeff, pb.group,
        [pair_pos[(a.kernel_arrow(x), b.kernel_arrow(y))]
         for x in a.kernel_arrow.dom.elements()
         for y in b.kernel_arrow.dom.elements()],
    )
    gamma = compose(a.quotient_arrow, pb.p1)
    ext = build_extension(kappa, gamma)
    assert ext.module == pm.module
    return ext


def product_of_lifts(l1: ExtensionLift, l2: ExtensionLift) -> ExtensionLift:
    """The fibre-product square of two extension lifts."""
    from .actions import cmodule_morphism, cmodule_product
    from .groups import build_hom, pullback

    dom_ext = extension_product(l1.source, l2.source)
    target_ext = extension_product(l1.target, l2.target)
    pm_dom = cmodule_product(l1.beta.dom, l2.beta.dom)
    pm_cod = cmodule_product(l1.beta.cod, l2.beta.cod)
    mapping = np.asarray(
        [l1.beta(x) * l2.beta.cod.coeff.order + l2.beta(y)
         for x in l1.beta.dom.coeff.elements()
         for y in l2.beta.dom.coeff.elements()]
    )
    beta = cmodule_morphism(pm_dom.module, pm_cod.module, mapping)
    pb_dom = pullback(l1.source.quotient_arrow, l2.source.quotient_arrow)
    pb_tgt = pullback(l1.target.quotient_arrow, l2.target.quotient_arrow)
    tgt_pos = {
        (pb_tgt.p1(i), pb_tgt.p2(i)): i for i in range(pb_tgt.group.order)
    }
    mid = build_hom(
        dom_ext.middle, target_ext.middle,
        [tgt_pos[(l1.mid(pb_dom.p1(i)), l2.mid(pb_dom.p2(i)))]
         for i in range(pb_dom.group.order)],
    )
    return ExtensionLift(source=dom_ext, beta=beta, mid=mid, target=target_ext)


def composition_square(
    e: AbelianExtension, ep: AbelianExtension
) -> ExtensionLift:
    """The square arising inside the composite of two loop butterflies.

    Composing the loops of e and ep forms the pullback P = E x_C E' and
    quotients by the antidiagonal copy of B; the claim under test is that
    the quotient map is the cocartesian lift of the product-kernel
    extension along the codiagonal.
    """
    from .actions import cmodule_product, pair_codiagonal
    from .extensions import build_extension
    from .groups import build_hom, hom_from_cosets, pullback, quotient_by

    if e.module != ep.module:
        raise ModuleMismatch("loops compose only over a shared module")
    k1, g1 = e.kernel_arrow, e.quotient_arrow
    k2, g2 = ep.kernel_arrow, ep.quotient_arrow
    pb = pullback(g1, g2)
    pair_pos = {(pb.p1(i), pb.p2(i)): i for i in range(pb.group.order)}
    b_grp = k1.dom
    pm = cmodule_product(e.module, ep.module)
    nb = b_grp.order
    kappa_prod = build_hom(
        pm.module.coeff, pb.group,
        [pair_pos[(k1(x), k2(y))]
         for x in b_grp.elements() for y in b_grp.elements()],
    )
    gamma_prod = compose(g1, pb.p1)
    dom_ext = build_extension(kappa_prod, gamma_prod)
    anti = [pair_pos[(k1(b), k2.cod.neg(k2(b)))] for b in b_grp.elements()]
    q_grp, proj = quotient_by(pb.group, anti)
    kappa_new = build_hom(
        b_grp, q_grp, [proj(pair_pos[(0, k2(b))]) for b in b_grp.elements()]
    )
    gamma_new = hom_from_cosets(proj, gamma_prod)
    target = build_extension(kappa_new, gamma_new)
    beta = pair_codiagonal(pm, e.module)
    return ExtensionLift(source=dom_ext, beta=beta, mid=proj, target=target)
