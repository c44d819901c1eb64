"""Actions, C-modules, module morphisms, products and codiagonals."""

import pytest

from bfly.actions import (
    add_morphisms,
    all_module_morphisms,
    build_action,
    build_cmodule,
    cmodule_morphism,
    cmodule_product,
    codiagonal,
    compose_morphisms,
    identity_morphism,
    negate,
    trivial_action,
    trivial_module,
    zero_morphism,
)
from bfly.errors import NotAbelian, NotAnAction, NotEquivariant
from bfly.groups import build_hom


def test_action_by_non_automorphism_rejected(z2, z4):
    with pytest.raises(NotAnAction):
        build_action(z2, z4, [[0, 1, 2, 3], [1, 2, 3, 0]])  # x+1 is not a hom


def test_action_must_respect_actor_multiplication(z4, z3):
    # order-2 inversion assigned to a generator of Z4 twice fails 1*1=2
    with pytest.raises(NotAnAction):
        build_action(z4, z3, [[0, 1, 2], [0, 2, 1], [0, 1, 2], [0, 1, 2]])


def test_inversion_action(z2_z3_inv):
    m = z2_z3_inv
    assert m.xi(1, 1) == 2
    assert m.xi(0, 2) == 2


def test_module_requires_abelian_coefficients(z2, s3):
    with pytest.raises(NotAbelian):
        trivial_module(z2, s3)


def test_morphism_equivariance(z3_z3_triv, z2_z3_inv, z3):
    doubling = build_hom(z3, z3, [0, 2, 1])
    m = z2_z3_inv
    # doubling commutes with inversion: 2(-b) = -(2b)
    f = cmodule_morphism(m, m, doubling)
    assert f.hom(1) == 2
    twisted = build_cmodule(m.base, z3, trivial_action(m.base, z3))
    with pytest.raises(NotEquivariant):
        cmodule_morphism(m, twisted, doubling)


def test_morphism_arithmetic(z2_z2_triv):
    m = z2_z2_triv
    i = identity_morphism(m)
    z = zero_morphism(m, m)
    assert add_morphisms(i, i) == z  # 2 = 0 in Z2
    assert negate(i) == i
    assert compose_morphisms(i, i) == i


def test_all_module_morphisms_counts(z2_z2_triv, z2_z3_inv):
    assert len(all_module_morphisms(z2_z2_triv, z2_z2_triv)) == 2
    # Hom(Z2, Z3) = 0, equivariant or not
    assert len(all_module_morphisms(z2_z2_triv, z2_z3_inv)) == 1


def test_product_and_codiagonal(z2_z2_triv):
    pr = cmodule_product(z2_z2_triv, z2_z2_triv)
    assert pr.module.base == z2_z2_triv.base  # shared base C
    assert pr.module.coeff.order == 4
    _, cod = codiagonal(z2_z2_triv)
    assert cod.hom(pr.module.coeff.order - 1) == 0  # (1,1) |-> 1+1 = 0
