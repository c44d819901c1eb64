"""Group core: tables, homs, kernels, quotients, products, iso search."""

import numpy as np
import pytest

from bfly.cohomology import cyclic_group
from bfly.errors import (
    ImagesDoNotCommute,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotHomomorphism,
    OrderCapExceeded,
)
from bfly.groups import (
    all_homs,
    build_group,
    build_hom,
    cokernel,
    compose,
    cooperator,
    direct_product,
    find_isomorphisms,
    get_order_cap,
    identity_hom,
    is_short_exact,
    kernel,
    pullback,
    quotient_by,
    semidirect_product,
    set_order_cap,
    subgroup_from_elements,
    zero_hom,
)
from bfly.actions import build_action

from conftest import s3_table


def test_cyclic_table_is_a_group(z4):
    assert z4.order == 4
    assert z4.add(3, 2) == 1
    assert z4.inv[3] == 1
    assert z4.add(0, 3) == 3


def test_s3_from_permutation_composition(s3):
    # validated against the independent permutation oracle in conftest
    assert s3.order == 6
    assert not np.array_equal(s3.table, s3.table.T)  # nonabelian


def test_bad_tables_rejected():
    with pytest.raises(NotAssociative):
        build_group([[0, 2, 1], [1, 0, 2], [2, 1, 0]])  # subtraction mod 3
    with pytest.raises(NoIdentity):
        build_group([[0, 0], [0, 0]])
    with pytest.raises(NoInverse):
        build_group([[0, 1], [1, 1]])  # boolean OR


def test_identity_relabeled_to_zero():
    g = build_group([[1, 0], [0, 1]])  # Z2 written with identity at index 1
    assert g.add(0, 1) == 1
    assert g.add(1, 1) == 0


def test_order_cap_enforced():
    cap = get_order_cap()
    try:
        set_order_cap(3)
        with pytest.raises(OrderCapExceeded):
            build_group(np.array([[(i + j) % 4 for j in range(4)] for i in range(4)]))
    finally:
        set_order_cap(cap)


def test_hom_validation(z2, z4):
    f = build_hom(z4, z2, [0, 1, 0, 1])
    assert f(3) == 1
    with pytest.raises(NotHomomorphism):
        build_hom(z2, z4, [0, 1])  # 1+1 maps to 2, not 0


def test_kernel_of_mod2(z2, z4):
    f = build_hom(z4, z2, [0, 1, 0, 1])
    assert sorted(kernel(f).elements) == [0, 2]
    assert sorted(kernel(zero_hom(z4, z2)).elements) == [0, 1, 2, 3]


def test_cokernel_of_even_inclusion(z2, z4):
    inc = build_hom(z2, z4, [0, 2])
    q, proj = cokernel(inc)
    assert q.order == 2
    assert proj(2) == proj(0)


def test_cokernel_of_a3_in_s3(s3, z3):
    inc = build_hom(z3, s3, [0, 1, 2])
    q, _ = cokernel(inc)
    assert q.order == 2


def test_pullback_of_mod2_maps(z2, z4):
    f = build_hom(z4, z2, [0, 1, 0, 1])
    pb = pullback(f, f)
    assert pb.group.order == 8
    assert compose(f, pb.p1) == compose(f, pb.p2)


def test_quotient_by_normal_subgroup(z4):
    q, proj = quotient_by(z4, (0, 2))
    assert q.order == 2
    assert proj(1) == proj(3)


def test_semidirect_inversion_action_gives_s3(s3, z2, z3):
    act = build_action(z2, z3, [[0, 1, 2], [0, 2, 1]])
    sd = semidirect_product(act)
    assert sd.group.order == 6
    assert find_isomorphisms(sd.group, s3, limit=1)


def test_cooperator_requires_commuting_images(s3, z2):
    # two distinct order-2 subgroups of S3 do not commute
    f = build_hom(z2, s3, [0, 3])
    g = build_hom(z2, s3, [0, 4])
    with pytest.raises(ImagesDoNotCommute):
        cooperator(f, g)


def test_cooperator_on_direct_product(z2, z3):
    pr = direct_product(z2, z3)
    co = cooperator(pr.inj1, pr.inj2)
    assert co(co.dom.order - 1) == pr.group.order - 1


def test_short_exactness(z2, z4):
    inc = build_hom(z2, z4, [0, 2])
    proj = build_hom(z4, z2, [0, 1, 0, 1])
    assert is_short_exact(inc, proj)
    assert not is_short_exact(inc, zero_hom(z4, z2))


def test_automorphism_counts(z4, s3):
    assert len(find_isomorphisms(z4, z4)) == 2
    assert find_isomorphisms(z4, build_group([[0, 1, 2, 3], [1, 0, 3, 2],
                                              [2, 3, 0, 1], [3, 2, 1, 0]])) == []
    assert len(find_isomorphisms(s3, s3)) == 6


def test_all_homs_counts(z2, z3, z4):
    assert len(all_homs(z2, z2)) == 2
    assert len(all_homs(z2, z3)) == 1  # only the zero map
    assert len(all_homs(z4, z2)) == 2


def test_subgroup_embedding(z4):
    sub = subgroup_from_elements(z4, (0, 2))
    assert sub.group.order == 2
    assert sub.embedding(1) == 2


def test_kernel_backends_agree():
    from bfly import _kernels

    table = np.array([[0, 2, 1], [1, 0, 2], [2, 1, 0]], dtype=np.int64)
    good = (np.add.outer(np.arange(5), np.arange(5)) % 5).astype(np.int64)
    m = np.array([0, 2, 4, 1, 3], dtype=np.int64)
    assert tuple(_kernels._assoc_violation_np(table)) == tuple(
        _kernels._assoc_violation_jit(table)
    )
    assert _kernels._assoc_violation_np(good) == (-1, -1, -1)
    assert tuple(_kernels._hom_violation_np(good, good, m)) == tuple(
        _kernels._hom_violation_jit(good, good, m)
    )


def test_identity_and_composition(z4, z2):
    f = build_hom(z4, z2, [0, 1, 0, 1])
    assert compose(f, identity_hom(z4)) == f
    assert compose(identity_hom(z2), f) == f
