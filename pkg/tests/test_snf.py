"""Smith normal form and exact integer linear algebra."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from bfly.snf import (
    column_lattice_basis,
    in_column_lattice,
    integer_kernel,
    smith_normal_form,
    solve_integer,
)

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
)


def _det_is_unit(u: np.ndarray) -> bool:
    return round(abs(np.linalg.det(u.astype(float)))) == 1


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_snf_decomposition_properties(rows):
    a = np.array(rows, dtype=object)
    dec = smith_normal_form(a)
    assert np.array_equal(dec.u @ a @ dec.v, dec.s)
    assert _det_is_unit(dec.u) and _det_is_unit(dec.v)
    assert np.array_equal(dec.u @ dec.uinv, np.eye(a.shape[0], dtype=object))
    assert np.array_equal(dec.v @ dec.vinv, np.eye(a.shape[1], dtype=object))
    d = dec.invariant_factors
    assert all(x >= 0 for x in d)
    for x, y in zip(d, d[1:]):
        if x:
            assert y % x == 0
        else:
            assert y == 0
    # off-diagonal entries vanish
    s = dec.s
    for i in range(s.shape[0]):
        for j in range(s.shape[1]):
            if i != j:
                assert s[i, j] == 0


@settings(max_examples=60, deadline=None)
@given(matrices, st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_integer_roundtrip(rows, xs):
    a = np.array(rows, dtype=object)
    x = np.array(xs[: a.shape[1]], dtype=object)
    b = a @ x
    sol = solve_integer(a, b)
    assert sol is not None
    assert np.array_equal(a @ sol, b)


def test_solve_integer_detects_unsolvable():
    a = np.array([[2]], dtype=object)
    assert solve_integer(a, np.array([1], dtype=object)) is None
    assert solve_integer(a, np.array([4], dtype=object)) is not None


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_integer_kernel_is_annihilated(rows):
    a = np.array(rows, dtype=object)
    k = integer_kernel(a)
    if k.shape[1]:
        assert not np.any(a @ k)


def test_known_invariant_factors():
    a = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    dec = smith_normal_form(a)
    assert dec.invariant_factors == (2, 2, 156)


def test_column_lattice_membership():
    a = np.array([[2, 0], [0, 3]], dtype=object)
    assert in_column_lattice(a, np.array([4, 9], dtype=object))
    assert not in_column_lattice(a, np.array([1, 0], dtype=object))
    basis = column_lattice_basis(a)
    assert basis.shape == (2, 2)
