"""Exact integer linear algebra: Smith normal form and lattice utilities.

Everything uses Python integers via dtype=object arrays, so there is no
overflow; matrix sizes in this library stay in the low hundreds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _obj(a) -> np.ndarray:
    arr = np.array(a, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return arr


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V = S with U, V unimodular and S diagonal.

    ``uinv`` and ``vinv`` are the inverses of U and V; diagonal entries
    of S are nonnegative and satisfy the divisibility chain.
    """

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray
    uinv: np.ndarray
    vinv: np.ndarray

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        k = min(self.s.shape)
        return tuple(int(self.s[i, i]) for i in range(k))


def smith_normal_form(a) -> SmithDecomposition:
    s = _obj(a).copy()
    m, n = s.shape
    u = np.eye(m, dtype=object)
    uinv = np.eye(m, dtype=object)
    v = np.eye(n, dtype=object)
    vinv = np.eye(n, dtype=object)

    def row_swap(i, j):
        s[[i, j], :] = s[[j, i], :]
        u[[i, j], :] = u[[j, i], :]
        uinv[:, [i, j]] = uinv[:, [j, i]]

    def col_swap(i, j):
        s[:, [i, j]] = s[:, [j, i]]
        v[:, [i, j]] = v[:, [j, i]]
        vinv[[i, j], :] = vinv[[j, i], :]

    def row_add(i, j, q):
        # row_i += q * row_j
        s[i, :] += q * s[j, :]
        u[i, :] += q * u[j, :]
        uinv[:, j] -= q * uinv[:, i]

    def col_add(i, j, q):
        # col_i += q * col_j
        s[:, i] += q * s[:, j]
        v[:, i] += q * v[:, j]
        vinv[j, :] -= q * vinv[i, :]

    def row_negate(i):
        s[i, :] = -s[i, :]
        u[i, :] = -u[i, :]
        uinv[:, i] = -uinv[:, i]

    t = 0
    while t < min(m, n):
        # find a pivot of minimal absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                val = abs(s[i, j])
                if val and (best is None or val < best):
                    best, pivot = val, (i, j)
        if pivot is None:
            break
        i, j = pivot
        row_swap(t, i)
        col_swap(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if s[i, t] % s[t, t] != 0:
                    done = False
                q = -(s[i, t] // s[t, t])
                if q:
                    row_add(i, t, q)
            for j in range(t + 1, n):
                if s[t, j] % s[t, t] != 0:
                    done = False
                q = -(s[t, j] // s[t, t])
                if q:
                    col_add(j, t, q)
            cleared = all(s[i, t] == 0 for i in range(t + 1, m)) and all(
                s[t, j] == 0 for j in range(t + 1, n)
            )
            if cleared and done:
                # enforce divisibility against the rest of the block
                offender = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if s[i, j] % s[t, t] != 0:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                row_add(t, offender, 1)
                continue
            if cleared:
                continue
            # pivot changed size; re-select minimal entry in the cross
            best_i, best_j, best_v = t, t, abs(s[t, t])
            for i in range(t, m):
                if s[i, t] and abs(s[i, t]) < best_v:
                    best_i, best_j, best_v = i, t, abs(s[i, t])
            for j in range(t, n):
                if s[t, j] and abs(s[t, j]) < best_v:
                    best_i, best_j, best_v = t, j, abs(s[t, j])
            row_swap(t, best_i)
            col_swap(t, best_j)
        if s[t, t] < 0:
            row_negate(t)
        t += 1

    return SmithDecomposition(u=u, s=s, v=v, uinv=uinv, vinv=vinv)


def integer_kernel(a) -> np.ndarray:
    """Basis (columns) of {x : A x = 0} over the integers."""
    arr = _obj(a)
    dec = smith_normal_form(arr)
    n = arr.shape[1]
    k = min(arr.shape)
    cols = [j for j in range(n) if j >= k or dec.s[j, j] == 0]
    if not cols:
        return np.zeros((n, 0), dtype=object)
    return dec.v[:, cols]


def solve_integer(a, b, dec: SmithDecomposition | None = None):
    """One integer solution x of A x = b, or None; dec may be precomputed."""
    arr = _obj(a)
    rhs = _obj(b).reshape(-1)
    if dec is None:
        dec = smith_normal_form(arr)
    c = dec.u @ rhs
    m, n = arr.shape
    y = np.zeros(n, dtype=object)
    for i in range(min(m, n)):
        d = dec.s[i, i]
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    for i in range(min(m, n), m):
        if c[i] != 0:
            return None
    return dec.v @ y


def column_lattice_basis(a) -> np.ndarray:
    """A full set of independent generators for the column span of A."""
    arr = _obj(a)
    dec = smith_normal_form(arr)
    m = arr.shape[0]
    k = min(arr.shape)
    # columns of Uinv scaled by the invariant factors span the lattice
    cols = []
    for i in range(k):
        if dec.s[i, i] != 0:
            cols.append(dec.uinv[:, i] * dec.s[i, i])
    if not cols:
        return np.zeros((m, 0), dtype=object)
    return np.stack(cols, axis=1)


def in_column_lattice(a, b) -> bool:
    """True iff b is an integer combination of the columns of A."""
    return solve_integer(a, b) is not None
