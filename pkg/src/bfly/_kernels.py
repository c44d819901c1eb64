"""Hot table-scan kernels.

The O(n^3) associativity scan and the O(n^2) homomorphism / action scans
dominate validation time near the order cap, so they are compiled with
numba when available.  Set BFLY_PURE_NUMPY=1 to force the chunked numpy
fallback (used automatically when numba is not installed); results are
bit-identical on both paths.
"""

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("BFLY_PURE_NUMPY", "") not in ("", "0")

try:  # pragma: no cover - exercised via env flag in the benchmark
    if _FORCE_NUMPY:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]


@njit(cache=True)
def _assoc_violation_jit(table):
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return a, b, c
    return -1, -1, -1


def _assoc_violation_np(table):
    n = table.shape[0]
    # chunk over the first index to keep the n^3 intermediate bounded
    step = max(1, (1 << 22) // max(1, n * n))
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        left = table[table[lo:hi], :]       # (chunk, n, n): (a+b)+c
        right = table[lo:hi][:, table]      # (chunk, n, n): a+(b+c)
        bad = left != right
        if bad.any():
            a, b, c = np.argwhere(bad)[0]
            return int(a) + lo, int(b), int(c)
    return -1, -1, -1


def assoc_violation(table: np.ndarray):
    """First (a, b, c) with (a+b)+c != a+(b+c), or None."""
    if HAVE_NUMBA:
        a, b, c = _assoc_violation_jit(table)
    else:
        a, b, c = _assoc_violation_np(table)
    return None if a < 0 else (a, b, c)


@njit(cache=True)
def _hom_violation_jit(dom_table, cod_table, m):
    n = dom_table.shape[0]
    for a in range(n):
        for b in range(n):
            if m[dom_table[a, b]] != cod_table[m[a], m[b]]:
                return a, b
    return -1, -1


def _hom_violation_np(dom_table, cod_table, m):
    bad = m[dom_table] != cod_table[np.ix_(m, m)]
    if bad.any():
        a, b = np.argwhere(bad)[0]
        return int(a), int(b)
    return -1, -1


def hom_violation(dom_table: np.ndarray, cod_table: np.ndarray, m: np.ndarray):
    """First (a, b) with m[a+b] != m[a]+m[b], or None."""
    if HAVE_NUMBA:
        a, b = _hom_violation_jit(dom_table, cod_table, m)
    else:
        a, b = _hom_violation_np(dom_table, cod_table, m)
    return None if a < 0 else (a, b)


@njit(cache=True)
def _action_compat_violation_jit(actor_table, act):
    ng = actor_table.shape[0]
    nx = act.shape[1]
    for g in range(ng):
        for h in range(ng):
            gh = actor_table[g, h]
            for x in range(nx):
                if act[gh, x] != act[g, act[h, x]]:
                    return g, h, x
    return -1, -1, -1


def _action_compat_violation_np(actor_table, act):
    ng = actor_table.shape[0]
    for g in range(ng):
        lhs = act[actor_table[g], :]           # (ng, nx): (g+h)*x
        rhs = act[g][act]                      # (ng, nx): g*(h*x)
        bad = lhs != rhs
        if bad.any():
            h, x = np.argwhere(bad)[0]
            return g, int(h), int(x)
    return -1, -1, -1


def action_compat_violation(actor_table: np.ndarray, act: np.ndarray):
    """First (g, h, x) with (g+h)*x != g*(h*x), or None."""
    if HAVE_NUMBA:
        g, h, x = _action_compat_violation_jit(actor_table, act)
    else:
        g, h, x = _action_compat_violation_np(actor_table, act)
    return None if g < 0 else (g, h, x)
