#!/usr/bin/env python3
"""Benchmark the table-scan kernels: numba JIT versus the numpy fallback.

The kernels are selected at import time by the BFLY_PURE_NUMPY environment
variable, so each backend runs in a fresh subprocess.  Usage:

    python3 benchmarks/bench_kernels.py            # compare both backends
    python3 benchmarks/bench_kernels.py --one      # time the current backend
"""

import argparse
import json
import os
import subprocess
import sys
import time


def make_tables(n: int):
    import numpy as np

    table = (np.add.outer(np.arange(n), np.arange(n)) % n).astype(np.int64)
    m = (np.arange(n) * 2) % n          # an endomorphism of Z_n
    na = min(n, 64)
    actor = (np.add.outer(np.arange(na), np.arange(na)) % na).astype(np.int64)
    act = np.tile(np.arange(n), (na, 1)).astype(np.int64)  # trivial action
    return table, m, actor, act


def run_once(n: int, repeat: int) -> dict:
    from bfly import _kernels

    table, m, actor, act = make_tables(n)
    results = {"backend": "numba" if _kernels.HAVE_NUMBA else "numpy", "order": n}
    _kernels.assoc_violation(table)  # warm up (JIT compilation)
    _kernels.hom_violation(table, table, m)
    _kernels.action_compat_violation(actor, act)

    for name, fn, args in (
        ("assoc", _kernels.assoc_violation, (table,)),
        ("hom", _kernels.hom_violation, (table, table, m)),
        ("action", _kernels.action_compat_violation, (actor, act)),
    ):
        best = min(
            timed(fn, args) for _ in range(repeat)
        )
        results[name] = best
    return results


def timed(fn, args) -> float:
    start = time.perf_counter()
    assert fn(*args) is None
    return time.perf_counter() - start


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=512, help="group order to scan")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--one", action="store_true",
                    help="print timings for the backend selected by the env")
    args = ap.parse_args()

    if args.one:
        print(json.dumps(run_once(args.order, args.repeat)))
        return 0

    rows = []
    for force in ("0", "1"):
        env = dict(os.environ, BFLY_PURE_NUMPY=force)
        out = subprocess.run(
            [sys.executable, __file__, "--one", "--order", str(args.order),
             "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        )
        rows.append(json.loads(out.stdout))

    print(f"kernel timings at order {args.order} (best of {args.repeat}):")
    print(f"{'kernel':<10}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for key in ("assoc", "hom", "action"):
        a, b = rows[0][key], rows[1][key]
        ratio = b / a if a else float("inf")
        print(f"{key:<10}{a * 1e3:>10.2f}ms{b * 1e3:>10.2f}ms{ratio:>9.1f}x")
    if rows[0]["backend"] != "numba":
        print("note: numba unavailable; both columns used the numpy fallback")
    return 0


if __name__ == "__main__":
    sys.exit(main())
