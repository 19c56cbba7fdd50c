#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot paths on representative workloads:

* row reduction over F_p (rank of the cup-product matrix at genus 6, plus a
  square random matrix), and
* packed-element BFS closure (the full order-5^9 group of the degenerate
  (b, p) = (4, 5) case, and the order-5^5 kernel subgroup inside it).

Both implementations are imported directly from heiskod._backend, so the
HEISKOD_BACKEND selection does not matter here.  Run:

    python benchmarks/bench_backends.py
"""

import time

import numpy as np

from heiskod import _backend
from heiskod.braid import kernel_generator_sets
from heiskod.cohomology import xi_matrix
from heiskod.verify import standard_assignment_degenerate, standard_assignment_nondegenerate


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bfs_case(assignment, gens):
    group = assignment.target
    rows = []
    for g in (assignment.image(x) for x in gens):
        for h in (g, group.inv(g)):
            v = np.array(group.projection(h), dtype=np.int64)
            t = h.t if hasattr(h, "t") else h.z
            rows.append(np.concatenate([v, [t]]))
    return group.p, group.dim, np.ascontiguousarray(group._c), np.stack(rows), group.order


def main():
    rng = np.random.default_rng(0)
    cases = []

    xi = xi_matrix(6, 13).array()  # 146 x 552
    cases.append(("rref xi-matrix b=6 p=13", xi, 13))
    cases.append(("rref random 400x400 p=101", rng.integers(0, 101, size=(400, 400)), 101))

    print(f"numba available: {_backend.HAS_NUMBA}")
    print(f"{'case':40s} {'numpy':>10s} {'numba':>10s} {'speedup':>9s}")

    for name, mat, p in cases:
        t_np, r_np = timed(lambda: _backend._rref_np(mat, p))
        if _backend.HAS_NUMBA:
            inv = _backend._inv_table(p)
            _backend._rref_nb(np.array(mat, dtype=np.int64) % p, p, inv)  # compile
            t_nb, r_nb = timed(lambda: _backend._rref_nb(np.array(mat, dtype=np.int64) % p, p, inv))
            assert np.array_equal(r_np[0], r_nb[0])
            print(f"{name:40s} {t_np:9.4f}s {t_nb:9.4f}s {t_np / t_nb:8.1f}x")
        else:
            print(f"{name:40s} {t_np:9.4f}s {'-':>10s} {'-':>9s}")

    big = bfs_case(standard_assignment_degenerate(4, 5), kernel_generator_sets(4)[0])
    small = bfs_case(
        standard_assignment_nondegenerate(2, 5, (3, 3), (3, 3)), kernel_generator_sets(2)[0]
    )
    for name, case, expected in (
        ("bfs closure 5^9 elements (deg 4,5)", big, 5**9),
        ("bfs closure 5^5 subgroup (nondeg 2,5)", small, 5**5),
    ):
        t_np, n_np = timed(_backend._bfs_np, *case)
        assert n_np == expected
        if _backend.HAS_NUMBA:
            _backend._bfs_nb(*case)  # compile
            t_nb, n_nb = timed(_backend._bfs_nb, *case)
            assert n_nb == expected
            print(f"{name:40s} {t_np:9.4f}s {t_nb:9.4f}s {t_np / t_nb:8.1f}x")
        else:
            print(f"{name:40s} {t_np:9.4f}s {'-':>10s} {'-':>9s}")


if __name__ == "__main__":
    main()
