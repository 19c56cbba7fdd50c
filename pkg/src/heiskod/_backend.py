"""Hot numeric kernels: numba-jitted loops with a pure-numpy fallback.

Two kernel families live here:

* row reduction / determinant over a prime field F_p, and
* breadth-first closure of a subgroup of a central extension whose elements
  are packed as mixed-radix integers (base p, dim+1 digits).

The backend is selected once at import time from the ``HEISKOD_BACKEND``
environment variable: ``"numba"`` or ``"numpy"``.  Default is numba when the
import succeeds, numpy otherwise.  Both implementations use the same
deterministic pivot rule (first nonzero entry in column order), so their
outputs are bit-identical; ``benchmarks/bench_backends.py`` compares their
speed.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _rref_np(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form mod p. Returns (rref, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64)


def _det_np(a: np.ndarray, p: int) -> int:
    """Determinant mod p by forward elimination (first-nonzero pivoting)."""
    a = np.array(a, dtype=np.int64) % p
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            det = (-det) % p
        piv = int(a[c, c])
        det = (det * piv) % p
        inv = pow(piv, -1, p)
        rows = c + 1 + np.nonzero(a[c + 1 :, c])[0]
        if rows.size:
            factors = (a[rows, c] * inv) % p
            a[rows] = (a[rows] - np.outer(factors, a[c])) % p
    return det


def _bfs_np(p: int, dim: int, cmat: np.ndarray, gens: np.ndarray, order: int) -> int:
    """Level-synchronous BFS closure, vectorised over the frontier.

    ``gens`` has shape (k, dim+1): rows are (v, t) digit vectors of the
    generating elements (inverses included by the caller).  ``cmat`` is the
    cocycle matrix C, so (v1,t1)*(v2,t2) = (v1+v2, t1+t2 + v1.C.v2) mod p.
    """
    radix = p ** np.arange(dim + 1, dtype=np.int64)
    visited = np.zeros(order, dtype=bool)
    visited[0] = True
    frontier = np.zeros((1, dim + 1), dtype=np.int64)
    gv = gens[:, :dim]
    gt = gens[:, dim]
    # (C @ v_g) per generator: c(v, v_g) = v . u_g
    u = (gv @ cmat.T) % p
    count = 1
    while frontier.shape[0]:
        fv = frontier[:, :dim]
        ft = frontier[:, dim]
        blocks = []
        # left-multiplying a set of distinct elements by one fixed generator
        # is injective, so marking visited between generator blocks is the
        # only deduplication needed (no sorting)
        for k in range(gens.shape[0]):
            nv = (fv + gv[k]) % p
            nt = (ft + gt[k] + fv @ u[k]) % p
            codes = nv @ radix[:dim] + nt * radix[dim]
            fresh = ~visited[codes]
            visited[codes[fresh]] = True
            count += int(fresh.sum())
            if fresh.any():
                blocks.append(np.concatenate([nv[fresh], nt[fresh, None]], axis=1))
        frontier = np.concatenate(blocks, axis=0) if blocks else np.empty((0, dim + 1), dtype=np.int64)
    return count


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAS_NUMBA:

    @njit(cache=True)
    def _rref_nb(a, p, inv_table):  # pragma: no cover - compiled
        m, n = a.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        npiv = 0
        r = 0
        for c in range(n):
            if r == m:
                break
            pr = -1
            for i in range(r, m):
                if a[i, c] != 0:
                    pr = i
                    break
            if pr == -1:
                continue
            if pr != r:
                for j in range(n):
                    tmp = a[r, j]
                    a[r, j] = a[pr, j]
                    a[pr, j] = tmp
            inv = inv_table[a[r, c]]
            for j in range(n):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(m):
                if i != r and a[i, c] != 0:
                    f = a[i, c]
                    for j in range(n):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[npiv] = c
            npiv += 1
            r += 1
        return a, pivots[:npiv]

    @njit(cache=True)
    def _det_nb(a, p, inv_table):  # pragma: no cover - compiled
        n = a.shape[0]
        det = 1
        for c in range(n):
            pr = -1
            for i in range(c, n):
                if a[i, c] != 0:
                    pr = i
                    break
            if pr == -1:
                return 0
            if pr != c:
                for j in range(n):
                    tmp = a[c, j]
                    a[c, j] = a[pr, j]
                    a[pr, j] = tmp
                det = (p - det) % p
            piv = a[c, c]
            det = (det * piv) % p
            inv = inv_table[piv]
            for i in range(c + 1, n):
                if a[i, c] != 0:
                    f = (a[i, c] * inv) % p
                    for j in range(n):
                        a[i, j] = (a[i, j] - f * a[c, j]) % p
        return det

    @njit(cache=True)
    def _bfs_nb(p, dim, cmat, gens, order):  # pragma: no cover - compiled
        k = gens.shape[0]
        u = np.zeros((k, dim), dtype=np.int64)
        for g in range(k):
            for i in range(dim):
                s = 0
                for j in range(dim):
                    s += cmat[i, j] * gens[g, j]
                u[g, i] = s % p
        pw = np.empty(dim + 1, dtype=np.int64)
        pw[0] = 1
        for i in range(1, dim + 1):
            pw[i] = pw[i - 1] * p
        visited = np.zeros(order, dtype=np.uint8)
        queue = np.empty(order, dtype=np.int64)
        visited[0] = 1
        queue[0] = 0
        head = 0
        tail = 1
        v = np.empty(dim, dtype=np.int64)
        while head < tail:
            code = queue[head]
            head += 1
            c = code
            for i in range(dim):
                v[i] = c % p
                c //= p
            t = c
            for g in range(k):
                s = 0
                for i in range(dim):
                    s += v[i] * u[g, i]
                nt = (t + gens[g, dim] + s) % p
                ncode = nt * pw[dim]
                for i in range(dim):
                    ncode += ((v[i] + gens[g, i]) % p) * pw[i]
                if visited[ncode] == 0:
                    visited[ncode] = 1
                    queue[tail] = ncode
                    tail += 1
        return tail


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def _select_backend() -> str:
    choice = os.environ.get("HEISKOD_BACKEND", "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba" and not HAS_NUMBA:
            raise ImportError("HEISKOD_BACKEND=numba but numba is not importable")
        return choice
    return "numba" if HAS_NUMBA else "numpy"


BACKEND = _select_backend()


def _inv_table(p: int) -> np.ndarray:
    t = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        t[a] = pow(a, -1, p)
    return t


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of ``a`` mod p and its pivot columns."""
    if BACKEND == "numba":
        work = np.array(a, dtype=np.int64) % p
        return _rref_nb(work, p, _inv_table(p))
    return _rref_np(a, p)


def det_mod(a: np.ndarray, p: int) -> int:
    """Determinant of the square matrix ``a`` mod p."""
    if BACKEND == "numba":
        work = np.array(a, dtype=np.int64) % p
        return int(_det_nb(work, p, _inv_table(p)))
    return _det_np(a, p)


def bfs_closure(p: int, dim: int, cmat: np.ndarray, gens: np.ndarray, order: int) -> int:
    """Size of the subgroup generated by ``gens`` (packed-element BFS)."""
    cmat = np.ascontiguousarray(cmat, dtype=np.int64)
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    if BACKEND == "numba":
        return int(_bfs_nb(p, dim, cmat, gens, order))
    return _bfs_np(p, dim, cmat, gens, order)


def warm_up() -> None:
    """Trigger JIT compilation on tiny inputs so first real use is not timed."""
    rref_mod(np.eye(2, dtype=np.int64), 3)
    det_mod(np.eye(2, dtype=np.int64), 3)
    bfs_closure(3, 2, np.zeros((2, 2), dtype=np.int64), np.zeros((1, 3), dtype=np.int64), 27)
