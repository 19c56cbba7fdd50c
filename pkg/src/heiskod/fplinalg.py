"""Exact dense linear algebra over a prime field F_p.

Everything downstream (cup products, Heisenberg groups, rank counts) runs on
the two value types defined here: :class:`FpMatrix`, an immutable dense matrix
of residues, and :class:`AlternatingForm`, a skew matrix with optional
(lambda, mu) provenance when it comes from the block family

    Omega_b = [[L_b, J_b], [J_b, M_b]],

where L_b, M_b are block-diagonal with 2x2 blocks [[0, l_j], [-l_j, 0]]
(resp. mu_j) and J_b has blocks [[0, -1], [1, 0]].  Its determinant is
prod_j (1 - lambda_j * mu_j)^2, so the form is symplectic exactly when no
lambda_j * mu_j equals 1.

Row reduction is deterministic (first nonzero pivot in column order) and
delegated to the selected numeric backend; all operations return new values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _backend
from .errors import PreconditionError


def is_prime(n: int) -> bool:
    """Trial-division primality test; moduli here stay below ~100."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise PreconditionError(f"modulus {p} is not prime")


@dataclass(frozen=True)
class FpScalar:
    """A residue 0 <= value < p in the field with p elements."""

    value: int
    p: int

    def __post_init__(self):
        _check_prime(self.p)
        if not 0 <= self.value < self.p:
            raise PreconditionError(f"residue {self.value} not reduced mod {self.p}")

    @classmethod
    def of(cls, value: int, p: int) -> "FpScalar":
        _check_prime(p)
        return cls(value % p, p)

    def _same_field(self, other: "FpScalar") -> None:
        if self.p != other.p:
            raise PreconditionError(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other: "FpScalar") -> "FpScalar":
        self._same_field(other)
        return FpScalar((self.value + other.value) % self.p, self.p)

    def __mul__(self, other: "FpScalar") -> "FpScalar":
        self._same_field(other)
        return FpScalar((self.value * other.value) % self.p, self.p)

    def __neg__(self) -> "FpScalar":
        return FpScalar((-self.value) % self.p, self.p)

    def __int__(self) -> int:
        return self.value


def fp_inv(a: FpScalar) -> FpScalar:
    """Multiplicative inverse in F_p; raises ZeroDivisionError on 0."""
    if a.value == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {a.p}")
    return FpScalar(pow(a.value, -1, a.p), a.p)


class FpMatrix:
    """Immutable dense matrix over F_p.

    The entry array is reduced on construction and frozen; rank, determinant,
    kernel and products all return fresh values, so instances are safe to
    share between workers.
    """

    __slots__ = ("p", "rows", "cols", "_a")

    def __init__(self, entries, p: int):
        _check_prime(p)
        a = np.array(entries, dtype=np.int64) % p
        if a.ndim != 2:
            raise PreconditionError("matrix entries must be two-dimensional")
        a.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "rows", a.shape[0])
        object.__setattr__(self, "cols", a.shape[1])
        object.__setattr__(self, "_a", a)

    def __setattr__(self, name, value):
        raise AttributeError("FpMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    # -- accessors ---------------------------------------------------------

    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    def entry(self, i: int, j: int) -> FpScalar:
        return FpScalar(int(self._a[i, j]), self.p)

    def to_lists(self) -> list[list[int]]:
        return self._a.tolist()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self._a.shape == other._a.shape
            and bool(np.array_equal(self._a, other._a))
        )

    def __hash__(self):
        return hash((self.p, self._a.shape, self._a.tobytes()))

    def __repr__(self):
        return f"FpMatrix({self.rows}x{self.cols} mod {self.p})"

    # -- arithmetic --------------------------------------------------------

    def _same_field(self, other: "FpMatrix") -> None:
        if self.p != other.p:
            raise PreconditionError(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        return FpMatrix(self._a + other._a, self.p)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        return FpMatrix(self._a - other._a, self.p)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise PreconditionError("inner dimensions disagree")
        return FpMatrix(self._a @ other._a, self.p)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self._a * (c % self.p), self.p)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self._a.T, self.p)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product, returned as a reduced tuple."""
        vec = np.asarray(v, dtype=np.int64) % self.p
        if vec.shape != (self.cols,):
            raise PreconditionError("vector length disagrees with column count")
        return tuple(int(x) for x in (self._a @ vec) % self.p)

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["FpMatrix", tuple[int, ...]]:
        r, piv = _backend.rref_mod(self._a, self.p)
        return FpMatrix(r, self.p), tuple(int(c) for c in piv)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> FpScalar:
        if self.rows != self.cols:
            raise PreconditionError(f"determinant of non-square {self.rows}x{self.cols} matrix")
        return FpScalar(_backend.det_mod(self._a, self.p), self.p)

    def kernel_basis(self) -> list[tuple[int, ...]]:
        """Basis of the right null-space; empty iff full column rank.

        One vector per free column, in ascending free-column order: the free
        coordinate is set to 1 and pivot coordinates to the negated reduced
        entries, so the output is canonical given the pivot rule.
        """
        r, pivots = self.rref()
        piv = set(pivots)
        free = [c for c in range(self.cols) if c not in piv]
        ra = r.array()
        basis = []
        for f in free:
            v = np.zeros(self.cols, dtype=np.int64)
            v[f] = 1
            for i, c in enumerate(pivots):
                v[c] = (-ra[i, f]) % self.p
            basis.append(tuple(int(x) for x in v))
        return basis


# -- module-level operation names ------------------------------------------


def mat_rank(m: FpMatrix) -> int:
    return m.rank()


def mat_det(m: FpMatrix) -> FpScalar:
    return m.det()


def kernel_basis(m: FpMatrix) -> list[tuple[int, ...]]:
    return m.kernel_basis()


def span_dim(vectors: Iterable[Sequence[int]], p: int) -> int:
    """Dimension of the span of the given vectors in F_p^n."""
    vecs = [np.asarray(v, dtype=np.int64) for v in vectors]
    if not vecs:
        return 0
    dims = {v.shape for v in vecs}
    if len(dims) != 1:
        raise PreconditionError("vectors of mixed dimension")
    return FpMatrix(np.stack(vecs), p).rank()


# ---------------------------------------------------------------------------
# alternating forms
# ---------------------------------------------------------------------------


def _j_block(b: int, p: int) -> np.ndarray:
    """2b x 2b block-diagonal matrix with blocks [[0, -1], [1, 0]]."""
    m = np.zeros((2 * b, 2 * b), dtype=np.int64)
    for j in range(b):
        m[2 * j, 2 * j + 1] = (-1) % p
        m[2 * j + 1, 2 * j] = 1
    return m


def _pair_block(values: Sequence[int], p: int) -> np.ndarray:
    """Block-diagonal matrix with blocks [[0, c_j], [-c_j, 0]]."""
    b = len(values)
    m = np.zeros((2 * b, 2 * b), dtype=np.int64)
    for j, c in enumerate(values):
        m[2 * j, 2 * j + 1] = c % p
        m[2 * j + 1, 2 * j] = (-c) % p
    return m


class AlternatingForm:
    """A skew-symmetric form on F_p^dim, with optional family provenance.

    ``family_params`` is ``(lambdas, mus)`` when the form is the block matrix
    Omega_b described in the module docstring, else ``None``.
    """

    __slots__ = ("p", "dim", "omega", "family_params")

    def __init__(self, omega: FpMatrix, family_params: Optional[tuple] = None):
        p = omega.p
        if omega.rows != omega.cols:
            raise PreconditionError("alternating form must be square")
        a = omega.array()
        if not np.array_equal(a.T % p, (-a) % p):
            raise PreconditionError("matrix is not skew-symmetric mod p")
        if np.any(np.diagonal(a) % p != 0):
            # for odd p this is implied by skewness; for p = 2 it is the
            # extra alternating condition
            raise PreconditionError("alternating form must vanish on the diagonal")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "dim", omega.rows)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "family_params", family_params)

    def __setattr__(self, name, value):
        raise AttributeError("AlternatingForm is immutable")

    def __repr__(self):
        tag = " family" if self.family_params else ""
        return f"AlternatingForm(dim={self.dim}, p={self.p}{tag})"

    def __eq__(self, other) -> bool:
        return isinstance(other, AlternatingForm) and self.omega == other.omega

    def __hash__(self):
        return hash(self.omega)

    @classmethod
    def family(cls, b: int, p: int, lambdas: Sequence[int], mus: Sequence[int]) -> "AlternatingForm":
        """The 4b x 4b block form Omega_b determined by (lambda, mu)."""
        if b < 2:
            raise PreconditionError(f"genus b must be >= 2, got {b}")
        _check_prime(p)
        if len(lambdas) != b or len(mus) != b:
            raise PreconditionError(f"need {b} lambdas and {b} mus")
        lam = tuple(int(x) % p for x in lambdas)
        mu = tuple(int(x) % p for x in mus)
        jb = _j_block(b, p)
        top = np.concatenate([_pair_block(lam, p), jb], axis=1)
        bot = np.concatenate([jb, _pair_block(mu, p)], axis=1)
        return cls(FpMatrix(np.concatenate([top, bot], axis=0), p), (lam, mu))

    @classmethod
    def degenerate_family(cls, b: int, p: int) -> "AlternatingForm":
        """The rank-2b form with all four blocks equal to J_b.

        Same as the family form with every lambda_j = mu_j = -1.
        """
        return cls.family(b, p, [-1] * b, [-1] * b)

    @classmethod
    def standard_symplectic(cls, n: int, p: int) -> "AlternatingForm":
        """omega((x, y), (x', y')) = x.y' - x'.y on F_p^{2n}."""
        _check_prime(p)
        m = np.zeros((2 * n, 2 * n), dtype=np.int64)
        m[:n, n:] = np.eye(n, dtype=np.int64)
        m[n:, :n] = (-np.eye(n, dtype=np.int64)) % p
        return cls(FpMatrix(m, p))

    @classmethod
    def j_form(cls, b: int, p: int) -> "AlternatingForm":
        """The 2b x 2b form J_b itself (blocks [[0, -1], [1, 0]])."""
        _check_prime(p)
        return cls(FpMatrix(_j_block(b, p), p))

    def value(self, u: Sequence[int], v: Sequence[int]) -> int:
        """omega(u, v) as a reduced residue."""
        a = self.omega.array()
        uu = np.asarray(u, dtype=np.int64)
        vv = np.asarray(v, dtype=np.int64)
        return int((uu @ a @ vv) % self.p)

    def det(self) -> FpScalar:
        return self.omega.det()

    def is_symplectic(self) -> bool:
        return self.det().value != 0

    def kernel_dim(self) -> int:
        return self.dim - self.omega.rank()
