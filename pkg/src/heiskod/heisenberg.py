"""Finite Heisenberg groups in two models.

Pair model (odd p only): elements (v, t) in V x F_p with

    (v1, t1)(v2, t2) = (v1 + v2, t1 + t2 + (1/2) omega(v1, v2)),

for an alternating (possibly degenerate) form omega on V = F_p^dim.

Matrix model (any p, including 2): H_{2n+1}(F_p), upper unitriangular
(n+2) x (n+2) matrices determined by a row vector x, a column vector y and a
corner entry z.  We never store matrices; the closed product law

    (x1, y1, z1)(x2, y2, z2) = (x1 + x2, y1 + y2, z1 + z2 + x1 . y2)

is bit-for-bit the matrix product (the test suite proves this once against
literal matrix multiplication).

Both laws are the central extension twisted by a bilinear cocycle
c(v1, v2):  t' = t1 + t2 + v1 . C . v2, with C = (1/2) Omega in the pair model
and C = [[0, I], [0, 0]] in the matrix model.  The commutator pairing is then
C - C^T in either model, which keeps structure checks, subgroup-order logic
and the packed BFS uniform across the two.

For p = 2 the pair model would need 1/2 (and the naive substitute law with a
full omega twist is abelian, hence useless here), so construction is refused
and callers are pointed at the matrix model.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import EnumerationBoundError, PreconditionError, UnsupportedModelError
from .fplinalg import AlternatingForm, FpMatrix, is_prime


@dataclass(frozen=True)
class HeisElement:
    """Pair-model element (v, t), components reduced mod p."""

    v: tuple[int, ...]
    t: int


@dataclass(frozen=True)
class MatrixHeisElement:
    """Matrix-model element determined by (x, y, z), reduced mod p."""

    x: tuple[int, ...]
    y: tuple[int, ...]
    z: int


class _CocycleGroup:
    """Central extension of F_p^dim by F_p with product twisted by v1.C.v2."""

    def __init__(self, p: int, dim: int, cocycle: np.ndarray):
        if not is_prime(p):
            raise PreconditionError(f"modulus {p} is not prime")
        self.p = p
        self.dim = dim
        self._c = np.asarray(cocycle, dtype=np.int64) % p
        self.comm_form = (self._c - self._c.T) % p
        self.order = p ** (dim + 1)

    # raw representation: (numpy int64 vector of length dim, int)

    def _mul_raw(self, v1, t1, v2, t2):
        p = self.p
        tw = int(v1 @ self._c @ v2) % p
        return (v1 + v2) % p, (t1 + t2 + tw) % p

    def _inv_raw(self, v, t):
        p = self.p
        # (v,t)(-v,s) = (0, t + s + c(v,-v)) so s = -t + c(v,v)
        return (-v) % p, (-t + int(v @ self._c @ v)) % p

    def _pow_raw(self, v, t, k: int):
        p = self.p
        if k < 0:
            v, t = self._inv_raw(v, t)
            k = -k
        # g^k = (k v, k t + C(k,2) c(v,v)); c(v,v) = 0 in the pair model
        cvv = int(v @ self._c @ v) % p
        return (k * v) % p, (k * t + (k * (k - 1) // 2) * cvv) % p

    def _order_raw(self, v, t) -> int:
        cur_v, cur_t = v % self.p, t % self.p
        for k in range(1, 4 * self.p + 1):
            if not cur_v.any() and cur_t == 0:
                return k
            cur_v, cur_t = self._mul_raw(cur_v, cur_t, v, t)
        raise AssertionError("element order exceeded 4p")  # unreachable

    def commutator_value(self, u: Sequence[int], v: Sequence[int]) -> int:
        """Central exponent of [g, h] for any lifts of u, v."""
        uu = np.asarray(u, dtype=np.int64)
        vv = np.asarray(v, dtype=np.int64)
        return int(uu @ self.comm_form @ vv) % self.p

    # packing (mixed radix, digits v then t)

    def pack(self, v: Sequence[int], t: int) -> int:
        code = int(t) % self.p
        for x in reversed(tuple(v)):
            code = code * self.p + int(x) % self.p
        return code

    def unpack(self, code: int) -> tuple[tuple[int, ...], int]:
        digits = []
        for _ in range(self.dim):
            code, d = divmod(code, self.p)
            digits.append(d)
        return tuple(digits), code

    def all_elements_raw(self, bound: int = 10**7) -> tuple[np.ndarray, np.ndarray]:
        """(vectors, scalars) arrays enumerating the whole group, packed order."""
        if self.order > bound:
            raise EnumerationBoundError(f"group order {self.order} exceeds enumeration bound {bound}")
        codes = np.arange(self.order, dtype=np.int64)
        digits = np.empty((self.order, self.dim + 1), dtype=np.int64)
        for i in range(self.dim + 1):
            codes, digits[:, i] = np.divmod(codes, self.p)
        return digits[:, : self.dim], digits[:, self.dim]


class HeisGroup(_CocycleGroup):
    """Pair-model Heisenberg group of an alternating form (odd p).

    Degenerate forms are allowed: the center is then ker(omega) x F_p rather
    than the central F_p alone.
    """

    def __init__(self, form: AlternatingForm):
        if form.p == 2:
            raise UnsupportedModelError(
                "the pair model needs 1/2, which does not exist mod 2; use MatrixHeisGroup"
            )
        inv2 = pow(2, -1, form.p)
        super().__init__(form.p, form.dim, inv2 * form.omega.array())
        self.form = form

    def __repr__(self):
        return f"HeisGroup(dim={self.dim}, p={self.p}, order={self.order})"

    @property
    def identity(self) -> HeisElement:
        return HeisElement((0,) * self.dim, 0)

    def element(self, v: Sequence[int], t: int) -> HeisElement:
        vv = tuple(int(x) % self.p for x in v)
        if len(vv) != self.dim:
            raise PreconditionError(f"vector length {len(vv)} does not match dim {self.dim}")
        return HeisElement(vv, int(t) % self.p)

    def basis_element(self, i: int, t: int = 0) -> HeisElement:
        v = [0] * self.dim
        v[i] = 1
        return HeisElement(tuple(v), t % self.p)

    def central(self, t: int = 1) -> HeisElement:
        return HeisElement((0,) * self.dim, t % self.p)

    def _raw(self, g: HeisElement):
        return np.array(g.v, dtype=np.int64), g.t

    def _wrap(self, v, t) -> HeisElement:
        return HeisElement(tuple(int(x) for x in v), int(t))

    def mul(self, g: HeisElement, h: HeisElement) -> HeisElement:
        return self._wrap(*self._mul_raw(*self._raw(g), *self._raw(h)))

    def inv(self, g: HeisElement) -> HeisElement:
        return self._wrap(*self._inv_raw(*self._raw(g)))

    def power(self, g: HeisElement, k: int) -> HeisElement:
        return self._wrap(*self._pow_raw(*self._raw(g), k))

    def order_of(self, g: HeisElement) -> int:
        return self._order_raw(*self._raw(g))

    def commutator(self, g: HeisElement, h: HeisElement) -> HeisElement:
        gi, hi = self.inv(g), self.inv(h)
        return self.mul(self.mul(g, h), self.mul(gi, hi))

    def omega(self, u: Sequence[int], v: Sequence[int]) -> int:
        return self.form.value(u, v)

    def projection(self, g: HeisElement) -> tuple[int, ...]:
        return g.v


class MatrixHeisGroup(_CocycleGroup):
    """The matrix Heisenberg group H_{2n+1}(F_p), any prime p."""

    def __init__(self, n: int, p: int):
        if n < 1:
            raise PreconditionError(f"need n >= 1, got {n}")
        c = np.zeros((2 * n, 2 * n), dtype=np.int64)
        c[:n, n:] = np.eye(n, dtype=np.int64)
        super().__init__(p, 2 * n, c)
        self.n = n

    def __repr__(self):
        return f"MatrixHeisGroup(n={self.n}, p={self.p}, order={self.order})"

    @property
    def identity(self) -> MatrixHeisElement:
        return MatrixHeisElement((0,) * self.n, (0,) * self.n, 0)

    def element(self, x: Sequence[int], y: Sequence[int], z: int) -> MatrixHeisElement:
        xx = tuple(int(a) % self.p for a in x)
        yy = tuple(int(a) % self.p for a in y)
        if len(xx) != self.n or len(yy) != self.n:
            raise PreconditionError(f"x and y must have length n = {self.n}")
        return MatrixHeisElement(xx, yy, int(z) % self.p)

    def x_generator(self, j: int) -> MatrixHeisElement:
        """X_j: single 1 in the top row (1-based j)."""
        x = [0] * self.n
        x[j - 1] = 1
        return MatrixHeisElement(tuple(x), (0,) * self.n, 0)

    def y_generator(self, j: int) -> MatrixHeisElement:
        """Y_j: single 1 in the right column (1-based j)."""
        y = [0] * self.n
        y[j - 1] = 1
        return MatrixHeisElement((0,) * self.n, tuple(y), 0)

    def central(self, z: int = 1) -> MatrixHeisElement:
        return MatrixHeisElement((0,) * self.n, (0,) * self.n, z % self.p)

    def _raw(self, g: MatrixHeisElement):
        return np.array(g.x + g.y, dtype=np.int64), g.z

    def _wrap(self, v, t) -> MatrixHeisElement:
        vv = tuple(int(a) for a in v)
        return MatrixHeisElement(vv[: self.n], vv[self.n :], int(t))

    def mul(self, g: MatrixHeisElement, h: MatrixHeisElement) -> MatrixHeisElement:
        return self._wrap(*self._mul_raw(*self._raw(g), *self._raw(h)))

    def inv(self, g: MatrixHeisElement) -> MatrixHeisElement:
        return self._wrap(*self._inv_raw(*self._raw(g)))

    def power(self, g: MatrixHeisElement, k: int) -> MatrixHeisElement:
        return self._wrap(*self._pow_raw(*self._raw(g), k))

    def order_of(self, g: MatrixHeisElement) -> int:
        return self._order_raw(*self._raw(g))

    def commutator(self, g, h) -> MatrixHeisElement:
        gi, hi = self.inv(g), self.inv(h)
        return self.mul(self.mul(g, h), self.mul(gi, hi))

    def projection(self, g: MatrixHeisElement) -> tuple[int, ...]:
        return g.x + g.y

    def pair_model(self) -> HeisGroup:
        """The isomorphic pair-model group on the standard symplectic form."""
        if self.p == 2:
            raise UnsupportedModelError("no pair model exists mod 2")
        return HeisGroup(AlternatingForm.standard_symplectic(self.n, self.p))


# -- module-level operation names -------------------------------------------


def heis_mul(g: HeisElement, h: HeisElement, group: HeisGroup) -> HeisElement:
    return group.mul(g, h)


def matrix_heis_mul(g: MatrixHeisElement, h: MatrixHeisElement, group: MatrixHeisGroup) -> MatrixHeisElement:
    return group.mul(g, h)


def element_order(g, group) -> int:
    return group.order_of(g)


def iso_matrix_to_pair(m: MatrixHeisElement, group: MatrixHeisGroup) -> HeisElement:
    """The isomorphism H_{2n+1}(F_p) -> Heis(F_p^{2n}, std): (x,y,z) -> ((x,y), z - x.y/2)."""
    if group.p == 2:
        raise UnsupportedModelError("the isomorphism involves 1/2 and fails mod 2")
    p = group.p
    inv2 = pow(2, -1, p)
    dot = sum(a * b for a, b in zip(m.x, m.y)) % p
    return HeisElement(m.x + m.y, (m.z - inv2 * dot) % p)


# ---------------------------------------------------------------------------
# structure verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupStructureReport:
    order: int
    exponent: int
    center_order: int
    commutator_order: int
    involution_count: int  # elements of order exactly 2
    is_extra_special: bool
    method: str  # "enumeration" or "structural"


def _exhaustive_orders(group: _CocycleGroup, vs: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Orders of all listed elements, by simultaneous repeated multiplication."""
    p = group.p
    n = vs.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    cur_v = vs.copy()
    cur_t = ts.copy()
    # c(cur, g) rowwise: (cur_v * (C @ g_v)) summed; vectorised via matmul
    w = (vs @ group._c.T) % p  # row i holds C @ vs[i] transposed appropriately
    for k in range(1, 4 * p + 1):
        ident = (~cur_v.any(axis=1)) & (cur_t == 0)
        newly = ident & (orders == 0)
        orders[newly] = k
        if orders.all():
            break
        tw = (cur_v * w).sum(axis=1) % p
        cur_v = (cur_v + vs) % p
        cur_t = (cur_t + ts + tw) % p
    return orders


def verify_extra_special(group: _CocycleGroup, enumeration_bound: int = 2 * 10**5) -> GroupStructureReport:
    """Check order, exponent, center and commutator subgroup.

    Groups of order up to ``enumeration_bound`` are enumerated outright; the
    element orders, the center and (for very small groups) the full set of
    pairwise commutators are computed exhaustively.  Larger groups get the
    structural versions of the same numbers: exponent from generator orders,
    center from the kernel of the commutator pairing, commutator subgroup from
    the pairing values on basis vectors (commutators are central and bilinear
    in this nilpotency class, so nothing is lost).

    A degenerate pair-model form is legal input; the report then shows the
    enlarged center ker(omega) x F_p and ``is_extra_special`` False.
    """
    p = group.p
    comm = group.comm_form
    kernel_dim = group.dim - FpMatrix(comm, p).rank()
    center_order_structural = p ** (kernel_dim + 1)
    commutator_order = p if comm.any() else 1

    if group.order <= enumeration_bound:
        vs, ts = group.all_elements_raw(bound=enumeration_bound)
        orders = _exhaustive_orders(group, vs, ts)
        exponent = int(np.lcm.reduce(orders))
        involutions = int((orders == 2).sum())
        # mask over every (v, t), so the t choices are already counted
        central_mask = ~((vs @ comm.T) % p).any(axis=1)
        center_order = int(central_mask.sum())
        if center_order != center_order_structural:
            raise AssertionError("exhaustive center disagrees with kernel computation")
        if group.order <= 2000:
            # full pairwise commutator table; every commutator is the central
            # element with exponent comm(u, v), so the value set determines
            # the commutator subgroup
            values = set(np.unique((vs @ comm @ vs.T) % p).tolist())
            if values not in ({0}, set(range(p))):
                raise AssertionError("commutator values of a bilinear pairing must be {0} or all of F_p")
            commutator_order = 1 if values == {0} else p
        method = "enumeration"
    else:
        if p != 2:
            # g^p = (p v, p t + binom(p, 2) c(v, v)) vanishes for odd p
            exponent = p
        else:
            # order 4 exists iff the square map v -> c(v, v) is not identically
            # zero mod 2, i.e. some diagonal or symmetrised entry of C is odd
            c = group._c
            squares_nontrivial = bool((np.diagonal(c) % 2).any() or ((c + c.T) % 2).any())
            exponent = 4 if squares_nontrivial else 2
        involutions = -1  # not enumerated
        center_order = center_order_structural
        method = "structural"

    extra_special = (
        center_order == p
        and commutator_order == p
        and (exponent == p or (p == 2 and exponent == 4))
    )
    return GroupStructureReport(
        order=group.order,
        exponent=exponent,
        center_order=center_order,
        commutator_order=commutator_order,
        involution_count=involutions,
        is_extra_special=extra_special,
        method=method,
    )


# ---------------------------------------------------------------------------
# degenerate quotient
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientData:
    group: HeisGroup                      # Heis(W, induced form)
    kernel_dim: int                       # dim of ker(omega) = V_0
    complement: tuple[int, ...]           # coordinate indices representing W
    project: Callable[[HeisElement], HeisElement]


def degenerate_quotient(group: HeisGroup) -> QuotientData:
    """Quotient Heis(V, omega) -> Heis(V/V_0, induced omega) for V_0 = ker omega.

    The projection (v, t) -> (v + V_0, t) is a surjective homomorphism with
    kernel V_0 x {0}; the induced form on the quotient is symplectic.  When
    omega is already symplectic the quotient is the identity map.
    """
    form = group.form
    kernel_rows = form.omega.kernel_basis()
    if not kernel_rows:
        return QuotientData(group, 0, tuple(range(group.dim)), lambda g: g)
    k = FpMatrix(np.array(kernel_rows, dtype=np.int64), group.p)
    kr, pivots = k.rref()
    kra = kr.array()
    complement = tuple(c for c in range(group.dim) if c not in set(pivots))
    omega_w = form.omega.array()[np.ix_(complement, complement)]
    quotient = HeisGroup(AlternatingForm(FpMatrix(omega_w, group.p)))

    piv = tuple(pivots)

    def project(g: HeisElement) -> HeisElement:
        v = np.array(g.v, dtype=np.int64)
        for i, c in enumerate(piv):
            v = (v - v[c] * kra[i]) % group.p
        return quotient.element(v[list(complement)], g.t)

    return QuotientData(quotient, len(kernel_rows), complement, project)
