"""Tests for the F_p linear algebra layer.

The determinant has an independent oracle here: minor expansion over column
subsets (bitmask-memoised), which never touches the Gaussian-elimination
path under test.
"""

import functools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heiskod.errors import PreconditionError
from heiskod.fplinalg import (
    AlternatingForm,
    FpMatrix,
    FpScalar,
    fp_inv,
    is_prime,
    kernel_basis,
    mat_det,
    mat_rank,
    span_dim,
)


def det_oracle(rows: list[list[int]], p: int) -> int:
    """Minor expansion along the first remaining row, memoised on the column mask."""
    n = len(rows)

    @functools.lru_cache(maxsize=None)
    def minor(row: int, mask: int) -> int:
        if row == n:
            return 1
        total = 0
        sign = 1
        for j in range(n):
            if not mask & (1 << j):
                continue
            if rows[row][j]:
                total += sign * rows[row][j] * minor(row + 1, mask & ~(1 << j))
            sign = -sign
        return total % p

    return minor(0, (1 << n) - 1)


# -- scalars -----------------------------------------------------------------


def test_fp_inv_examples():
    assert fp_inv(FpScalar(2, 5)) == FpScalar(3, 5)
    assert fp_inv(FpScalar(4, 7)) == FpScalar(2, 7)
    for p in (2, 3, 5, 7, 11):
        assert fp_inv(FpScalar(1, p)) == FpScalar(1, p)


def test_fp_inv_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        fp_inv(FpScalar(0, 5))


def test_scalar_validation():
    with pytest.raises(PreconditionError):
        FpScalar(1, 6)  # composite modulus
    with pytest.raises(PreconditionError):
        FpScalar(5, 5)  # unreduced residue
    assert FpScalar.of(12, 5) == FpScalar(2, 5)


@given(st.sampled_from([2, 3, 5, 7, 13, 97]), st.data())
def test_fp_inv_is_involution(p, data):
    a = data.draw(st.integers(min_value=1, max_value=p - 1))
    x = FpScalar(a, p)
    assert fp_inv(fp_inv(x)) == x
    assert (x * fp_inv(x)).value == 1


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)


# -- rank / det / kernel -----------------------------------------------------


def test_rank_examples():
    assert mat_rank(FpMatrix.zeros(3, 3, 5)) == 0
    assert mat_rank(FpMatrix.identity(4, 3)) == 4
    assert mat_rank(AlternatingForm.degenerate_family(2, 3).omega) == 4  # rank 2b


def test_det_examples():
    assert mat_det(FpMatrix.identity(2, 7)).value == 1
    form = AlternatingForm.family(2, 5, (3, 3), (3, 3))
    assert form.det().value == 1  # (1 - 9)^4 = 81 = 1 mod 5
    assert det_oracle(form.omega.to_lists(), 5) == 1
    # a vanishing factor kills the determinant
    degenerate = AlternatingForm.family(2, 5, (1, 3), (1, 2))  # lambda_1 mu_1 = 1
    assert degenerate.det().value == 0


def test_det_requires_square():
    with pytest.raises(PreconditionError):
        mat_det(FpMatrix.zeros(2, 3, 5))


@pytest.mark.parametrize("b", [2, 3])
@pytest.mark.parametrize("p", [5, 7])
def test_det_matches_family_formula(b, p):
    rng = np.random.default_rng(1000 * b + p)
    for trial in range(100):
        lam = rng.integers(0, p, size=b).tolist()
        mu = rng.integers(0, p, size=b).tolist()
        form = AlternatingForm.family(b, p, lam, mu)
        expected = 1
        for l, m in zip(lam, mu):
            expected = expected * (1 - l * m) ** 2 % p
        assert form.det().value == expected
        if trial < 10:  # independent route, on a subsample for speed
            assert det_oracle(form.omega.to_lists(), p) == expected


@given(
    st.sampled_from([2, 3, 5, 7]),
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=0, max_value=2**32 - 1),
)
@settings(max_examples=60)
def test_rank_nullity(p, rows, cols, seed):
    rng = np.random.default_rng(seed)
    m = FpMatrix(rng.integers(0, p, size=(rows, cols)), p)
    ker = m.kernel_basis()
    assert m.rank() + len(ker) == cols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


def test_kernel_examples():
    assert kernel_basis(FpMatrix.identity(3, 5)) == []
    zero_kernel = kernel_basis(FpMatrix.zeros(2, 2, 7))
    assert sorted(zero_kernel) == [(0, 1), (1, 0)]

    form = AlternatingForm.degenerate_family(2, 3)
    basis = kernel_basis(form.omega)
    assert len(basis) == 4
    # same span as the differences r_1j - r_2j, t_1j - t_2j
    named = [
        tuple((1 if i == k else 0) - (1 if i == k + 4 else 0) for i in range(8)) for k in range(4)
    ]
    named = [tuple(x % 3 for x in v) for v in named]
    assert span_dim(basis, 3) == 4
    assert span_dim(basis + named, 3) == 4


def test_span_dim_examples():
    e1, e2 = (1, 0, 0), (0, 1, 0)
    both = (1, 1, 0)
    assert span_dim([e1, e2, both], 5) == 2
    assert span_dim([], 5) == 0
    # projections of the first kernel-generator images at (b=2, p=5) are the
    # last four standard basis vectors of F_5^8
    vecs = [tuple(1 if i == k else 0 for i in range(8)) for k in (4, 5, 6, 7)]
    assert span_dim(vecs, 5) == 4


def test_matrix_immutability():
    m = FpMatrix.identity(2, 3)
    with pytest.raises(ValueError):
        m.array()[0, 0] = 2
    with pytest.raises(AttributeError):
        m.p = 5


def test_matmul_and_shape_errors():
    a = FpMatrix([[1, 2], [3, 4]], 5)
    b = FpMatrix([[1], [1]], 5)
    assert (a @ b).to_lists() == [[3], [2]]
    with pytest.raises(PreconditionError):
        b @ a @ b
    with pytest.raises(PreconditionError):
        a @ FpMatrix([[1, 0], [0, 1]], 7)


# -- alternating forms -------------------------------------------------------


def test_alternating_validation():
    with pytest.raises(PreconditionError):
        AlternatingForm(FpMatrix([[0, 1], [1, 0]], 5))  # symmetric, not skew
    with pytest.raises(PreconditionError):
        AlternatingForm(FpMatrix([[1, 1], [1, 1]], 2))  # nonzero diagonal mod 2
    # skew with zero diagonal passes even mod 2
    AlternatingForm(FpMatrix([[0, 1], [1, 0]], 2))


def test_family_layout():
    form = AlternatingForm.family(2, 7, (1, 2), (3, 4))
    assert form.family_params == ((1, 2), (3, 4))
    # defining values: omega(r_1j, t_1j) = lambda_j, omega(r_2j, t_2j) = mu_j,
    # omega(r_1j, t_2j) = omega(r_2j, t_1j) = -1
    e = lambda i: [1 if k == i else 0 for k in range(8)]
    assert form.value(e(0), e(1)) == 1
    assert form.value(e(2), e(3)) == 2
    assert form.value(e(4), e(5)) == 3
    assert form.value(e(6), e(7)) == 4
    assert form.value(e(0), e(5)) == 6  # -1 mod 7
    assert form.value(e(4), e(1)) == 6
    assert form.value(e(0), e(7)) == 0


def test_degenerate_family_is_all_j_blocks():
    form = AlternatingForm.degenerate_family(2, 3)
    j2 = AlternatingForm.j_form(2, 3).omega.to_lists()
    m = form.omega.to_lists()
    assert [row[:4] for row in m[:4]] == j2
    assert [row[4:] for row in m[:4]] == j2
    assert [row[:4] for row in m[4:]] == j2
    assert [row[4:] for row in m[4:]] == j2


def test_backend_agreement_on_random_matrices():
    from heiskod import _backend

    if not _backend.HAS_NUMBA:
        pytest.skip("numba not installed")
    rng = np.random.default_rng(7)
    for _ in range(25):
        p = int(rng.choice([2, 3, 5, 13]))
        a = rng.integers(0, p, size=(int(rng.integers(1, 8)), int(rng.integers(1, 8))))
        r_np, piv_np = _backend._rref_np(a, p)
        r_nb, piv_nb = _backend._rref_nb(np.array(a, dtype=np.int64), p, _backend._inv_table(p))
        assert np.array_equal(r_np, r_nb)
        assert np.array_equal(piv_np, piv_nb)
        if a.shape[0] == a.shape[1]:
            assert _backend._det_np(a, p) == _backend._det_nb(
                np.array(a, dtype=np.int64), p, _backend._inv_table(p)
            )
