"""Tests for both Heisenberg models.

The matrix model's closed product law is proved against literal
(n+2) x (n+2) unitriangular matrix multiplication, exhaustively for
H_3(F_2) and on random pairs for larger parameters; after that the closed
form is trusted everywhere else.
"""

import numpy as np
import pytest

from heiskod.errors import EnumerationBoundError, PreconditionError, UnsupportedModelError
from heiskod.fplinalg import AlternatingForm
from heiskod.heisenberg import (
    HeisElement,
    HeisGroup,
    MatrixHeisElement,
    MatrixHeisGroup,
    degenerate_quotient,
    element_order,
    heis_mul,
    iso_matrix_to_pair,
    matrix_heis_mul,
    verify_extra_special,
)


def literal_matrix(g: MatrixHeisElement, n: int, p: int) -> np.ndarray:
    m = np.eye(n + 2, dtype=np.int64)
    m[0, 1 : n + 1] = g.x
    m[1 : n + 1, n + 1] = g.y
    m[0, n + 1] = g.z
    return m % p


def std2(p) -> HeisGroup:
    return HeisGroup(AlternatingForm.standard_symplectic(1, p))


# -- pair model ---------------------------------------------------------------


def test_pair_identity_and_example():
    g5 = std2(5)
    e1 = g5.element((1, 0), 0)
    e2 = g5.element((0, 1), 0)
    assert heis_mul(g5.identity, e1, g5) == e1
    # half of omega(e1, e2) = 1 is 3 mod 5
    assert heis_mul(e1, e2, g5) == g5.element((1, 1), 3)
    assert g5.commutator(e1, e2) == g5.element((0, 0), 1)


def test_pair_model_rejects_p2():
    with pytest.raises(UnsupportedModelError):
        HeisGroup(AlternatingForm.standard_symplectic(1, 2))


def test_pair_group_axioms_random():
    rng = np.random.default_rng(5)
    group = HeisGroup(AlternatingForm.family(2, 7, (1, 2), (3, 4)))
    els = [group.element(rng.integers(0, 7, size=8), int(rng.integers(0, 7))) for _ in range(30)]
    for _ in range(1000):
        g, h, k = (els[int(i)] for i in rng.integers(0, len(els), size=3))
        assert group.mul(group.mul(g, h), k) == group.mul(g, group.mul(h, k))
        assert group.mul(g, group.inv(g)) == group.identity
        assert group.mul(group.identity, g) == g
        # commutator carries exactly the form value and only sees projections
        assert group.commutator(g, h).t == group.omega(g.v, h.v)
        assert group.commutator(g, h).v == (0,) * 8


def test_pair_exponent_p():
    rng = np.random.default_rng(8)
    for p in (3, 5, 7):
        group = std2(p)
        for _ in range(50):
            g = group.element(rng.integers(0, p, size=2), int(rng.integers(0, p)))
            assert group.power(g, p) == group.identity
            assert element_order(g, group) == (1 if g == group.identity else p)
    assert element_order(std2(5).identity, std2(5)) == 1


# -- matrix model -------------------------------------------------------------


def test_matrix_model_example_and_noncommutativity():
    # frozen from the literal-matrix oracle below: the top-row generator X and
    # right-column generator Y satisfy XY = (1,1,1), YX = (1,1,0)
    h3 = MatrixHeisGroup(1, 2)
    a = h3.element((1,), (0,), 0)
    b = h3.element((0,), (1,), 0)
    ab = literal_matrix(a, 1, 2) @ literal_matrix(b, 1, 2) % 2
    assert np.array_equal(ab, literal_matrix(h3.element((1,), (1,), 1), 1, 2))
    assert matrix_heis_mul(a, b, h3) == h3.element((1,), (1,), 1)
    assert matrix_heis_mul(b, a, h3) == h3.element((1,), (1,), 0)
    assert matrix_heis_mul(h3.identity, a, h3) == a


def test_matrix_model_matches_literal_matrices():
    h3 = MatrixHeisGroup(1, 2)
    els = [h3.element((x,), (y,), z) for x in range(2) for y in range(2) for z in range(2)]
    for g in els:
        for h in els:
            prod = literal_matrix(g, 1, 2) @ literal_matrix(h, 1, 2) % 2
            assert np.array_equal(literal_matrix(h3.mul(g, h), 1, 2), prod)
    rng = np.random.default_rng(21)
    h52 = MatrixHeisGroup(2, 5)
    for _ in range(100):
        g = h52.element(rng.integers(0, 5, 2), rng.integers(0, 5, 2), int(rng.integers(0, 5)))
        h = h52.element(rng.integers(0, 5, 2), rng.integers(0, 5, 2), int(rng.integers(0, 5)))
        prod = literal_matrix(g, 2, 5) @ literal_matrix(h, 2, 5) % 5
        assert np.array_equal(literal_matrix(h52.mul(g, h), 2, 5), prod)
        assert np.array_equal(
            literal_matrix(h52.inv(g), 2, 5) @ literal_matrix(g, 2, 5) % 5, np.eye(4, dtype=np.int64)
        )


def test_matrix_group_axioms_random():
    rng = np.random.default_rng(6)
    group = MatrixHeisGroup(3, 3)
    els = [
        group.element(rng.integers(0, 3, 3), rng.integers(0, 3, 3), int(rng.integers(0, 3)))
        for _ in range(30)
    ]
    for _ in range(1000):
        g, h, k = (els[int(i)] for i in rng.integers(0, len(els), size=3))
        assert group.mul(group.mul(g, h), k) == group.mul(g, group.mul(h, k))
        assert group.mul(g, group.inv(g)) == group.identity
        assert group.mul(group.identity, g) == g


def test_matrix_commutator_rule():
    rng = np.random.default_rng(31)
    h = MatrixHeisGroup(3, 5)
    for _ in range(50):
        x = rng.integers(0, 5, 3)
        y = rng.integers(0, 5, 3)
        g = h.element(x, (0, 0, 0), 0)
        k = h.element((0, 0, 0), y, 0)
        assert h.commutator(g, k) == h.element((0, 0, 0), (0, 0, 0), int(x @ y) % 5)


def test_matrix_orders():
    h3 = MatrixHeisGroup(1, 2)
    g = h3.element((1,), (1,), 0)
    assert h3.power(g, 2) == h3.element((0,), (0,), 1)
    assert element_order(g, h3) == 4
    assert element_order(h3.identity, h3) == 1
    assert element_order(h3.element((1,), (0,), 0), h3) == 2


# -- isomorphism --------------------------------------------------------------


def test_iso_examples():
    h = MatrixHeisGroup(1, 5)
    assert iso_matrix_to_pair(h.identity, h) == HeisElement((0, 0), 0)
    assert iso_matrix_to_pair(h.element((1,), (1,), 0), h) == HeisElement((1, 1), 2)
    with pytest.raises(UnsupportedModelError):
        iso_matrix_to_pair(MatrixHeisGroup(1, 2).identity, MatrixHeisGroup(1, 2))


@pytest.mark.parametrize("p", [3, 5])
def test_iso_exhaustive_bijective_multiplicative(p):
    h = MatrixHeisGroup(1, p)
    pair = h.pair_model()
    els = [h.element((x,), (y,), z) for x in range(p) for y in range(p) for z in range(p)]
    images = {iso_matrix_to_pair(g, h) for g in els}
    assert len(images) == p**3
    for g in els:
        for k in els:
            assert iso_matrix_to_pair(h.mul(g, k), h) == pair.mul(
                iso_matrix_to_pair(g, h), iso_matrix_to_pair(k, h)
            )


def test_iso_random_multiplicative_larger():
    rng = np.random.default_rng(77)
    h = MatrixHeisGroup(2, 7)
    pair = h.pair_model()
    for _ in range(100):
        g = h.element(rng.integers(0, 7, 2), rng.integers(0, 7, 2), int(rng.integers(0, 7)))
        k = h.element(rng.integers(0, 7, 2), rng.integers(0, 7, 2), int(rng.integers(0, 7)))
        assert iso_matrix_to_pair(h.mul(g, k), h) == pair.mul(
            iso_matrix_to_pair(g, h), iso_matrix_to_pair(k, h)
        )


# -- structure reports ---------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7])
def test_extra_special_pair_groups(p):
    rep = verify_extra_special(std2(p))
    assert rep.method == "enumeration"
    assert rep.order == p**3
    assert rep.exponent == p
    assert rep.center_order == p
    assert rep.commutator_order == p
    assert rep.is_extra_special


def test_h3_f2_is_dihedral_not_quaternion():
    rep = verify_extra_special(MatrixHeisGroup(1, 2))
    assert rep.order == 8
    assert rep.exponent == 4
    assert rep.involution_count == 5  # D8 has five, Q8 has one
    assert rep.is_extra_special


def test_degenerate_center():
    group = HeisGroup(AlternatingForm.degenerate_family(2, 3))
    rep = verify_extra_special(group)
    assert rep.order == 3**9
    assert rep.center_order == 3**5  # |V_0| * p with dim V_0 = 2b = 4
    assert not rep.is_extra_special


def test_structural_exponent_p2():
    from heiskod.heisenberg import _CocycleGroup

    # too large to enumerate: H_{2n+1}(F_2) at n = 12 has order 2^25
    rep = verify_extra_special(MatrixHeisGroup(12, 2))
    assert rep.method == "structural" and rep.exponent == 4
    # symmetric cocycle with zero diagonal: abelian, every square trivial
    flat = _CocycleGroup(2, 25, np.zeros((25, 25), dtype=np.int64))
    rep = verify_extra_special(flat)
    assert rep.method == "structural" and rep.exponent == 2
    assert not rep.is_extra_special


def test_structural_path_matches_enumeration():
    group = HeisGroup(AlternatingForm.family(2, 3, (1, 1), (2, 2)))
    by_enum = verify_extra_special(group, enumeration_bound=3**9)
    structural = verify_extra_special(group, enumeration_bound=10)
    assert structural.method == "structural"
    assert (by_enum.order, by_enum.exponent, by_enum.center_order, by_enum.commutator_order) == (
        structural.order,
        structural.exponent,
        structural.center_order,
        structural.commutator_order,
    )


# -- degenerate quotient --------------------------------------------------------


def test_quotient_of_all_j_form():
    group = HeisGroup(AlternatingForm.degenerate_family(2, 3))
    q = degenerate_quotient(group)
    assert q.group.order == 3**5 == 243
    assert q.kernel_dim == 4
    assert q.group.form.omega == AlternatingForm.j_form(2, 3).omega
    # projection is a homomorphism
    rng = np.random.default_rng(13)
    for _ in range(200):
        g = group.element(rng.integers(0, 3, 8), int(rng.integers(0, 3)))
        h = group.element(rng.integers(0, 3, 8), int(rng.integers(0, 3)))
        assert q.project(group.mul(g, h)) == q.group.mul(q.project(g), q.project(h))
    # kernel has exactly p^{dim V_0} elements
    vs, ts = group.all_elements_raw()
    kernel = sum(
        1
        for i in range(group.order)
        if q.project(group.element(vs[i], int(ts[i]))) == q.group.identity
    )
    assert kernel == 3**4
    # surjectivity: image count equals quotient order
    images = {
        q.project(group.element(vs[i], int(ts[i]))) for i in range(group.order)
    }
    assert len(images) == 243


def test_quotient_of_symplectic_form_is_identity():
    group = HeisGroup(AlternatingForm.family(2, 5, (3, 3), (3, 3)))
    q = degenerate_quotient(group)
    assert q.group is group
    g = group.element((1, 2, 3, 4, 0, 1, 2, 3), 4)
    assert q.project(g) == g


def test_matrix_model_covers_p2_degenerate_case():
    # b = 3, p = 2: order 2^(2b+1) = 128
    assert MatrixHeisGroup(3, 2).order == 128


def test_packing_roundtrip_and_bounds():
    group = std2(5)
    for code in range(group.order):
        v, t = group.unpack(code)
        assert group.pack(v, t) == code
    with pytest.raises(EnumerationBoundError):
        HeisGroup(AlternatingForm.family(3, 7, (1, 1, 6), (2, 2, 4))).all_elements_raw(bound=100)


def test_element_validation():
    group = std2(5)
    with pytest.raises(PreconditionError):
        group.element((1, 2, 3), 0)
    with pytest.raises(PreconditionError):
        MatrixHeisGroup(0, 5)
