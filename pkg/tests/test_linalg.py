from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hochdeform.fields import GF, QQ, ModP, field_from_name
from hochdeform.linalg import (
    ExactMatrix,
    in_image,
    kernel_basis,
    rank,
    rref,
    solve_affine,
)


def M(rows, field=QQ):
    return ExactMatrix.from_rows(field, rows)


def test_rational_arithmetic_is_exact():
    a = QQ("1/3")
    assert a + (-a) == 0
    assert a * (QQ.one / a) == 1
    assert QQ.format(QQ("6/4")) == "3/2"
    assert QQ.format(QQ(-2)) == "-2"


def test_rationals_reject_floats_and_bad_text():
    with pytest.raises(TypeError):
        QQ(0.5)
    with pytest.raises(ValueError):
        QQ("one half")


def test_prime_field_arithmetic():
    F = GF(7)
    a = F(3)
    assert a * (F.one / a) == F.one
    assert a + F(4) == F.zero
    assert F("1/2") == F(4)
    assert F.format(F(-1)) == "6"
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        GF(9)


def test_residues_of_different_primes_do_not_mix():
    with pytest.raises(ValueError):
        ModP(1, 5) + ModP(1, 7)


def test_field_names():
    assert field_from_name("Q") == QQ
    assert field_from_name("F7") == GF(7)
    assert field_from_name("Fp(11)") == GF(11)
    with pytest.raises(ValueError):
        field_from_name("R")


def test_rref_identity():
    R, piv = rref(ExactMatrix.identity(QQ, 2))
    assert R == ExactMatrix.identity(QQ, 2)
    assert piv == [0, 1]


def test_rref_zero():
    R, piv = rref(ExactMatrix.zeros(QQ, 3, 3))
    assert R.is_zero() and piv == []


def test_rref_hand_example():
    R, piv = rref(M([[2, 4], [1, 2]]))
    assert R == M([[1, 2], [0, 0]])
    assert piv == [0]


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(QQ, 3)) == []
    zero = kernel_basis(ExactMatrix.zeros(QQ, 3, 3))
    assert sorted(zero) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    (v,) = kernel_basis(M([[1, 1]]))
    assert v == (-1, 1) or v == (1, -1)


def test_solve_examples():
    b = (QQ(3), QQ("-1/2"))
    x, ker = solve_affine(ExactMatrix.identity(QQ, 2), b)
    assert x == b and ker == []
    assert solve_affine(ExactMatrix.zeros(QQ, 2, 2), (1, 0)) is None
    x, ker = solve_affine(M([[1, 1]]), (2,))
    assert x == (2, 0)
    assert len(ker) == 1 and M([[1, 1]]).matvec(ker[0]) == (0,)


def test_solve_over_prime_field():
    F = GF(5)
    A = M([[1, 2], [3, 4]], F)
    x, ker = solve_affine(A, (F(1), F(0)))
    assert A.matvec(x) == (F(1), F(0))
    assert ker == []


def test_matrix_product_and_transpose():
    A = M([[1, 2], [0, 1]])
    B = M([[1, -2], [0, 1]])
    assert A @ B == ExactMatrix.identity(QQ, 2)
    assert A.transpose() == M([[1, 0], [2, 1]])


small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, p=None):
    r = draw(st.integers(1, 5))
    c = draw(st.integers(1, 5))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return M(rows, GF(p) if p else QQ)


@settings(max_examples=60, deadline=None)
@given(matrices(p=5))
def test_rank_nullity_over_prime_field(A):
    ker = kernel_basis(A)
    assert rank(A) + len(ker) == A.ncols
    assert rank(A) <= min(A.shape)
    for v in ker:
        assert all(x == 0 for x in A.matvec(v))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_pivots_increase(A):
    R, piv = rref(A)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
    assert piv == sorted(set(piv))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solutions_verify_and_absence_means_rank_jump(A, rhs):
    b = tuple(QQ(x) for x in rhs[: A.nrows])
    sol = solve_affine(A, b)
    if sol is None:
        aug = A.hstack(ExactMatrix.from_rows(QQ, [[x] for x in b]))
        assert rank(aug) > rank(A)
        assert not in_image(A, b)
    else:
        x, _ = sol
        assert A.matvec(x) == b
        # free variables are zero in the canonical solution
        _, piv = rref(A)
        assert all(x[j] == 0 for j in range(A.ncols) if j not in piv)


def test_fraction_inputs_are_accepted():
    A = M([[Fraction(1, 2), 1]])
    x, _ = solve_affine(A, (1,))
    assert x == (2, 0)
