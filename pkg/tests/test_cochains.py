import random

import pytest

from hochdeform.cochains import (
    CochainSpace,
    as_element,
    delta_3_explicit,
    delta_d,
    delta_d_operator,
    delta_low,
    delta_low_operator,
    gimel0,
    gimel1,
    gimel2,
    gimel_operator,
    hochschild_operator,
    identity_cochain,
    linear_map,
    tertiary_space,
    trivial_product,
    unit_embedding,
)
from hochdeform.deform import derivations
from hochdeform.fields import GF, QQ
from hochdeform.presets import preset_algebra, preset_quintuple

COMMUTATIVE = ["k", "dual_numbers", "truncated_poly_3", "k_x_k", "group_z2"]
QUINTUPLES = ["trivial:k", "trivial", "dual_embed", "dual_identity", "ut2_dual", "trivial:upper_triangular_2"]


@pytest.fixture
def dual():
    return preset_algebra("dual_numbers")


def test_cochain_evaluation(dual):
    sp = CochainSpace(dual, 1)
    ident = identity_cochain(dual)
    a = dual.vector((3, 2))
    assert ident(a) == a
    # f(1) = 0, f(e) = 1
    f = sp.from_values({(1,): (1, 0)})
    assert f(a) == (2, 0)
    g = CochainSpace(dual, 2).random(random.Random(1))
    assert g(dual.zero(), a) == dual.zero()


def test_evaluation_checks_arity(dual):
    f = identity_cochain(dual)
    with pytest.raises(ValueError):
        f(dual.unit, dual.unit)
    with pytest.raises(ValueError):
        f((1, 0, 0))


def test_basis_enumeration_is_row_major(dual):
    Q = preset_quintuple("dual_embed")
    sp = tertiary_space(Q, 2, 1, 1)
    tuples = list(sp.tuples())
    assert tuples[0] == (0, 0, 0, 0)
    assert tuples[1] == (0, 0, 1, 0)  # last factor fastest, C has dim 1
    assert tuples == sorted(tuples)
    assert [sp.index(t) for t in tuples] == list(range(len(tuples)))


def test_low_degree_maps(dual):
    m = dual.vector((1, 5))
    assert delta_low(3, 0, m, dual) == dual.zero()
    assert delta_low(3, 1, m, dual) == m
    # n = d - 1 is even here, so the map into Hom(A, A) is zero
    assert delta_low(3, 2, m, dual).is_zero()
    with pytest.raises(ValueError):
        delta_low(3, 3, m, dual)


def test_unit_embedding_at_top_low_degree(dual):
    e = dual.basis[1]
    f = delta_low(2, 1, e, dual)
    assert f == unit_embedding(dual, e)
    assert f(dual.basis[0]) == e
    assert delta_d(2, dual, f).is_zero()


def test_delta_of_identity_is_multiplication_for_odd_d(dual):
    for d in (1, 3):
        img = delta_d(d, dual, identity_cochain(dual))
        for tup in img.space.tuples():
            assert img.value(tup) == dual.prod(*(dual.basis[i] for i in tup))


def test_delta_of_unit_embedding_vanishes_for_even_d():
    for name in COMMUTATIVE:
        A = preset_algebra(name)
        for d in (2, 4):
            for m in A.basis:
                assert delta_d(d, A, unit_embedding(A, m)).is_zero()


def test_delta_one_hand_value(dual):
    # f(1) = 0, f(e) = 1
    f = CochainSpace(dual, 1).from_values({(1,): (1, 0)})
    # delta_1(f)(e, e) = e f(e) - f(0) + f(e) e = 2e
    assert delta_d(1, dual, f).value((1, 1)) == (0, 2)


def test_delta_one_on_the_field():
    k = preset_algebra("k")
    M = delta_d_operator(k, 1).matrix()
    assert M.to_rows() == [[1]]


@pytest.mark.parametrize("name", COMMUTATIVE)
def test_explicit_delta_three_matches_generic(name):
    A = preset_algebra(name)
    rng = random.Random(name)
    sp = CochainSpace(A, 1)
    for _ in range(5):
        f = sp.random(rng)
        assert delta_3_explicit(A, f) == delta_d(3, A, f)
    assert delta_3_explicit(A, sp.zero()).is_zero()


@pytest.mark.parametrize("name", COMMUTATIVE)
def test_derivations_are_odd_cocycles(name):
    A = preset_algebra(name)
    for D in derivations(A):
        for d in (1, 3):
            assert delta_d(d, A, D).is_zero()


def test_dual_derivation_is_killed_by_explicit_delta_three(dual):
    D = linear_map(dual, lambda a: (0, a[1]))
    assert delta_3_explicit(dual, D).is_zero()


def test_noncommutative_algebra_is_rejected():
    with pytest.raises(ValueError):
        delta_d_operator(preset_algebra("upper_triangular_2"), 2)


def test_symbolic_matrix_agrees_with_direct_application():
    A = preset_algebra("truncated_poly_3")
    rng = random.Random(7)
    for d in (1, 2, 3):
        op = delta_d_operator(A, d)
        M = op.matrix()
        assert M.shape == (A.dim * A.dim ** (d + 1), A.dim * A.dim)
        f = op.source.random(rng)
        assert M.matvec(f.coords) == op(f).coords


def test_gimel0_examples():
    Q = preset_quintuple("trivial:upper_triangular_2")
    A = Q.A
    E12 = A.basis[1]
    c = gimel0(Q, E12)
    assert not c.is_zero()
    for i, a in enumerate(A.basis):
        assert c.value((i,)) == tuple(x - y for x, y in zip(A.mul(a, E12), A.mul(E12, a)))
    assert gimel0(Q, A.unit).is_zero()
    Qc = preset_quintuple("dual_embed")
    for m in Qc.A.basis:
        assert gimel0(Qc, m).is_zero()


def test_gimel1_of_identity_is_the_product():
    for name in QUINTUPLES:
        Q = preset_quintuple(name)
        assert gimel1(Q, identity_cochain(Q.A)) == trivial_product(Q)


def test_gimel1_hand_value():
    Q = preset_quintuple("trivial")
    f = CochainSpace(Q.A, 1).from_values({(0,): (1, 0)})
    assert gimel1(Q, f).value((1, 1, 0, 0)) == (0, 0)


@pytest.mark.parametrize("name", QUINTUPLES)
def test_gimel_complex_identities(name):
    Q = preset_quintuple(name)
    M1 = gimel_operator(Q, 1).matrix()
    M2 = gimel_operator(Q, 2).matrix()
    assert (M2 @ M1).is_zero()
    M0 = gimel_operator(Q, 0).matrix()
    assert (M1 @ M0).is_zero()
    assert gimel2(Q, trivial_product(Q)).is_zero()


def test_classical_reduction_by_evaluation():
    Q = preset_quintuple("trivial")
    rng = random.Random(3)
    f = CochainSpace(Q.A, 1).random(rng)
    assert gimel1(Q, f).coords == hochschild_operator(Q.A, 1)(f).coords
    g = tertiary_space(Q, 2, 1, 1).random(rng)
    g_classical = CochainSpace(Q.A, 2).from_vector(g.coords)
    assert gimel2(Q, g).coords == hochschild_operator(Q.A, 2)(g_classical).coords


def test_zero_operator_has_zero_matrix():
    A = preset_algebra("dual_numbers")
    op = delta_low_operator(A, 3, 0)
    assert op.matrix().is_zero()


def test_prime_field_complex_identity():
    Q = preset_quintuple("dual_identity", GF(5))
    assert (gimel_operator(Q, 2).matrix() @ gimel_operator(Q, 1).matrix()).is_zero()


def test_cochain_arithmetic(dual):
    sp = CochainSpace(dual, 2)
    rng = random.Random(0)
    f, g = sp.random(rng), sp.random(rng)
    assert (f + g) - g == f
    assert (-f) + f == sp.zero()
    assert (2 * f) - f == f
    with pytest.raises(ValueError):
        f + CochainSpace(dual, 1).zero()


def test_as_element_checks_length(dual):
    with pytest.raises(ValueError):
        as_element(dual, (1, 0, 0))
