import random

import pytest

from hochdeform.algebra import AlgebraMorphism, Quintuple, identity_morphism
from hochdeform.cochains import (
    CochainSpace,
    gimel1,
    gimel_operator,
    tertiary_space,
    trivial_product,
)
from hochdeform.deform import (
    ProductFamilySeries,
    check_family_conditions,
    check_tertass,
    cochain_family,
    epsilon_from_family,
    extract_tert_obstruction,
    tert_cocycle_check,
    tert_extend,
    tert_extend_step,
    tert_gauge_check,
    tert_gauge_transform,
    tert_obstruction,
    tertass_residual,
    trivial_family,
)
from hochdeform.errors import PreconditionError, ValidationError
from hochdeform.products import tert_circle
from hochdeform.presets import preset_algebra, preset_quintuple

QUINTUPLES = ["trivial:k", "trivial", "dual_embed", "dual_identity", "ut2_dual"]


def kernel_sample(Q, rng):
    op = gimel_operator(Q, 2)
    total = op.source.zero()
    for v in op.kernel():
        total = total + Q.A.field.random(rng) * v
    return total


def e_squared(Q):
    # the t-deformation e^2 = t of the dual numbers, as a (2, 1, 1) cochain
    return tertiary_space(Q, 2, 1, 1).from_values({(1, 1, 0, 0): (1, 0)})


@pytest.mark.parametrize("name", QUINTUPLES)
def test_undeformed_family_is_associative(name):
    Q = preset_quintuple(name)
    assert check_tertass(ProductFamilySeries(Q, 3)).ok


def test_residual_needs_ten_arguments():
    Q = preset_quintuple("trivial")
    with pytest.raises(ValueError):
        tertass_residual(ProductFamilySeries(Q, 2), [Q.A.unit] * 3)


def test_residual_hand_value():
    Q = preset_quintuple("trivial")
    M = ProductFamilySeries(Q, 3, [e_squared(Q)])
    one, e = Q.A.basis
    k = Q.B.unit
    # (e e) e = t e on both sides
    args = [e, e, e, k, k, k, k, k, k, k]
    assert tertass_residual(M, args).is_zero()
    assert check_tertass(M).ok


def test_cocycle_check_on_coboundaries_and_the_product():
    for name in QUINTUPLES:
        Q = preset_quintuple(name)
        f = CochainSpace(Q.A, 1).random(random.Random(name))
        assert tert_cocycle_check(gimel1(Q, f), Q).ok
        assert tert_cocycle_check(trivial_product(Q), Q).ok


def test_cocycle_check_reports_a_verified_witness():
    Q = preset_quintuple("trivial")
    bad = tertiary_space(Q, 2, 1, 1).from_values({(1, 0, 0, 0): (1, 0)})
    res = tert_cocycle_check(bad, Q)
    assert not res.ok
    args = tertiary_space(Q, 3, 3, 4).basis_args(res.witness)
    residual = tertass_residual(ProductFamilySeries(Q, 2, [bad]), args)
    assert any(residual.coeffs[1])


@pytest.mark.parametrize("name", QUINTUPLES)
def test_first_obstruction_is_the_self_composition(name):
    Q = preset_quintuple(name)
    c1 = kernel_sample(Q, random.Random(name))
    M = ProductFamilySeries(Q, 3, [c1])
    omega = tert_obstruction(M, 1)
    assert omega == tert_circle(Q, c1, c1)
    assert extract_tert_obstruction(M, 1) == omega


def test_obstruction_precondition():
    Q = preset_quintuple("trivial")
    bad = tertiary_space(Q, 2, 1, 1).from_values({(1, 0, 0, 0): (1, 0)})
    with pytest.raises(PreconditionError) as info:
        tert_obstruction(ProductFamilySeries(Q, 3, [bad]), 1)
    assert info.value.order == 1


def test_extend_from_zero():
    Q = preset_quintuple("dual_embed")
    ext = tert_extend_step(ProductFamilySeries(Q, 3), 1)
    assert ext.term.is_zero()
    assert len(ext.gauge_freedom) == len(gimel_operator(Q, 2).kernel())


@pytest.mark.parametrize("name", QUINTUPLES)
def test_coboundary_first_order_extends(name):
    Q = preset_quintuple(name)
    f = CochainSpace(Q.A, 1).random(random.Random("c" + name))
    M = ProductFamilySeries(Q, 3, [gimel1(Q, f)])
    M2, log = tert_extend(M, 4)
    assert log == [(1, "extended"), (2, "extended")]
    assert check_tertass(M2).ok


def test_classical_deformation_extends():
    Q = preset_quintuple("trivial")
    M, log = tert_extend(ProductFamilySeries(Q, 2, [e_squared(Q)]), 5)
    assert all(status == "extended" for _, status in log)
    assert check_tertass(M).ok
    assert M.term(1) == e_squared(Q)


def test_classical_extension_matches_sphere_free_route():
    # B = C = k: the family is an ordinary product, its extension solves the Hochschild equation
    Q = preset_quintuple("trivial:truncated_poly_3")
    c1 = kernel_sample(Q, random.Random(1))
    ext = tert_extend_step(ProductFamilySeries(Q, 3, [c1]), 1)
    assert ext is not None
    assert gimel_operator(Q, 2)(ext.term) == tert_circle(Q, c1, c1)


def test_gauge_first_order_is_shifted_by_a_coboundary():
    Q = preset_quintuple("dual_identity")
    rng = random.Random(4)
    c1 = kernel_sample(Q, rng)
    sp1 = CochainSpace(Q.A, 1)
    f = [sp1.random(rng) for _ in range(2)]
    P = tert_gauge_transform(ProductFamilySeries(Q, 3, [c1]), f)
    assert P.term(1) == c1 - gimel1(Q, f[0])
    assert tert_gauge_check(c1, P.term(1), Q)


def test_gauge_of_associative_family_is_associative():
    Q = preset_quintuple("trivial")
    M, _ = tert_extend(ProductFamilySeries(Q, 2, [e_squared(Q)]), 4)
    sp1 = CochainSpace(Q.A, 1)
    rng = random.Random(6)
    P = tert_gauge_transform(M, [sp1.random(rng) for _ in range(3)])
    assert check_tertass(P).ok


def test_gauge_class_distinguishes_a_nonzero_class():
    Q = preset_quintuple("trivial")
    zero = tertiary_space(Q, 2, 1, 1).zero()
    # e^2 = t is not a coboundary: every gimel^1 image vanishes at (e, e)
    assert not gimel_operator(Q, 1).contains(e_squared(Q))
    assert not tert_gauge_check(e_squared(Q), zero, Q)
    assert tert_gauge_check(e_squared(Q), e_squared(Q), Q)
    with pytest.raises(ValueError):
        bad = tertiary_space(Q, 2, 1, 1).from_values({(1, 0, 0, 0): (1, 0)})
        tert_gauge_check(bad, zero, Q)


@pytest.mark.parametrize("name", QUINTUPLES)
def test_trivial_family_satisfies_the_conditions(name):
    Q = preset_quintuple(name)
    assert check_family_conditions(trivial_family(Q), Q.A, Q.B, Q.C, Q.theta) == []


def test_cochain_family_agrees_with_the_product_cochain():
    Q = preset_quintuple("dual_embed")
    fam = cochain_family(trivial_product(Q))
    assert check_family_conditions(fam, Q.A, Q.B, Q.C, Q.theta) == []


def test_nonlinear_family_is_reported():
    Q = preset_quintuple("dual_identity")
    base = trivial_family(Q)
    A = Q.A

    def bent(a, b, alpha, x):
        out = base(a, b, alpha, x)
        # squares the B argument's e coefficient
        return tuple(v + alpha[1] * alpha[1] * w for v, w in zip(out, A.mul(a, b)))

    report = check_family_conditions(bent, A, Q.B, Q.C, Q.theta)
    assert any("not homogeneous in B" in r for r in report)


def test_family_with_broken_associativity_is_reported():
    Q = preset_quintuple("trivial")
    A = Q.A

    def swapped(a, b, alpha, x):
        # 1 e = e, e 1 = 0, e e = 1: bilinear, but (e 1) e = 0 while e (1 e) = 1
        s = alpha[0] * x[0]
        return (s * (a[0] * b[0] + a[1] * b[1]), s * a[0] * b[1])

    report = check_family_conditions(swapped, A, Q.B, Q.C, Q.theta)
    assert any("associativity fails" in r for r in report)


@pytest.mark.parametrize("name", QUINTUPLES)
def test_epsilon_round_trip(name):
    Q = preset_quintuple(name)
    eps, eps_theta = epsilon_from_family(trivial_family(Q), Q.A, Q.B, Q.C, Q.theta)
    assert eps.matrix == Q.eps.matrix
    assert eps_theta.matrix == Q.eps_theta.matrix


def test_noncentral_epsilon_is_rejected():
    A = preset_algebra("upper_triangular_2")
    B = preset_algebra("dual_numbers")
    # e -> E12 is multiplicative and unital but not central
    eps = AlgebraMorphism(B, A, [[1, 0], [0, 1], [1, 0]])
    Q = Quintuple(A, B, B, eps, identity_morphism(B))
    with pytest.raises(ValidationError) as info:
        epsilon_from_family(trivial_family(Q), A, B, B, Q.theta)
    assert "not central" in str(info.value)


def test_checks_below_the_number_of_terms():
    Q = preset_quintuple("trivial")
    M, _ = tert_extend(ProductFamilySeries(Q, 2, [e_squared(Q)]), 5)
    for k in (2, 3, 4):
        assert check_tertass(M, k).ok
