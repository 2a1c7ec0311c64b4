import random

import pytest

from hochdeform.cochains import (
    CochainSpace,
    delta_d,
    delta_d_operator,
    identity_cochain,
    linear_map,
    unit_embedding,
)
from hochdeform.deform import (
    DeformationSeries,
    TruncatedElement,
    check_sdgen,
    cocycle_check,
    derivations,
    exp_series,
    extend,
    extend_step,
    extract_obstruction,
    gauge_class_check,
    gauge_transform,
    obstruction,
    sdgen_residual,
)
from hochdeform.errors import PreconditionError
from hochdeform.fields import GF
from hochdeform.products import circle_s3, star_s3
from hochdeform.presets import preset_algebra


@pytest.fixture
def dual():
    return preset_algebra("dual_numbers")


def derivation(A):
    # D(1) = 0, D(e) = e
    return linear_map(A, lambda a: (0, a[1]))


def test_truncated_multiplication(dual):
    one, e = dual.basis
    x = TruncatedElement(dual, [one, e, one])
    y = TruncatedElement(dual, [one, one, e])
    # (1 + e t + t^2)(1 + t + e t^2) = 1 + (1 + e) t + (2e + 1) t^2 mod t^3
    assert (x * y).coeffs == ((1, 0), (1, 1), (1, 2))
    with pytest.raises(ValueError):
        x * TruncatedElement(dual, [one, one])


def test_undeformed_residual_vanishes(dual):
    u = DeformationSeries(dual, 3, 4)
    for d in (1, 2, 3, 4):
        assert check_sdgen(u, d=d).ok


def test_residual_arity_is_checked(dual):
    u = DeformationSeries(dual, 2, 3)
    with pytest.raises(ValueError):
        sdgen_residual(u, [dual.unit] * 2)


def test_exp_of_derivation_is_an_endomorphism(dual):
    u = exp_series(derivation(dual), 1, 5)
    rng = random.Random(0)
    for _ in range(10):
        a = dual.vector([rng.randint(-3, 3) for _ in range(2)])
        b = dual.vector([rng.randint(-3, 3) for _ in range(2)])
        assert sdgen_residual(u, [a, b]).is_zero()


@pytest.mark.parametrize("name", ["dual_numbers", "truncated_poly_3"])
def test_exp_series_passes_every_dimension(name):
    A = preset_algebra(name)
    for D in derivations(A):
        u = exp_series(D, 1, 5)
        for d in (1, 2, 3, 4):
            assert check_sdgen(u, d=d).ok


def test_three_sphere_residual_at_e111(dual):
    u = DeformationSeries(dual, 3, 4, [derivation(dual)])
    e, one = dual.basis[1], dual.basis[0]
    res = sdgen_residual(u, [e, one, one, one])
    assert not any(res.coeffs[1])
    assert res.coeffs[2] == circle_s3(dual, u.term(1), u.term(1)).value((1, 0, 0, 0)) == (0, 0)


def test_identity_is_not_an_endomorphism_to_first_order(dual):
    u = DeformationSeries(dual, 1, 3, [identity_cochain(dual)])
    res = check_sdgen(u)
    assert not res.ok
    assert res.order == 1 and res.witness == (0, 0)
    # e e = 0 kills both sides, so (e, e) is never a witness
    assert sdgen_residual(u, [dual.basis[1]] * 2).is_zero()


def test_cocycle_check_examples(dual):
    assert cocycle_check(CochainSpace(dual, 1).zero(), 3).ok
    assert cocycle_check(derivation(dual), 3).ok
    res = cocycle_check(identity_cochain(dual), 3)
    assert not res.ok
    assert dual.prod(*(dual.basis[i] for i in res.witness)) != dual.zero()


def test_obstruction_of_zero_series(dual):
    u = DeformationSeries(dual, 3, 4)
    assert obstruction(u, 1).is_zero()
    assert obstruction(u, 2).is_zero()


@pytest.mark.parametrize("name", ["dual_numbers", "truncated_poly_3", "k_x_k"])
def test_three_sphere_obstructions_match_displayed_formulas(name):
    A = preset_algebra(name)
    op = delta_d_operator(A, 3)
    rng = random.Random(name)
    sp = CochainSpace(A, 1)
    for _ in range(3):
        u1 = sp.zero()
        for v in op.kernel():
            u1 = u1 + A.field.random(rng) * v
        u = DeformationSeries(A, 3, 4, [u1])
        omega2 = obstruction(u, 1)
        assert omega2 == circle_s3(A, u1, u1)
        ext = extend_step(u, 1)
        assert ext is not None
        u2 = ext.term + sum((A.field.random(rng) * k for k in ext.gauge_freedom), sp.zero())
        u = u.with_terms([u1, u2])
        assert delta_d(3, A, u2) == omega2
        omega3 = obstruction(u, 2)
        expected = circle_s3(A, u1, u2) + circle_s3(A, u2, u1) + star_s3(A, u1, u1, u1)
        assert omega3 == expected


def test_obstruction_precondition(dual):
    u = DeformationSeries(dual, 1, 3, [identity_cochain(dual)])
    with pytest.raises(PreconditionError) as info:
        obstruction(u, 1)
    assert info.value.order == 1
    assert info.value.witness == (0, 0)


def test_extend_step_from_zero(dual):
    u = DeformationSeries(dual, 2, 3)
    ext = extend_step(u, 1)
    assert ext.term.is_zero()
    assert len(ext.gauge_freedom) == 4 - delta_d_operator(dual, 2).rank


def test_extend_derivation_on_dual_numbers(dual):
    u = DeformationSeries(dual, 1, 3, [derivation(dual)])
    ext = extend_step(u, 1)
    assert ext is not None
    v = ext.series
    assert check_sdgen(v, 3).ok
    assert v.term(1) == derivation(dual)


def test_extend_log_and_target(dual):
    u = DeformationSeries(dual, 1, 2, [derivation(dual)])
    v, log = extend(u, 4)
    assert log == [(1, "extended"), (2, "extended")]
    assert v.order == 4 and len(v.terms) == 3
    assert check_sdgen(v).ok


def test_characteristic_two_obstruction():
    A = preset_algebra("dual_numbers", GF(2))
    # D(e) = 1 + e is a derivation in characteristic 2
    D = linear_map(A, lambda a: (a[1], a[1]))
    assert cocycle_check(D, 1).ok
    u = DeformationSeries(A, 1, 3, [D])
    omega = obstruction(u, 1)
    # (1 + e)^2 = 1, while every delta_1 image vanishes at (e, e) in characteristic 2
    assert omega.value((1, 1)) == (1, 0)
    assert extend_step(u, 1) is None
    v, log = extend(u, 3)
    assert log == [(1, "obstructed")]


def test_extraction_uses_the_sign_that_makes_the_equation_hold():
    A = preset_algebra("truncated_poly_3")
    rng = random.Random(11)
    for d in (1, 2, 3, 4):
        op = delta_d_operator(A, d)
        u1 = sum((A.field.random(rng) * v for v in op.kernel()), op.source.zero())
        u = DeformationSeries(A, d, 3, [u1])
        ext = extend_step(u, 1)
        assert delta_d(d, A, ext.term) == extract_obstruction(u, 1)


def test_gauge_by_identity_is_trivial(dual):
    u = exp_series(derivation(dual), 1, 4)
    assert gauge_transform(u, []).terms == u.terms


def test_gauge_keeps_first_order(dual):
    rng = random.Random(2)
    sp = CochainSpace(dual, 1)
    u = DeformationSeries(dual, 3, 4, [sp.random(rng) for _ in range(3)])
    w = gauge_transform(u, [sp.random(rng) for _ in range(3)])
    assert w.term(1) == u.term(1)


def test_gauge_by_automorphism_preserves_endomorphisms():
    A = preset_algebra("truncated_poly_3")
    D, E = derivations(A)[0], derivations(A)[1]
    u = exp_series(D, 1, 4)
    f = exp_series(E, 1, 4)
    w = gauge_transform(u, f)
    assert check_sdgen(w).ok


def test_gauge_transform_intertwines(dual):
    rng = random.Random(8)
    sp = CochainSpace(dual, 1)
    u = DeformationSeries(dual, 2, 4, [sp.random(rng) for _ in range(3)])
    fterms = [sp.random(rng) for _ in range(3)]
    f = DeformationSeries(dual, 2, 4, fterms)
    w = gauge_transform(u, f)
    for a in dual.basis:
        # w(f(a)) = f(u(a)) as truncated series, composing coefficientwise
        fa = f.apply(a)
        lhs = [dual.zero() for _ in range(4)]
        for i, c in enumerate(fa.coeffs):
            for j in range(4 - i):
                term = c if j == 0 else w.term(j)(c)
                lhs[i + j] = tuple(x + y for x, y in zip(lhs[i + j], term))
        ua = u.apply(a)
        rhs = [dual.zero() for _ in range(4)]
        for i, c in enumerate(ua.coeffs):
            for j in range(4 - i):
                term = c if j == 0 else f.term(j)(c)
                rhs[i + j] = tuple(x + y for x, y in zip(rhs[i + j], term))
        assert lhs == rhs


def test_gauge_class_examples(dual):
    D = derivation(dual)
    assert gauge_class_check(D, D, 3)
    # d even: adding a left multiplication stays in the class
    u1 = CochainSpace(dual, 1).zero()
    assert gauge_class_check(u1, u1 + unit_embedding(dual, dual.basis[1]), 2)
    # d odd: the image of delta_{d-1} is zero
    assert not gauge_class_check(u1, u1 + D, 3)
    with pytest.raises(ValueError):
        gauge_class_check(identity_cochain(dual), u1, 3)


def test_derivations_of_presets():
    assert len(derivations(preset_algebra("dual_numbers"))) == 1
    assert len(derivations(preset_algebra("truncated_poly_3"))) == 2
    assert len(derivations(preset_algebra("k"))) == 0
    for D in derivations(preset_algebra("truncated_poly_3")):
        A = D.space.A
        for a in A.basis:
            for b in A.basis:
                assert D(A.mul(a, b)) == tuple(
                    x + y for x, y in zip(A.mul(D(a), b), A.mul(a, D(b)))
                )


def test_exp_series_needs_invertible_factorials():
    A = preset_algebra("dual_numbers", GF(3))
    with pytest.raises(ValueError):
        exp_series(derivation(A), 1, 5)


def test_checks_below_the_number_of_terms(dual):
    u = exp_series(derivation(dual), 1, 5)
    for k in (2, 3, 4):
        assert check_sdgen(u, k).ok
