import pytest

from hochdeform.algebra import (
    AlgebraMorphism,
    FiniteAlgebra,
    Quintuple,
    center,
    identity_morphism,
    multiply,
    unit_morphism,
    validate_algebra,
    validate_morphism,
    validate_quintuple,
)
from hochdeform.fields import GF, QQ
from hochdeform.linalg import matrix_from_columns, rank
from hochdeform.presets import (
    ALGEBRA_PRESETS,
    preset_algebra,
    preset_quintuple,
    trivial_quintuple,
)

QUINTUPLES = ["trivial:k", "trivial", "dual_embed", "dual_identity", "ut2_dual", "trivial:upper_triangular_2"]


@pytest.mark.parametrize("name", ALGEBRA_PRESETS)
@pytest.mark.parametrize("field", [QQ, GF(3)])
def test_presets_are_valid(name, field):
    A = preset_algebra(name, field)
    assert validate_algebra(A) == []
    # the unit is always central: adding it to a center basis does not raise the rank
    Z = center(A)
    assert rank(matrix_from_columns(field, Z + [A.unit], A.dim)) == len(Z)


def test_field_as_algebra():
    k = preset_algebra("k")
    assert k.dim == 1 and validate_algebra(k) == []
    assert center(k) == [k.unit]


def test_dual_numbers():
    A = preset_algebra("dual_numbers")
    assert A.dim == 2 and A.commutative and validate_algebra(A) == []
    one, e = A.basis
    assert multiply(A, e, e) == A.zero()
    assert multiply(A, A.unit, (QQ(3), QQ(5))) == (3, 5)
    assert multiply(A, A.vector((1, 1)), A.vector((1, -1))) == A.unit


def test_misdeclared_unit_is_reported():
    # e*e = 1 + e, unit wrongly declared as e
    s = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    A = FiniteAlgebra(QQ, ["1", "e"], s, [0, 1], commutative=True)
    report = validate_algebra(A)
    assert any("unit fails" in r for r in report)


def test_nonassociative_table_is_reported():
    # x*x = y, everything else zero except the unit: (x x) x = y x = 0 but x (x x) = x y = 1
    s = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        s[0][i][i] = s[i][0][i] = 1
    s[1][1][2] = 1
    s[1][2][0] = 1
    A = FiniteAlgebra(QQ, ["1", "x", "y"], s, [1, 0, 0])
    assert any("associativity" in r for r in validate_algebra(A))


def test_false_commutativity_flag_is_reported():
    M2 = preset_algebra("matrix_2")
    A = FiniteAlgebra(QQ, M2.labels, M2.structure, M2.unit, commutative=True, name="m2")
    assert any("commutativity" in r for r in validate_algebra(A))


def test_malformed_tensor_is_an_error():
    with pytest.raises(ValueError):
        FiniteAlgebra(QQ, ["1", "e"], [[[1, 0]]], [1, 0])
    with pytest.raises(ValueError):
        FiniteAlgebra(QQ, ["1"], [[[1]]], [1, 0])


def test_multiply_checks_lengths():
    A = preset_algebra("dual_numbers")
    with pytest.raises(ValueError):
        A.mul((1, 0, 0), (1, 0))


def test_centers():
    dims = {"k": 1, "dual_numbers": 2, "truncated_poly_3": 3, "k_x_k": 2,
            "group_z2": 2, "upper_triangular_2": 1, "matrix_2": 1}
    for name, dim in dims.items():
        assert len(center(preset_algebra(name))) == dim, name
    (z,) = center(preset_algebra("upper_triangular_2"))
    # scalar matrices: E11 and E22 coefficients equal, E12 coefficient zero
    assert z[1] == 0 and z[0] == z[2] != 0


@pytest.mark.parametrize("name", QUINTUPLES)
def test_quintuple_presets_are_valid(name):
    Q = preset_quintuple(name)
    assert validate_quintuple(Q) == []
    # eps o theta is again a unital multiplicative map
    assert validate_morphism(Q.eps_theta) == []


def test_usual_degeneration_is_a_quintuple():
    for name in ("k", "dual_numbers", "upper_triangular_2", "matrix_2"):
        assert validate_quintuple(trivial_quintuple(preset_algebra(name))) == []


def test_noncommutative_b_is_rejected():
    A = preset_algebra("matrix_2")
    K = preset_algebra("k")
    Q = Quintuple(A, A, K, identity_morphism(A), unit_morphism(K, A))
    report = validate_quintuple(Q)
    assert any("B is not" in r for r in report)


def test_noncentral_eps_is_rejected():
    A = preset_algebra("upper_triangular_2")
    B = preset_algebra("dual_numbers")
    # e -> E12 is multiplicative and unital but E12 is not central
    eps = AlgebraMorphism(B, A, [[1, 0], [0, 1], [1, 0]])
    assert validate_morphism(eps) == []
    Q = Quintuple(A, B, B, eps, identity_morphism(B))
    assert any("does not commute" in r for r in validate_quintuple(Q))


def test_nonmultiplicative_morphism_is_reported():
    A = preset_algebra("dual_numbers")
    phi = AlgebraMorphism(A, A, [[1, 1], [0, 1]])
    assert any("not multiplicative" in r for r in validate_morphism(phi))
    psi = AlgebraMorphism(A, A, [[0, 0], [0, 1]])
    assert any("not unital" in r for r in validate_morphism(psi))


def test_morphism_shape_is_checked():
    A = preset_algebra("dual_numbers")
    with pytest.raises(ValueError):
        AlgebraMorphism(A, A, [[1, 0, 0], [0, 1, 0]])


def test_unknown_presets():
    with pytest.raises(KeyError):
        preset_algebra("octonions")
    with pytest.raises(KeyError):
        preset_quintuple("nothing")


def test_aliases():
    assert preset_algebra("k[x]/(x^3)").dim == 3
    assert preset_algebra("ut2").name == "upper_triangular_2"
