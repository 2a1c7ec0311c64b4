"""Shipped algebra and quintuple presets."""

from .algebra import (
    AlgebraMorphism,
    FiniteAlgebra,
    Quintuple,
    identity_morphism,
    unit_morphism,
)
from .fields import QQ

ALGEBRA_PRESETS = (
    "k",
    "dual_numbers",
    "truncated_poly_3",
    "k_x_k",
    "group_z2",
    "upper_triangular_2",
    "matrix_2",
)

_ALIASES = {
    "k[x]/(x^3)": "truncated_poly_3",
    "k[x]/(x3)": "truncated_poly_3",
    "kxk": "k_x_k",
    "k*k": "k_x_k",
    "k[Z2]": "group_z2",
    "ut2": "upper_triangular_2",
}

QUINTUPLE_PRESETS = ("trivial:<algebra>", "dual_embed", "dual_identity", "ut2_dual")


def _k(F):
    return FiniteAlgebra.from_constants(F, ["1"], [(0, 0, 0, 1)], [1], True, "k")


def _dual(F):
    c = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]
    return FiniteAlgebra.from_constants(F, ["1", "e"], c, [1, 0], True, "dual_numbers")


def _trunc3(F):
    c = [(i, j, i + j, 1) for i in range(3) for j in range(3) if i + j < 3]
    return FiniteAlgebra.from_constants(F, ["1", "x", "x2"], c, [1, 0, 0], True, "truncated_poly_3")


def _kxk(F):
    c = [(0, 0, 0, 1), (1, 1, 1, 1)]
    return FiniteAlgebra.from_constants(F, ["e1", "e2"], c, [1, 1], True, "k_x_k")


def _z2(F):
    c = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)]
    return FiniteAlgebra.from_constants(F, ["1", "g"], c, [1, 0], True, "group_z2")


def _matrix_units(F, units, name):
    # units: list of (row, col) pairs spanning a subalgebra of 2x2 matrices
    index = {u: n for n, u in enumerate(units)}
    c = []
    for (i, j), a in index.items():
        for (k, l), b in index.items():
            if j == k:
                c.append((a, b, index[(i, l)], 1))
    unit = [1 if i == j else 0 for i, j in units]
    labels = [f"E{i + 1}{j + 1}" for i, j in units]
    return FiniteAlgebra.from_constants(F, labels, c, unit, False, name)


def _ut2(F):
    return _matrix_units(F, [(0, 0), (0, 1), (1, 1)], "upper_triangular_2")


def _m2(F):
    return _matrix_units(F, [(0, 0), (0, 1), (1, 0), (1, 1)], "matrix_2")


_BUILDERS = {
    "k": _k,
    "dual_numbers": _dual,
    "truncated_poly_3": _trunc3,
    "k_x_k": _kxk,
    "group_z2": _z2,
    "upper_triangular_2": _ut2,
    "matrix_2": _m2,
}


def preset_algebra(name, field=QQ):
    key = _ALIASES.get(name, name)
    if key not in _BUILDERS:
        raise KeyError(f"unknown algebra preset {name!r}; known: {', '.join(ALGEBRA_PRESETS)}")
    return _BUILDERS[key](field)


def trivial_quintuple(A, name=None):
    """``B = C = k`` with the unit maps: tertiary cohomology becomes the usual one."""
    K = _k(A.field)
    eps = unit_morphism(K, A, "eps")
    theta = identity_morphism(K, "theta")
    return Quintuple(A, K, K, eps, theta, name or f"trivial:{A.name}")


def secondary_quintuple(A, B, eps, name=None):
    """``C = k`` with ``theta`` the unit map of B."""
    K = _k(A.field)
    theta = unit_morphism(K, B, "theta")
    return Quintuple(A, B, K, eps, theta, name or f"secondary:{A.name}")


def preset_quintuple(name, field=QQ):
    if name.startswith("trivial:"):
        return trivial_quintuple(preset_algebra(name.split(":", 1)[1], field))
    if name == "trivial":
        return trivial_quintuple(preset_algebra("dual_numbers", field))
    if name == "dual_embed":
        # B = dual numbers embedded in k[x]/(x^3) by e -> x^2
        A = _trunc3(field)
        B = _dual(field)
        eps = AlgebraMorphism(B, A, [[1, 0], [0, 0], [0, 1]], "eps")
        return secondary_quintuple(A, B, eps, name)
    if name == "dual_identity":
        A = _dual(field)
        return Quintuple(A, A, A, identity_morphism(A, "eps"), identity_morphism(A, "theta"), name)
    if name == "ut2_dual":
        # eps kills e, so it lands in the (scalar) center of the upper-triangular algebra
        A = _ut2(field)
        B = _dual(field)
        eps = AlgebraMorphism(B, A, [[1, 0], [0, 0], [1, 0]], "eps")
        return Quintuple(A, B, B, eps, identity_morphism(B, "theta"), name)
    raise KeyError(
        f"unknown quintuple preset {name!r}; known: {', '.join(QUINTUPLE_PRESETS)}"
    )
