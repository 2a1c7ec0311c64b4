"""Cohomology dimensions in the degrees where the coboundaries are known."""

from typing import NamedTuple

from .algebra import center, validate_quintuple
from .cochains import (
    Coboundary,
    delta_d_operator,
    delta_low_operator,
    gimel_operator,
)
from .errors import ConsistencyError, ValidationError
from .linalg import ExactMatrix, rank


class DegreeRow(NamedTuple):
    degree: int
    kernel: int
    image: int
    cohomology: int


def sphere_cohomology_report(A, d):
    """Rows ``(degree, dim Ker, dim Im of incoming map, dim H)`` for degrees ``0 .. d``.

    Degree ``n < d`` uses the low-degree maps (zero for even n, identity for
    odd n); degree ``d`` uses ``Ker(delta_d)`` modulo the image of
    ``delta_{d-1}``, which is the copy of A given by the unit embedding when d
    is even and zero when d is odd.
    """
    if not A.commutative or not A.is_commutative():
        raise ValueError(f"{A.name} must be commutative for the sphere complex")
    if d < 1:
        raise ValueError("sphere dimension must be at least 1")
    rows = []
    prev_image = 0
    for n in range(d):
        op = delta_low_operator(A, d, n)
        ker = op.source.dim - op.rank
        rows.append(DegreeRow(n, ker, prev_image, ker - prev_image))
        prev_image = op.rank
    top = delta_d_operator(A, d)
    ker = top.source.dim - top.rank
    if d % 2 == 0:
        emb = delta_low_operator(A, d, d - 1)
        if emb.rank != A.dim:
            raise ConsistencyError("unit embedding is not injective")
        if not (top.matrix() @ emb.matrix()).is_zero():
            raise ConsistencyError("unit embedding does not land in Ker(delta_d)")
    rows.append(DegreeRow(d, ker, prev_image, ker - prev_image))
    return rows


def sphere_cohomology_dims(A, d):
    """``[dim H^0, ..., dim H^d]`` of the complex over S^d with coefficients in A."""
    return [r.cohomology for r in sphere_cohomology_report(A, d)]


def expected_sphere_dims(A, d):
    """The closed form: ``dim A``, then zeros, then ``dim Ker delta_d`` (minus ``dim A`` for even d)."""
    top = delta_d_operator(A, d)
    ker = top.source.dim - top.rank
    return [A.dim] + [0] * (d - 1) + [ker - (A.dim if d % 2 == 0 else 0)]


def tertiary_cohomology_report(Q):
    """Rows for ``H^0, H^1, H^2`` of the tertiary complex with coefficients in A."""
    report = validate_quintuple(Q)
    if report:
        raise ValidationError("quintuple", report)
    rows = []
    prev_image = 0
    for n in range(3):
        op = gimel_operator(Q, n)
        ker = op.source.dim - op.rank
        rows.append(DegreeRow(n, ker, prev_image, ker - prev_image))
        prev_image = op.rank
    return rows


def tertiary_cohomology_dims(Q):
    return tuple(r.cohomology for r in tertiary_cohomology_report(Q))


def relative_derivations_dim(Q):
    """``dim Der_{B,C}(A, A)``: derivations killing ``eps(B)`` and ``eps(theta(C))``.

    Set up directly from the Leibniz rule plus B- and C-linearity on basis
    elements, without going through the tertiary coboundaries.
    """
    A = Q.A
    n = A.dim
    S = A.structure
    rows = []

    def unknown(i, k):
        # coefficient of e_k in D(e_i)
        return i * n + k

    for i in range(n):
        for j in range(n):
            eqs = [{} for _ in range(n)]
            for l in range(n):
                c = S[i][j][l]
                if c:
                    for k in range(n):
                        eqs[k][unknown(l, k)] = eqs[k].get(unknown(l, k), 0) + c
            for p in range(n):
                for k in range(n):
                    if S[p][j][k]:
                        eqs[k][unknown(i, p)] = eqs[k].get(unknown(i, p), 0) - S[p][j][k]
                    if S[i][p][k]:
                        eqs[k][unknown(j, p)] = eqs[k].get(unknown(j, p), 0) - S[i][p][k]
            rows.extend(eqs)

    def linear_over(phi, src):
        # D(phi(s) e_j) = phi(s) D(e_j) for basis s of the source and e_j of A
        for s in src.basis:
            z = phi(s)
            for j in range(n):
                zj = A.mul(z, A.basis[j])
                eqs = [{} for _ in range(n)]
                for l, c in enumerate(zj):
                    if c:
                        for k in range(n):
                            eqs[k][unknown(l, k)] = eqs[k].get(unknown(l, k), 0) + c
                for p in range(n):
                    zp = A.mul(z, A.basis[p])
                    for k, c in enumerate(zp):
                        if c:
                            eqs[k][unknown(j, p)] = eqs[k].get(unknown(j, p), 0) - c
                rows.extend(eqs)

    linear_over(Q.eps, Q.B)
    linear_over(Q.eps_theta, Q.C)
    M = ExactMatrix(A.field, len(rows), n * n, rows)
    return n * n - rank(M)


def inner_derivations_dim(A):
    """``dim Inn(A, A) = dim A - dim Z(A)``."""
    return A.dim - len(center(A))


def tertiary_h1_via_derivations(Q):
    return relative_derivations_dim(Q) - inner_derivations_dim(Q.A)


def class_membership(x, op):
    """Is the cochain ``x`` in the image of the coboundary ``op``?"""
    if not isinstance(op, Coboundary):
        raise TypeError("op must be a Coboundary")
    if x.space.signature != op.target.signature or x.space.dim != op.target.dim:
        raise ValueError(
            f"cochain of signature {x.space.signature} cannot lie in the image of {op.name}"
        )
    return op.contains(x)
