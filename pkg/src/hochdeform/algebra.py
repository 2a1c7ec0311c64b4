"""Finite-dimensional unital algebras given by structure constants.

An algebra has a fixed basis ``e_0 .. e_{n-1}``; vectors are tuples of field
elements in that basis.  ``structure[i][j][k]`` is the coefficient of ``e_k``
in ``e_i e_j``.
"""

from itertools import product

from .linalg import ExactMatrix, kernel_basis


class FiniteAlgebra:
    """A finite-dimensional algebra over an exact field."""

    def __init__(self, field, labels, structure, unit, commutative=False, name=None):
        self.field = field
        self.labels = tuple(str(s) for s in labels)
        n = len(self.labels)
        if n == 0:
            raise ValueError("an algebra needs at least one basis element")
        if len(set(self.labels)) != n:
            raise ValueError(f"duplicate basis labels in {self.labels}")
        if len(structure) != n or any(len(row) != n for row in structure) or any(
            len(cell) != n for row in structure for cell in row
        ):
            raise ValueError(f"structure tensor must have shape ({n}, {n}, {n})")
        if len(unit) != n:
            raise ValueError(f"unit vector must have length {n}, got {len(unit)}")
        self.dim = n
        self.structure = tuple(
            tuple(tuple(field(c) for c in cell) for cell in row) for row in structure
        )
        self.unit = tuple(field(c) for c in unit)
        self.commutative = bool(commutative)
        self.name = name or "algebra"
        # sparse products: _table[i][j] = ((k, c), ...) with c != 0
        self._table = tuple(
            tuple(tuple((k, c) for k, c in enumerate(cell) if c) for cell in row)
            for row in self.structure
        )
        self.basis = tuple(self.basis_vector(i) for i in range(n))

    @classmethod
    def from_constants(cls, field, labels, constants, unit, commutative=False, name=None):
        """Build from a sparse list of ``(i, j, k, value)`` structure constants."""
        n = len(labels)
        s = [[[field.zero] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, v in constants:
            s[i][j][k] = field(v)
        return cls(field, labels, s, unit, commutative, name)

    def constants(self):
        """Nonzero structure constants as sorted ``(i, j, k, value)`` tuples."""
        return [
            (i, j, k, c)
            for i in range(self.dim)
            for j in range(self.dim)
            for k, c in self._table[i][j]
        ]

    def basis_vector(self, i):
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dim))

    def zero(self):
        return (self.field.zero,) * self.dim

    def vector(self, coords):
        coords = tuple(self.field(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return coords

    def mul(self, u, v):
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError(
                f"coordinate lengths {len(u)}, {len(v)} do not match dim {self.dim}"
            )
        out = [self.field.zero] * self.dim
        table = self._table
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = table[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                cell = row[j]
                if not cell:
                    continue
                w = ui * vj
                for k, c in cell:
                    out[k] = out[k] + w * c
        return tuple(out)

    def prod(self, *vectors):
        """Product of any number of vectors; the empty product is the unit."""
        out = self.unit
        for v in vectors:
            out = self.mul(out, v)
        return out

    def is_commutative(self):
        return all(self.structure[i][j] == self.structure[j][i] for i in range(self.dim) for j in range(i))

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, dim={self.dim}, field={self.field!r})"

    def key(self):
        return (self.field, self.labels, self.structure, self.unit, self.commutative)


def multiply(A, u, v):
    """Bilinear extension of the structure constants: ``sum u_i v_j c[i][j][.]``."""
    return A.mul(u, v)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u):
    return tuple(c * a for a in u)


def is_zero(u):
    return not any(u)


def validate_algebra(A):
    """List every violated axiom; an empty list means ``A`` is a valid algebra."""
    report = []
    e = A.basis
    for i, j, k in product(range(A.dim), repeat=3):
        left = A.mul(A.mul(e[i], e[j]), e[k])
        right = A.mul(e[i], A.mul(e[j], e[k]))
        if left != right:
            report.append(
                f"associativity fails on ({A.labels[i]}, {A.labels[j]}, {A.labels[k]})"
            )
    for i in range(A.dim):
        if A.mul(A.unit, e[i]) != e[i]:
            report.append(f"unit fails on the left for {A.labels[i]}")
        if A.mul(e[i], A.unit) != e[i]:
            report.append(f"unit fails on the right for {A.labels[i]}")
    if A.commutative:
        for i in range(A.dim):
            for j in range(i + 1, A.dim):
                if A.structure[i][j] != A.structure[j][i]:
                    report.append(
                        f"commutativity fails on ({A.labels[i]}, {A.labels[j]})"
                    )
    return report


def center(A):
    """Basis of the center, as the kernel of ``z -> (z e_j - e_j z)_j``."""
    n = A.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append({i: A.structure[i][j][k] - A.structure[j][i][k] for i in range(n)})
    M = ExactMatrix(A.field, n * n, n, rows)
    return kernel_basis(M)


def is_central(A, z):
    return all(A.mul(z, e) == A.mul(e, z) for e in A.basis)


class AlgebraMorphism:
    """A linear map between algebras, stored as a ``target.dim x source.dim`` matrix."""

    def __init__(self, source, target, matrix, name=None):
        if not isinstance(matrix, ExactMatrix):
            matrix = ExactMatrix.from_rows(target.field, matrix, ncols=source.dim)
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(
                f"morphism matrix has shape {matrix.shape}, expected ({target.dim}, {source.dim})"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        self.name = name

    def __call__(self, v):
        return self.matrix.matvec(v)

    def compose(self, inner):
        """``self o inner``."""
        if inner.target is not self.source and inner.target.key() != self.source.key():
            raise ValueError("cannot compose: target of inner map is not the source")
        return AlgebraMorphism(inner.source, self.target, self.matrix @ inner.matrix)

    def __repr__(self):
        return f"AlgebraMorphism({self.source.name} -> {self.target.name})"


def validate_morphism(phi, label="morphism"):
    report = []
    S, T = phi.source, phi.target
    for i in range(S.dim):
        for j in range(S.dim):
            lhs = phi(S.mul(S.basis[i], S.basis[j]))
            rhs = T.mul(phi(S.basis[i]), phi(S.basis[j]))
            if lhs != rhs:
                report.append(
                    f"{label} is not multiplicative on ({S.labels[i]}, {S.labels[j]})"
                )
    if phi(S.unit) != T.unit:
        report.append(f"{label} is not unital")
    return report


def identity_morphism(A, name=None):
    return AlgebraMorphism(A, A, ExactMatrix.identity(A.field, A.dim), name)


def unit_morphism(K, A, name=None):
    """The structure map from a one-dimensional algebra ``K`` (the ground field) to ``A``."""
    if K.dim != 1:
        raise ValueError("unit morphism needs a one-dimensional source")
    return AlgebraMorphism(K, A, ExactMatrix.from_rows(A.field, [[c] for c in A.unit], ncols=1), name)


class Quintuple:
    """``(A, B, C, eps, theta)`` with ``eps: B -> A`` and ``theta: C -> B``."""

    def __init__(self, A, B, C, eps, theta, name=None):
        if eps.source.dim != B.dim or eps.target.dim != A.dim:
            raise ValueError(
                f"eps has shape {eps.matrix.shape}, expected ({A.dim}, {B.dim})"
            )
        if theta.source.dim != C.dim or theta.target.dim != B.dim:
            raise ValueError(
                f"theta has shape {theta.matrix.shape}, expected ({B.dim}, {C.dim})"
            )
        self.A, self.B, self.C = A, B, C
        self.eps = eps
        self.theta = theta
        self.name = name or "quintuple"
        self.field = A.field
        self._cache = {}

    @property
    def eps_theta(self):
        """The induced C-algebra structure map ``eps o theta: C -> A``."""
        if "eps_theta" not in self._cache:
            self._cache["eps_theta"] = self.eps.compose(self.theta)
        return self._cache["eps_theta"]

    def scalar(self, alpha, x):
        """``eps(alpha theta(x))`` for ``alpha`` in B, ``x`` in C."""
        return self.eps(self.B.mul(alpha, self.theta(x)))

    def __repr__(self):
        return f"Quintuple({self.name!r}: A={self.A.name}, B={self.B.name}, C={self.C.name})"


def validate_quintuple(Q):
    """Check every quintuple axiom; an empty report means ``Q`` is a quintuple."""
    report = []
    for label, alg in (("A", Q.A), ("B", Q.B), ("C", Q.C)):
        report += [f"{label}: {msg}" for msg in validate_algebra(alg)]
    for label, alg in (("B", Q.B), ("C", Q.C)):
        if not alg.commutative:
            report.append(f"{label} is not flagged commutative")
        if not alg.is_commutative():
            report.append(f"{label} is not commutative")
    report += validate_morphism(Q.eps, "eps")
    report += validate_morphism(Q.theta, "theta")
    for i in range(Q.B.dim):
        z = Q.eps(Q.B.basis[i])
        for j in range(Q.A.dim):
            a = Q.A.basis[j]
            if Q.A.mul(z, a) != Q.A.mul(a, z):
                report.append(
                    f"eps({Q.B.labels[i]}) does not commute with {Q.A.labels[j]}"
                )
    return report
