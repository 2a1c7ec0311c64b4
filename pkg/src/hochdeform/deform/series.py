"""Truncated t-series over a finite-dimensional algebra."""

from ..algebra import add, sub
from ..cochains import CochainSpace, tertiary_space


class TruncatedElement:
    """An element of ``A[[t]] / (t^N)``: ``coeffs[i]`` is the t^i coefficient."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = tuple(tuple(c) for c in coeffs)

    @classmethod
    def constant(cls, algebra, a, order):
        return cls(algebra, [a] + [algebra.zero()] * (order - 1))

    @property
    def order(self):
        return len(self.coeffs)

    def _check(self, other):
        if other.order != self.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return TruncatedElement(self.algebra, [add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return TruncatedElement(self.algebra, [sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        self._check(other)
        A, N = self.algebra, self.order
        out = [A.zero() for _ in range(N)]
        for i, x in enumerate(self.coeffs):
            if not any(x):
                continue
            for j in range(N - i):
                y = other.coeffs[j]
                if any(y):
                    out[i + j] = add(out[i + j], A.mul(x, y))
        return TruncatedElement(A, out)

    def is_zero(self):
        return not any(any(c) for c in self.coeffs)

    def first_nonzero_order(self):
        for i, c in enumerate(self.coeffs):
            if any(c):
                return i
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncatedElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"TruncatedElement(order={self.order}, {self.coeffs!r})"


class DeformationSeries:
    """``u(a) = a + u_1(a) t + ... + u_{N-1}(a) t^{N-1}`` for a sphere dimension ``d``.

    ``terms`` holds ``u_1, u_2, ...``; coefficients beyond ``len(terms)`` are
    zero.  ``u_0`` is the identity.
    """

    def __init__(self, algebra, d, order, terms=(), name="u"):
        if order < 2:
            raise ValueError("truncation order must be at least 2")
        if d < 1:
            raise ValueError("sphere dimension must be at least 1")
        terms = tuple(terms)
        if len(terms) > order - 1:
            raise ValueError(f"{len(terms)} terms do not fit below t^{order}")
        sp = CochainSpace(algebra, 1)
        for f in terms:
            if f.space.signature != (1, 0, 0) or f.space.A.dim != algebra.dim:
                raise ValueError("series terms must be (1, 0, 0) cochains over the algebra")
        self.algebra = algebra
        self.d = d
        self.order = order
        self.terms = tuple(terms)
        self.name = name
        self._space = sp

    def term(self, i):
        """``u_i`` for ``i >= 1`` (zero beyond the stored terms)."""
        if i < 1:
            raise ValueError("terms are indexed from 1")
        if i <= len(self.terms):
            return self.terms[i - 1]
        return self._space.zero()

    def apply(self, a):
        A = self.algebra
        coeffs = [a] + [self.term(i)(a) for i in range(1, self.order)]
        return TruncatedElement(A, coeffs)

    def with_terms(self, terms, order=None, d=None):
        return DeformationSeries(
            self.algebra, self.d if d is None else d, order or self.order, terms, self.name
        )

    def truncated(self, n, order):
        """Keep ``u_1 .. u_n`` only, at truncation ``order``."""
        return DeformationSeries(self.algebra, self.d, order, self.terms[:n], self.name)

    def __repr__(self):
        return f"DeformationSeries(d={self.d}, order={self.order}, terms={len(self.terms)})"


class ProductFamilySeries:
    """``m^x_{alpha,t}(a, b) = a b eps(alpha theta(x)) + sum c_i(a, b; alpha, x) t^i``."""

    def __init__(self, quintuple, order, terms=(), name="m"):
        if order < 2:
            raise ValueError("truncation order must be at least 2")
        terms = tuple(terms)
        if len(terms) > order - 1:
            raise ValueError(f"{len(terms)} terms do not fit below t^{order}")
        for c in terms:
            if c.space.signature != (2, 1, 1):
                raise ValueError("product family terms must be (2, 1, 1) cochains")
        self.quintuple = quintuple
        self.order = order
        self.terms = terms
        self.name = name
        self._space = tertiary_space(quintuple, 2, 1, 1)

    @property
    def algebra(self):
        return self.quintuple.A

    def term(self, i):
        if i < 1:
            raise ValueError("terms are indexed from 1")
        if i <= len(self.terms):
            return self.terms[i - 1]
        return self._space.zero()

    def coefficient(self, i, a, b, alpha, x):
        """t^i coefficient of ``m^x_{alpha,t}(a, b)`` at vector arguments."""
        Q = self.quintuple
        if i == 0:
            return Q.A.mul(Q.A.mul(a, b), Q.scalar(alpha, x))
        return self.term(i)(a, b, alpha, x)

    def product(self, u, v, alpha, x):
        """``m^x_{alpha,t}(u, v)`` for truncated elements ``u``, ``v``."""
        A, N = self.algebra, self.order
        out = [A.zero() for _ in range(N)]
        for i in range(N):
            for j in range(N - i):
                if not any(u.coeffs[j]):
                    continue
                for k in range(N - i - j):
                    if not any(v.coeffs[k]):
                        continue
                    out[i + j + k] = add(out[i + j + k], self.coefficient(i, u.coeffs[j], v.coeffs[k], alpha, x))
        return TruncatedElement(A, out)

    def with_terms(self, terms, order=None):
        return ProductFamilySeries(self.quintuple, order or self.order, terms, self.name)

    def truncated(self, n, order):
        return ProductFamilySeries(self.quintuple, order, self.terms[:n], self.name)

    def __repr__(self):
        return f"ProductFamilySeries(order={self.order}, terms={len(self.terms)})"
