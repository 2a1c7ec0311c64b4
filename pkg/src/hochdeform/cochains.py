"""Cochains as coefficient tensors, and the coboundary operators on them.

A cochain of signature ``(p, q, r)`` is a multilinear map
``A^p x B^q x C^r -> A``.  It is stored densely: basis tuples are enumerated
row-major (A-factors first, then B, then C, first factor slowest) and the
value on each tuple is an A-vector, so the flat coordinate of
``(tuple, k)`` is ``tuple_index * dim A + k``.  Every matrix and file in the
package uses this order.

Each coboundary is written once, as an ordinary function of a cochain.  The
matrix of the operator is obtained by running the same function on a cochain
whose coordinates are symbolic linear forms (:class:`LinForm`).
"""

from itertools import product
from math import prod

from .algebra import add, sub
from .linalg import ExactMatrix, kernel_basis


class CochainSpace:
    """Multilinear maps ``A^p x B^q x C^r -> A`` for fixed algebras."""

    def __init__(self, A, p, q=0, r=0, B=None, C=None):
        if (q and B is None) or (r and C is None):
            raise ValueError("B- or C-slots need the corresponding algebra")
        self.A, self.B, self.C = A, B, C
        self.p, self.q, self.r = p, q, r
        self.field = A.field
        self.factors = (A,) * p + (B,) * q + (C,) * r
        self.shape = tuple(F.dim for F in self.factors)
        self.ntuples = prod(self.shape)
        self.dim = self.ntuples * A.dim
        strides = []
        s = 1
        for n in reversed(self.shape):
            strides.append(s)
            s *= n
        self._strides = tuple(reversed(strides))

    @property
    def signature(self):
        return (self.p, self.q, self.r)

    @property
    def arity(self):
        return len(self.shape)

    def tuples(self):
        return product(*(range(n) for n in self.shape))

    def index(self, tup):
        if len(tup) != self.arity:
            raise ValueError(f"expected a {self.arity}-tuple, got {tup!r}")
        i = 0
        for t, s, n in zip(tup, self._strides, self.shape):
            if not 0 <= t < n:
                raise ValueError(f"basis index {t} out of range in {tup!r}")
            i += t * s
        return i

    def basis_args(self, tup):
        return tuple(F.basis[i] for F, i in zip(self.factors, tup))

    def label(self, tup):
        return "(" + ", ".join(F.labels[i] for F, i in zip(self.factors, tup)) + ")"

    def key(self):
        return (
            id(self.A),
            id(self.B) if self.q else None,
            id(self.C) if self.r else None,
            self.signature,
        )

    def __eq__(self, other):
        if not isinstance(other, CochainSpace):
            return NotImplemented
        if self.signature != other.signature or self.A.key() != other.A.key():
            return False
        if self.q and self.B.key() != other.B.key():
            return False
        if self.r and self.C.key() != other.C.key():
            return False
        return True

    def __hash__(self):
        return hash((self.signature, self.A.labels))

    def __repr__(self):
        return f"CochainSpace{self.signature} over {self.A.name}"

    def zero(self):
        return Cochain(self, (self.field.zero,) * self.dim)

    def from_function(self, fn):
        """Cochain whose value on each basis tuple is ``fn(tuple)``."""
        coords = []
        for tup in self.tuples():
            v = fn(tup)
            if len(v) != self.A.dim:
                raise ValueError(f"value on {tup} has length {len(v)}")
            coords.extend(v)
        return Cochain(self, tuple(coords))

    def from_values(self, values):
        """Cochain from a ``{basis tuple: A-vector}`` mapping; missing tuples are zero."""
        coords = [self.field.zero] * self.dim
        n = self.A.dim
        for tup, v in values.items():
            if len(v) != n:
                raise ValueError(f"value on {tup} has length {len(v)}")
            base = self.index(tuple(tup)) * n
            for k, c in enumerate(v):
                coords[base + k] = self.field(c)
        return Cochain(self, tuple(coords))

    def from_vector(self, coords):
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return Cochain(self, tuple(self.field(c) for c in coords))

    def random(self, rng):
        return Cochain(self, tuple(self.field.random(rng) for _ in range(self.dim)))


class Cochain:
    """A multilinear map stored by its values on basis tuples."""

    __slots__ = ("space", "coords")

    def __init__(self, space, coords):
        if len(coords) != space.dim:
            raise ValueError(f"expected {space.dim} coordinates, got {len(coords)}")
        self.space = space
        self.coords = tuple(coords)

    @property
    def signature(self):
        return self.space.signature

    def value(self, tup):
        n = self.space.A.dim
        base = self.space.index(tuple(tup)) * n
        return self.coords[base:base + n]

    def items(self):
        """``(basis tuple, A-vector)`` pairs in enumeration order."""
        n = self.space.A.dim
        for idx, tup in enumerate(self.space.tuples()):
            yield tup, self.coords[idx * n:(idx + 1) * n]

    def __call__(self, *args):
        """Multilinear extension of the stored values."""
        sp = self.space
        if len(args) != sp.arity:
            raise ValueError(f"cochain of signature {sp.signature} takes {sp.arity} arguments")
        terms = [(0, None)]
        for vec, n, stride in zip(args, sp.shape, sp._strides):
            if len(vec) != n:
                raise ValueError(f"argument of length {len(vec)} where {n} expected")
            terms = [
                (i + j * stride, c if w is None else w * c)
                for i, w in terms
                for j, c in enumerate(vec)
                if c
            ]
        n = sp.A.dim
        out = [sp.field.zero] * n
        coords = self.coords
        for i, w in terms:
            base = i * n
            for k in range(n):
                val = coords[base + k]
                if val:
                    out[k] = out[k] + (val if w is None else w * val)
        return tuple(out)

    def __add__(self, other):
        self._check(other)
        return Cochain(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return Cochain(self.space, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Cochain(self.space, tuple(-a for a in self.coords))

    def __rmul__(self, c):
        return Cochain(self.space, tuple(c * a for a in self.coords))

    def _check(self, other):
        if not isinstance(other, Cochain) or other.space.signature != self.space.signature or other.space.dim != self.space.dim:
            raise ValueError("cochains live in different spaces")

    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.space.signature == other.space.signature and self.coords == other.coords

    __hash__ = None

    def first_nonzero(self):
        """First basis tuple (in enumeration order) with a nonzero value, or ``None``."""
        for tup, v in self.items():
            if any(v):
                return tup
        return None

    def __repr__(self):
        return f"Cochain{self.signature}(nnz={sum(1 for c in self.coords if c)})"


def element_space(A):
    """Signature ``(0, 0, 0)``: a single value, i.e. an element of A."""
    return CochainSpace(A, 0)


def as_element(A, m):
    return element_space(A).from_vector(m)


def linear_map(A, fn):
    """The ``(1, 0, 0)`` cochain ``a -> fn(a)`` defined on basis vectors."""
    sp = CochainSpace(A, 1)
    return sp.from_function(lambda t: fn(A.basis[t[0]]))


def identity_cochain(A):
    return linear_map(A, lambda a: a)


def map_matrix(f):
    """``dim x dim`` matrix (list of rows) of a ``(1, 0, 0)`` cochain."""
    A = f.space.A
    cols = [f.value((i,)) for i in range(A.dim)]
    return [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]


def cochain_from_matrix(A, rows):
    return CochainSpace(A, 1).from_function(lambda t: tuple(rows[k][t[0]] for k in range(A.dim)))


# --------------------------------------------------------------------------
# symbolic coordinates


class LinForm:
    """A sparse linear form ``{column: coefficient}`` used for matrix assembly."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms

    def __add__(self, other):
        if isinstance(other, LinForm):
            t = dict(self.terms)
            for k, v in other.terms.items():
                nv = t.get(k, 0) + v
                if nv:
                    t[k] = nv
                else:
                    t.pop(k, None)
            return LinForm(t)
        if other == 0:
            return self
        raise TypeError("affine term in a linear operator")

    __radd__ = __add__

    def __neg__(self):
        return LinForm({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, LinForm):
            raise TypeError("product of two linear forms is not linear")
        if not c:
            return LinForm({})
        return LinForm({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LinForm):
            return self.terms == other.terms
        return not self.terms and other == 0

    __hash__ = None


def _symbolic(space):
    one = space.field.one
    return Cochain(space, tuple(LinForm({j: one}) for j in range(space.dim)))


class Coboundary:
    """A linear operator between two cochain spaces.

    ``fn`` maps a source cochain to a target cochain using only arithmetic
    and cochain evaluation, which is what lets :meth:`matrix` run it
    symbolically.
    """

    def __init__(self, name, source, target, fn):
        self.name = name
        self.source = source
        self.target = target
        self._fn = fn
        self._matrix = None

    def __call__(self, f):
        if f.space.signature != self.source.signature or f.space.dim != self.source.dim:
            raise ValueError(
                f"{self.name} expects a cochain of signature {self.source.signature}, "
                f"got {f.space.signature}"
            )
        out = self._fn(f)
        return Cochain(self.target, out.coords)

    def matrix(self):
        """Matrix acting on flattened coordinates (rows: target, columns: source)."""
        if self._matrix is None:
            out = self._fn(_symbolic(self.source))
            rows = []
            for c in out.coords:
                if isinstance(c, LinForm):
                    rows.append(c.terms)
                elif c:
                    raise TypeError(f"{self.name} is not linear")
                else:
                    rows.append({})
            self._matrix = ExactMatrix(self.source.field, self.target.dim, self.source.dim, rows)
        return self._matrix

    @property
    def rank(self):
        return self.matrix().reduction.rank

    def kernel(self):
        return [Cochain(self.source, v) for v in kernel_basis(self.matrix())]

    def solve(self, x):
        """Canonical preimage of ``x`` (free variables zero), or ``None``."""
        v = self.matrix().reduction.particular(x.coords)
        return None if v is None else Cochain(self.source, v)

    def contains(self, x):
        return self.solve(x) is not None

    def __repr__(self):
        return f"Coboundary({self.name}: {self.source.signature} -> {self.target.signature})"


def _cached(holder, key, build):
    cache = holder.__dict__.setdefault("_op_cache", {})
    if key not in cache:
        cache[key] = build()
    return cache[key]


def _require_commutative(A):
    if not A.commutative or not A.is_commutative():
        raise ValueError(f"{A.name} must be commutative for the sphere complex")


# --------------------------------------------------------------------------
# the sphere complex, coefficients in A


def _delta_d_fn(A, d, target):
    mul, P = A.mul, A.prod
    sign = -1 if d % 2 == 0 else 1  # (-1)^(d+1)

    def fn(f):
        def value(tup):
            a = [A.basis[i] for i in tup]
            acc = mul(P(*a[:d]), f(a[d]))
            for i in range(1, d + 1):
                # pair (a_{d+1-i}, a_{d+2-i}) is a[d-i], a[d+1-i] zero-based
                inner = f(mul(a[d - i], a[d + 1 - i]))
                term = mul(mul(P(*a[:d - i]), inner), P(*a[d + 2 - i:]))
                acc = add(acc, term) if i % 2 == 0 else sub(acc, term)
            last = mul(f(a[0]), P(*a[1:]))
            acc = add(acc, last) if sign > 0 else sub(acc, last)
            return acc

        return target.from_function(value)

    return fn


def delta_d_operator(A, d):
    """The coboundary ``Hom(A, A) -> Hom(A^{d+1}, A)`` of the complex over S^d."""
    if d < 1:
        raise ValueError("sphere dimension must be at least 1")
    _require_commutative(A)

    def build():
        src, tgt = CochainSpace(A, 1), CochainSpace(A, d + 1)
        return Coboundary(f"delta_{d}", src, tgt, _delta_d_fn(A, d, tgt))

    return _cached(A, ("delta_d", d), build)


def delta_d(d, A, f):
    return delta_d_operator(A, d)(f)


def delta_3_explicit(A, f):
    """``abc f(d) - ab f(cd) + a f(bc) d - f(ab) cd + f(a) bcd``, written out."""
    _require_commutative(A)
    m = A.mul
    tgt = CochainSpace(A, 4)

    def value(tup):
        a, b, c, d = (A.basis[i] for i in tup)
        acc = m(m(m(a, b), c), f(d))
        acc = sub(acc, m(m(a, b), f(m(c, d))))
        acc = add(acc, m(m(a, f(m(b, c))), d))
        acc = sub(acc, m(f(m(a, b)), m(c, d)))
        acc = add(acc, m(f(a), m(m(b, c), d)))
        return acc

    return tgt.from_function(value)


def unit_embedding(A, m):
    """``a -> a m`` as a ``(1, 0, 0)`` cochain."""
    return linear_map(A, lambda a: A.mul(a, m))


def delta_low_operator(A, d, n):
    """``delta_n`` for ``0 <= n <= d - 1``: zero for even n, the identity for odd n.

    At ``n = d - 1`` the target is ``Hom(A, A)`` and the identity is realised
    as the unit embedding ``m -> (a -> a m)``.
    """
    if not 0 <= n <= d - 1:
        raise ValueError(f"low-degree coboundary needs 0 <= n <= d-1, got n={n}, d={d}")

    def build():
        src = element_space(A)
        tgt = CochainSpace(A, 1) if n == d - 1 else element_space(A)
        if n % 2 == 0:
            fn = lambda f: tgt.zero()  # noqa: E731
        elif n < d - 1:
            fn = lambda f: Cochain(tgt, f.coords)  # noqa: E731
        else:
            fn = lambda f: unit_embedding(A, f.coords)  # noqa: E731
        return Coboundary(f"delta_{n}", src, tgt, fn)

    return _cached(A, ("delta_low", d, n), build)


def delta_low(d, n, m, A):
    """Apply ``delta_n`` to the element ``m``; returns an A-vector or a cochain."""
    out = delta_low_operator(A, d, n)(as_element(A, m))
    return out if n == d - 1 else out.coords


# --------------------------------------------------------------------------
# the tertiary complex of a quintuple, coefficients in A


def tertiary_space(Q, p, q, r):
    return CochainSpace(Q.A, p, q, r, Q.B, Q.C)


def gimel_operator(Q, n):
    """``gimel^n`` for ``n = 0, 1, 2``."""
    if n not in (0, 1, 2):
        raise ValueError("only gimel^0, gimel^1 and gimel^2 are available")

    def build():
        A, B, C = Q.A, Q.B, Q.C
        m = A.mul
        if n == 0:
            src, tgt = tertiary_space(Q, 0, 0, 0), tertiary_space(Q, 1, 0, 0)

            def fn(f):
                u = f.coords
                return tgt.from_function(lambda t: sub(m(A.basis[t[0]], u), m(u, A.basis[t[0]])))

        elif n == 1:
            src, tgt = tertiary_space(Q, 1, 0, 0), tertiary_space(Q, 2, 1, 1)

            def fn(f):
                def value(t):
                    a, b, alpha, x = tgt.basis_args(t)
                    s = Q.scalar(alpha, x)
                    acc = m(m(a, s), f(b))
                    acc = sub(acc, f(m(m(a, b), s)))
                    return add(acc, m(m(f(a), b), s))

                return tgt.from_function(value)

        else:
            src, tgt = tertiary_space(Q, 2, 1, 1), tertiary_space(Q, 3, 3, 4)
            Bm, Cm, th, eps = B.mul, C.mul, Q.theta, Q.eps

            def fn(f):
                def value(t):
                    a, b, c, al, be, ga, x, y, z, w = tgt.basis_args(t)
                    xy = Cm(x, y)
                    albe = Bm(al, be)
                    bega = Bm(be, ga)
                    yzw = Cm(Cm(y, z), w)
                    acc = m(m(a, eps(Bm(albe, th(Cm(xy, z))))), f(b, c, ga, w))
                    acc = sub(acc, f(m(m(a, b), Q.scalar(al, x)), c, bega, yzw))
                    acc = add(acc, f(a, m(m(b, c), Q.scalar(ga, w)), Bm(albe, th(z)), xy))
                    return sub(acc, m(m(f(a, b, al, x), c), Q.scalar(bega, yzw)))

                return tgt.from_function(value)

        return Coboundary(f"gimel^{n}", src, tgt, fn)

    return _cached(Q, ("gimel", n), build)


def gimel0(Q, m):
    return gimel_operator(Q, 0)(as_tertiary_element(Q, m))


def gimel1(Q, f):
    return gimel_operator(Q, 1)(f)


def gimel2(Q, f):
    return gimel_operator(Q, 2)(f)


def as_tertiary_element(Q, m):
    return tertiary_space(Q, 0, 0, 0).from_vector(m)


def trivial_product(Q):
    """``(a, b, alpha, x) -> a b eps(alpha theta(x))``, the undeformed product family."""
    sp = tertiary_space(Q, 2, 1, 1)

    def value(t):
        a, b, alpha, x = sp.basis_args(t)
        return Q.A.mul(Q.A.mul(a, b), Q.scalar(alpha, x))

    return sp.from_function(value)


# --------------------------------------------------------------------------
# classical and secondary Hochschild coboundaries, for reduction checks


def hochschild_operator(A, n):
    """Classical Hochschild coboundary ``Hom(A^n, A) -> Hom(A^{n+1}, A)`` for n = 0, 1, 2."""
    if n not in (0, 1, 2):
        raise ValueError("only the classical delta^0, delta^1, delta^2 are available")

    def build():
        m = A.mul
        src, tgt = CochainSpace(A, n), CochainSpace(A, n + 1)

        def fn(f):
            def value(t):
                args = tgt.basis_args(t)
                if n == 0:
                    (a,) = args
                    return sub(m(a, f.coords), m(f.coords, a))
                if n == 1:
                    a, b = args
                    return add(sub(m(a, f(b)), f(m(a, b))), m(f(a), b))
                a, b, c = args
                acc = sub(m(a, f(b, c)), f(m(a, b), c))
                return sub(add(acc, f(a, m(b, c))), m(f(a, b), c))

            return tgt.from_function(value)

        return Coboundary(f"hochschild^{n}", src, tgt, fn)

    return _cached(A, ("hochschild", n), build)


def secondary_operator(A, B, eps, n):
    """Coboundaries of the complex with B-slots only (``n = 1, 2``).

    ``delta^1(f)(a, b; alpha) = a eps(alpha) f(b) - f(a b eps(alpha)) + f(a) b eps(alpha)``

    ``delta^2(f)(a, b, c; alpha, beta, gamma) = a eps(alpha beta) f(b, c; gamma)
    - f(a b eps(alpha), c; beta gamma) + f(a, b c eps(gamma); alpha beta)
    - f(a, b; alpha) c eps(beta gamma)``
    """
    if n not in (1, 2):
        raise ValueError("only secondary delta^1 and delta^2 are available")

    def build():
        m, Bm = A.mul, B.mul
        if n == 1:
            src, tgt = CochainSpace(A, 1), CochainSpace(A, 2, 1, B=B)

            def value_fn(f):
                def value(t):
                    a, b, al = tgt.basis_args(t)
                    s = eps(al)
                    return add(sub(m(m(a, s), f(b)), f(m(m(a, b), s))), m(m(f(a), b), s))
                return value
        else:
            src, tgt = CochainSpace(A, 2, 1, B=B), CochainSpace(A, 3, 3, B=B)

            def value_fn(f):
                def value(t):
                    a, b, c, al, be, ga = tgt.basis_args(t)
                    acc = m(m(a, eps(Bm(al, be))), f(b, c, ga))
                    acc = sub(acc, f(m(m(a, b), eps(al)), c, Bm(be, ga)))
                    acc = add(acc, f(a, m(m(b, c), eps(ga)), Bm(al, be)))
                    return sub(acc, m(m(f(a, b, al), c), eps(Bm(be, ga))))
                return value

        return Coboundary(
            f"secondary^{n}", src, tgt, lambda f: tgt.from_function(value_fn(f))
        )

    return _cached(A, ("secondary", id(B), id(eps), n), build)
