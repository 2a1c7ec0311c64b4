"""Deformations ``u = id + u_1 t + u_2 t^2 + ...`` controlled by the S^d complex.

The generalized associativity condition is evaluated directly by multiplying
truncated series (:func:`sdgen_residual`); that is the oracle every other
routine here is checked against.
"""

from itertools import product
from math import factorial
from typing import NamedTuple, Optional

from ..cochains import (
    Cochain,
    CochainSpace,
    _require_commutative,
    cochain_from_matrix,
    delta_d_operator,
    delta_low_operator,
    map_matrix,
)
from ..errors import ConsistencyError, PreconditionError
from ..products import (
    circle_general,
    circle_s3,
    compositions,
    max_product_arity,
    sphere_factor_groups,
    star_s3,
)
from .series import DeformationSeries, TruncatedElement


class CheckResult(NamedTuple):
    ok: bool
    order: Optional[int] = None
    witness: Optional[tuple] = None


class Extension(NamedTuple):
    series: object
    term: Cochain
    gauge_freedom: list


def sdgen_residual(u, args, d=None):
    """LHS - RHS of the generalized associativity condition, as a truncated series."""
    d = u.d if d is None else d
    A = u.algebra
    if len(args) != d + 1:
        raise ValueError(f"the condition for d={d} takes {d + 1} arguments, got {len(args)}")
    lhs, rhs = sphere_factor_groups(d)

    def side(groups):
        acc = TruncatedElement.constant(A, A.unit, u.order)
        for grp in groups:
            acc = acc * u.apply(A.prod(*(args[i] for i in grp)))
        return acc

    return side(lhs) - side(rhs)


def _basis_tuples(A, d):
    return product(range(A.dim), repeat=d + 1)


def check_sdgen(u, order=None, d=None):
    """Exhaustive check of the condition over basis tuples, modulo ``t^order``.

    On failure reports the lowest failing order and the first basis tuple
    failing there.
    """
    d = u.d if d is None else d
    order = u.order if order is None else order
    if order > u.order:
        raise ValueError(f"series is only known modulo t^{u.order}")
    # terms at t^order and beyond vanish modulo t^order
    v = u.truncated(min(len(u.terms), order - 1), order) if order < u.order else u
    A = u.algebra
    best = None
    for tup in _basis_tuples(A, d):
        res = sdgen_residual(v, [A.basis[i] for i in tup], d)
        k = res.first_nonzero_order()
        if k is not None and (best is None or k < best[0]):
            best = (k, tup)
            if k == 0:
                break
    if best is None:
        return CheckResult(True)
    return CheckResult(False, best[0], best[1])


def cocycle_check(u1, d):
    """Is ``u_1`` a d-cocycle?  On failure, the first basis tuple where ``delta_d(u_1)`` is nonzero."""
    A = u1.space.A
    img = delta_d_operator(A, d)(u1)
    tup = img.first_nonzero()
    return CheckResult(tup is None, None if tup is None else 1, tup)


def _sign(d):
    return 1 if d % 2 else -1


def extract_obstruction(u, n):
    """``(-1)^(d+1)`` times the t^{n+1} coefficient of the residual, with ``u_{n+1}`` and above zeroed.

    The sign makes the extension equation read ``delta_d(u_{n+1}) = obstruction``.
    No precondition is checked.
    """
    A, d = u.algebra, u.d
    v = u.truncated(n, n + 2)
    s = _sign(d)
    tgt = CochainSpace(A, d + 1)

    def value(tup):
        c = sdgen_residual(v, [A.basis[i] for i in tup]).coeffs[n + 1]
        return c if s > 0 else tuple(-x for x in c)

    return tgt.from_function(value)


def formula_obstruction(u, n):
    """Sum of ``u_{i_1} o ... o u_{i_m}`` over ``2 <= m <= ceil((d+2)/2)`` and ``i_1 + ... + i_m = n + 1``."""
    A, d = u.algebra, u.d
    total = CochainSpace(A, d + 1).zero()
    for m in range(2, max_product_arity(d) + 1):
        for idx in compositions(n + 1, m):
            total = total + circle_general(d, A, [u.term(i) for i in idx])
    return total


def s3_obstruction(u, n):
    """``sum u_i o u_j + sum u_i * u_j * u_k`` with the explicit 3-sphere products."""
    A = u.algebra
    total = CochainSpace(A, 4).zero()
    for i, j in compositions(n + 1, 2):
        total = total + circle_s3(A, u.term(i), u.term(j))
    for i, j, k in compositions(n + 1, 3):
        total = total + star_s3(A, u.term(i), u.term(j), u.term(k))
    return total


def _require_order(u, n):
    if u.order < n + 1:
        raise ValueError(f"series truncated at t^{u.order} cannot be checked modulo t^{n + 1}")
    chk = check_sdgen(u.truncated(n, n + 1), n + 1)
    if not chk.ok:
        raise PreconditionError(
            f"condition fails at order {chk.order} on basis tuple {chk.witness}",
            chk.order,
            chk.witness,
        )


def obstruction(u, n):
    """The obstruction to extending ``u`` from modulo ``t^{n+1}`` to modulo ``t^{n+2}``.

    Computed by series extraction and by the product formula (plus the
    explicit 3-sphere products when ``d = 3``); any disagreement raises
    :class:`ConsistencyError`.
    """
    _require_commutative(u.algebra)
    _require_order(u, n)
    omega = extract_obstruction(u, n)
    if formula_obstruction(u, n) != omega:
        raise ConsistencyError(f"product formula disagrees with series extraction at n={n}")
    if u.d == 3 and s3_obstruction(u, n) != omega:
        raise ConsistencyError(f"3-sphere products disagree with series extraction at n={n}")
    return omega


def extend_step(u, n):
    """Try to choose ``u_{n+1}`` so the condition holds modulo ``t^{n+2}``.

    Returns ``None`` when the obstruction is not a coboundary.  Otherwise the
    canonical solution (free variables zero) together with a basis of
    ``Ker(delta_d)``, the freedom in that choice; ``u_1 .. u_n`` are kept.
    """
    omega = obstruction(u, n)
    op = delta_d_operator(u.algebra, u.d)
    sol = op.solve(omega)
    if sol is None:
        return None
    terms = list(u.terms[:n]) + [CochainSpace(u.algebra, 1).zero()] * (n - len(u.terms))
    extended = u.with_terms(terms + [sol], order=max(u.order, n + 2))
    chk = check_sdgen(extended, n + 2)
    if not chk.ok:
        raise ConsistencyError(
            f"extension fails at order {chk.order} on {chk.witness} after solving"
        )
    return Extension(extended, sol, op.kernel())


def extend(u, target_order, start=None):
    """Extend order by order until ``t^target_order``; returns ``(series, log)``.

    ``log`` has one ``(n, status)`` entry per attempted step, ``status`` being
    ``"extended"`` or ``"obstructed"``.  Stops at the first obstruction.
    """
    n = len(u.terms) if start is None else start
    log = []
    cur = u.with_terms(u.terms, order=max(u.order, target_order))
    while n + 2 <= target_order:
        ext = extend_step(cur, n)
        if ext is None:
            log.append((n, "obstructed"))
            return cur, log
        cur = ext.series
        log.append((n, "extended"))
        n += 1
    return cur, log


def _matmul(X, Y):
    n = len(X)
    return [[sum((X[i][k] * Y[k][j] for k in range(n)), X[0][0] * 0) for j in range(n)] for i in range(n)]


def _matsub(X, Y):
    return [[a - b for a, b in zip(r, s)] for r, s in zip(X, Y)]


def _matadd(X, Y):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(X, Y)]


def gauge_transform(u, f):
    """The series ``w`` with ``w o f = f o u`` modulo ``t^N``.

    ``f`` is a series ``a + f_1(a) t + ...`` given as a DeformationSeries or a
    sequence of ``(1, 0, 0)`` cochains ``f_1, f_2, ...``; ``f_0`` is the
    identity, so ``f`` is invertible.
    """
    A, N = u.algebra, u.order
    fterms = list(f.terms if isinstance(f, DeformationSeries) else f)
    field = A.field
    ident = [[field.one if i == j else field.zero for j in range(A.dim)] for i in range(A.dim)]
    zero = [[field.zero] * A.dim for _ in range(A.dim)]

    def mats(terms):
        return [ident] + [map_matrix(terms[i - 1]) if i <= len(terms) else zero for i in range(1, N)]

    U, F = mats(list(u.terms)), mats(fterms)
    W = [ident]
    for n in range(1, N):
        acc = zero
        for i in range(n + 1):
            acc = _matadd(acc, _matmul(F[i], U[n - i]))
        for i in range(n):
            acc = _matsub(acc, _matmul(W[i], F[n - i]))
        W.append(acc)
    return u.with_terms([cochain_from_matrix(A, W[i]) for i in range(1, N)])


def gauge_class_check(u1, w1, d):
    """Do the d-cocycles ``u_1`` and ``w_1`` differ by an element of ``Im(delta_{d-1})``?"""
    A = u1.space.A
    for name, c in (("u_1", u1), ("w_1", w1)):
        if not cocycle_check(c, d).ok:
            raise ValueError(f"{name} is not a {d}-cocycle")
    return delta_low_operator(A, d, d - 1).contains(u1 - w1)


def exp_series(D, d, order):
    """``exp(tD) = sum D^i / i! t^i`` truncated at ``t^order``; needs characteristic 0 or ``> order``."""
    A = D.space.A
    char = A.field.characteristic
    if char and char < order:
        raise ValueError("exp(tD) needs factorials below the truncation order to be invertible")
    Dm = map_matrix(D)
    terms = []
    power = Dm
    for i in range(1, order):
        c = A.field.one / factorial(i)
        terms.append(cochain_from_matrix(A, [[c * x for x in row] for row in power]))
        power = _matmul(power, Dm)
    return DeformationSeries(A, d, order, terms)


def derivations(A):
    """Basis of the derivations of A, solved directly from the Leibniz rule on basis pairs."""
    from ..linalg import ExactMatrix, kernel_basis

    n = A.dim
    # unknown D[k][i] = coefficient of e_k in D(e_i), flattened as i * n + k
    rows = []
    for i in range(n):
        for j in range(n):
            # D(e_i e_j) - D(e_i) e_j - e_i D(e_j) = 0, coordinate by coordinate
            eqs = [{} for _ in range(n)]
            for l, c in enumerate(A.structure[i][j]):
                if c:
                    for k in range(n):
                        eqs[k][l * n + k] = eqs[k].get(l * n + k, 0) + c
            for p in range(n):
                for k in range(n):
                    c = A.structure[p][j][k]
                    if c:
                        eqs[k][i * n + p] = eqs[k].get(i * n + p, 0) - c
                    c = A.structure[i][p][k]
                    if c:
                        eqs[k][j * n + p] = eqs[k].get(j * n + p, 0) - c
            rows.extend(eqs)
    M = ExactMatrix(A.field, len(rows), n * n, rows)
    sp = CochainSpace(A, 1)
    return [sp.from_vector(v) for v in kernel_basis(M)]
