"""Deformations of the product family of a quintuple.

The associativity condition

    m^{xy}_{alpha beta theta(z), t}(a, m^w_{gamma, t}(b, c))
        = m^{yzw}_{beta gamma, t}(m^x_{alpha, t}(a, b), c)

is evaluated by truncated series arithmetic in :func:`tertass_residual`; the
obstruction, extension and gauge routines are all checked against it.
"""

from itertools import product

from ..algebra import (
    AlgebraMorphism,
    FiniteAlgebra,
    add,
    is_central,
    scale,
    sub,
    validate_algebra,
    validate_morphism,
)
from ..cochains import gimel_operator, tertiary_space
from ..errors import ConsistencyError, PreconditionError, ValidationError
from ..linalg import ExactMatrix
from ..products import compositions, tert_circle
from .series import ProductFamilySeries, TruncatedElement
from .sphere import CheckResult, Extension


def _args(Q, tup):
    return tertiary_space(Q, 3, 3, 4).basis_args(tup)


def tertass_residual(M, args):
    """LHS - RHS of the family associativity condition at ``(a, b, c, alpha, beta, gamma, x, y, z, w)``."""
    if len(args) != 10:
        raise ValueError("the family condition takes 10 arguments (a, b, c, alpha, beta, gamma, x, y, z, w)")
    Q = M.quintuple
    A, B, C = Q.A, Q.B, Q.C
    a, b, c, al, be, ga, x, y, z, w = args
    N = M.order
    ta, tb, tc = (TruncatedElement.constant(A, v, N) for v in (a, b, c))
    inner = M.product(tb, tc, ga, w)
    lhs = M.product(ta, inner, B.mul(B.mul(al, be), Q.theta(z)), C.mul(x, y))
    left = M.product(ta, tb, al, x)
    rhs = M.product(left, tc, B.mul(be, ga), C.mul(C.mul(y, z), w))
    return lhs - rhs


def _tuples(Q):
    return tertiary_space(Q, 3, 3, 4).tuples()


def check_tertass(M, order=None):
    """Exhaustive check over basis tuples modulo ``t^order``; lowest failing order and first tuple."""
    order = M.order if order is None else order
    if order > M.order:
        raise ValueError(f"family is only known modulo t^{M.order}")
    v = M.truncated(min(len(M.terms), order - 1), order) if order < M.order else M
    best = None
    for tup in _tuples(M.quintuple):
        res = tertass_residual(v, _args(M.quintuple, tup))
        k = res.first_nonzero_order()
        if k is not None and (best is None or k < best[0]):
            best = (k, tup)
            if k == 0:
                break
    if best is None:
        return CheckResult(True)
    return CheckResult(False, best[0], best[1])


def tert_cocycle_check(c1, Q):
    """Is ``c_1`` a 2-cocycle of the tertiary complex?  Witness: first tuple where ``gimel^2(c_1) != 0``."""
    img = gimel_operator(Q, 2)(c1)
    tup = img.first_nonzero()
    return CheckResult(tup is None, None if tup is None else 1, tup)


def extract_tert_obstruction(M, n):
    """Minus the t^{n+1} residual coefficient with ``c_{n+1}`` and above zeroed; no precondition check."""
    Q = M.quintuple
    v = M.truncated(n, n + 2)
    tgt = tertiary_space(Q, 3, 3, 4)
    return tgt.from_function(
        lambda tup: tuple(-x for x in tertass_residual(v, tgt.basis_args(tup)).coeffs[n + 1])
    )


def formula_tert_obstruction(M, n):
    """``sum_{i + j = n + 1} c_i o c_j``."""
    Q = M.quintuple
    total = tertiary_space(Q, 3, 3, 4).zero()
    for i, j in compositions(n + 1, 2):
        total = total + tert_circle(Q, M.term(i), M.term(j))
    return total


def _require_order(M, n):
    if M.order < n + 1:
        raise ValueError(f"family truncated at t^{M.order} cannot be checked modulo t^{n + 1}")
    chk = check_tertass(M.truncated(n, n + 1), n + 1)
    if not chk.ok:
        raise PreconditionError(
            f"associativity fails at order {chk.order} on basis tuple {chk.witness}",
            chk.order,
            chk.witness,
        )


def tert_obstruction(M, n):
    """``sum c_i o c_j`` over ``i + j = n + 1``, cross-checked against series extraction."""
    _require_order(M, n)
    omega = formula_tert_obstruction(M, n)
    if extract_tert_obstruction(M, n) != omega:
        raise ConsistencyError(f"composition formula disagrees with series extraction at n={n}")
    return omega


def tert_extend_step(M, n):
    """Solve ``gimel^2(c_{n+1}) = obstruction``; ``None`` if the obstruction is not a coboundary."""
    omega = tert_obstruction(M, n)
    op = gimel_operator(M.quintuple, 2)
    sol = op.solve(omega)
    if sol is None:
        return None
    sp = tertiary_space(M.quintuple, 2, 1, 1)
    terms = list(M.terms[:n]) + [sp.zero()] * (n - len(M.terms))
    extended = M.with_terms(terms + [sol], order=max(M.order, n + 2))
    chk = check_tertass(extended, n + 2)
    if not chk.ok:
        raise ConsistencyError(
            f"extension fails at order {chk.order} on {chk.witness} after solving"
        )
    return Extension(extended, sol, op.kernel())


def tert_extend(M, target_order, start=None):
    """Order-by-order extension; returns ``(family, log)`` like :func:`sphere.extend`."""
    n = len(M.terms) if start is None else start
    log = []
    cur = M.with_terms(M.terms, order=max(M.order, target_order))
    while n + 2 <= target_order:
        ext = tert_extend_step(cur, n)
        if ext is None:
            log.append((n, "obstructed"))
            return cur, log
        cur = ext.series
        log.append((n, "extended"))
        n += 1
    return cur, log


def tert_gauge_transform(M, f):
    """The family ``p`` with ``p^x_{alpha,t}(f(a), f(b)) = f(m^x_{alpha,t}(a, b))`` modulo ``t^N``.

    ``f`` is ``a + f_1(a) t + ...`` given by its ``(1, 0, 0)`` coefficients.
    """
    Q = M.quintuple
    A, N = Q.A, M.order
    fterms = list(getattr(f, "terms", f))
    sp = tertiary_space(Q, 2, 1, 1)

    def fk(k, v):
        if k == 0:
            return v
        return fterms[k - 1](v) if k <= len(fterms) else A.zero()

    d_terms = []

    def dk(k, a, b, alpha, x):
        if k == 0:
            return A.mul(A.mul(a, b), Q.scalar(alpha, x))
        return d_terms[k - 1](a, b, alpha, x)

    for n in range(1, N):
        def value(tup, n=n):
            a, b, alpha, x = sp.basis_args(tup)
            acc = A.zero()
            for i in range(n + 1):
                acc = add(acc, fk(i, M.coefficient(n - i, a, b, alpha, x)))
            for i in range(n):
                for j in range(n - i + 1):
                    k = n - i - j
                    acc = sub(acc, dk(i, fk(j, a), fk(k, b), alpha, x))
            return acc

        d_terms.append(sp.from_function(value))
    return M.with_terms(d_terms)


def tert_gauge_check(c1, d1, Q):
    """Do the 2-cocycles ``c_1`` and ``d_1`` differ by an element of ``Im(gimel^1)``?"""
    for name, c in (("c_1", c1), ("d_1", d1)):
        if not tert_cocycle_check(c, Q).ok:
            raise ValueError(f"{name} is not a 2-cocycle")
    return gimel_operator(Q, 1).contains(c1 - d1)


# --------------------------------------------------------------------------
# product families given as plain callables


def trivial_family(Q):
    """``(a, b, alpha, x) -> a b eps(alpha theta(x))``."""
    return lambda a, b, alpha, x: Q.A.mul(Q.A.mul(a, b), Q.scalar(alpha, x))


def cochain_family(c):
    """The multilinear family whose value on basis tuples is the ``(2, 1, 1)`` cochain ``c``."""
    return lambda a, b, alpha, x: c(a, b, alpha, x)


def check_family_conditions(family, A, B, C, theta, scalars=(2, -1)):
    """Verify the linearity and associativity conditions of a product family.

    ``family(a, b, alpha, x)`` returns ``m^x_alpha(a, b)``; only ``A``'s basis
    is used, never its multiplication.  The associativity condition is
    checked with superscript ``yzw`` on the right-hand side, the form the
    deformation theory uses.  Returns a list of violations.
    """
    F = A.field
    report = []
    eA, eB, eC = A.basis, B.basis, C.basis
    AB = list(product(range(A.dim), repeat=2))

    def differs(u, v):
        return u != v

    for i, j in product(range(B.dim), repeat=2):
        for xi in range(C.dim):
            s = tuple(p + q for p, q in zip(eB[i], eB[j]))
            for p, q in AB:
                lhs = family(eA[p], eA[q], s, eC[xi])
                rhs = add(family(eA[p], eA[q], eB[i], eC[xi]), family(eA[p], eA[q], eB[j], eC[xi]))
                if differs(lhs, rhs):
                    report.append(f"not additive in B at ({B.labels[i]} + {B.labels[j]}, {C.labels[xi]})")
                    break
    for i in range(B.dim):
        for xi, yi in product(range(C.dim), repeat=2):
            s = tuple(p + q for p, q in zip(eC[xi], eC[yi]))
            for p, q in AB:
                lhs = family(eA[p], eA[q], eB[i], s)
                rhs = add(family(eA[p], eA[q], eB[i], eC[xi]), family(eA[p], eA[q], eB[i], eC[yi]))
                if differs(lhs, rhs):
                    report.append(f"not additive in C at ({B.labels[i]}, {C.labels[xi]} + {C.labels[yi]})")
                    break
    for qv in scalars:
        q = F(qv)
        for i, xi in product(range(B.dim), range(C.dim)):
            for p, r in AB:
                base = family(eA[p], eA[r], eB[i], eC[xi])
                if differs(family(eA[p], eA[r], scale(q, eB[i]), eC[xi]), scale(q, base)):
                    report.append(f"not homogeneous in B at {qv}*{B.labels[i]}")
                    break
                if differs(family(eA[p], eA[r], eB[i], scale(q, eC[xi])), scale(q, base)):
                    report.append(f"not homogeneous in C at {qv}*{C.labels[xi]}")
                    break
    Bm, Cm = B.mul, C.mul
    for t in product(range(A.dim), range(A.dim), range(A.dim), range(B.dim), range(B.dim), range(B.dim),
                     range(C.dim), range(C.dim), range(C.dim), range(C.dim)):
        a, b, c = eA[t[0]], eA[t[1]], eA[t[2]]
        al, be, ga = eB[t[3]], eB[t[4]], eB[t[5]]
        x, y, z, w = eC[t[6]], eC[t[7]], eC[t[8]], eC[t[9]]
        lhs = family(a, family(b, c, ga, w), Bm(Bm(al, be), theta(z)), Cm(x, y))
        rhs = family(family(a, b, al, x), c, Bm(be, ga), Cm(Cm(y, z), w))
        if differs(lhs, rhs):
            labels = [A.labels[k] for k in t[:3]] + [B.labels[k] for k in t[3:6]] + [C.labels[k] for k in t[6:]]
            report.append("associativity fails on (" + ", ".join(labels) + ")")
    return report


def epsilon_from_family(family, A, B, C, theta):
    """Recover the structure maps ``alpha -> m^1_alpha(1, 1)`` and ``x -> m^x_1(1, 1)``.

    ``A`` supplies the basis and unit; the multiplication used is
    ``m^1_1``.  Returns ``(eps, eps_theta)`` as validated morphisms into that
    algebra; raises :class:`ValidationError` naming the failed axiom.
    """
    one_b, one_c = B.unit, C.unit
    n = A.dim
    eA = A.basis
    structure = [[list(family(eA[i], eA[j], one_b, one_c)) for j in range(n)] for i in range(n)]
    A1 = FiniteAlgebra(A.field, A.labels, structure, A.unit, False, f"{A.name}[m_1^1]")
    report = validate_algebra(A1)
    if report:
        raise ValidationError("(A, m_1^1)", report)
    one = A.unit
    eps_cols = [family(one, one, B.basis[i], one_c) for i in range(B.dim)]
    et_cols = [family(one, one, one_b, C.basis[i]) for i in range(C.dim)]

    def morphism(src, cols, name):
        rows = [[cols[j][i] for j in range(src.dim)] for i in range(n)]
        return AlgebraMorphism(src, A1, ExactMatrix.from_rows(A.field, rows, ncols=src.dim), name)

    eps = morphism(B, eps_cols, "eps")
    eps_theta = morphism(C, et_cols, "eps_theta")
    for phi, label, src in ((eps, "eps", B), (eps_theta, "eps_theta", C)):
        report = validate_morphism(phi, label)
        report += [
            f"{label}({src.labels[i]}) is not central"
            for i in range(src.dim)
            if not is_central(A1, phi(src.basis[i]))
        ]
        if report:
            raise ValidationError(label, report)
    composite = eps.compose(theta)
    if composite.matrix != eps_theta.matrix:
        raise ValidationError("eps_theta", ["x -> m_1^x(1, 1) is not eps o theta"])
    return eps, eps_theta
