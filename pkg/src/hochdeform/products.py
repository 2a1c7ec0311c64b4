"""Products of cochains that express deformation obstructions.

``circle_s3`` and ``star_s3`` are the two explicit products on linear maps
used for the 3-sphere; ``tert_circle`` is the composition-difference of two
product-family cochains.  ``circle_general`` is the m-ary product for any
sphere dimension, defined positionally as the part of the order-``n+1``
coefficient of the generalized associativity condition where the given maps
occupy the non-identity factors, in order.
"""

from itertools import combinations

from .algebra import add, sub
from .cochains import CochainSpace, _require_commutative, tertiary_space


def circle_s3(A, f, g):
    """``f(ab) g(cd) - a f(bc) g(d) - f(a) bc g(d) - f(a) g(bc) d``."""
    _require_commutative(A)
    m = A.mul
    tgt = CochainSpace(A, 4)

    def value(t):
        a, b, c, d = (A.basis[i] for i in t)
        bc = m(b, c)
        acc = m(f(m(a, b)), g(m(c, d)))
        acc = sub(acc, m(m(a, f(bc)), g(d)))
        acc = sub(acc, m(m(f(a), bc), g(d)))
        return sub(acc, m(m(f(a), g(bc)), d))

    return tgt.from_function(value)


def star_s3(A, f, g, h):
    """``-f(a) g(bc) h(d)``."""
    _require_commutative(A)
    m = A.mul
    tgt = CochainSpace(A, 4)

    def value(t):
        a, b, c, d = (A.basis[i] for i in t)
        return tuple(-x for x in m(m(f(a), g(m(b, c))), h(d)))

    return tgt.from_function(value)


def sphere_factor_groups(d):
    """Argument groups of the two sides of the generalized associativity condition.

    For odd d the left side is ``u(a1 a2) ... u(a_d a_{d+1})`` and the right
    side ``u(a1) u(a2 a3) ... u(a_{d-1} a_d) u(a_{d+1})``; for even d the
    trailing single factor moves to the left side.  Indices are zero-based.
    """
    if d < 1:
        raise ValueError("sphere dimension must be at least 1")
    pairs_from_0 = [(i, i + 1) for i in range(0, d, 2)]
    pairs_from_1 = [(i, i + 1) for i in range(1, d, 2)]
    if d % 2:
        lhs = pairs_from_0
        rhs = [(0,)] + pairs_from_1 + [(d,)]
    else:
        lhs = pairs_from_0 + [(d,)]
        rhs = [(0,)] + pairs_from_1
    return lhs, rhs


def max_product_arity(d):
    """``ceil((d + 2) / 2)``: the most factors either side has."""
    return (d + 3) // 2


def circle_general(d, A, maps):
    """The m-ary product ``f_1 o ... o f_m`` on ``A^{d+1}``.

    Sum over every side of the condition and every choice of m factor
    positions (in increasing order) of the product with ``f_l`` applied at the
    l-th chosen position and the plain product elsewhere; left-side terms
    carry sign ``(-1)^(d+1)`` and right-side terms the opposite, so that the
    obstruction equation reads ``delta_d(u_{n+1}) = sum of products``.
    """
    _require_commutative(A)
    m = len(maps)
    if not 2 <= m <= max_product_arity(d):
        raise ValueError(f"m-ary product needs 2 <= m <= {max_product_arity(d)}, got {m}")
    lhs, rhs = sphere_factor_groups(d)
    side_sign = 1 if d % 2 else -1
    tgt = CochainSpace(A, d + 1)

    def side(groups, args):
        total = A.zero()
        for chosen in combinations(range(len(groups)), m):
            slot = dict(zip(chosen, maps))
            term = A.unit
            for pos, grp in enumerate(groups):
                x = A.prod(*(args[i] for i in grp))
                term = A.mul(term, slot[pos](x) if pos in slot else x)
            total = add(total, term)
        return total

    def value(t):
        args = [A.basis[i] for i in t]
        diff = sub(side(lhs, args), side(rhs, args))
        return diff if side_sign > 0 else tuple(-x for x in diff)

    return tgt.from_function(value)


def circle_extracted(d, A, maps):
    """Sum of ``f_s(1) o ... o f_s(m)`` over all orderings s, read off the condition itself.

    Substitute ``u(a) = a + sum_l f_l(a) t^(K^(l-1))`` with ``K = d + 2``.  No
    side has more than ``d + 1`` factors, so the coefficient of
    ``t^(1 + K + ... + K^(m-1))`` collects exactly the terms that use every
    ``f_l`` once, in any order of positions.  A power series cannot remember
    which map sat at which position, hence the symmetrisation; it is the
    independent check on :func:`circle_general`.  Same sign convention.
    """
    _require_commutative(A)
    m = len(maps)
    if not 2 <= m <= max_product_arity(d):
        raise ValueError(f"m-ary product needs 2 <= m <= {max_product_arity(d)}, got {m}")
    K = d + 2
    weights = [K ** l for l in range(m)]
    target = sum(weights)
    lhs, rhs = sphere_factor_groups(d)
    tgt = CochainSpace(A, d + 1)

    def expand(x):
        poly = {0: x}
        for f, w in zip(maps, weights):
            poly[w] = add(poly.get(w, A.zero()), f(x))
        return poly

    def side(groups, args):
        acc = {0: A.unit}
        for grp in groups:
            factor = expand(A.prod(*(args[i] for i in grp)))
            nxt = {}
            for i, x in acc.items():
                for j, y in factor.items():
                    if i + j <= target and any(x) and any(y):
                        nxt[i + j] = add(nxt.get(i + j, A.zero()), A.mul(x, y))
            acc = nxt
        return acc.get(target, A.zero())

    def value(t):
        args = [A.basis[i] for i in t]
        diff = sub(side(lhs, args), side(rhs, args))
        return diff if d % 2 else tuple(-x for x in diff)

    return tgt.from_function(value)


def compositions(total, parts):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def circle_indexed(d, A, terms, indices):
    """``u_{i_1} o ... o u_{i_m}`` for the series coefficients ``terms[i - 1]``."""
    return circle_general(d, A, [terms[i - 1] for i in indices])


def tert_circle(Q, f, g):
    """``f(g(a, b; alpha, x), c; beta gamma, yzw) - f(a, g(b, c; gamma, w); alpha beta theta(z), xy)``."""
    A, B, C = Q.A, Q.B, Q.C
    tgt = tertiary_space(Q, 3, 3, 4)
    Bm, Cm = B.mul, C.mul

    def value(t):
        a, b, c, al, be, ga, x, y, z, w = tgt.basis_args(t)
        first = f(g(a, b, al, x), c, Bm(be, ga), Cm(Cm(y, z), w))
        second = f(a, g(b, c, ga, w), Bm(Bm(al, be), Q.theta(z)), Cm(x, y))
        return sub(first, second)

    return tgt.from_function(value)
