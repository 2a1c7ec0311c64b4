"""Specialising a quintuple to C = k, then B = C = k, and comparing coboundary matrices.

With one-dimensional B- or C-factors the tertiary cochain spaces have the
same flat coordinates as the secondary or classical ones, so the
comparison is entry for entry.
"""

from typing import NamedTuple

from .cochains import gimel_operator, hochschild_operator, secondary_operator
from .presets import secondary_quintuple, trivial_quintuple


class MatrixComparison(NamedTuple):
    label: str
    shape: tuple
    identical: bool
    first_difference: object  # (row, col) or None


def compare_operators(label, op, classical):
    M, N = op.matrix(), classical.matrix()
    shape = (M.nrows, M.ncols)
    if shape != (N.nrows, N.ncols):
        return MatrixComparison(label, shape, False, ("shape", (N.nrows, N.ncols)))
    for i in range(M.nrows):
        r, s = M.row(i), N.row(i)
        if r != s:
            j = min(k for k in set(r) | set(s) if r.get(k, 0) != s.get(k, 0))
            return MatrixComparison(label, shape, False, (i, j))
    return MatrixComparison(label, shape, True, None)


def reduction_report(Q):
    """Compare gimel^1, gimel^2 of (A, B, k) with the secondary maps, and of (A, k, k) with the classical ones."""
    sec = secondary_quintuple(Q.A, Q.B, Q.eps)
    triv = trivial_quintuple(Q.A)
    rows = []
    for n in (1, 2):
        rows.append(compare_operators(
            f"gimel^{n}(C=k) vs secondary delta^{n}",
            gimel_operator(sec, n), secondary_operator(Q.A, Q.B, Q.eps, n)))
    for n in (0, 1, 2):
        rows.append(compare_operators(
            f"gimel^{n}(B=C=k) vs Hochschild delta^{n}",
            gimel_operator(triv, n), hochschild_operator(Q.A, n)))
    return rows
