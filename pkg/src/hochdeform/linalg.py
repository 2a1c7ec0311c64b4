"""Exact linear algebra over QQ or GF(p).

Matrices keep their rows as sparse ``{column: value}`` dictionaries but have
ordinary dense semantics.  All of rank, reduced row echelon form, kernel and
affine solving go through one incremental elimination, :class:`RowReduction`,
which is computed once per matrix and cached.
"""

from .fields import QQ


def _axpy(target, coef, source):
    """target += coef * source, for sparse dict vectors; drops zeros."""
    for k, v in source.items():
        nv = target.get(k, 0) + coef * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class ExactMatrix:
    """An immutable ``nrows x ncols`` matrix with exact entries."""

    __slots__ = ("field", "nrows", "ncols", "_rows", "_reduction")

    def __init__(self, field, nrows, ncols, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        clean = []
        for row in rows:
            r = {}
            for c, v in row.items():
                if not 0 <= c < ncols:
                    raise ValueError(f"column {c} out of range for {ncols} columns")
                if v:
                    r[c] = field(v)
            clean.append(r)
        self._rows = tuple(clean)
        self._reduction = None

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(field, len(rows), ncols, [{j: v for j, v in enumerate(r) if v} for r in rows])

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i):
        return dict(self._rows[i])

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, self.field.zero)

    def to_rows(self):
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self._rows]

    def nonzero_count(self):
        return sum(len(r) for r in self._rows)

    def is_zero(self):
        return not any(self._rows)

    def matvec(self, v):
        if len(v) != self.ncols:
            raise ValueError(f"vector length {len(v)} != {self.ncols} columns")
        z = self.field.zero
        out = []
        for r in self._rows:
            s = z
            for j, a in r.items():
                if v[j]:
                    s = s + a * v[j]
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            rows = []
            for r in self._rows:
                acc = {}
                for k, a in r.items():
                    _axpy(acc, a, other._rows[k])
                rows.append(acc)
            return ExactMatrix(self.field, self.nrows, other.ncols, rows)
        return self.matvec(other)

    def transpose(self):
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                rows[j][i] = v
        return ExactMatrix(self.field, self.ncols, self.nrows, rows)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            r.update({self.ncols + j: v for j, v in b.items()})
            rows.append(r)
        return ExactMatrix(self.field, self.nrows, self.ncols + other.ncols, rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={self.nonzero_count()}, field={self.field!r})"

    @property
    def reduction(self):
        if self._reduction is None:
            self._reduction = RowReduction(self)
        return self._reduction


class RowReduction:
    """Fully reduced echelon basis of the row space, built row by row.

    Every basis row remembers which combination of original rows produced it,
    so a right-hand side can be pushed through the same elimination without
    redoing it.
    """

    def __init__(self, M):
        one = M.field.one
        basis = {}
        for i, row in enumerate(M._rows):
            if not row:
                continue
            r = dict(row)
            combo = {i: one}
            for c in [c for c in r if c in basis]:
                coef = r[c]
                brow, bcombo = basis[c]
                _axpy(r, -coef, brow)
                _axpy(combo, -coef, bcombo)
            if not r:
                continue
            p = min(r)
            inv = one / r[p]
            r = {k: v * inv for k, v in r.items()}
            combo = {k: v * inv for k, v in combo.items()}
            for brow, bcombo in basis.values():
                if p in brow:
                    coef = brow[p]
                    _axpy(brow, -coef, r)
                    _axpy(bcombo, -coef, combo)
            basis[p] = (r, combo)
        self.matrix = M
        self.pivots = sorted(basis)
        self._basis = basis

    @property
    def rank(self):
        return len(self.pivots)

    def rref(self):
        M = self.matrix
        rows = [self._basis[p][0] for p in self.pivots]
        rows += [{} for _ in range(M.nrows - len(rows))]
        return ExactMatrix(M.field, M.nrows, M.ncols, rows)

    def kernel_basis(self):
        M = self.matrix
        field = M.field
        pivset = set(self.pivots)
        out = []
        for f in range(M.ncols):
            if f in pivset:
                continue
            v = [field.zero] * M.ncols
            v[f] = field.one
            for p in self.pivots:
                a = self._basis[p][0].get(f)
                if a:
                    v[p] = -a
            out.append(tuple(v))
        return out

    def particular(self, b):
        """Canonical solution of ``Mx = b`` (free variables zero) or ``None``."""
        M = self.matrix
        if len(b) != M.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {M.nrows}")
        field = M.field
        x = [field.zero] * M.ncols
        for p in self.pivots:
            s = field.zero
            for i, a in self._basis[p][1].items():
                if b[i]:
                    s = s + a * b[i]
            x[p] = s
        x = tuple(x)
        if any(u != field(v) for u, v in zip(M.matvec(x), b)):
            return None
        return x


def rref(M):
    """Return ``(R, pivots)`` with ``R`` the reduced row echelon form of ``M``."""
    red = M.reduction
    return red.rref(), list(red.pivots)


def rank(M):
    return M.reduction.rank


def kernel_basis(M):
    """Basis of the null space, one vector per free column in increasing order."""
    return M.reduction.kernel_basis()


def solve_affine(M, b):
    """Solve ``Mx = b``.

    Returns ``(particular, kernel)`` when ``b`` lies in the column space, where
    ``particular`` sets every free variable to zero, and ``None`` otherwise.
    """
    x = M.reduction.particular(b)
    if x is None:
        return None
    return x, kernel_basis(M)


def in_image(M, b):
    return M.reduction.particular(b) is not None


def matrix_from_columns(field, columns, nrows):
    rows = [{} for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in enumerate(col):
            if v:
                rows[i][j] = v
    return ExactMatrix(field, nrows, len(columns), rows)


def zero_vector(field, n):
    return (field.zero,) * n


__all__ = [
    "QQ",
    "ExactMatrix",
    "RowReduction",
    "rref",
    "rank",
    "kernel_basis",
    "solve_affine",
    "in_image",
    "matrix_from_columns",
    "zero_vector",
]
