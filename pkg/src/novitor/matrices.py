"""Labeled matrices over any of the exact coefficient rings.

Entries are ints, Fractions, LaurentPolynomials, RationalFunctions or
TruncatedSeries; they only need +, -, * and ==.  The integer 0 and 1 are
universal zero/one thanks to the coercions the element types implement.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import NotExactDivision, NotSquare, ShapeMismatch
from .polynomial import LaurentPolynomial
from .rational import RationalFunction, to_rf
from .series import TruncatedSeries, series_divexact


class Matrix:
    __slots__ = ("data", "nrows", "ncols", "row_labels", "col_labels")

    def __init__(self, data, row_labels=None, col_labels=None, ncols=None):
        data = tuple(tuple(row) for row in data)
        nrows = len(data)
        if nrows:
            ncols_ = len(data[0])
            if any(len(r) != ncols_ for r in data):
                raise ShapeMismatch("ragged rows")
        else:
            ncols_ = 0 if ncols is None else ncols
        self.data = data
        self.nrows = nrows
        self.ncols = ncols_
        self.row_labels = tuple(row_labels) if row_labels is not None else None
        self.col_labels = tuple(col_labels) if col_labels is not None else None
        for labels, n, what in ((self.row_labels, nrows, "row"), (self.col_labels, ncols_, "col")):
            if labels is not None:
                if len(labels) != n:
                    raise ShapeMismatch(f"{what} labels do not match the {what} count")
                if len(set(labels)) != n:
                    raise ShapeMismatch(f"duplicate {what} labels")

    @classmethod
    def zeros(cls, nrows, ncols, row_labels=None, col_labels=None):
        return cls([[0] * ncols for _ in range(nrows)], row_labels, col_labels, ncols=ncols)

    @classmethod
    def identity(cls, n, one=1, labels=None):
        return cls(
            [[one if i == j else 0 for j in range(n)] for i in range(n)],
            labels,
            labels,
            ncols=n,
        )

    @classmethod
    def from_cols(cls, cols, nrows):
        return cls([[col[i] for col in cols] for i in range(nrows)], ncols=len(cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    @property
    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(self.data[i][j] for i in range(self.nrows))

    def map(self, fn, row_labels=None, col_labels=None):
        return Matrix(
            [[fn(x) for x in row] for row in self.data],
            self.row_labels if row_labels is None else row_labels,
            self.col_labels if col_labels is None else col_labels,
            ncols=self.ncols,
        )

    def relabel(self, row_labels, col_labels):
        return Matrix(self.data, row_labels, col_labels, ncols=self.ncols)

    def transpose(self):
        return Matrix(
            [[self.data[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.col_labels,
            self.row_labels,
            ncols=self.nrows,
        )

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.ncols)]
                for i in range(self.nrows)
            ],
            self.row_labels,
            self.col_labels,
            ncols=self.ncols,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Matrix(
            [[c * x for x in row] for row in self.data],
            self.row_labels,
            self.col_labels,
            ncols=self.ncols,
        )

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = 0
                for k in range(self.ncols):
                    a = self.data[i][k]
                    if not (a == 0):
                        acc = acc + a * other.data[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(out, self.row_labels, other.col_labels, ncols=other.ncols)

    def apply(self, vec):
        """Matrix times column vector (a sequence of entries)."""
        if len(vec) != self.ncols:
            raise ShapeMismatch("vector length does not match column count")
        out = []
        for i in range(self.nrows):
            acc = 0
            for k in range(self.ncols):
                a = self.data[i][k]
                if not (a == 0):
                    acc = acc + a * vec[k]
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(
            self.data[i][j] == other.data[i][j]
            for i in range(self.nrows)
            for j in range(self.ncols)
        )

    __hash__ = None

    def submatrix(self, rows, cols):
        rows = list(rows)
        cols = list(cols)
        return Matrix(
            [[self.data[i][j] for j in cols] for i in rows],
            tuple(self.row_labels[i] for i in rows) if self.row_labels else None,
            tuple(self.col_labels[j] for j in cols) if self.col_labels else None,
            ncols=len(cols),
        )

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.data) + "]"

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def hstack(blocks, row_labels=None):
    nrows = blocks[0].nrows
    if any(b.nrows != nrows for b in blocks):
        raise ShapeMismatch("hstack needs equal row counts")
    data = [sum((list(b.data[i]) for b in blocks), []) for i in range(nrows)]
    return Matrix(data, row_labels, None, ncols=sum(b.ncols for b in blocks))


def vstack(blocks, col_labels=None):
    ncols = blocks[0].ncols
    if any(b.ncols != ncols for b in blocks):
        raise ShapeMismatch("vstack needs equal column counts")
    data = [row for b in blocks for row in b.data]
    return Matrix(data, None, col_labels, ncols=ncols)


def block_matrix(rows_of_blocks):
    return vstack([hstack(list(row)) for row in rows_of_blocks])


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        if b == 0:
            raise NotExactDivision("division by zero")
        q, r = divmod(a, b)
        if r:
            raise NotExactDivision(f"{a} not divisible by {b}")
        return q
    if isinstance(a, (Fraction, RationalFunction)) or isinstance(b, (Fraction, RationalFunction)):
        return a / b
    if isinstance(a, int):
        if isinstance(b, LaurentPolynomial):
            a = LaurentPolynomial((a,))
        elif isinstance(b, TruncatedSeries):
            a = TruncatedSeries(b.ring, (a,), 0, 1 << 60)
    if isinstance(a, LaurentPolynomial):
        if isinstance(b, int):
            b = LaurentPolynomial((b,))
        return a.divexact(b)
    if isinstance(a, TruncatedSeries):
        if isinstance(b, int):
            b = TruncatedSeries(a.ring, (b,), 0, 1 << 60)
        return series_divexact(a, b)
    raise NotExactDivision(f"no exact division for {type(a).__name__}")


def det_bareiss(m: Matrix, one=1):
    """Fraction-free determinant; every intermediate division is exact.

    Valid over integral domains (Z, Z[t]); over truncated series it is used
    only on matrices whose entries come from polynomials, where the same
    divisions are exact.
    """
    if not m.is_square:
        raise NotSquare(f"determinant of a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    if n == 0:
        return one
    a = [list(row) for row in m.data]
    sign = 1
    prev = one
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if not (a[i][k] == 0):
                piv = i
                break
        if piv is None:
            return 0 * one
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = _exact_div(num, prev)
            a[i][k] = 0
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -1 * d


def det_poly(m: Matrix) -> LaurentPolynomial:
    """Fraction-free determinant of a matrix with integer-polynomial entries."""
    d = det_bareiss(m.map(lambda x: x if isinstance(x, LaurentPolynomial) else LaurentPolynomial((x,))), LaurentPolynomial.one())
    if isinstance(d, int):
        d = LaurentPolynomial((d,))
    return d


def require_positive_valuation(m: Matrix, name: str):
    """Reject matrices with a nonzero constant term anywhere."""
    from .errors import PositiveValuationRequired
    from .polynomial import as_poly

    for row in m.data:
        for x in row:
            p = as_poly(x)
            if not p.is_zero and p.val < 1:
                raise PositiveValuationRequired(
                    f"{name} has an entry {p} with a nonzero constant term"
                )


def det_field(m: Matrix):
    """Determinant by Gaussian elimination with exact field division."""
    if not m.is_square:
        raise NotSquare(f"determinant of a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    if n == 0:
        return RationalFunction.one()
    a = [[to_rf(x) for x in row] for row in m.data]
    det = RationalFunction.one()
    sign = 1
    for k in range(n):
        piv = None
        for i in range(k, n):
            if not a[i][k].is_zero:
                piv = i
                break
        if piv is None:
            return RationalFunction.zero()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        det = det * p
        for i in range(k + 1, n):
            if a[i][k].is_zero:
                continue
            f = a[i][k] / p
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - f * a[k][j]
            a[i][k] = RationalFunction.zero()
    return det if sign == 1 else -det


def mat_det(m: Matrix):
    """Exact determinant; field elimination over Q(t)/Q, fraction-free otherwise."""
    if not m.is_square:
        raise NotSquare(f"determinant of a {m.nrows}x{m.ncols} matrix")
    kinds = {type(x) for row in m.data for x in row}
    if RationalFunction in kinds or Fraction in kinds:
        return det_field(m)
    if TruncatedSeries in kinds:
        one = None
        for row in m.data:
            for x in row:
                if isinstance(x, TruncatedSeries):
                    one = TruncatedSeries.one(x.ring, 1 << 60)
                    break
            if one is not None:
                break
        return det_bareiss(m, one)
    if LaurentPolynomial in kinds:
        return det_bareiss(m, LaurentPolynomial.one())
    return det_bareiss(m, 1)


def _rf_rows(m: Matrix):
    return [[to_rf(x) for x in row] for row in m.data]


def mat_rank_ff(m: Matrix, pivot_order="first") -> int:
    """Rank over the fraction field Q(t), by exact Gaussian elimination."""
    a = _rf_rows(m)
    return _eliminate(a, m.nrows, m.ncols, pivot_order)[0]


def _eliminate(a, nrows, ncols, pivot_order="first"):
    """Row-reduce in place; returns (rank, pivot column list)."""
    cols = range(ncols) if pivot_order == "first" else range(ncols - 1, -1, -1)
    rank = 0
    pivots = []
    for j in cols:
        piv = None
        for i in range(rank, nrows):
            if not a[i][j].is_zero:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][j]
        for i in range(nrows):
            if i != rank and not a[i][j].is_zero:
                f = a[i][j] / p
                for jj in range(ncols):
                    a[i][jj] = a[i][jj] - f * a[rank][jj]
        pivots.append(j)
        rank += 1
        if rank == nrows:
            break
    return rank, pivots


def pivot_columns(m: Matrix, pivot_order="first"):
    """Columns forming a basis of the column space (order depends on strategy)."""
    a = _rf_rows(m)
    _, pivots = _eliminate(a, m.nrows, m.ncols, pivot_order)
    return sorted(pivots)


def solve_field(m: Matrix, rhs):
    """One exact solution of m x = rhs over Q(t), or None if inconsistent."""
    a = [[to_rf(x) for x in row] + [to_rf(rhs[i])] for i, row in enumerate(m.data)]
    nrows, ncols = m.nrows, m.ncols
    rank = 0
    pivots = []
    for j in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if not a[i][j].is_zero:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][j]
        for i in range(nrows):
            if i != rank and not a[i][j].is_zero:
                f = a[i][j] / p
                for jj in range(j, ncols + 1):
                    a[i][jj] = a[i][jj] - f * a[rank][jj]
        pivots.append((rank, j))
        rank += 1
        if rank == nrows:
            break
    for i in range(rank, nrows):
        if not a[i][ncols].is_zero:
            return None
    x = [RationalFunction.zero()] * ncols
    for i, j in reversed(pivots):
        acc = a[i][ncols]
        for jj in range(j + 1, ncols):
            if not a[i][jj].is_zero and not x[jj].is_zero:
                acc = acc - a[i][jj] * x[jj]
        x[j] = acc / a[i][j]
    return x
