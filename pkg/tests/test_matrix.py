import random

import pytest

from novitor.errors import NotSquare, ShapeMismatch
from novitor.matrices import (
    Matrix,
    det_bareiss,
    det_field,
    mat_det,
    mat_rank_ff,
    solve_field,
)
from novitor.polynomial import LaurentPolynomial
from novitor.rational import RationalFunction, to_rf
from novitor.series import INT, TruncatedSeries

from conftest import rnd_poly, rnd_rf

t = LaurentPolynomial.t()


def _cofactor_det(m):
    """Independent determinant by Laplace expansion (first row)."""
    n = m.nrows
    if n == 0:
        return RationalFunction.one()
    if n == 1:
        return to_rf(m.data[0][0])
    acc = RationalFunction.zero()
    for j in range(n):
        minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = to_rf(m.data[0][j]) * _cofactor_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


class TestDet:
    def test_2x2_integers(self):
        assert mat_det(Matrix([[1, 1], [1, 0]])) == -1

    def test_char_poly_of_cat_map(self):
        a = [[2, 1], [1, 1]]
        m = Matrix(
            [
                [
                    (1 if i == j else 0) - t * a[i][j]
                    for j in range(2)
                ]
                for i in range(2)
            ]
        )
        d = mat_det(m)
        assert d == 1 - 3 * t + t ** 2
        assert _cofactor_det(m) == RationalFunction(1 - 3 * t + t ** 2)

    def testtriangular_series(self):
        s = lambda p: TruncatedSeries.from_polynomial(p, INT).truncate(8)
        m = Matrix([[s(1 - t), s(t)], [s(LaurentPolynomial()), s(LaurentPolynomial.one())]])
        assert mat_det(m) == s(1 - t)

    def test_not_square(self):
        with pytest.raises(NotSquare):
            mat_det(Matrix.zeros(2, 3))

    def test_bareiss_vs_field_random(self):
        rng = random.Random(41)
        for _ in range(40):
            n = rng.randint(1, 4)
            m = Matrix([[rnd_poly(rng, 1, -2, 2) for _ in range(n)] for _ in range(n)])
            d1 = det_bareiss(m, LaurentPolynomial.one())
            d2 = det_field(m)
            assert to_rf(d1) == d2

    def test_multiplicative_over_qt(self):
        rng = random.Random(43)
        for _ in range(25):
            n = rng.randint(1, 4)
            a = Matrix([[rnd_rf(rng, 1) for _ in range(n)] for _ in range(n)])
            b = Matrix([[rnd_rf(rng, 1) for _ in range(n)] for _ in range(n)])
            assert det_field(a * b) == det_field(a) * det_field(b)

    def test_block_triangular_multiplicativity(self):
        rng = random.Random(47)
        for _ in range(15):
            a = Matrix([[rnd_poly(rng, 1) for _ in range(2)] for _ in range(2)])
            c = Matrix([[rnd_poly(rng, 1) for _ in range(2)] for _ in range(2)])
            b = Matrix([[rnd_poly(rng, 1) for _ in range(2)] for _ in range(2)])
            block = Matrix(
                [list(a.data[0]) + list(b.data[0]), list(a.data[1]) + list(b.data[1]),
                 [LaurentPolynomial()] * 2 + list(c.data[0]),
                 [LaurentPolynomial()] * 2 + list(c.data[1])]
            )
            assert to_rf(mat_det(block)) == to_rf(mat_det(a)) * to_rf(mat_det(c))


class TestRank:
    def test_zero_matrix(self):
        assert mat_rank_ff(Matrix.zeros(3, 2)) == 0

    def test_column_vector(self):
        assert mat_rank_ff(Matrix([[1 - t], [t]])) == 1

    def test_full_rank_random_vs_independent_pivot_order(self):
        rng = random.Random(53)
        for _ in range(25):
            m = Matrix([[rnd_rf(rng, 1) for _ in range(4)] for _ in range(4)])
            r_first = mat_rank_ff(m, pivot_order="first")
            r_last = mat_rank_ff(m, pivot_order="last")
            assert r_first == r_last
            if not det_field(m).is_zero:
                assert r_first == 4

    def test_rank_drop(self):
        row = [RationalFunction(1), RationalFunction(t)]
        m = Matrix([row, [x * RationalFunction(1 - t) for x in row]])
        assert mat_rank_ff(m) == 1


class TestSolve:
    def test_consistent_and_inconsistent(self):
        a = Matrix([[RationalFunction(1), RationalFunction(t)]]).transpose()
        # a: 2x1 matrix; solve a*x = rhs
        rhs = [RationalFunction(1 - t), RationalFunction(t) * RationalFunction(1 - t)]
        x = solve_field(a, rhs)
        assert x is not None and a.apply(x) == rhs
        assert solve_field(a, [RationalFunction(1), RationalFunction(1)]) is None

    def test_labels_checked(self):
        with pytest.raises(ShapeMismatch):
            Matrix([[1, 2]], row_labels=("a",), col_labels=("x", "x"))
