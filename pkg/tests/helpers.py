"""Test-only constructions: base changes and random invertible matrices."""
from fractions import Fraction

from hypothesis import strategies as st

from piexp.algebra import Algebra
from piexp.linalg import Matrix


def change_basis(A: Algebra, P: Matrix) -> Algebra:
    """The same algebra in the basis f_i = sum_k P[k][i] e_k."""
    Pinv = P.inverse()
    cols = P.columns()
    d = A.dim
    table = tuple(tuple(Pinv.apply(A.mul(cols[i], cols[j])) for j in range(d)) for i in range(d))
    return Algebra(table, A.kind, A.field, tuple(f"f{i + 1}" for i in range(d)))


def conjugate_operator(P: Matrix, m: Matrix) -> Matrix:
    """Matrix of the same operator in the new basis."""
    return P.inverse() @ m @ P


def unitriangular(d, lower, upper):
    """L U with unit diagonals: always invertible."""
    rows_l = [[Fraction(int(i == j)) if i <= j else Fraction(lower[(i * d + j) % len(lower)]) for j in range(d)]
              for i in range(d)]
    rows_u = [[Fraction(int(i == j)) if i >= j else Fraction(upper[(i * d + j) % len(upper)]) for j in range(d)]
              for i in range(d)]
    return Matrix(tuple(map(tuple, rows_l)), d) @ Matrix(tuple(map(tuple, rows_u)), d)


def invertible(d):
    coeffs = st.lists(st.integers(-2, 2), min_size=1, max_size=d * d)
    return st.builds(lambda lo, up: unitriangular(d, lo, up), coeffs, coeffs)
