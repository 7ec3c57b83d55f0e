"""Ready-made algebras and structures used by the examples and tests."""
from __future__ import annotations

from fractions import Fraction

from .algebra import ASSOCIATIVE, LIE, Algebra, direct_sum
from .fields import QQ, CyclotomicField
from .linalg import Matrix
from .structures import ANTI, AUTO, DerivationAction, GroupAction, Grading, close_group
from .subspace import Subspace


def unit(n: int, i: int, j: int, field: CyclotomicField = QQ) -> Matrix:
    """Matrix unit e_ij (0-based indices)."""
    rows = tuple(tuple(Fraction(int(r == i and c == j)) for c in range(n)) for r in range(n))
    return Matrix(rows, n, field)


def full_matrix_algebra(n: int, field: CyclotomicField = QQ) -> Algebra:
    """M_n with the matrix-unit basis e11, e12, ..., enn."""
    mats = [unit(n, i, j, field) for i in range(n) for j in range(n)]
    names = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return Algebra.from_matrices(mats, ASSOCIATIVE, field, names)


def upper_triangular(n: int, field: CyclotomicField = QQ) -> Algebra:
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    mats = [unit(n, i, j, field) for i, j in pairs]
    names = [f"e{i + 1}{j + 1}" for i, j in pairs]
    return Algebra.from_matrices(mats, ASSOCIATIVE, field, names)


def diagonal_algebra(n: int, field: CyclotomicField = QQ) -> Algebra:
    mats = [unit(n, i, i, field) for i in range(n)]
    return Algebra.from_matrices(mats, ASSOCIATIVE, field, [f"e{i + 1}{i + 1}" for i in range(n)])


def one_dimensional(kind: str = ASSOCIATIVE, field: CyclotomicField = QQ) -> Algebra:
    """The field F itself (associative) or the 1-dimensional abelian Lie algebra."""
    c = Fraction(1) if kind == ASSOCIATIVE else Fraction(0)
    return Algebra((((c,),),), kind, field, ("1",) if kind == ASSOCIATIVE else ("x",))


def sl2(field: CyclotomicField = QQ) -> Algebra:
    """sl_2 with basis e, f, h: [e,f]=h, [h,e]=2e, [h,f]=-2f."""
    return Algebra.from_products(3, {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}, LIE, field,
                                 ("e", "f", "h"))


def nonabelian_2d(field: CyclotomicField = QQ) -> Algebra:
    """The 2-dimensional Lie algebra [x, y] = y."""
    return Algebra.from_products(2, {(0, 1): {1: 1}}, LIE, field, ("x", "y"))


def abelian_lie(n: int, field: CyclotomicField = QQ) -> Algebra:
    return Algebra.from_products(n, {}, LIE, field, tuple(f"x{i + 1}" for i in range(n)))


def _adjoint_action(A: Algebra, mats, basis_mats) -> list[Matrix]:
    """Matrices of b -> [m, b] on A, where A is spanned by basis_mats."""
    from .linalg import solve

    flat = [b.flatten() for b in basis_mats]
    rows = [tuple(f[r] for f in flat) for r in range(len(flat[0]))]
    out = []
    for m in mats:
        cols = []
        for b in basis_mats:
            c = solve(rows, (m @ b - b @ m).flatten(), len(basis_mats))
            if c is None:
                raise ValueError("adjoint action leaves the algebra")
            cols.append(c)
        out.append(Matrix.from_columns(cols, A.dim, A.field))
    return out


def sl2_matrices(field: CyclotomicField = QQ) -> list[Matrix]:
    e = unit(2, 0, 1, field)
    f = unit(2, 1, 0, field)
    h = unit(2, 0, 0, field) - unit(2, 1, 1, field)
    return [e, f, h]


def m2_sl2_adjoint(field: CyclotomicField = QQ) -> tuple[Algebra, DerivationAction]:
    A = full_matrix_algebra(2, field)
    basis = [unit(2, i, j, field) for i in range(2) for j in range(2)]
    ops = _adjoint_action(A, sl2_matrices(field), basis)
    return A, DerivationAction(tuple(ops), "sl2_adjoint", ("ad e", "ad f", "ad h"))


def m2_gl2_adjoint(field: CyclotomicField = QQ) -> tuple[Algebra, DerivationAction]:
    A = full_matrix_algebra(2, field)
    basis = [unit(2, i, j, field) for i in range(2) for j in range(2)]
    ops = _adjoint_action(A, basis, basis)
    return A, DerivationAction(tuple(ops), "gl2_adjoint", ("ad e11", "ad e12", "ad e21", "ad e22"))


def m2_sign_automorphism(field: CyclotomicField = QQ) -> Matrix:
    """(a, b; c, d) -> (a, -b; -c, d) in the e11, e12, e21, e22 basis."""
    diag = [1, -1, -1, 1]
    return Matrix(tuple(tuple(Fraction(diag[i]) if i == j else Fraction(0) for j in range(4)) for i in range(4)),
                  4, field)


def m2_z2_action(field: CyclotomicField = QQ) -> tuple[Algebra, GroupAction]:
    return full_matrix_algebra(2, field), close_group([(m2_sign_automorphism(field), AUTO)], name="psi")


def m2_z2_grading(field: CyclotomicField = QQ) -> tuple[Algebra, Grading]:
    A = full_matrix_algebra(2, field)
    comps = {
        (0,): Subspace.span_of_basis_vectors(4, [0, 3], field),
        (1,): Subspace.span_of_basis_vectors(4, [1, 2], field),
    }
    return A, Grading((2,), comps, "z2grading")


def transpose_antiautomorphism(n: int, field: CyclotomicField = QQ) -> Matrix:
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    d = n * n
    rows = [[Fraction(0)] * d for _ in range(d)]
    for (i, j), k in idx.items():
        rows[idx[(j, i)]][k] = Fraction(1)
    return Matrix(tuple(tuple(r) for r in rows), d, field)


def swap_automorphism(dim_block: int, field: CyclotomicField = QQ) -> Matrix:
    """Exchange of the two summands of B + B."""
    d = 2 * dim_block
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(dim_block):
        rows[i + dim_block][i] = Fraction(1)
        rows[i][i + dim_block] = Fraction(1)
    return Matrix(tuple(tuple(r) for r in rows), d, field)


def m2_plus_m2_swap(field: CyclotomicField = QQ) -> tuple[Algebra, GroupAction]:
    A = direct_sum(full_matrix_algebra(2, field), full_matrix_algebra(2, field))
    return A, close_group([(swap_automorphism(4, field), AUTO)], name="swap")


def _block_units(m: int, field: CyclotomicField):
    n = 2 * m
    upper_left = [unit(n, i, j, field) for i in range(m) for j in range(m)]
    upper_right = [unit(n, i, m + j, field) for i in range(m) for j in range(m)]
    return upper_left, upper_right


def _embedded_slm(m: int, field: CyclotomicField) -> list[Matrix]:
    """Basis of sl_m embedded in the upper-left block of M_2m: e_ij (i != j) and e_ii - e_(i+1)(i+1)."""
    n = 2 * m
    out = [unit(n, i, j, field) for i in range(m) for j in range(m) if i != j]
    out += [unit(n, i, i, field) - unit(n, i + 1, i + 1, field) for i in range(m - 1)]
    return out


def block_associative(m: int = 2, field: CyclotomicField = QQ) -> tuple[Algebra, DerivationAction]:
    """{(C, D; 0, 0) : C, D in M_m} with sl_m acting by commutators with (C, 0; 0, 0)."""
    ul, ur = _block_units(m, field)
    basis = ul + ur
    names = [f"c{i + 1}{j + 1}" for i in range(m) for j in range(m)] + \
            [f"d{i + 1}{j + 1}" for i in range(m) for j in range(m)]
    A = Algebra.from_matrices(basis, ASSOCIATIVE, field, names)
    ops = _adjoint_action(A, _embedded_slm(m, field), basis)
    return A, DerivationAction(tuple(ops), f"sl{m}_adjoint")


def block_lie(m: int = 2, field: CyclotomicField = QQ) -> tuple[Algebra, DerivationAction]:
    """{(C, D; 0, 0) : C in sl_m, D in M_m} with sl_m acting by commutators."""
    _, ur = _block_units(m, field)
    sl = _embedded_slm(m, field)
    basis = sl + ur
    names = []
    for i in range(m):
        for j in range(m):
            if i != j:
                names.append(f"c{i + 1}{j + 1}")
    names += [f"h{i + 1}" for i in range(m - 1)]
    names += [f"d{i + 1}{j + 1}" for i in range(m) for j in range(m)]
    L = Algebra.from_matrices(basis, LIE, field, names)
    ops = _adjoint_action(L, sl, basis)
    return L, DerivationAction(tuple(ops), f"sl{m}_adjoint")


def z3_grading_of_m3(field: CyclotomicField = QQ) -> tuple[Algebra, Grading]:
    """Elementary Z_3 grading of M_3 with deg e_ij = j - i."""
    A = full_matrix_algebra(3, field)
    comps = {}
    for g in range(3):
        idx = [i * 3 + j for i in range(3) for j in range(3) if (j - i) % 3 == g]
        comps[(g,)] = Subspace.span_of_basis_vectors(9, idx, field)
    return A, Grading((3,), comps, "z3grading")


def diagonal_conjugation_action(field: CyclotomicField) -> tuple[Algebra, GroupAction]:
    """Conjugation by diag(1, zeta_4) on M_2 (needs a primitive 4th root of unity)."""
    z = field.root_of_unity(4)
    A = full_matrix_algebra(2, field)
    # X -> D X D^{-1} scales e12 by z^-1 and e21 by z
    diag = [Fraction(1), 1 / z, z, Fraction(1)]
    m = Matrix(tuple(tuple(diag[i] if i == j else Fraction(0) for j in range(4)) for i in range(4)), 4, field)
    return A, close_group([(m, AUTO)], name="diag_conjugation")


def m2_transpose_action(field: CyclotomicField = QQ) -> tuple[Algebra, GroupAction]:
    return full_matrix_algebra(2, field), close_group([(transpose_antiautomorphism(2, field), ANTI)],
                                                      name="transpose")


def inner_derivation(A: Algebra, i: int) -> Matrix:
    """ad of a basis element (commutator for associative kind)."""
    e = A.basis_vector(i)
    return A.left(e) - A.right(e) if not A.is_lie else A.left(e)


__all__ = [
    "unit", "full_matrix_algebra", "upper_triangular", "diagonal_algebra", "one_dimensional", "sl2",
    "nonabelian_2d", "abelian_lie", "sl2_matrices", "m2_sl2_adjoint", "m2_gl2_adjoint",
    "m2_sign_automorphism", "m2_z2_action", "m2_z2_grading", "transpose_antiautomorphism",
    "swap_automorphism", "m2_plus_m2_swap", "block_associative", "block_lie", "z3_grading_of_m3",
    "diagonal_conjugation_action", "m2_transpose_action", "inner_derivation",
]
