from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from piexp import catalog
from piexp.algebra import (ASSOCIATIVE, LIE, Algebra, center, center_and_annihilator, direct_sum, is_ideal,
                           nilpotency_index, nilradical, quotient, radical, subspace_product, validate_algebra)
from piexp.errors import ValidationError
from piexp.subspace import Subspace

from helpers import change_basis, invertible

SMALL = {
    "M2": catalog.full_matrix_algebra(2),
    "UT2": catalog.upper_triangular(2),
    "UT3": catalog.upper_triangular(3),
    "F": catalog.one_dimensional(),
    "D2": catalog.diagonal_algebra(2),
}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_catalog_associative_algebras_validate(name):
    assert validate_algebra(SMALL[name]).ok


@pytest.mark.parametrize("A", [catalog.sl2(), catalog.nonabelian_2d(), catalog.abelian_lie(3),
                               catalog.block_lie(2)[0]])
def test_catalog_lie_algebras_validate(A):
    assert validate_algebra(A).ok


def test_non_associative_table_names_the_triple():
    # x*x = y, everything else 0 except y*x = x: (xx)x = yx = x but x(xx) = xy = 0
    A = Algebra.from_products(2, {(0, 0): {1: 1}, (1, 0): {0: 1}}, ASSOCIATIVE, basis_names=("x", "y"))
    rep = validate_algebra(A)
    assert not rep.ok
    assert rep.witness == (0, 0, 0)
    assert "associativity fails on (x, x, x)" in rep.message
    with pytest.raises(ValidationError):
        rep.raise_if_invalid()


def test_jacobi_failure():
    # [a,b]=c, [b,c]=a, [c,a]=c breaks Jacobi
    A = Algebra.from_products(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {2: 1}}, LIE, basis_names=("a", "b", "c"))
    rep = validate_algebra(A)
    assert not rep.ok and "Jacobi" in rep.message


def test_subspace_product_ut2():
    U = SMALL["UT2"]
    J = radical(U).radical
    assert subspace_product(U, J, J).dim == 0
    assert subspace_product(U, U.full(), U.full()) == U.full()


def test_radicals_of_small_algebras():
    rep = radical(SMALL["UT2"])
    assert rep.radical.dim == 1 and rep.nilpotency_index == 2 and rep.semisimple_quotient_dim == 2
    # J(UT2) = span{e12}
    assert rep.radical == Subspace.span_of_basis_vectors(3, [1])
    assert radical(SMALL["M2"]).radical.dim == 0
    rep3 = radical(SMALL["UT3"])
    assert rep3.radical.dim == 3 and rep3.nilpotency_index == 3
    assert radical(SMALL["F"]).radical.dim == 0


def test_lie_radicals():
    assert radical(catalog.sl2()).radical.dim == 0
    r2 = radical(catalog.nonabelian_2d())
    # least p with R^(p) = 0, counting R^(1) = R
    assert r2.radical.dim == 2 and r2.derived_length == 3
    L, _ = catalog.block_lie(2)
    assert radical(L).radical.dim == 4


def test_nilradical():
    L = catalog.nonabelian_2d()
    assert nilradical(L) == Subspace.span_of_basis_vectors(2, [1])
    assert nilradical(catalog.sl2()).dim == 0
    assert nilradical(catalog.abelian_lie(3)).dim == 3
    B, _ = catalog.block_lie(2)
    assert nilradical(B).dim == 4


def test_center_and_annihilator():
    M2 = SMALL["M2"]
    Z = center_and_annihilator(M2, "center")
    assert Z == Subspace.from_vectors(4, [(1, 0, 0, 1)])
    assert center(catalog.sl2()).dim == 0
    L, _ = catalog.block_lie(2)
    R = radical(L).radical
    assert center_and_annihilator(L, "ann_module", L.full(), R) == R
    # the radical of the block Lie algebra is abelian, so it annihilates itself
    assert center_and_annihilator(L, "ann_module", R, L.zero()).contains_subspace(R)
    with pytest.raises(ValueError):
        center_and_annihilator(L, "ann_module", R, L.full())


def test_quotient_by_radical_is_semisimple():
    U = SMALL["UT3"]
    q = quotient(U, radical(U).radical)
    assert q.algebra.dim == 3 and radical(q.algebra).radical.dim == 0


# ---- properties -------------------------------------------------------------

pieces = st.lists(st.sampled_from(["M2", "UT2", "F", "D2"]), min_size=1, max_size=3)


@given(pieces)
def test_radical_is_additive_on_direct_sums(names):
    A = direct_sum(*[SMALL[n] for n in names])
    assert radical(A).radical.dim == sum(radical(SMALL[n]).radical.dim for n in names)
    assert center(A).dim == sum(center(SMALL[n]).dim for n in names)


@given(st.sampled_from(["M2", "UT2", "UT3", "D2"]).flatmap(lambda n: st.tuples(st.just(n), invertible(SMALL[n].dim))))
def test_radical_invariant_under_base_change(case):
    name, P = case
    A = SMALL[name]
    B = change_basis(A, P)
    assert validate_algebra(B).ok
    rA, rB = radical(A), radical(B)
    assert rA.radical.dim == rB.radical.dim and rA.nilpotency_index == rB.nilpotency_index
    # the radical transports along the base change
    assert Subspace.from_vectors(A.dim, [P.apply(v) for v in rB.radical.basis]) == rA.radical
    assert center(A).dim == center(B).dim


@given(invertible(3))
def test_lie_radical_invariant_under_base_change(P):
    for L in (catalog.sl2(), catalog.nonabelian_2d()):
        if L.dim != 3:
            continue
        M = change_basis(L, P)
        assert radical(M).radical.dim == radical(L).radical.dim


@given(pieces)
def test_radical_is_nilpotent_ideal(names):
    A = direct_sum(*[SMALL[n] for n in names])
    J = radical(A).radical
    assert is_ideal(A, J)
    assert nilpotency_index(A, J) is not None
    q = quotient(A, J)
    assert radical(q.algebra).radical.dim == 0


def test_from_matrices_round_trip():
    A = catalog.full_matrix_algebra(2)
    e = A.basis_vector
    assert A.mul(e(1), e(2)) == (Fraction(1), 0, 0, 0)  # e12 e21 = e11
    assert A.mul(e(2), e(1)) == (0, 0, 0, Fraction(1))
