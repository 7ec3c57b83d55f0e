from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from piexp import catalog
from piexp.codimension import (GRADED, OPERATOR, ORDINARY, DecoratedMonomial, MultilinearPolynomial, codim,
                               codim_series, evaluation_row_space, is_identity, modular_codim, spanning_monomials)
from piexp.errors import BudgetExceededError, ValidationError
from piexp.fields import cyclotomic_field
from piexp.linalg import Matrix
from piexp.problem import bundled
from piexp.structures import (TRIVIAL, DerivationAction, Grading, OperatorAlgebra, close_group,
                              dual_action_from_grading, operator_envelope)
from piexp.subspace import Subspace

import oracles
from helpers import change_basis, conjugate_operator, invertible


def commutator(dec=()):
    return MultilinearPolynomial(2, ((1, DecoratedMonomial((0, 1), dec)), (-1, DecoratedMonomial((1, 0), dec[::-1]))))


def series(A, s, n_max, **kw):
    return [codim(A, s, n, **kw).value for n in range(1, n_max + 1)]


# ---- golden values ------------------------------------------------------------

def test_golden_ordinary_series():
    assert series(catalog.full_matrix_algebra(2), None, 3) == [1, 2, 6]
    assert series(catalog.upper_triangular(2), None, 4) == [1, 2, 6, 18]
    assert series(catalog.sl2(), None, 3) == [1, 1, 2]
    assert series(catalog.one_dimensional(), None, 3) == [1, 1, 1]
    assert series(catalog.nonabelian_2d(), None, 4) == [1, 1, 2, 3]


def test_golden_structured_values():
    A, sl = catalog.m2_sl2_adjoint()
    rep = codim(A, sl, 1)
    assert rep.value == 10 and rep.envelope_dim == 10 and rep.regime == OPERATOR
    assert codim(A, sl, 2).value == 55
    assert series(*catalog.m2_gl2_adjoint(), 2) == [10, 55]
    A, gr = catalog.m2_z2_grading()
    rep = codim(A, gr, 2)
    assert rep.value == 7 and rep.regime == GRADED
    # 7 = 1 + 2 + 2 + 2 over the label vectors (0,0), (0,1), (1,0), (1,1)
    assert sorted(rep.breakdown.values()) == [1, 2, 2, 2]
    assert series(A, gr, 3) == [2, 7, 28]
    assert series(*catalog.m2_z2_action(), 3) == [2, 7, 28]
    assert series(*catalog.m2_transpose_action(), 3) == [2, 7, 28]
    assert series(*catalog.m2_plus_m2_swap(), 2) == [2, 8]
    assert codim(*catalog.block_lie(2), 1).value == 13


def test_modular_path_agrees():
    A, sl = catalog.m2_sl2_adjoint()
    assert codim(A, sl, 2, modular=True).value == 55
    ranks = modular_codim(A, sl, 2)
    assert len(ranks) == 2 and all(r <= 55 for r in ranks)
    assert codim(catalog.upper_triangular(2), None, 4, modular=True).value == 18


def test_series_reports_prediction():
    ser = codim_series(catalog.upper_triangular(2), None, 4)
    assert ser.values == [1, 2, 6, 18] and ser.predicted_exponent == 2
    js = ser.to_json()
    assert js["values"] == [1, 2, 6, 18] and len(js["root_trend"]) == 4


def test_spanning_set_size():
    A, sl = catalog.m2_sl2_adjoint()
    assert len(spanning_monomials(A, sl, 2)) == 2 * 10 ** 2
    assert len(spanning_monomials(A, None, 3)) == 6
    with pytest.raises(ValidationError):
        spanning_monomials(*catalog.m2_z2_grading(), 2)


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError) as err:
        codim(catalog.full_matrix_algebra(2), None, 5, limit=1000)
    assert err.value.rows == 120 and err.value.cols == 4 ** 6


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("CODIM_BUDGET", "100")
    with pytest.raises(BudgetExceededError):
        codim(catalog.full_matrix_algebra(2), None, 2)


def test_bad_degree():
    with pytest.raises(ValidationError):
        codim(catalog.full_matrix_algebra(2), None, 0)


# ---- identities -------------------------------------------------------------

def test_commutator_identity():
    assert is_identity(catalog.diagonal_algebra(2), None, commutator())
    res = is_identity(catalog.full_matrix_algebra(2), None, commutator())
    assert not res and res.witness == ("e11", "e12") and any(res.value)


def test_perturbation_gives_witness():
    f = commutator()
    D = catalog.diagonal_algebra(2)
    g = f.with_coefficient(1, Fraction(-2))
    res = is_identity(D, None, g)
    assert not res and res.witness is not None


def test_bundled_identities():
    for problem, poly in (("m2_z2_action", "symmetric_commutator"), ("m2_sl2_adjoint", "trace_operator"),
                          ("m2_z2_graded", "even_commutator"), ("ut2", "commutator_product")):
        pf = bundled(problem)
        f, sname = pf.polynomials[poly]
        assert is_identity(pf.algebra, pf.structure(sname), f), (problem, poly)
    pf = bundled("m2_z2_graded")
    f, sname = pf.polynomials["odd_commutator"]
    assert not is_identity(pf.algebra, pf.structure(sname), f)


def test_graded_polynomial_needs_a_grading():
    f = commutator(((0,), (0,)))
    with pytest.raises(ValidationError):
        is_identity(catalog.full_matrix_algebra(2), None, f)


def test_nonmultilinear_monomial_rejected():
    with pytest.raises(ValidationError):
        DecoratedMonomial((0, 0))


# ---- oracle cross-checks ------------------------------------------------------------

def envelope_rows(A, s):
    return [[list(r) for r in m.rows] for m in operator_envelope(A, s).basis]


@pytest.mark.parametrize("name, n", [("M2", 2), ("M2", 3), ("UT2", 3), ("sl2", 3), ("N2", 3)])
def test_oracle_ordinary(name, n):
    A = {"M2": catalog.full_matrix_algebra(2), "UT2": catalog.upper_triangular(2), "sl2": catalog.sl2(),
         "N2": catalog.nonabelian_2d()}[name]
    rk, mods, kerdim, ok, nrows = oracles.oracle_codim(A, None, n)
    assert rk == codim(A, None, n).value
    assert mods == [rk, rk] and ok and kerdim + rk == nrows


def test_oracle_group_and_operator_regimes():
    A, G = catalog.m2_z2_action()
    ops = envelope_rows(A, G)
    rk, mods, _, ok, _ = oracles.oracle_codim(A, G, 2, ops, list(range(len(ops))))
    assert rk == codim(A, G, 2).value == 7 and ok and mods == [7, 7]
    A, sl = catalog.m2_sl2_adjoint()
    ops = envelope_rows(A, sl)
    rk, mods, _, ok, _ = oracles.oracle_codim(A, sl, 1, ops, list(range(len(ops))))
    assert rk == 10 and ok


def test_oracle_graded():
    A, gr = catalog.m2_z2_grading()
    total, mods, breakdown, ok = oracles.oracle_graded_codim(A, gr, 2)
    assert total == 7 and mods == [7, 7] and ok
    rep = codim(A, gr, 2)
    assert {k: v for k, v in rep.breakdown.items()} == breakdown


# ---- properties -------------------------------------------------------------

@settings(max_examples=15)
@given(st.sampled_from(["M2", "UT2", "sl2"]).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, 3))))
def test_dimension_bound(case):
    name, n = case
    A = {"M2": catalog.full_matrix_algebra(2), "UT2": catalog.upper_triangular(2), "sl2": catalog.sl2()}[name]
    c = codim(A, None, n).value
    assert 1 <= c <= A.dim ** (n + 1)


@settings(max_examples=15)
@given(invertible(4))
def test_codim_invariant_under_base_change(P):
    A, sl = catalog.m2_sl2_adjoint()
    B = change_basis(A, P)
    ops = DerivationAction(tuple(conjugate_operator(P, m) for m in sl.generators))
    assert codim(B, ops, 1).value == 10
    assert series(B, None, 3) == [1, 2, 6]


@settings(max_examples=10)
@given(invertible(10))
def test_envelope_basis_independence(Q):
    A, sl = catalog.m2_sl2_adjoint()
    env = operator_envelope(A, sl).basis
    mixed = []
    for j in range(len(env)):
        m = Matrix.zeros(4, 4)
        for i, h in enumerate(env):
            c = Q.rows[i][j]
            if c:
                m = m + h.scale(c)
        mixed.append(m)
    s = OperatorAlgebra(tuple(mixed))
    assert operator_envelope(A, s).dim == 10
    assert codim(A, s, 2).value == 55


@settings(max_examples=10)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(lambda c: any(c)))
def test_derivation_generators_only_matter_through_envelope(coeffs):
    # replacing one generator by a nonzero combination keeps the generated envelope whenever it still spans
    A, sl = catalog.m2_sl2_adjoint()
    e, f, h = sl.generators
    combo = e.scale(coeffs[0]) + f.scale(coeffs[1]) + h.scale(coeffs[2])
    gens = (e, f, h, combo)
    assert codim(A, DerivationAction(gens), 1).value == 10


def test_trivial_structure_matches_ordinary():
    for A in (catalog.full_matrix_algebra(2), catalog.upper_triangular(2)):
        ident = OperatorAlgebra((Matrix.identity(A.dim),))
        for n in (1, 2, 3):
            v = codim(A, None, n).value
            assert codim(A, TRIVIAL, n).value == v
            assert codim(A, ident, n).value == v
            assert codim(A, close_group([Matrix.identity(A.dim)]), n).value == v


@settings(max_examples=10)
@given(invertible(4))
def test_graded_equals_dual_action_after_base_change(P):
    A, gr = catalog.m2_z2_grading()
    B = change_basis(A, P)
    Pinv = P.inverse()
    comps = {g: Subspace.from_vectors(4, [Pinv.apply(v) for v in V.basis]) for g, V in gr.components.items()}
    grB = Grading(gr.moduli, comps)
    G = dual_action_from_grading(B, grB)
    for n in (1, 2):
        assert codim(B, grB, n).value == codim(B, G, n).value == [2, 7][n - 1]


def test_graded_codim_through_projection_envelope():
    A, gr = catalog.m2_z2_grading()
    for n in (1, 2, 3):
        assert codim(A, gr, n).value == codim(A, gr, n, regime=OPERATOR).value


@pytest.mark.parametrize("m", [3, 4])
def test_field_extension_stability(m):
    F = cyclotomic_field(m)
    assert series(catalog.full_matrix_algebra(2, F), None, 3) == [1, 2, 6]
    assert series(*catalog.m2_z2_grading(F), 2) == [2, 7]
    assert codim(*catalog.m2_sl2_adjoint(F), 1).value == 10


def test_row_space_shape():
    rs = evaluation_row_space(catalog.upper_triangular(2), None, 2)
    assert rs.shape == (3, 3, 3) and rs.cols == 27 and rs.echelon.rank == 2
    assert rs.rows_nominal == 2 and codim(catalog.upper_triangular(2), None, 2, regime=ORDINARY).value == 2
