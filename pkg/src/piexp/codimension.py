"""Codimensions of (graded, group, differential) multilinear identities by exact ranks.

A decorated multilinear monomial evaluates to an n-linear map A^n -> A; the codimension is
the dimension of the span of these maps.  For a fixed order of the variables the span is
built in stages (a degree-n monomial is a degree-(n-1) monomial times one decorated
variable), and the other orders are obtained by permuting the tensor axes.
"""
from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import permutations, product
from math import lcm

import numpy as np

from .algebra import Algebra
from .errors import BudgetExceededError, ValidationError
from .linalg import Echelon, certified_rank
from .structures import (DerivationAction, GroupAction, Grading, OperatorAlgebra, Trivial, operator_envelope)

DEFAULT_BUDGET = 10 ** 8

ORDINARY = "ordinary"
GRADED = "graded"
GROUP = "group"
OPERATOR = "operator"


def budget() -> int:
    env = os.environ.get("CODIM_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


def regime_of(s) -> str:
    if s is None or isinstance(s, Trivial):
        return ORDINARY
    if isinstance(s, Grading):
        return GRADED
    if isinstance(s, GroupAction):
        return GROUP
    if isinstance(s, (DerivationAction, OperatorAlgebra)):
        return OPERATOR
    raise ValidationError(f"unsupported structure {type(s).__name__}")


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class DecoratedMonomial:
    """x_{order[0]}^{h_0} ... x_{order[n-1]}^{h_{n-1}} (left-normed bracket for Lie kind).

    ``order`` holds 0-based variable indices; a decoration is None (identity), an int (index
    into the envelope basis), a Matrix, or a grading label tuple.
    """

    order: tuple
    decorations: tuple = ()

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ValidationError(f"monomial {self.order} is not multilinear in x1..x{len(self.order)}")
        if self.decorations and len(self.decorations) != len(self.order):
            raise ValidationError("one decoration per variable position is required")

    @property
    def n(self) -> int:
        return len(self.order)

    def decor(self, p: int):
        return self.decorations[p] if self.decorations else None


@dataclass(frozen=True)
class MultilinearPolynomial:
    n: int
    terms: tuple  # of (coefficient, DecoratedMonomial)

    def __post_init__(self):
        for _, m in self.terms:
            if m.n != self.n:
                raise ValidationError(f"term of degree {m.n} in a degree-{self.n} polynomial")

    def with_coefficient(self, idx: int, coeff) -> MultilinearPolynomial:
        terms = list(self.terms)
        terms[idx] = (coeff, terms[idx][1])
        return MultilinearPolynomial(self.n, tuple(terms))

    def scaled(self, c) -> MultilinearPolynomial:
        return MultilinearPolynomial(self.n, tuple((c * a, m) for a, m in self.terms))


def _label_regime(f: MultilinearPolynomial) -> bool:
    return any(isinstance(d, tuple) for _, m in f.terms for d in m.decorations)


# --------------------------------------------------------------------------
# evaluation


def _resolve(dec, envelope, d, field):
    from .linalg import Matrix

    if dec is None or isinstance(dec, tuple):
        return None  # grading labels restrict the substitution, not the value
    if isinstance(dec, Matrix):
        return dec
    if isinstance(dec, int):
        if envelope is None or not 0 <= dec < len(envelope.basis):
            raise ValidationError(f"decoration index {dec} outside the operator envelope")
        return envelope.basis[dec]
    raise ValidationError(f"cannot use decoration {dec!r} here")


def evaluate_monomial(A: Algebra, m: DecoratedMonomial, values, envelope=None) -> tuple:
    """Value of the monomial at x_i = values[i] (coordinate vectors)."""
    acc = None
    for p, var in enumerate(m.order):
        v = values[var]
        h = _resolve(m.decor(p), envelope, A.dim, A.field)
        if h is not None:
            v = h.apply(v)
        acc = v if acc is None else A.mul(acc, v)
    return acc


@dataclass
class IdentityResult:
    identity: bool
    witness: tuple | None = None
    value: tuple | None = None

    def __bool__(self):
        return self.identity


def _vector_name(A: Algebra, v, fallback: str) -> str:
    nz = [i for i, x in enumerate(v) if x]
    return A.name(nz[0]) if len(nz) == 1 and v[nz[0]] == 1 else fallback


def _substitution_sets(A: Algebra, s, f: MultilinearPolynomial):
    """Per-variable lists of (name, vector) to substitute, plus the envelope for index decorations."""
    basis = [(A.name(i), A.basis_vector(i)) for i in range(A.dim)]
    if _label_regime(f):
        if not isinstance(s, Grading):
            raise ValidationError("graded polynomial needs a grading structure")
        labels = [None] * f.n
        for _, m in f.terms:
            for var, dec in zip(m.order, m.decorations):
                if not isinstance(dec, tuple):
                    raise ValidationError("graded polynomials need a label on every variable")
                dec = s.normalize(dec)
                if labels[var] is not None and labels[var] != dec:
                    raise ValidationError(f"variable x{var + 1} carries two different labels")
                labels[var] = dec
        sets = []
        for lab in labels:
            comp = s.components.get(lab)
            vecs = [] if comp is None else list(comp.basis)
            sets.append([(_vector_name(A, v, f"{lab}:{k}"), v) for k, v in enumerate(vecs)])
        return sets, None
    envelope = None
    if any(isinstance(dec, int) for _, m in f.terms for dec in m.decorations):
        envelope = operator_envelope(A, s)
    return [basis] * f.n, envelope


def is_identity(A: Algebra, s, f: MultilinearPolynomial) -> IdentityResult:
    """Evaluate f on every basis tuple (homogeneous ones in the graded regime)."""
    sets, envelope = _substitution_sets(A, s, f)
    terms = [(c, m) for c, m in f.terms if c]
    for choice in product(*[range(len(S)) for S in sets]):
        values = [sets[i][j][1] for i, j in enumerate(choice)]
        total = [Fraction(0)] * A.dim
        for c, m in terms:
            v = evaluate_monomial(A, m, values, envelope)
            for k, x in enumerate(v):
                if x:
                    total[k] = total[k] + c * x
        if any(total):
            return IdentityResult(False, tuple(sets[i][j][0] for i, j in enumerate(choice)), tuple(total))
    return IdentityResult(True)


# --------------------------------------------------------------------------
# staged spans


def _structure_tensor(A: Algebra):
    """Structure constants as an object array, scaled to integers over Q."""
    d = A.dim
    C = np.empty((d, d, d), dtype=object)
    if A.field.is_rational:
        den = 1
        for row in A.table:
            for v in row:
                for x in v:
                    den = lcm(den, Fraction(x).denominator)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    C[i, j, k] = int(A.table[i][j][k] * den)
    else:
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    C[i, j, k] = A.table[i][j][k]
    return C


def _decoration_array(M, rational: bool):
    """d x m object array of an operator/inclusion matrix, scaled to integers over Q."""
    arr = np.empty((M.nrows, M.ncols), dtype=object)
    if rational:
        den = 1
        for r in M.rows:
            for x in r:
                den = lcm(den, Fraction(x).denominator)
        for i, r in enumerate(M.rows):
            for j, x in enumerate(r):
                arr[i, j] = int(x * den)
    else:
        for i, r in enumerate(M.rows):
            for j, x in enumerate(r):
                arr[i, j] = x
    return arr


def _flat_sparse(t) -> dict:
    flat = t.ravel()
    return {i: v for i, v in enumerate(flat.tolist()) if v}


def _extend(g, D, C):
    """(g . D)(p, b)_k = sum_ij g(p)_i D[j, b] C[i, j, k]: append one decorated variable."""
    t1 = np.tensordot(g, C, axes=([g.ndim - 1], [0]))          # (P..., j, k)
    t2 = np.tensordot(t1, D, axes=([t1.ndim - 2], [0]))         # (P..., k, b)
    return np.swapaxes(t2, -1, -2)                             # (P..., b, k)


def staged_span(C, decor_sets) -> list:
    """Independent tensors spanning the evaluations of x_1^{h_1} ... x_n^{h_n}, h_p in decor_sets[p]."""
    cur = []
    ech = Echelon()
    for D in decor_sets[0]:
        t = np.ascontiguousarray(D.T)
        if ech.add(_flat_sparse(t)):
            cur.append(t)
    for p in range(1, len(decor_sets)):
        ech = Echelon()
        nxt = []
        for g in cur:
            for D in decor_sets[p]:
                t = _extend(g, D, C)
                if ech.add(_flat_sparse(t)):
                    nxt.append(t)
        cur = nxt
    return cur


def _axes_for(sigma) -> list[int]:
    """np.transpose axes turning position-ordered tensors into variable-ordered ones."""
    n = len(sigma)
    inv = [0] * n
    for p, var in enumerate(sigma):
        inv[var] = p
    return inv + [n]


@dataclass
class RowSpace:
    """Row space of an evaluation matrix with the variable-tensor shape of its columns."""

    echelon: Echelon
    shape: tuple
    rows_nominal: int
    cols: int


def _check_budget(rows: int, cols: int, limit: int | None):
    limit = budget() if limit is None else limit
    if rows * cols > limit:
        raise BudgetExceededError(
            f"evaluation matrix of {rows} x {cols} entries exceeds the budget {limit} (set CODIM_BUDGET)",
            rows, cols, limit)


def _envelope_decorations(A: Algebra, s, regime: str):
    if regime == ORDINARY:
        from .linalg import Matrix

        return [Matrix.identity(A.dim, A.field)]
    return list(operator_envelope(A, s).basis)


def _permuted_rows(A: Algebra, s, n: int, regime: str, limit: int | None):
    """Sparse rows of the evaluation matrix (staged span per order), plus nominal sizes."""
    if regime == GRADED:
        regime = OPERATOR  # projections onto components realise the labels
    d = A.dim
    decs = _envelope_decorations(A, s, regime)
    rows_nominal = math.factorial(n) * len(decs) ** n
    cols = d ** (n + 1)
    _check_budget(rows_nominal, cols, limit)
    C = _structure_tensor(A)
    rational = A.field.is_rational
    D = [_decoration_array(h, rational) for h in decs]
    base = staged_span(C, [D] * n)

    def gen():
        for sigma in permutations(range(n)):
            axes = _axes_for(sigma)
            for t in base:
                yield _flat_sparse(np.transpose(t, axes))

    return gen(), rows_nominal, cols


def evaluation_row_space(A: Algebra, s, n: int, regime: str | None = None,
                         limit: int | None = None) -> RowSpace:
    """Row space of the full evaluation matrix for the ordinary, group or operator regime."""
    regime = regime or regime_of(s)
    rows, rows_nominal, cols = _permuted_rows(A, s, n, regime, limit)
    ech = Echelon()
    for r in rows:
        ech.add(r)
        if ech.rank == cols:
            break
    return RowSpace(ech, (A.dim,) * (n + 1), rows_nominal, cols)


def modular_codim(A: Algebra, s, n: int, regime: str | None = None, limit: int | None = None,
                  primes: int = 2) -> list[int]:
    """Ranks of the evaluation matrix modulo several primes (lower bounds of the exact rank)."""
    from .linalg import primes_for, rank_mod_p

    regime = regime or regime_of(s)
    rows, _, cols = _permuted_rows(A, s, n, regime, limit)
    rows = list(rows)
    return [rank_mod_p(rows, cols, p, A.field)[0] for p in primes_for(A.field, primes)]


# --------------------------------------------------------------------------
# codimensions


@dataclass
class CodimReport:
    n: int
    value: int
    regime: str
    rows: int
    cols: int
    envelope_dim: int = 1
    breakdown: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {"n": self.n, "value": self.value, "regime": self.regime, "rows": self.rows, "cols": self.cols,
               "envelope_dim": self.envelope_dim, "seconds": round(self.seconds, 4)}
        if self.breakdown:
            out["breakdown"] = {",".join("(" + ",".join(map(str, g)) + ")" for g in key): v
                                for key, v in self.breakdown.items()}
        return out


def _graded_codim(A: Algebra, gr: Grading, n: int, limit: int | None):
    supp = sorted(gr.support)
    d = A.dim
    rows_nominal = math.factorial(n) * len(supp) ** n
    _check_budget(rows_nominal, d ** (n + 1), limit)
    C = _structure_tensor(A)
    rational = A.field.is_rational
    from .linalg import Matrix

    inc = {g: _decoration_array(Matrix.from_columns(gr.components[g].basis, d, A.field), rational) for g in supp}
    prefix_cache: dict = {}

    def tensor_for(labels):
        if labels in prefix_cache:
            return prefix_cache[labels]
        if len(labels) == 1:
            t = np.ascontiguousarray(inc[labels[0]].T)
        else:
            t = _extend(tensor_for(labels[:-1]), inc[labels[-1]], C)
        prefix_cache[labels] = t
        return t

    by_multiset: dict = {}
    breakdown = {}
    total = 0
    for labels in product(supp, repeat=n):
        key = tuple(sorted(labels))
        if key not in by_multiset:
            ech = Echelon()
            for sigma in permutations(range(n)):
                t = tensor_for(tuple(labels[v] for v in sigma))
                ech.add(_flat_sparse(np.transpose(t, _axes_for(sigma))))
            by_multiset[key] = ech.rank
        breakdown[labels] = by_multiset[key]
        total += by_multiset[key]
    return total, breakdown, rows_nominal


def codim(A: Algebra, s=None, n: int = 1, regime: str | None = None, limit: int | None = None,
          modular: bool = False) -> CodimReport:
    """n-th codimension of A in the regime given by the structure (or forced by ``regime``)."""
    if n < 1:
        raise ValidationError("n must be a positive integer")
    t0 = time.perf_counter()
    regime = regime or regime_of(s)
    cols = A.dim ** (n + 1)
    if regime == GRADED:
        if not isinstance(s, Grading):
            raise ValidationError("graded regime needs a grading")
        value, breakdown, rows = _graded_codim(A, s, n, limit)
        return CodimReport(n, value, GRADED, rows, cols, len(s.support), breakdown, time.perf_counter() - t0)
    env = 1 if regime == ORDINARY else operator_envelope(A, s).dim
    if modular:
        rows, rows_nominal, _ = _permuted_rows(A, s, n, regime, limit)
        value = certified_rank(list(rows), cols)
    else:
        rs = evaluation_row_space(A, s, n, regime, limit)
        value, rows_nominal = rs.echelon.rank, rs.rows_nominal
    return CodimReport(n, value, regime, rows_nominal, cols, env, {}, time.perf_counter() - t0)


@dataclass
class CodimSeries:
    reports: list
    predicted_exponent: int | None = None

    @property
    def values(self) -> list[int]:
        return [r.value for r in self.reports]

    @property
    def root_trend(self) -> list[float]:
        return [r.value ** (1.0 / r.n) if r.value else 0.0 for r in self.reports]

    def to_json(self) -> dict:
        return {"values": self.values, "root_trend": [round(x, 6) for x in self.root_trend],
                "predicted_exponent": self.predicted_exponent,
                "reports": [r.to_json() for r in self.reports]}


def codim_series(A: Algebra, s=None, n_max: int = 3, regime: str | None = None, limit: int | None = None,
                 predict: bool = True) -> CodimSeries:
    reports = [codim(A, s, n, regime, limit) for n in range(1, n_max + 1)]
    pred = None
    if predict:
        from .exponent import associative_exponent, lie_exponent_from_chains

        try:
            pred = lie_exponent_from_chains(A, s).d if A.is_lie else associative_exponent(A, s).d
        except Exception:  # the prediction is informational only
            pred = None
    return CodimSeries(reports, pred)


# --------------------------------------------------------------------------
# identities from kernel vectors (used by oracles and reports)


def spanning_monomials(A: Algebra, s, n: int, regime: str | None = None) -> list[DecoratedMonomial]:
    """The redundant spanning set: all orders times all envelope-basis decorations."""
    regime = regime or regime_of(s)
    if regime == GRADED:
        raise ValidationError("graded spanning sets are indexed by label vectors")
    k = 1 if regime == ORDINARY else operator_envelope(A, s).dim
    out = []
    for sigma in permutations(range(n)):
        for decs in product(range(k), repeat=n):
            out.append(DecoratedMonomial(tuple(sigma), tuple(decs) if regime != ORDINARY else ()))
    return out
