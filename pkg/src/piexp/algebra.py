"""Structure-constant algebras: validation, subspace products, radicals, centers."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import product

from .errors import InconsistencyError, ValidationError
from .fields import QQ, CyclotomicField, field_of
from .linalg import Echelon, Matrix, kernel_basis, solve, sparse
from .subspace import Subspace

ASSOCIATIVE = "associative"
LIE = "lie"


@dataclass(frozen=True, eq=False)
class Algebra:
    """Finite-dimensional algebra given by structure constants.

    ``table[i][j]`` is the coordinate vector of ``e_i * e_j`` (or ``[e_i, e_j]``).
    """

    table: tuple
    kind: str = ASSOCIATIVE
    field: CyclotomicField = QQ
    basis_names: tuple | None = None

    def __post_init__(self):
        if self.kind not in (ASSOCIATIVE, LIE):
            raise ValidationError(f"unknown algebra kind {self.kind!r}")
        d = len(self.table)
        for i, row in enumerate(self.table):
            if len(row) != d or any(len(v) != d for v in row):
                raise ValidationError(f"structure table row {i} is not {d} x {d}", location=f"table[{i}]")
        if self.basis_names is not None and len(self.basis_names) != d:
            raise ValidationError("basis_names length differs from the dimension")

    @classmethod
    def from_table(cls, table, kind: str = ASSOCIATIVE, field: CyclotomicField | None = None,
                   basis_names=None) -> Algebra:
        if field is None:
            field = field_of(x for row in table for v in row for x in v) or QQ
        tab = tuple(tuple(tuple(field(x) for x in v) for v in row) for row in table)
        return cls(tab, kind, field, tuple(basis_names) if basis_names else None)

    @classmethod
    def from_products(cls, dim: int, products: dict, kind: str = ASSOCIATIVE,
                      field: CyclotomicField = QQ, basis_names=None) -> Algebra:
        """Build from sparse products ``{(i, j): {k: c}}``; for Lie kind only i<j is needed."""
        zero = Fraction(0)
        tab = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in products.items():
            for k, c in out.items():
                tab[i][j][k] = field(c)
                if kind == LIE and i != j:
                    tab[j][i][k] = -field(c)
        return cls(tuple(tuple(tuple(v) for v in row) for row in tab), kind, field,
                   tuple(basis_names) if basis_names else None)

    @classmethod
    def from_matrices(cls, basis, kind: str = ASSOCIATIVE, field: CyclotomicField | None = None,
                      basis_names=None) -> Algebra:
        """Algebra spanned by matrices closed under the product (or commutator)."""
        mats = [m if isinstance(m, Matrix) else Matrix.from_rows(m, field) for m in basis]
        if field is None:
            field = next((m.field for m in mats if not m.field.is_rational), QQ)
        flat = [m.flatten() for m in mats]
        rows = [tuple(f[r] for f in flat) for r in range(len(flat[0]))]
        d = len(mats)
        tab = []
        for i in range(d):
            row = []
            for j in range(d):
                p = mats[i] @ mats[j]
                if kind == LIE:
                    p = p - mats[j] @ mats[i]
                coords = solve(rows, p.flatten(), d)
                if coords is None:
                    raise ValidationError("matrix span is not closed under the product", witness=(i, j))
                row.append(coords)
            tab.append(tuple(row))
        return cls(tuple(tab), kind, field, tuple(basis_names) if basis_names else None)

    @property
    def dim(self) -> int:
        return len(self.table)

    @property
    def is_lie(self) -> bool:
        return self.kind == LIE

    def name(self, i: int) -> str:
        return self.basis_names[i] if self.basis_names else f"e{i + 1}"

    @cached_property
    def _sparse(self):
        return [[[(k, c) for k, c in enumerate(v) if c] for v in row] for row in self.table]

    def zero_vector(self) -> tuple:
        return (Fraction(0),) * self.dim

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def mul(self, u, v) -> tuple:
        out = [Fraction(0)] * self.dim
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            srow = self._sparse[i]
            for j, b in nv:
                ab = a * b
                for k, c in srow[j]:
                    out[k] = out[k] + ab * c
        return tuple(out)

    def left(self, u) -> Matrix:
        """Matrix of v -> u v (ad u for Lie kind); columns are images of basis vectors."""
        cols = [self.mul(u, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim, self.field)

    def right(self, u) -> Matrix:
        cols = [self.mul(self.basis_vector(j), u) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim, self.field)

    ad = left

    @cached_property
    def left_basis(self) -> list[Matrix]:
        return [self.left(self.basis_vector(i)) for i in range(self.dim)]

    @cached_property
    def right_basis(self) -> list[Matrix]:
        return [self.right(self.basis_vector(i)) for i in range(self.dim)]

    def multiplication_operators(self) -> list[Matrix]:
        if self.is_lie:
            return list(self.left_basis)
        return list(self.left_basis) + list(self.right_basis)

    def full(self) -> Subspace:
        return Subspace.full(self.dim, self.field)

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim, self.field)

    def span(self, vectors) -> Subspace:
        return Subspace.from_vectors(self.dim, list(vectors), self.field)

    def to_json_table(self) -> list:
        return [[[self.field.format(x) for x in v] for v in row] for row in self.table]

    def __repr__(self):
        return f"Algebra(kind={self.kind!r}, dim={self.dim}, field=Q(zeta_{self.field.conductor}))"


@dataclass
class ValidationReport:
    ok: bool
    message: str = "ok"
    witness: tuple | None = None

    def __bool__(self):
        return self.ok

    def raise_if_invalid(self):
        if not self.ok:
            raise ValidationError(self.message, witness=self.witness)
        return self


def validate_algebra(A: Algebra) -> ValidationReport:
    """Exhaustive check of associativity, or anticommutativity and Jacobi, on basis triples."""
    d = A.dim
    e = [A.basis_vector(i) for i in range(d)]
    prods = [[A.table[i][j] for j in range(d)] for i in range(d)]
    if A.is_lie:
        for i in range(d):
            if any(prods[i][i]):
                return ValidationReport(False, f"[{A.name(i)},{A.name(i)}] != 0", (i, i))
            for j in range(i + 1, d):
                if any(a + b for a, b in zip(prods[i][j], prods[j][i])):
                    return ValidationReport(
                        False, f"[{A.name(i)},{A.name(j)}] != -[{A.name(j)},{A.name(i)}]", (i, j))
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    s1 = A.mul(e[i], prods[j][k])
                    s2 = A.mul(e[j], prods[k][i])
                    s3 = A.mul(e[k], prods[i][j])
                    if any(a + b + c for a, b, c in zip(s1, s2, s3)):
                        return ValidationReport(
                            False, f"Jacobi identity fails on ({A.name(i)}, {A.name(j)}, {A.name(k)})",
                            (i, j, k))
        return ValidationReport(True)
    for i, j, k in product(range(d), repeat=3):
        lhs = A.mul(prods[i][j], e[k])
        rhs = A.mul(e[i], prods[j][k])
        if lhs != rhs:
            return ValidationReport(
                False, f"associativity fails on ({A.name(i)}, {A.name(j)}, {A.name(k)}): "
                       f"({A.name(i)}{A.name(j)}){A.name(k)} != {A.name(i)}({A.name(j)}{A.name(k)})",
                (i, j, k))
    return ValidationReport(True)


# --------------------------------------------------------------------------
# subspaces


def subspace_product(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    """Span of all products u v with u, v running over bases of U and V."""
    if U.ambient_dim != A.dim or V.ambient_dim != A.dim:
        raise ValueError("subspace does not live in the algebra")
    ech = Echelon()
    for u in U.basis:
        for v in V.basis:
            ech.add(sparse(A.mul(u, v)))
    rows = [r for _, r in ech.rref()]
    vecs = [tuple(r.get(k, Fraction(0)) for k in range(A.dim)) for r in rows]
    return Subspace.from_vectors(A.dim, vecs, A.field)


def is_ideal(A: Algebra, I: Subspace) -> bool:
    full = A.full()
    if not I.contains_subspace(subspace_product(A, full, I)):
        return False
    return A.is_lie or I.contains_subspace(subspace_product(A, I, full))


def is_subalgebra(A: Algebra, U: Subspace) -> bool:
    return U.contains_subspace(subspace_product(A, U, U))


def ideal_closure(A: Algebra, U: Subspace, operators=()) -> Subspace:
    """Smallest ideal containing U and invariant under the extra operators."""
    ops = A.multiplication_operators() + list(operators)
    return operator_closure_of_subspace(U, ops)


def operator_closure_of_subspace(U: Subspace, ops) -> Subspace:
    ech = Echelon()
    vecs = []
    frontier = []
    for v in U.basis:
        if ech.add(sparse(v)):
            vecs.append(v)
            frontier.append(v)
    while frontier:
        nxt = []
        for v in frontier:
            for op in ops:
                w = op.apply(v)
                if ech.add(sparse(w)):
                    vecs.append(w)
                    nxt.append(w)
        frontier = nxt
    return Subspace.from_vectors(U.ambient_dim, vecs, U.field)


def powers(A: Algebra, I: Subspace, limit: int | None = None) -> list[Subspace]:
    """[I, I^2, I^3, ...] until the sequence reaches zero or stabilises."""
    out = [I]
    limit = limit or A.dim + 2
    while out[-1].dim and len(out) <= limit:
        nxt = subspace_product(A, out[-1], I)
        if nxt == out[-1]:
            break
        out.append(nxt)
    return out


def nilpotency_index(A: Algebra, I: Subspace) -> int | None:
    """Least p >= 1 with I^p = 0, or None when I is not nilpotent."""
    if not I.dim:
        return 1
    ps = powers(A, I)
    return len(ps) if not ps[-1].dim else None


def derived_series(A: Algebra, I: Subspace) -> list[Subspace]:
    out = [I]
    while out[-1].dim:
        nxt = subspace_product(A, out[-1], out[-1])
        if nxt == out[-1]:
            break
        out.append(nxt)
    return out


def derived_length(A: Algebra, I: Subspace) -> int | None:
    """Least p >= 1 with I^(p) = 0 where I^(1) = I; None when I is not solvable."""
    if not I.dim:
        return 1
    ds = derived_series(A, I)
    return len(ds) if not ds[-1].dim else None


# --------------------------------------------------------------------------
# radicals


@dataclass
class RadicalReport:
    radical: Subspace
    nilpotency_index: int | None
    semisimple_quotient_dim: int
    kind: str = ASSOCIATIVE
    derived_length: int | None = None

    def to_json(self, A: Algebra) -> dict:
        return {
            "kind": self.kind,
            "dim": self.radical.dim,
            "basis": [[A.field.format(x) for x in v] for v in self.radical.basis],
            "nilpotency_index": self.nilpotency_index,
            "derived_length": self.derived_length,
            "semisimple_quotient_dim": self.semisimple_quotient_dim,
        }


def trace_vector(A: Algebra) -> list:
    """tr(L_{e_k}) for every basis element."""
    return [sum((A.table[k][l][l] for l in range(A.dim)), Fraction(0)) for k in range(A.dim)]


def killing_form(A: Algebra) -> list[list]:
    ads = A.left_basis
    return [[(ads[i] @ ads[j]).trace() for j in range(A.dim)] for i in range(A.dim)]


def _associative_radical(A: Algebra) -> Subspace:
    d = A.dim
    t = trace_vector(A)
    # T(x, e_j) = tr(L_{x e_j}); adding tr(L_x) accounts for the adjoined unit.
    rows = []
    for j in range(d):
        rows.append(tuple(sum((A.table[i][j][k] * t[k] for k in range(d)), Fraction(0)) for i in range(d)))
    rows.append(tuple(t))
    return Subspace.from_vectors(d, kernel_basis(rows, d), A.field)


def _lie_radical(A: Algebra) -> Subspace:
    d = A.dim
    K = killing_form(A)
    derived = subspace_product(A, A.full(), A.full())
    rows = [tuple(sum((K[i][k] * y[k] for k in range(d)), Fraction(0)) for i in range(d)) for y in derived.basis]
    if not rows:
        return A.full()
    return Subspace.from_vectors(d, kernel_basis(rows, d), A.field)


def radical(A: Algebra) -> RadicalReport:
    """Jacobson radical (associative) or solvable radical (Lie)."""
    if A.is_lie:
        R = _lie_radical(A)
        dl = derived_length(A, R)
        if dl is None or not is_ideal(A, R):
            raise InconsistencyError("computed Lie radical is not a solvable ideal")
        return RadicalReport(R, nilpotency_index(A, R), A.dim - R.dim, LIE, dl)
    J = _associative_radical(A)
    p = nilpotency_index(A, J)
    if p is None or not is_ideal(A, J):
        raise InconsistencyError("computed radical is not a nilpotent ideal")
    return RadicalReport(J, p, A.dim - J.dim, ASSOCIATIVE, None)


def is_nilpotent_operator(m: Matrix) -> bool:
    return m.power(m.nrows).is_zero()


def nilradical(A: Algebra) -> Subspace:
    """Largest nilpotent ideal of a Lie algebra.

    An element x of the solvable radical lies in the nilradical iff ad x is nilpotent, and
    on the radical this is linear: tr(ad x . y) = 0 for every y in the unital associative
    algebra generated by ad R (whose Jacobson radical is exactly the nilpotent part).
    """
    if not A.is_lie:
        raise ValueError("nilradical is defined for Lie algebras")
    from .operators import operator_closure

    R = radical(A).radical
    if not R.dim:
        return R
    ads = [A.ad(r) for r in R.basis]
    env = operator_closure(ads, A.dim, A.field)
    rows = []
    for y in env:
        rows.append(tuple((ad @ y).trace() for ad in ads))
    coeffs = kernel_basis(rows, R.dim)
    N = Subspace.from_vectors(A.dim, [R.combination(c) for c in coeffs], A.field)
    if not is_ideal(A, N):
        raise InconsistencyError("nilradical candidate is not an ideal")
    if nilpotency_index(A, N) is None or not all(is_nilpotent_operator(A.ad(v)) for v in N.basis):
        raise InconsistencyError("nilradical candidate is not nilpotent")
    return N


def center(A: Algebra) -> Subspace:
    d = A.dim
    rows = []
    for j in range(d):
        for k in range(d):
            rows.append(tuple(A.table[i][j][k] - A.table[j][i][k] for i in range(d)))
    return Subspace.from_vectors(d, kernel_basis(rows, d), A.field)


def annihilator(A: Algebra, I: Subspace, J: Subspace) -> Subspace:
    """Ann(I/J) = {x : x I + I x contained in J} ({x : [x, I] in J} for Lie kind)."""
    if not I.contains_subspace(J):
        raise ValueError("J is not contained in I")
    d = A.dim
    # rows of the map v -> v mod J, read on the standard complement coordinates
    free = J.standard_complement()
    rows = []
    for u in I.basis:
        maps = [A.right(u)]
        if not A.is_lie:
            maps.append(A.left(u))
        for m in maps:
            # x -> (m x mod J) must vanish on every free coordinate
            images = [m.column(i) for i in range(d)]
            reduced = [_reduce_mod(J, v) for v in images]
            for c in free:
                rows.append(tuple(reduced[i][c] for i in range(d)))
    if not rows:
        return A.full()
    return Subspace.from_vectors(d, kernel_basis(rows, d), A.field)


def _reduce_mod(J: Subspace, v) -> tuple:
    r = J._reduce(v)
    return r if r is not None else (Fraction(0),) * J.ambient_dim


def center_and_annihilator(A: Algebra, mode: str = "center", I: Subspace | None = None,
                           J: Subspace | None = None) -> Subspace:
    if mode == "center":
        return center(A)
    if mode == "ann_module":
        if I is None or J is None:
            raise ValueError("ann_module needs the ideals I and J")
        return annihilator(A, I, J)
    raise ValueError(f"unknown mode {mode!r}")


def centroid(A: Algebra) -> list[Matrix]:
    """Basis of {T : T(xy) = T(x)y = xT(y)} as matrices acting on coordinate columns."""
    d = A.dim
    n = d * d  # unknown t[a][b] at index a*d + b, T e_b = sum_a t[a][b] e_a
    rows = []
    for i in range(d):
        for j in range(d):
            pij = A.table[i][j]
            for out in range(d):
                r1 = [Fraction(0)] * n
                r2 = [Fraction(0)] * n
                for b in range(d):
                    if pij[b]:
                        r1[out * d + b] += pij[b]
                        r2[out * d + b] += pij[b]
                for a in range(d):
                    c1 = A.table[a][j][out]
                    if c1:
                        r1[a * d + i] -= c1
                    c2 = A.table[i][a][out]
                    if c2:
                        r2[a * d + j] -= c2
                rows.append(tuple(r1))
                rows.append(tuple(r2))
    out = []
    for v in kernel_basis(rows, n):
        out.append(Matrix(tuple(tuple(v[a * d: (a + 1) * d]) for a in range(d)), d, A.field))
    return out


# --------------------------------------------------------------------------
# derived algebras


@dataclass(frozen=True, eq=False)
class Quotient:
    """A/I with the projection A -> A/I and the standard section A/I -> A."""

    parent: Algebra
    ideal: Subspace
    algebra: Algebra
    projection: Matrix
    section: Matrix
    complement_indices: tuple = dc_field(default=())

    def project(self, v) -> tuple:
        return self.projection.apply(v)

    def lift(self, w) -> tuple:
        return self.section.apply(w)

    def induced(self, op: Matrix) -> Matrix:
        """Operator on A/I induced by an operator on A leaving I invariant."""
        return self.projection @ op @ self.section


def quotient(A: Algebra, I: Subspace) -> Quotient:
    if not is_ideal(A, I):
        raise ValueError("quotient by a non-ideal")
    free = I.standard_complement()
    q = len(free)
    d = A.dim
    proj_cols = []
    for j in range(d):
        r = _reduce_mod(I, A.basis_vector(j))
        proj_cols.append(tuple(r[c] for c in free))
    projection = Matrix.from_columns(proj_cols, q, A.field) if d else Matrix.zeros(q, 0, A.field)
    sec_cols = [A.basis_vector(c) for c in free]
    section = Matrix.from_columns(sec_cols, d, A.field) if q else Matrix.zeros(d, 0, A.field)
    tab = []
    for a in free:
        row = []
        for b in free:
            row.append(projection.apply(A.table[a][b]))
        tab.append(tuple(row))
    names = tuple(A.name(c) for c in free) if A.basis_names else None
    Q = Algebra(tuple(tab), A.kind, A.field, names)
    return Quotient(A, I, Q, projection, section, tuple(free))


@dataclass(frozen=True, eq=False)
class Subalgebra:
    parent: Algebra
    subspace: Subspace
    algebra: Algebra
    inclusion: Matrix
    coordinates: Matrix

    def restrict(self, op: Matrix) -> Matrix:
        return self.subspace.restrict(op)


def subalgebra(A: Algebra, U: Subspace) -> Subalgebra:
    if not is_subalgebra(A, U):
        raise ValueError("subspace is not closed under the product")
    tab = []
    for u in U.basis:
        row = []
        for v in U.basis:
            row.append(U.coordinates(A.mul(u, v)))
        tab.append(tuple(row))
    B = Algebra(tuple(tab), A.kind, A.field)
    return Subalgebra(A, U, B, U.as_matrix(), U.coordinate_matrix())


def direct_sum(*algebras: Algebra) -> Algebra:
    kinds = {a.kind for a in algebras}
    if len(kinds) != 1:
        raise ValueError("direct sum of algebras of different kinds")
    d = sum(a.dim for a in algebras)
    fld = next((a.field for a in algebras if not a.field.is_rational), QQ)
    zero = Fraction(0)
    tab = [[[zero] * d for _ in range(d)] for _ in range(d)]
    names = []
    off = 0
    for idx, a in enumerate(algebras):
        for i in range(a.dim):
            names.append(f"{a.name(i)}_{idx + 1}")
            for j in range(a.dim):
                for k, c in enumerate(a.table[i][j]):
                    tab[off + i][off + j][off + k] = c
        off += a.dim
    return Algebra(tuple(tuple(tuple(v) for v in row) for row in tab), kinds.pop(), fld, tuple(names))


def structure_isomorphic_via(A: Algebra, B: Algebra, f: Matrix) -> bool:
    """True when the linear map f: A -> B is bijective and multiplicative."""
    if f.shape != (B.dim, A.dim) or f.rank() != A.dim or A.dim != B.dim:
        return False
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = f.apply(A.table[i][j])
            rhs = B.mul(f.column(i), f.column(j))
            if lhs != rhs:
                return False
    return True
