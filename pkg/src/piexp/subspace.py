"""Canonical subspaces of a coordinate space F^n."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .fields import QQ, CyclotomicField, field_of
from .linalg import Echelon, Matrix, _dense, rref, sparse


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^ambient_dim stored by its reduced row echelon basis.

    Equal subspaces have identical ``basis`` tuples, so ``==`` is subspace equality.
    """

    ambient_dim: int
    basis: tuple
    pivots: tuple = dc_field(compare=False)
    field: CyclotomicField = dc_field(default=QQ, compare=False)

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors, field: CyclotomicField | None = None) -> Subspace:
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if field is None:
            field = field_of(x for v in vectors for x in v) or QQ
        red, piv = rref(vectors, ambient_dim)
        return cls(ambient_dim, tuple(red), tuple(piv), field)

    @classmethod
    def zero(cls, n: int, field: CyclotomicField = QQ) -> Subspace:
        return cls(n, (), (), field)

    @classmethod
    def full(cls, n: int, field: CyclotomicField = QQ) -> Subspace:
        one, zero = Fraction(1), Fraction(0)
        basis = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        return cls(n, basis, tuple(range(n)), field)

    @classmethod
    def span_of_basis_vectors(cls, n: int, indices, field: CyclotomicField = QQ) -> Subspace:
        one, zero = Fraction(1), Fraction(0)
        return cls.from_vectors(n, [tuple(one if i == j else zero for j in range(n)) for i in indices], field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __bool__(self):
        return bool(self.basis)

    def _check(self, other: Subspace):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def _echelon(self) -> Echelon:
        ech = Echelon()
        for v in self.basis:
            ech.add(sparse(v))
        return ech

    def contains_vector(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match the ambient dimension")
        return self._reduce(v) is None

    def _reduce(self, v):
        """Residual of v modulo the subspace, or None when v lies in it."""
        v = list(v)
        for row, c in zip(self.basis, self.pivots):
            a = v[c]
            if a:
                for k, x in enumerate(row):
                    if x:
                        v[k] = v[k] - a * x
        return None if not any(v) else tuple(v)

    def contains_subspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(self._reduce(v) is None for v in other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains_subspace(self)

    def coordinates(self, v) -> tuple:
        """Coordinates of a vector of the subspace with respect to ``basis``."""
        if self._reduce(v) is not None:
            raise ValueError("vector is not in the subspace")
        return tuple(v[c] for c in self.pivots)

    def combination(self, coords) -> tuple:
        out = [Fraction(0)] * self.ambient_dim
        for a, row in zip(coords, self.basis):
            if a:
                for k, x in enumerate(row):
                    if x:
                        out[k] = out[k] + a * x
        return tuple(out)

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.from_vectors(self.ambient_dim, self.basis + other.basis, self._field(other))

    __add__ = sum

    def _field(self, other):
        return self.field if not self.field.is_rational else other.field

    def intersect(self, other: Subspace) -> Subspace:
        """Zassenhaus intersection."""
        self._check(other)
        n = self.ambient_dim
        zero = (Fraction(0),) * n
        rows = [v + v for v in self.basis] + [w + zero for w in other.basis]
        ech = Echelon()
        for r in rows:
            ech.add(sparse(r))
        vecs = []
        for c, r in ech.rref():
            if c >= n:
                vecs.append(_dense({k - n: x for k, x in r.items()}, n))
        return Subspace.from_vectors(n, vecs, self._field(other))

    __and__ = intersect

    def complement_in(self, whole: Subspace) -> Subspace:
        """A complement of ``self`` inside ``whole`` (canonical for canonical inputs)."""
        self._check(whole)
        if not whole.contains_subspace(self):
            raise ValueError("subspace is not contained in the ambient subspace")
        ech = self._echelon()
        picked = []
        for v in whole.basis:
            if ech.add(sparse(v)):
                picked.append(v)
        return Subspace.from_vectors(self.ambient_dim, picked, self._field(whole))

    def standard_complement(self) -> list[int]:
        """Indices of standard basis vectors spanning a complement in F^n."""
        piv = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]

    def image(self, op: Matrix) -> Subspace:
        return Subspace.from_vectors(op.nrows, [op.apply(v) for v in self.basis], self.field)

    def is_invariant(self, op: Matrix) -> bool:
        return all(self.contains_vector(op.apply(v)) for v in self.basis)

    def as_matrix(self) -> Matrix:
        """Matrix whose columns are the basis vectors (ambient_dim x dim)."""
        return Matrix.from_columns(self.basis, self.ambient_dim, self.field) if self.basis else \
            Matrix.zeros(self.ambient_dim, 0, self.field)

    def coordinate_matrix(self) -> Matrix:
        """Left inverse of :meth:`as_matrix` reading off pivot coordinates (dim x ambient_dim)."""
        one, zero = Fraction(1), Fraction(0)
        rows = [tuple(one if j == c else zero for j in range(self.ambient_dim)) for c in self.pivots]
        return Matrix(tuple(rows), self.ambient_dim, self.field)

    def restrict(self, op: Matrix) -> Matrix:
        """Matrix of an operator leaving the subspace invariant, in basis coordinates."""
        cols = []
        for v in self.basis:
            w = op.apply(v)
            cols.append(self.coordinates(w))
        return Matrix.from_columns(cols, self.dim, self.field) if cols else Matrix.zeros(0, 0, self.field)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"
