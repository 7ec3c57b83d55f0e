"""Gradings, group actions by (anti)automorphisms, derivation actions and operator envelopes."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, lcm

from .algebra import Algebra, Quotient, Subalgebra, ValidationReport, _reduce_mod
from .errors import InsufficientFieldError, ValidationError
from .fields import CyclotomicField
from .linalg import Echelon, Matrix
from .operators import flat, operator_closure
from .subspace import Subspace

AUTO = "automorphism"
ANTI = "anti-automorphism"

DEFAULT_GROUP_BOUND = 1024


@dataclass(frozen=True, eq=False)
class Trivial:
    """No extra structure; its envelope is the identity operator."""

    name: str = "trivial"
    type = "trivial"

    def operators(self) -> list[Matrix]:
        return []

    def induced(self, q: Quotient) -> Trivial:
        return self

    def restricted(self, sub: Subalgebra) -> Trivial:
        return self


TRIVIAL = Trivial()


@dataclass(frozen=True, eq=False)
class Grading:
    """A = sum of components A^(g), g in Z^a x Z_m1 x ... (modulus 0 stands for Z)."""

    moduli: tuple
    components: dict
    name: str = "grading"
    type = "grading"

    def __post_init__(self):
        for g in self.components:
            if len(g) != len(self.moduli):
                raise ValidationError(f"label {g} does not match the group {self.moduli}")

    def normalize(self, g) -> tuple:
        return tuple(x % m if m else x for x, m in zip(g, self.moduli))

    def add(self, g, h) -> tuple:
        return self.normalize(tuple(a + b for a, b in zip(g, h)))

    @property
    def zero_label(self) -> tuple:
        return (0,) * len(self.moduli)

    @property
    def support(self) -> list[tuple]:
        return [g for g, V in self.components.items() if V.dim]

    @property
    def ambient_dim(self) -> int:
        return next(iter(self.components.values())).ambient_dim

    @cached_property
    def _change_of_basis(self):
        cols = []
        labels = []
        for g in self.support:
            for v in self.components[g].basis:
                cols.append(v)
                labels.append(g)
        return cols, labels

    def homogeneous_basis(self) -> list[tuple]:
        """(label, vector) pairs forming a basis of A adapted to the grading."""
        cols, labels = self._change_of_basis
        return list(zip(labels, cols))

    @cached_property
    def projections(self) -> dict:
        """Projection of A onto each support component along the others."""
        cols, labels = self._change_of_basis
        n = self.ambient_dim
        fld = next((c.field for c in self.components.values() if not c.field.is_rational),
                   next(iter(self.components.values())).field)
        C = Matrix.from_columns(cols, n, fld)
        Cinv = C.inverse()
        out = {}
        for g in self.support:
            diag = [Fraction(int(lab == g)) for lab in labels]
            D = Matrix(tuple(tuple(diag[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)), n, fld)
            out[g] = C @ D @ Cinv
        return out

    def operators(self) -> list[Matrix]:
        return [self.projections[g] for g in self.support]

    def degree_of(self, v) -> tuple | None:
        """Label of a homogeneous nonzero vector, else None."""
        for g in self.support:
            if self.components[g].contains_vector(v):
                return g
        return None

    def induced(self, q: Quotient) -> Grading:
        comps = {}
        for g, V in self.components.items():
            comps[g] = Subspace.from_vectors(q.algebra.dim, [q.project(v) for v in V.basis], q.algebra.field)
        return Grading(self.moduli, comps, self.name)

    def restricted(self, sub: Subalgebra) -> Grading:
        comps = {}
        for g, V in self.components.items():
            W = V & sub.subspace
            comps[g] = Subspace.from_vectors(sub.algebra.dim, [sub.subspace.coordinates(v) for v in W.basis],
                                             sub.algebra.field)
        return Grading(self.moduli, comps, self.name)


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Finite group acting by automorphisms and anti-automorphisms.

    ``elements[0]`` is the identity; ``elements[i]`` is a (matrix, parity) pair and the
    group law is composition of matrices (apply the right factor first).
    """

    generators: tuple
    elements: tuple
    name: str = "group"
    labels: tuple = ()
    generator_names: tuple = ()
    type = "group_action"

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict:
        return {(flat_key(m), p): i for i, (m, p) in enumerate(self.elements)}

    def index_of(self, m: Matrix, parity: str) -> int:
        return self._index[(flat_key(m), parity)]

    def multiply(self, i: int, j: int) -> int:
        mi, pi = self.elements[i]
        mj, pj = self.elements[j]
        return self.index_of(mi @ mj, compose_parity(pi, pj))

    @cached_property
    def table(self) -> tuple:
        n = self.order
        return tuple(tuple(self.multiply(i, j) for j in range(n)) for i in range(n))

    def inverse(self, i: int) -> int:
        m, p = self.elements[i]
        return self.index_of(m.inverse(), p)

    @property
    def subgroup_G0(self) -> list[int]:
        return [i for i, (_, p) in enumerate(self.elements) if p == AUTO]

    def operators(self) -> list[Matrix]:
        return [m for m, _ in self.generators]

    def element_matrices(self) -> list[Matrix]:
        return [m for m, _ in self.elements]

    def induced(self, q: Quotient) -> GroupAction:
        gens = tuple((q.induced(m), p) for m, p in self.generators)
        return close_group(gens, name=self.name)

    def restricted(self, sub: Subalgebra) -> GroupAction:
        gens = tuple((sub.restrict(m), p) for m, p in self.generators)
        return close_group(gens, name=self.name)


@dataclass(frozen=True, eq=False)
class DerivationAction:
    """Linear operators acting on A by derivations (a Lie algebra g acting through delta)."""

    generators: tuple
    name: str = "derivations"
    generator_names: tuple = ()
    type = "derivation_action"

    def operators(self) -> list[Matrix]:
        return list(self.generators)

    def induced(self, q: Quotient) -> DerivationAction:
        return DerivationAction(tuple(q.induced(m) for m in self.generators), self.name, self.generator_names)

    def restricted(self, sub: Subalgebra) -> DerivationAction:
        return DerivationAction(tuple(sub.restrict(m) for m in self.generators), self.name,
                                self.generator_names)


@dataclass(frozen=True, eq=False)
class OperatorAlgebra:
    """Basis of a unital algebra of operators on A; ``labels`` name the basis elements."""

    basis: tuple
    origin: str = "operators"
    labels: tuple = ()
    type = "operator_algebra"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def operators(self) -> list[Matrix]:
        return list(self.basis)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"h{i}"

    @cached_property
    def _echelon(self) -> Echelon:
        ech = Echelon()
        for b in self.basis:
            ech.add(flat(b))
        return ech

    def contains(self, m: Matrix) -> bool:
        return self._echelon.contains(flat(m))

    def coordinates(self, m: Matrix):
        from .linalg import solve

        cols = [b.flatten() for b in self.basis]
        rows = [tuple(c[r] for c in cols) for r in range(len(cols[0]))]
        return solve(rows, m.flatten(), len(cols))

    def is_closed(self) -> bool:
        n = self.basis[0].nrows
        if not self.contains(Matrix.identity(n, self.basis[0].field)):
            return False
        return all(self.contains(a @ b) for a in self.basis for b in self.basis)

    def induced(self, q: Quotient) -> OperatorAlgebra:
        return operator_envelope(q.algebra, DerivationAction(tuple(q.induced(m) for m in self.basis)))

    def restricted(self, sub: Subalgebra) -> OperatorAlgebra:
        return operator_envelope(sub.algebra, DerivationAction(tuple(sub.restrict(m) for m in self.basis)))


def flat_key(m: Matrix) -> tuple:
    return m.flatten()


def compose_parity(p: str, q: str) -> str:
    return AUTO if p == q else ANTI


def structure_type(s) -> str:
    return "trivial" if s is None else s.type


# --------------------------------------------------------------------------
# validation


def _check_morphism(A: Algebra, m: Matrix, parity: str) -> tuple | None:
    d = A.dim
    cols = [m.column(i) for i in range(d)]
    for i in range(d):
        for j in range(d):
            lhs = m.apply(A.table[i][j])
            rhs = A.mul(cols[i], cols[j]) if parity == AUTO else A.mul(cols[j], cols[i])
            if lhs != rhs:
                return (i, j)
    return None


def _check_derivation(A: Algebra, m: Matrix) -> tuple | None:
    d = A.dim
    cols = [m.column(i) for i in range(d)]
    for i in range(d):
        for j in range(d):
            lhs = m.apply(A.table[i][j])
            r1 = A.mul(cols[i], A.basis_vector(j))
            r2 = A.mul(A.basis_vector(i), cols[j])
            if any(a - b - c for a, b, c in zip(lhs, r1, r2)):
                return (i, j)
    return None


def validate_structure(A: Algebra, s, check_closure: bool = False) -> ValidationReport:
    """Exhaustive check of the structure axioms on basis pairs; reports the first violation."""
    if s is None or isinstance(s, Trivial):
        return ValidationReport(True)
    d = A.dim
    if not isinstance(s, Grading):  # projections only exist once the grading is known to be valid
        for m in s.operators():
            if m.shape != (d, d):
                return ValidationReport(False, f"operator of shape {m.shape} on a {d}-dimensional algebra")
    if isinstance(s, Grading):
        comps = [V for V in s.components.values()]
        if any(V.ambient_dim != d for V in comps):
            return ValidationReport(False, "grading component lives in the wrong dimension")
        total = sum(V.dim for V in comps)
        span = A.zero()
        for V in comps:
            span = span + V
        if total != span.dim:
            return ValidationReport(False, "components overlap")
        if span.dim != d:
            return ValidationReport(False, "components do not span the algebra")
        for g, h in product(s.support, repeat=2):
            target = s.components.get(s.add(g, h))
            for u in s.components[g].basis:
                for v in s.components[h].basis:
                    w = A.mul(u, v)
                    if any(w) and (target is None or not target.contains_vector(w)):
                        return ValidationReport(False, f"A^{g} A^{h} is not contained in A^{s.add(g, h)}",
                                                (g, h))
        return ValidationReport(True)
    if isinstance(s, GroupAction):
        for idx, (m, p) in enumerate(s.elements):
            if m.rank() != d:
                return ValidationReport(False, f"group element {idx} is not invertible", (idx,))
            bad = _check_morphism(A, m, p)
            if bad:
                word = "(ab)^psi = a^psi b^psi" if p == AUTO else "(ab)^psi = b^psi a^psi"
                return ValidationReport(
                    False, f"group element {idx} violates {word} on ({A.name(bad[0])}, {A.name(bad[1])})", bad)
        parities = {p for _, p in s.elements}
        if len(s.subgroup_G0) * len(parities) != s.order:
            return ValidationReport(False, "automorphism subgroup does not have index <= 2")
        return ValidationReport(True)
    if isinstance(s, DerivationAction):
        for idx, m in enumerate(s.generators):
            bad = _check_derivation(A, m)
            if bad:
                return ValidationReport(
                    False, f"derivation {idx} violates the Leibniz rule on ({A.name(bad[0])}, {A.name(bad[1])})",
                    bad)
        if check_closure and not derivation_span_closed(s):
            return ValidationReport(False, "derivation span is not closed under the commutator")
        return ValidationReport(True)
    if isinstance(s, OperatorAlgebra):
        if not s.is_closed():
            return ValidationReport(False, "operator basis does not span a unital subalgebra")
        return ValidationReport(True)
    return ValidationReport(False, f"unknown structure {type(s).__name__}")


def derivation_span_closed(s: DerivationAction) -> bool:
    gens = list(s.generators)
    if not gens:
        return True
    ech = Echelon()
    for g in gens:
        ech.add(flat(g))
    return all(ech.contains(flat(a @ b - b @ a)) for a in gens for b in gens)


# --------------------------------------------------------------------------
# constructions


def close_group(generators, bound: int = DEFAULT_GROUP_BOUND, name: str = "group",
                generator_names=()) -> GroupAction:
    """Breadth-first closure of (matrix, parity) generators into a finite group."""
    gens = []
    for g in generators:
        m, p = (g, AUTO) if isinstance(g, Matrix) else g
        if p not in (AUTO, ANTI):
            raise ValidationError(f"unknown parity {p!r}")
        gens.append((m, p))
    if not gens:
        raise ValueError("close_group needs at least one generator (pass the identity for the trivial group)")
    n = gens[0][0].nrows
    for m, _ in gens:
        if m.shape != (n, n) or m.rank() != n:
            raise ValidationError("group generators must be invertible square matrices of one size")
    ident = Matrix.identity(n, gens[0][0].field)
    elements = [(ident, AUTO)]
    seen = {(flat_key(ident), AUTO)}
    queue = deque(elements)
    while queue:
        m, p = queue.popleft()
        for g, q in gens:
            nm = m @ g
            key = (flat_key(nm), compose_parity(p, q))
            if key not in seen:
                seen.add(key)
                elements.append((nm, key[1]))
                if len(elements) > bound:
                    raise ValidationError(f"group generated by the given matrices exceeds {bound} elements")
                queue.append((nm, key[1]))
    return GroupAction(tuple(gens), tuple(elements), name, (), tuple(generator_names))


def operator_envelope(A: Algebra, s) -> OperatorAlgebra:
    """Basis of the unital operator algebra spanned by the structure's action."""
    d = A.dim
    ident = Matrix.identity(d, A.field)
    if s is None or isinstance(s, Trivial):
        return OperatorAlgebra((ident,), "trivial", ("1",))
    if isinstance(s, OperatorAlgebra):
        return s
    if isinstance(s, GroupAction):
        ech = Echelon()
        basis, labels = [], []
        for i, (m, _) in enumerate(s.elements):
            if ech.add(flat(m)):
                basis.append(m)
                labels.append(s.labels[i] if s.labels else f"g{i}")
        return OperatorAlgebra(tuple(basis), "group_action", tuple(labels))
    if isinstance(s, Grading):
        labs = s.support
        return OperatorAlgebra(tuple(s.projections[g] for g in labs), "grading",
                               tuple("p" + ",".join(map(str, g)) for g in labs))
    if isinstance(s, DerivationAction):
        basis = operator_closure(list(s.generators), d, A.field)
        return OperatorAlgebra(tuple(basis), "derivation_action", tuple(f"u{i}" for i in range(len(basis))))
    raise TypeError(f"unsupported structure {type(s).__name__}")


def _element_order(g, moduli) -> int | None:
    o = 1
    for x, m in zip(g, moduli):
        if m == 0:
            if x:
                return None
        else:
            o = lcm(o, m // gcd(m, x % m))
    return o


def dual_action_from_grading(A: Algebra, gr: Grading, bound: int = DEFAULT_GROUP_BOUND) -> GroupAction:
    """Characters of the support group acting diagonally: chi . v = chi(g) v for v in A^(g)."""
    exponent = 1
    for g in gr.support:
        o = _element_order(g, gr.moduli)
        if o is None:
            raise ValidationError("support generates an infinite group; no finite dual action")
        exponent = lcm(exponent, o)
    fld: CyclotomicField = A.field
    if not fld.has_roots_of_unity(exponent):
        need = lcm(fld.conductor, exponent)
        raise InsufficientFieldError(
            f"the dual action needs primitive {exponent}-th roots of unity; use conductor divisible by {exponent}"
            f" (e.g. {need})", exponent)
    hb = gr.homogeneous_basis()
    cols = [v for _, v in hb]
    labels = [g for g, _ in hb]
    n = A.dim
    C = Matrix.from_columns(cols, n, fld)
    Cinv = C.inverse()
    ranges = [range(m) if m else range(1) for m in gr.moduli]
    seen = {}
    for k in product(*ranges):
        if len(seen) > bound:
            raise ValidationError(f"dual group exceeds {bound} elements")
        diag = []
        for g in labels:
            t = sum((Fraction(ki * gi, m) for ki, gi, m in zip(k, g, gr.moduli) if m), Fraction(0)) % 1
            diag.append(fld.root_of_unity(t.denominator, t.numerator) if t else Fraction(1))
        D = Matrix(tuple(tuple(diag[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)), n, fld)
        M = C @ D @ Cinv
        key = flat_key(M)
        if key not in seen:
            seen[key] = (M, "chi" + ",".join(map(str, k)))
    elements = [(m, AUTO) for m, _ in seen.values()]
    labels_out = tuple(lab for _, lab in seen.values())
    return GroupAction(tuple(elements), tuple(elements), gr.name + "_dual", labels_out)


def induce_structure(s, q: Quotient):
    return TRIVIAL if s is None else s.induced(q)


def restrict_structure(s, sub: Subalgebra):
    return TRIVIAL if s is None else s.restricted(sub)


def structure_operators(s) -> list[Matrix]:
    return [] if s is None else s.operators()


def is_invariant_subspace(s, U: Subspace) -> bool:
    return all(U.is_invariant(op) for op in structure_operators(s))


def reduce_mod(J: Subspace, v) -> tuple:
    return _reduce_mod(J, v)
