"""Simple and structure-simple decompositions, invariant Wedderburn-Mal'cev and Levi complements."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import (Algebra, center, centroid, is_ideal, is_subalgebra, quotient, radical, structure_isomorphic_via,
                      subalgebra, subspace_product)
from .errors import NoInvariantComplementError, ValidationError
from .linalg import Matrix, solve
from .operators import factor_polynomial, minimal_polynomial, poly_of_matrix
from .structures import AUTO, GroupAction, Trivial, structure_operators
from .subspace import Subspace

ABSOLUTELY_SIMPLE = "simple"
POSSIBLY_SPLIT = "simple over base field, possibly split after extension"


@dataclass
class Decomposition:
    components: list
    kind: str = "simple"
    certified_flags: list = dc_field(default_factory=list)
    extension_degrees: list = dc_field(default_factory=list)

    def __len__(self):
        return len(self.components)

    def dims(self) -> list[int]:
        return [c.dim for c in self.components]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "dims": self.dims(),
            "flags": list(self.certified_flags),
            "extension_degrees": list(self.extension_degrees),
        }


@dataclass
class SplittingReport:
    complement: Subspace
    radical: Subspace
    stages: int
    structure: str = "trivial"
    method: str = ""

    def to_json(self, A: Algebra) -> dict:
        return {
            "complement_dim": self.complement.dim,
            "radical_dim": self.radical.dim,
            "stages": self.stages,
            "structure": self.structure,
            "method": self.method,
            "complement_basis": [[A.field.format(x) for x in v] for v in self.complement.basis],
        }


# --------------------------------------------------------------------------
# simple components


def _split_by_commuting(ops: list[Matrix], field, rng: random.Random, attempts: int = 12):
    """Split F^k by a commutative semisimple operator algebra spanned by ``ops``.

    Returns (list of subspaces of F^k, extension degree or 1). A single returned subspace means the
    operator algebra is a field; its degree over F is the needed extension degree.
    """
    k = ops[0].nrows
    dim_gamma = _span_dim(ops)
    candidates = list(ops)
    for _ in range(attempts):
        coeffs = [rng.randint(-3, 3) for _ in ops]
        m = None
        for c, op in zip(coeffs, ops):
            if c:
                m = op.scale(Fraction(c)) if m is None else m + op.scale(Fraction(c))
        if m is not None:
            candidates.append(m)
    for T in candidates:
        mp = minimal_polynomial(T)
        factors = factor_polynomial(mp, field)
        if len(factors) > 1:
            pieces = []
            for f, e in factors:
                K = poly_of_matrix(_pow_poly(f, e), T).kernel()
                pieces.append(K)
            return pieces, 1
        if len(mp) - 1 == dim_gamma:
            return [Subspace.full(k, field)], dim_gamma
    return [Subspace.full(k, field)], dim_gamma


def _pow_poly(f, e):
    out = [Fraction(1)]
    for _ in range(e):
        nxt = [Fraction(0)] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                nxt[i + j] = nxt[i + j] + a * b
        out = nxt
    return out


def _span_dim(ops) -> int:
    from .operators import flat
    from .linalg import Echelon

    ech = Echelon()
    for op in ops:
        ech.add(flat(op))
    return ech.rank


def _splitting_operators(Ac: Algebra) -> list[Matrix]:
    if Ac.is_lie:
        return centroid(Ac)
    Z = center(Ac)
    return [Ac.left(z) for z in Z.basis]


def simple_ideal_decomposition(A: Algebra, seed: int = 0) -> Decomposition:
    """Decompose a semisimple algebra into simple ideals over the base field."""
    rad = radical(A)
    if rad.radical.dim:
        raise ValidationError("simple decomposition needs a semisimple algebra (nonzero radical)")
    if A.dim == 0:
        return Decomposition([], "simple")
    rng = random.Random(seed)
    todo = [A.full()]
    done, flags, degrees = [], [], []
    while todo:
        C = todo.pop()
        sub = subalgebra(A, C)
        ops = _splitting_operators(sub.algebra)
        if not ops:
            raise ValidationError("component with trivial centroid; the algebra is not semisimple")
        pieces, degree = _split_by_commuting(ops, A.field, rng)
        if len(pieces) == 1:
            done.append(C)
            flags.append(ABSOLUTELY_SIMPLE if degree == 1 else POSSIBLY_SPLIT)
            degrees.append(degree)
            continue
        for P in pieces:
            todo.append(Subspace.from_vectors(A.dim, [C.combination(v) for v in P.basis], A.field))
    order = sorted(range(len(done)), key=lambda i: (done[i].pivots, done[i].dim))
    return Decomposition([done[i] for i in order], "simple", [flags[i] for i in order], [degrees[i] for i in order])


def _merge_by_operators(A: Algebra, comps: list[Subspace], ops) -> list[list[int]]:
    """Connected components of the graph i ~ j when some operator maps B_i into something touching B_j."""
    n = len(comps)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    basis = [v for C in comps for v in C.basis]
    owner = [i for i, C in enumerate(comps) for _ in C.basis]
    if not basis:
        return [[i] for i in range(n)]
    change = Matrix.from_columns(basis, A.dim, A.field)
    rows = change.rows
    for i, C in enumerate(comps):
        for op in ops:
            for v in C.basis:
                w = op.apply(v)
                if not any(w):
                    continue
                coords = solve(rows, w, len(basis))
                if coords is None:
                    raise ValidationError("components do not span the algebra")
                for c, j in zip(coords, owner):
                    if c and j != i:
                        a, b = find(i), find(j)
                        if a != b:
                            parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def invariant_simple_decomposition(A: Algebra, s=None, seed: int = 0) -> Decomposition:
    """Merge simple components into orbits under the structure operators."""
    base = simple_ideal_decomposition(A, seed)
    ops = structure_operators(s)
    if isinstance(s, GroupAction):
        ops = s.element_matrices()
    groups = _merge_by_operators(A, base.components, ops)
    comps, flags, degrees = [], [], []
    for g in groups:
        C = A.zero()
        for i in g:
            C = C + base.components[i]
        comps.append(C)
        fl = {base.certified_flags[i] for i in g}
        flags.append(ABSOLUTELY_SIMPLE if fl == {ABSOLUTELY_SIMPLE} else POSSIBLY_SPLIT)
        degrees.append(max(base.extension_degrees[i] for i in g))
    for C in comps:
        for op in ops:
            if not C.is_invariant(op):
                raise ValidationError("merged component is not invariant; structure operators do not preserve ideals")
    return Decomposition(comps, "invariant_simple", flags, degrees)


# --------------------------------------------------------------------------
# invariant complements of the radical


def _structure_label(s) -> str:
    return "trivial" if s is None else s.type


def _ambient_ops(s):
    """('none'|'linear'|'group', operators) describing the structure on A."""
    if s is None or isinstance(s, Trivial):
        return "none", []
    if isinstance(s, GroupAction):
        return "group", [(m, p) for m, p in s.elements]
    return "linear", list(s.operators())


def _hom_section_system(Q: Algebra, N: Subspace, qs, lin_ops=()):
    """Linear system for T: S -> N with s0 + E T multiplicative (and commuting with lin_ops).

    ``qs`` is the quotient Q -> S = Q/N; ``lin_ops`` are pairs (O_Q, O_S).
    Returns (rows, rhs, nT, s0) with unknown T[i][k] at index i * dS + k.
    """
    S = qs.algebra
    dS, dN = S.dim, N.dim
    s0 = qs.section
    nT = dN * dS
    rows, rhs = [], []
    s0cols = [s0.column(a) for a in range(dS)]
    lam = [N.restrict(Q.left(c)) for c in s0cols]
    rho = [N.restrict(Q.right(c)) for c in s0cols]
    for a in range(dS):
        for b in range(dS):
            ab = S.table[a][b]
            lhs_const = Q.mul(s0cols[a], s0cols[b])
            s0ab = s0.apply(ab)
            r = N.coordinates(tuple(x - y for x, y in zip(lhs_const, s0ab)))
            for i in range(dN):
                row = [Fraction(0)] * nT
                for k, c in enumerate(ab):
                    if c:
                        row[i * dS + k] += c
                for l in range(dN):
                    x = lam[a].rows[i][l]
                    if x:
                        row[l * dS + b] -= x
                    y = rho[b].rows[i][l]
                    if y:
                        row[l * dS + a] -= y
                rows.append(tuple(row))
                rhs.append(r[i])
    for OQ, OS in lin_ops:
        ON = N.restrict(OQ)
        # T O_S - O_N T = coords_N(O_Q s0 - s0 O_S)
        diff = OQ @ s0 - s0 @ OS
        for k in range(dS):
            target = N.coordinates(diff.column(k))
            for i in range(dN):
                row = [Fraction(0)] * nT
                for m in range(dS):
                    c = OS.rows[m][k]
                    if c:
                        row[i * dS + m] += c
                for l in range(dN):
                    c = ON.rows[i][l]
                    if c:
                        row[l * dS + k] -= c
                rows.append(tuple(row))
                rhs.append(target[i])
    return rows, rhs, nT, s0


def _section_from_T(Q: Algebra, N: Subspace, s0: Matrix, T, dS: int) -> Matrix:
    cols = []
    for k in range(dS):
        coords = [T[i * dS + k] for i in range(N.dim)]
        n_vec = N.combination(coords) if N.dim else (Fraction(0),) * Q.dim
        cols.append(tuple(x + y for x, y in zip(s0.column(k), n_vec)))
    return Matrix.from_columns(cols, Q.dim, Q.field)


def _average_group(sigma: Matrix, group_ops) -> Matrix:
    """Average a hom section over G0, then apply the two-term average with an element outside G0."""
    g0 = [(OQ, OS) for OQ, OS, p in group_ops if p == AUTO]
    acc = None
    for OQ, OS in g0:
        term = OQ @ sigma @ OS.inverse()
        acc = term if acc is None else acc + term
    avg = acc.scale(Fraction(1, len(g0)))
    outside = [(OQ, OS) for OQ, OS, p in group_ops if p != AUTO]
    if outside:
        OQ, OS = outside[0]
        avg = (avg + OQ @ avg @ OS.inverse()).scale(Fraction(1, 2))
    return avg


def _split(A: Algebra, s, chain_step, label: str) -> SplittingReport:
    """Staged invariant splitting; ``chain_step(P, radP)`` gives the next kernel K = radP^2 or [R, R]."""
    mode, amb_ops = _ambient_ops(s)
    rad = radical(A).radical
    if not rad.dim:
        return SplittingReport(A.full(), rad, 0, _structure_label(s), "semisimple")
    P_sub = A.full()
    stages = 0
    while True:
        psub = subalgebra(A, P_sub)
        P = psub.algebra
        radP = radical(P).radical
        K = chain_step(P, radP)
        q = quotient(P, K)
        Q = q.algebra
        N = Subspace.from_vectors(Q.dim, [q.project(v) for v in radP.basis], Q.field)
        qs = quotient(Q, N)
        S = qs.algebra

        def transport(op):
            OP = psub.restrict(op)
            OQ = q.induced(OP)
            return OQ, qs.induced(OQ)

        lin_pairs = [transport(op) for op in amb_ops] if mode == "linear" else []
        rows, rhs, nT, s0 = _hom_section_system(Q, N, qs, lin_pairs)
        T = solve(rows, rhs, nT) if rows else (Fraction(0),) * nT
        if T is None:
            raise NoInvariantComplementError(
                "no invariant complement found: the equivariant splitting system is inconsistent "
                "(for derivation actions this indicates a non-semisimple acting Lie algebra)")
        sigma = _section_from_T(Q, N, s0, T, S.dim)
        if mode == "group":
            gops = [transport(m) + (p,) for m, p in amb_ops]
            sigma = _average_group(sigma, gops)
        image_Q = Subspace.from_vectors(Q.dim, sigma.columns(), Q.field)
        # preimage in P, expressed in A coordinates
        lifted = [psub.inclusion.apply(q.lift(v)) for v in image_Q.basis]
        K_A = [psub.inclusion.apply(v) for v in K.basis]
        P_sub = Subspace.from_vectors(A.dim, lifted + K_A, A.field)
        stages += 1
        if not K.dim:
            break
    return SplittingReport(P_sub, rad, stages, _structure_label(s),
                           "group averaging" if mode == "group" else "equivariant linear solve")


def invariant_wedderburn_malcev(A: Algebra, s=None) -> SplittingReport:
    """Structure-invariant maximal semisimple subalgebra B with A = B + J(A)."""
    if A.is_lie:
        raise ValidationError("Wedderburn-Mal'cev splitting is for associative algebras; use invariant_levi")
    return _split(A, s, lambda P, R: subspace_product(P, R, R), "wedderburn-malcev")


def invariant_levi(L: Algebra, s=None) -> SplittingReport:
    """Structure-invariant Levi subalgebra B with L = B + R(L)."""
    if not L.is_lie:
        raise ValidationError("Levi splitting is for Lie algebras; use invariant_wedderburn_malcev")
    return _split(L, s, lambda P, R: subspace_product(P, R, R), "levi")


@dataclass
class SplittingCheck:
    subalgebra: bool
    trivial_intersection: bool
    dimensions_add_up: bool
    invariant: bool
    isomorphic_to_quotient: bool

    @property
    def ok(self) -> bool:
        return all(vars(self).values())


def verify_splitting(A: Algebra, s, rep: SplittingReport) -> SplittingCheck:
    B, J = rep.complement, rep.radical
    sub_ok = is_subalgebra(A, B)
    inter = (B & J).dim == 0
    dims = B.dim + J.dim == A.dim
    ops = s.element_matrices() if isinstance(s, GroupAction) else structure_operators(s)
    inv = all(B.is_invariant(op) for op in ops)
    iso = False
    if sub_ok and inter and dims:
        q = quotient(A, J)
        sb = subalgebra(A, B)
        f = q.projection @ sb.inclusion
        iso = structure_isomorphic_via(sb.algebra, q.algebra, f)
    return SplittingCheck(sub_ok, inter, dims, inv, iso)


def components_are_ideals(A: Algebra, dec: Decomposition) -> bool:
    return all(is_ideal(A, C) for C in dec.components)


def complement_components(A: Algebra, s, rep: SplittingReport, seed: int = 0) -> tuple[list[Subspace], Decomposition]:
    """Invariant-simple components of the complement B, as subspaces of A."""
    B = rep.complement
    if not B.dim:
        return [], Decomposition([], "invariant_simple")
    sb = subalgebra(A, B)
    from .structures import restrict_structure

    sB = restrict_structure(s, sb) if s is not None else None
    dec = invariant_simple_decomposition(sb.algebra, sB, seed)
    comps = [Subspace.from_vectors(A.dim, [B.combination(v) for v in C.basis], A.field) for C in dec.components]
    return comps, dec
