"""PI-exponents from the structure of the algebra and structure-simplicity tests."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import LIE, Algebra, annihilator, is_ideal, subspace_product
from .decomposition import (POSSIBLY_SPLIT, complement_components, invariant_levi, invariant_wedderburn_malcev)
from .errors import InconsistencyError, ValidationError
from .linalg import Matrix, kernel_basis, solve
from .operators import factor_polynomial, minimal_polynomial, operator_closure, poly_of_matrix, trace_radical
from .structures import DerivationAction, GroupAction, derivation_span_closed, structure_operators
from .subspace import Subspace

DISTINCT_INDEX_FLAG = "distinct-index reading of the exponent formula"
ONE_COMPLEMENT_FLAG = "verified for one complement"


@dataclass
class ExponentReport:
    d: int
    witness: tuple = ()
    component_dims: list = dc_field(default_factory=list)
    components_used: list = dc_field(default_factory=list)
    flags: list = dc_field(default_factory=list)
    details: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "witness": list(self.witness),
            "component_dims": list(self.component_dims),
            "witness_dims": [c.dim for c in self.components_used],
            "flags": list(self.flags),
            **self.details,
        }


# --------------------------------------------------------------------------
# irreducibility of modules over operator algebras


@dataclass
class IrreducibilityResult:
    irreducible: bool | None
    absolutely: bool = False
    certificate: object = None
    extension_degree: int = 1
    explanation: str = ""


def _commutant(ops, n: int, field) -> list[Matrix]:
    """Basis of {X : X m = m X for every m in ops}."""
    N = n * n
    rows = []
    for m in ops:
        # (X m - m X)[i][j] = sum_k X[i][k] m[k][j] - m[i][k] X[k][j]
        for i in range(n):
            for j in range(n):
                row = [Fraction(0)] * N
                for k in range(n):
                    a = m.rows[k][j]
                    if a:
                        row[i * n + k] += a
                    b = m.rows[i][k]
                    if b:
                        row[k * n + j] -= b
                rows.append(tuple(row))
    if not rows:
        rows = [tuple(Fraction(0) for _ in range(N))]
    return [Matrix(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), n, field) for v in kernel_basis(rows, N)]


def _is_commutative(mats) -> bool:
    return all((a @ b - b @ a).is_zero() for a in mats for b in mats)


def module_irreducibility(ops, n: int, field, seed: int = 0, attempts: int = 16) -> IrreducibilityResult:
    """Decide whether F^n is irreducible under the unital algebra generated by ``ops``.

    Burnside: full generated algebra means absolutely irreducible. Otherwise a proper submodule is
    exhibited from the radical of the generated algebra or from a zero divisor of the commutant; a
    commutant that is a field certifies irreducibility over F only.
    """
    if n == 0:
        return IrreducibilityResult(False, False, None, 1, "zero module")
    M = operator_closure(list(ops), n, field)
    if len(M) == n * n:
        return IrreducibilityResult(True, True, "generated operator algebra is the full matrix algebra", 1,
                                    "Burnside")
    rad = trace_radical(M)
    if rad:
        vecs = [r.column(j) for r in rad for j in range(n)]
        W = Subspace.from_vectors(n, vecs, field)
        if W.dim and W.dim < n:
            return IrreducibilityResult(False, False, W, 1, "radical of the generated algebra moves A into a proper submodule")
        raise InconsistencyError("radical of the operator algebra acts surjectively")
    C = _commutant(ops, n, field)
    if len(C) == 1:
        raise InconsistencyError("semisimple operator algebra with scalar commutant is not the full matrix algebra")
    rng = random.Random(seed)
    candidates = list(C)
    for _ in range(attempts):
        m = None
        for X in C:
            c = rng.randint(-3, 3)
            if c:
                m = X.scale(Fraction(c)) if m is None else m + X.scale(Fraction(c))
        if m is not None:
            candidates.append(m)
    commutative = _is_commutative(C)
    for X in candidates:
        mp = minimal_polynomial(X)
        factors = factor_polynomial(mp, field)
        if len(factors) > 1:
            f, _ = factors[0]
            K = poly_of_matrix(f, X).kernel()
            return IrreducibilityResult(False, False, K, 1, "kernel of a zero divisor in the commutant")
        if commutative and len(mp) - 1 == len(C):
            return IrreducibilityResult(True, False, "commutant is a field", len(C),
                                        f"irreducible over the base field; splits after an extension of degree {len(C)}")
    return IrreducibilityResult(None, False, None, len(C),
                                "inconclusive: commutant is a noncommutative algebra without an exhibited zero divisor")


@dataclass
class SimplicityReport:
    simple: bool | None
    absolutely: bool
    certificate: object
    extension_degree: int = 1
    explanation: str = ""

    def __bool__(self):
        return bool(self.simple)

    def to_json(self, A: Algebra | None = None) -> dict:
        cert = self.certificate
        if isinstance(cert, Subspace):
            cert = {"proper_invariant_ideal_dim": cert.dim,
                    "basis": [[(A.field.format(x) if A else str(x)) for x in v] for v in cert.basis]}
        return {"simple": self.simple, "absolutely": self.absolutely, "certificate": cert,
                "extension_degree": self.extension_degree, "explanation": self.explanation}


def _structure_generators(s) -> list[Matrix]:
    if isinstance(s, GroupAction):
        return [m for m, _ in s.generators]
    return structure_operators(s)


def is_invariant_simple(A: Algebra, s=None, seed: int = 0) -> SimplicityReport:
    """A^2 != 0 and A has no proper nonzero ideal invariant under the structure."""
    sq = subspace_product(A, A.full(), A.full())
    if not sq.dim:
        return SimplicityReport(False, False, "A^2 = 0", 1, "the product vanishes identically")
    ops = A.multiplication_operators() + _structure_generators(s)
    res = module_irreducibility(ops, A.dim, A.field, seed)
    if res.irreducible is False and isinstance(res.certificate, Subspace):
        W = res.certificate
        if not is_ideal(A, W) or not all(W.is_invariant(op) for op in _structure_generators(s)):
            raise InconsistencyError("submodule certificate is not an invariant ideal")
    return SimplicityReport(res.irreducible, res.absolutely, res.certificate, res.extension_degree, res.explanation)


# --------------------------------------------------------------------------
# associative exponent


def _chain_product(A: Algebra, comps, J: Subspace, seq) -> Subspace:
    P = comps[seq[0]]
    for i in seq[1:]:
        P = subspace_product(A, subspace_product(A, P, J), comps[i])
        if not P.dim:
            break
    return P


def associative_exponent(A: Algebra, s=None, seed: int = 0) -> ExponentReport:
    """max dim(B_i1 + ... + B_ir) over distinct indices with B_i1 J B_i2 J ... J B_ir != 0."""
    if A.is_lie:
        raise ValidationError("associative_exponent needs an associative algebra")
    split = invariant_wedderburn_malcev(A, s)
    J = split.radical
    comps, dec = complement_components(A, s, split, seed)
    q = len(comps)
    best = (0, ())
    # depth-first over ordered sequences of distinct indices, pruning on zero products
    stack = [((i,), comps[i]) for i in range(q) if comps[i].dim]
    while stack:
        seq, P = stack.pop()
        dim = sum(comps[i].dim for i in seq)
        if dim > best[0] or (dim == best[0] and len(seq) < len(best[1])):
            best = (dim, seq)
        PJ = subspace_product(A, P, J) if J.dim else A.zero()
        if not PJ.dim:
            continue
        for i in range(q):
            if i in seq:
                continue
            nxt = subspace_product(A, PJ, comps[i])
            if nxt.dim:
                stack.append((seq + (i,), nxt))
    d, witness = best
    if witness and not _chain_product(A, comps, J, witness).dim:
        raise InconsistencyError("exponent witness product vanishes")
    flags = [DISTINCT_INDEX_FLAG]
    if any(f == POSSIBLY_SPLIT for f in dec.certified_flags):
        flags.append("components " + POSSIBLY_SPLIT + "; the value may drop after extending the field by the reported degree")
    return ExponentReport(d, witness, [c.dim for c in comps], [comps[i] for i in witness], flags,
                          {"radical_dim": J.dim, "complement_dim": split.complement.dim})


# --------------------------------------------------------------------------
# Lie exponent on ideal chains


@dataclass
class LieChain:
    pairs: list
    complements: list = dc_field(default_factory=list)
    q: tuple | None = None
    status: str = "unchecked"
    value: int | None = None
    annihilator_dim: int | None = None

    def to_json(self) -> dict:
        return {
            "pairs": [[I.dim, J.dim] for I, J in self.pairs],
            "q": list(self.q) if self.q is not None else None,
            "status": self.status,
            "value": self.value,
            "annihilator_dim": self.annihilator_dim,
        }


def _invariant_complement(L: Algebra, I: Subspace, J: Subspace, ops) -> Subspace | None:
    """Complement T of J in I invariant under all ``ops`` (each leaving I and J invariant)."""
    k = I.dim
    Jc = Subspace.from_vectors(k, [I.coordinates(v) for v in J.basis], L.field)
    free = Jc.standard_complement()
    dS, dN = len(free), Jc.dim
    if dN == 0:
        return I
    # t0 picks the free standard coordinates of I; t = t0 + E_J X
    nT = dN * dS
    rows, rhs = [], []
    for op in ops:
        OI = I.restrict(op)
        ON = Jc.restrict(OI)
        # induced operator on I/J in the free coordinates
        OS = []
        for a in free:
            col = OI.column(a)
            r = Jc._reduce(col) or (Fraction(0),) * k
            OS.append(tuple(r[c] for c in free))
        OSm = Matrix.from_columns(OS, dS, L.field)
        for kk, a in enumerate(free):
            # O_I t0(e_a) - t0(O_S e_a), lies in J
            col = list(OI.column(a))
            for m, c in enumerate(free):
                col[c] = col[c] - OSm.rows[m][kk]
            target = Jc.coordinates(tuple(col))
            for i in range(dN):
                row = [Fraction(0)] * nT
                for m in range(dS):
                    c = OSm.rows[m][kk]
                    if c:
                        row[i * dS + m] += c
                for l in range(dN):
                    c = ON.rows[i][l]
                    if c:
                        row[l * dS + kk] -= c
                rows.append(tuple(row))
                rhs.append(target[i])
    X = solve(rows, rhs, nT) if rows else (Fraction(0),) * nT
    if X is None:
        return None
    vecs = []
    for kk, a in enumerate(free):
        v = [Fraction(int(c == a)) for c in range(k)]
        jv = Jc.combination([X[i * dS + kk] for i in range(dN)])
        v = tuple(x + y for x, y in zip(v, jv))
        vecs.append(I.combination(v))
    return Subspace.from_vectors(L.dim, vecs, L.field)


def _bracket_chain(L: Algebra, T: Subspace, q_max: int) -> list[Subspace]:
    out = [T]
    full = L.full()
    while len(out) <= q_max and out[-1].dim:
        nxt = subspace_product(L, out[-1], full)
        out.append(nxt)
    while len(out) <= q_max:
        out.append(out[-1])
    return out


def _condition_two(L: Algebra, complements, q_max: int):
    chains = [_bracket_chain(L, T, q_max) for T in complements]
    r = len(chains)

    def search(k, current):
        if not current.dim:
            return None
        if k == r:
            return ()
        seen = set()
        for qk in range(q_max + 1):
            W = chains[k][qk]
            if W.basis in seen or not W.dim:
                continue
            seen.add(W.basis)
            nxt = W if k == 0 else subspace_product(L, current, W)
            found = search(k + 1, nxt)
            if found is not None:
                return (qk,) + found
        return None

    return search(0, L.full())


def lie_exponent_from_chains(L: Algebra, s=None, chains=None, q_max: int | None = None) -> ExponentReport:
    """Verify ideal chains (I_k, J_k) and return max dim L / (Ann(I_1/J_1) + ... intersected)."""
    if not L.is_lie:
        raise ValidationError("lie_exponent_from_chains needs a Lie algebra")
    q_max = L.dim if q_max is None else q_max
    split = invariant_levi(L, s)
    B, R = split.complement, split.radical
    sops = _structure_generators(s)
    all_chains = [LieChain([(L.full(), R)])] + [c if isinstance(c, LieChain) else LieChain(list(c)) for c in chains or []]
    adB = [L.ad(b) for b in B.basis]
    adL = list(L.left_basis)
    best = ExponentReport(0, (), [], [], [DISTINCT_INDEX_FLAG, ONE_COMPLEMENT_FLAG],
                          {"chains": [], "levi_dim": B.dim, "radical_dim": R.dim})
    for idx, ch in enumerate(all_chains):
        ok = True
        for I, J in ch.pairs:
            if not I.contains_subspace(J):
                if idx == 0:
                    ok = False
                    break
                raise ValidationError("invalid chain: J is not contained in I")
            for U in (I, J):
                if not is_ideal(L, U) or not all(U.is_invariant(op) for op in sops):
                    raise ValidationError("invalid chain: member is not a structure-invariant ideal")
        if not ok:
            ch.status = "invalid"
            continue
        # Condition 1: I/J irreducible under ad L and the structure
        cond1 = True
        for I, J in ch.pairs:
            sub_ops = []
            Jc = Subspace.from_vectors(I.dim, [I.coordinates(v) for v in J.basis], L.field)
            free = Jc.standard_complement()
            for op in adL + sops:
                OI = I.restrict(op)
                cols = []
                for a in free:
                    r = Jc._reduce(OI.column(a)) or (Fraction(0),) * I.dim
                    cols.append(tuple(r[c] for c in free))
                sub_ops.append(Matrix.from_columns(cols, len(free), L.field) if free else Matrix.zeros(0, 0, L.field))
            res = module_irreducibility(sub_ops, len(free), L.field)
            if not (res.irreducible and res.absolutely):
                cond1 = False
                ch.status = "condition 1 fails" if res.irreducible is False else \
                    f"condition 1 inconclusive ({res.explanation})"
                break
        if not cond1:
            best.details["chains"].append(ch.to_json())
            continue
        comps = []
        for I, J in ch.pairs:
            T = _invariant_complement(L, I, J, adB + sops)
            if T is None:
                ch.status = "no invariant complement"
                break
            comps.append(T)
        if len(comps) != len(ch.pairs):
            best.details["chains"].append(ch.to_json())
            continue
        ch.complements = comps
        q = _condition_two(L, comps, q_max) if comps else ()
        if q is None:
            ch.status = f"condition 2 fails for q <= {q_max}"
            best.details["chains"].append(ch.to_json())
            continue
        ch.q = q
        ann = L.full()
        for I, J in ch.pairs:
            ann = ann & annihilator(L, I, J)
        ch.annihilator_dim = ann.dim
        ch.value = L.dim - ann.dim
        ch.status = "verified"
        best.details["chains"].append(ch.to_json())
        if ch.value > best.d:
            best.d = ch.value
            best.witness = (idx,)
    return best


# --------------------------------------------------------------------------
# simplicity criterion


@dataclass
class CriterionReport:
    exponent: int
    dim: int
    simple: bool | None
    consistent: bool
    trivial_exponent: int | None = None
    notes: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return dict(vars(self))


def _derivations_semisimple(s: DerivationAction) -> bool:
    """True when the derivations span a semisimple Lie algebra of operators."""
    from .algebra import radical
    from .linalg import Echelon
    from .operators import flat

    gens = list(s.generators)
    ech = Echelon()
    basis = []
    for g in gens:
        if ech.add(flat(g)):
            basis.append(g)
    if not basis or not derivation_span_closed(DerivationAction(tuple(basis))):
        return False
    G = Algebra.from_matrices(basis, LIE)
    return radical(G).radical.dim == 0


def simplicity_criterion_report(A: Algebra, s=None) -> CriterionReport:
    """Cross-check exponent = dim A against structure-simplicity (and the derivation equality)."""
    if A.is_lie:
        raise ValidationError("simplicity_criterion_report covers associative algebras")
    e = associative_exponent(A, s)
    simple = is_invariant_simple(A, s)
    notes = []
    if simple.simple is None:
        notes.append(simple.explanation)
        consistent = True
    else:
        consistent = (e.d == A.dim) == bool(simple.simple)
        if not consistent:
            raise InconsistencyError(
                f"exponent {e.d} vs dim {A.dim} disagrees with invariant simplicity {simple.simple}")
    trivial = None
    if isinstance(s, DerivationAction):
        if _derivations_semisimple(s):
            trivial = associative_exponent(A, None).d
            if trivial != e.d:
                raise InconsistencyError(f"exponent with derivations {e.d} differs from ordinary exponent {trivial}")
        else:
            notes.append("derivation span is not a semisimple Lie algebra; equality check skipped")
    return CriterionReport(e.d, A.dim, simple.simple, consistent, trivial, notes)


__all__ = [
    "ExponentReport", "LieChain", "SimplicityReport", "CriterionReport", "IrreducibilityResult",
    "associative_exponent", "lie_exponent_from_chains", "is_invariant_simple", "simplicity_criterion_report",
    "module_irreducibility", "DISTINCT_INDEX_FLAG", "ONE_COMPLEMENT_FLAG",
]
