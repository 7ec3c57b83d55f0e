"""Brute-force reference computations that share no linear algebra with the engine.

Evaluation matrices are built one monomial at a time from the raw structure constants,
ranks come from a plain dense Gauss-Jordan over Fractions, and the modular ranks from
a separate elimination over GF(p).
"""
from fractions import Fraction
from itertools import permutations, product

from piexp.codimension import DecoratedMonomial, MultilinearPolynomial, is_identity


def mul(table, u, v):
    d = len(u)
    out = [Fraction(0)] * d
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            ab = a * b
            for k, c in enumerate(table[i][j]):
                if c:
                    out[k] = out[k] + ab * c
    return out


def apply(op, v):
    """op is a list of rows acting on coordinate columns."""
    return [sum((r[j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for r in op]


def unit(d, i):
    return [Fraction(int(k == i)) for k in range(d)]


def evaluate(table, order, ops, values):
    acc = None
    for p, var in enumerate(order):
        v = values[var]
        if ops[p] is not None:
            v = apply(ops[p], v)
        acc = v if acc is None else mul(table, acc, v)
    return acc


def evaluation_matrix(A, n, operators=None):
    """Rows: (order, decoration indices); columns: (b_1..b_n, k) flattened.

    ``operators`` is a list of d x d row lists (None means the ordinary regime).
    """
    d = A.dim
    table = A.table
    ops = operators if operators is not None else [None]
    rows, labels = [], []
    for order in permutations(range(n)):
        for decs in product(range(len(ops)), repeat=n):
            row = []
            for bs in product(range(d), repeat=n):
                vals = [unit(d, b) for b in bs]
                row.extend(evaluate(table, order, [ops[h] for h in decs], vals))
            rows.append(row)
            labels.append((order, decs))
    return rows, labels


def graded_matrices(A, grading, n):
    """Per label vector: rows over orders, columns over homogeneous basis tuples."""
    out = {}
    comps = {g: [list(v) for v in V.basis] for g, V in grading.components.items() if V.dim}
    for labels in product(sorted(comps), repeat=n):
        rows = []
        for order in permutations(range(n)):
            row = []
            for vecs in product(*[comps[g] for g in labels]):
                row.extend(evaluate(A.table, order, [None] * n, list(vecs)))
            rows.append(row)
        out[labels] = rows
    return out


def rref(rows):
    m = [list(r) for r in rows]
    piv = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], piv


def rank(rows):
    return len(rref(rows)[1]) if rows else 0


def left_kernel(rows):
    """Basis of {c : sum_r c_r rows[r] = 0}."""
    if not rows:
        return []
    nr = len(rows)
    tr = [[rows[r][c] for r in range(nr)] for c in range(len(rows[0]))]
    red, piv = rref(tr)
    free = [j for j in range(nr) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * nr
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


def rank_mod_p(rows, p):
    m = []
    for r in rows:
        m.append([(Fraction(x).numerator * pow(Fraction(x).denominator, -1, p)) % p for x in r])
    rk = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = pow(m[rk][c], -1, p)
        m[rk] = [x * inv % p for x in m[rk]]
        for i in range(len(m)):
            if i != rk and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def kernel_polynomials(n, labels, kernel, decorations=None):
    """Turn left-kernel vectors into MultilinearPolynomials (decorations: index -> decoration)."""
    out = []
    for vec in kernel:
        terms = []
        for c, (order, decs) in zip(vec, labels):
            if c:
                dd = tuple(decorations[h] for h in decs) if decorations is not None else ()
                terms.append((c, DecoratedMonomial(tuple(order), dd)))
        out.append(MultilinearPolynomial(n, tuple(terms)))
    return out


def oracle_codim(A, s, n, operators=None, decorations=None, primes=(1000003, 998244353)):
    """(rank, modular ranks, kernel dim, all kernel elements are identities)."""
    rows, labels = evaluation_matrix(A, n, operators)
    rk = rank(rows)
    mods = [rank_mod_p(rows, p) for p in primes]
    ker = left_kernel(rows)
    polys = kernel_polynomials(n, [(o, d) for o, d in labels], ker, decorations)
    ok = all(is_identity(A, s, f).identity for f in polys)
    return rk, mods, len(ker), ok, len(rows)


def oracle_graded_codim(A, grading, n, primes=(1000003, 998244353)):
    mats = graded_matrices(A, grading, n)
    total, mod_totals, ok = 0, [0] * len(primes), True
    breakdown = {}
    for labels, rows in mats.items():
        rk = rank(rows)
        breakdown[labels] = rk
        total += rk
        for i, p in enumerate(primes):
            mod_totals[i] += rank_mod_p(rows, p)
        orders = list(permutations(range(n)))
        for vec in left_kernel(rows):
            terms = []
            for c, order in zip(vec, orders):
                if c:
                    # decoration at position p labels the variable order[p]
                    terms.append((c, DecoratedMonomial(tuple(order), tuple(labels[v] for v in order))))
            ok = ok and is_identity(A, grading, MultilinearPolynomial(n, tuple(terms))).identity
    return total, mod_totals, breakdown, ok
