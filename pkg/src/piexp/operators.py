"""Algebras of linear operators: generated closures, radicals, minimal polynomials."""
from __future__ import annotations

from fractions import Fraction

from .fields import QQ, Cyclotomic, CyclotomicField
from .linalg import Echelon, Matrix, kernel_basis, sparse


def flat(m: Matrix) -> dict:
    return sparse(m.flatten())


def operator_closure(generators, n: int, field: CyclotomicField = QQ, unital: bool = True,
                     max_dim: int | None = None) -> list[Matrix]:
    """Basis of the (unital) associative algebra generated by ``generators``.

    Iterates W <- W + W * generators until the dimension stabilises; the returned
    matrices are genuine products, not echelon rows.
    """
    ech = Echelon()
    basis: list[Matrix] = []

    def push(m: Matrix) -> bool:
        if ech.add(flat(m)):
            basis.append(m)
            return True
        return False

    if unital:
        push(Matrix.identity(n, field))
    frontier = [g for g in generators if push(g)]
    if not unital:
        frontier = list(basis)
    while frontier:
        nxt = []
        for w in frontier:
            for g in generators:
                p = w @ g
                if push(p):
                    nxt.append(p)
            if max_dim is not None and len(basis) > max_dim:
                raise ValueError("operator algebra exceeds the dimension bound")
        frontier = nxt
    return basis


def span_contains(basis, m: Matrix) -> bool:
    ech = Echelon()
    for b in basis:
        ech.add(flat(b))
    return ech.contains(flat(m))


def trace_radical(basis: list[Matrix]) -> list[Matrix]:
    """Jacobson radical of a unital matrix algebra given by a basis.

    In characteristic 0 the radical is the kernel of the trace form tr(xy) restricted to
    the algebra (the algebra must contain the identity so that tr(x^k) = 0 for all k).
    """
    k = len(basis)
    if k == 0:
        return []
    gram = [[(basis[i] @ basis[j]).trace() for j in range(k)] for i in range(k)]
    out = []
    for coeffs in kernel_basis(gram, k):
        m = None
        for c, b in zip(coeffs, basis):
            if c:
                term = b.scale(c)
                m = term if m is None else m + term
        out.append(m)
    return out


def minimal_polynomial(m: Matrix) -> list:
    """Monic minimal polynomial of a square matrix, coefficients low to high degree."""
    n = m.nrows
    powers = [Matrix.identity(n, m.field)]
    ech = Echelon()
    ech.add(flat(powers[0]))
    while True:
        nxt = powers[-1] @ m
        if not ech.add(flat(nxt)):
            # solve nxt = sum c_i powers[i]
            k = len(powers)
            cols = [p.flatten() for p in powers]
            rows = [tuple(c[r] for c in cols) for r in range(n * n)]
            from .linalg import solve

            coeffs = solve(rows, nxt.flatten(), k)
            assert coeffs is not None
            return [-c for c in coeffs] + [Fraction(1)]
        powers.append(nxt)


def poly_of_matrix(coeffs, m: Matrix) -> Matrix:
    """Evaluate sum coeffs[k] m^k by Horner's rule."""
    n = m.nrows
    result = Matrix.zeros(n, n, m.field)
    ident = Matrix.identity(n, m.field)
    for c in reversed(coeffs):
        result = result @ m + ident.scale(c)
    return result


def _sympy_domain(field: CyclotomicField):
    from sympy import I, QQ as SQQ, exp, pi

    if field.is_rational:
        return SQQ, None
    dom = SQQ.algebraic_field(exp(2 * pi * I / field.conductor))
    mod = [Fraction(int(c.numerator), int(c.denominator)) for c in dom.mod.to_list()]
    if list(reversed(mod)) != [Fraction(c) for c in field.phi]:
        raise ValueError("sympy chose an unexpected generator for the cyclotomic field")
    return dom, dom.mod.to_list()


def factor_polynomial(coeffs, field: CyclotomicField = QQ) -> list[tuple[list, int]]:
    """Factor a polynomial over the field into monic irreducibles (low-to-high coefficients)."""
    from sympy import Poly, QQ as SQQ, Symbol
    from sympy.polys.polyclasses import ANP

    x = Symbol("x")
    dom, mod = _sympy_domain(field)

    def to_dom(c):
        if field.is_rational:
            return SQQ(Fraction(c).numerator, Fraction(c).denominator)
        cs = field.coefficients(c)
        hi_lo = [SQQ(v.numerator, v.denominator) for v in reversed(cs)]
        while len(hi_lo) > 1 and hi_lo[0] == 0:
            hi_lo = hi_lo[1:]
        return ANP(hi_lo, mod, SQQ)

    def from_dom(a):
        if field.is_rational:
            return Fraction(int(a.numerator), int(a.denominator))
        hi_lo = a.to_list()
        lo_hi = [Fraction(int(v.numerator), int(v.denominator)) for v in reversed(hi_lo)]
        return field.from_coefficients(lo_hi) if lo_hi else Fraction(0)

    p = Poly.from_list([to_dom(c) for c in reversed(coeffs)], x, domain=dom)
    _, factors = p.factor_list()
    out = []
    for f, e in factors:
        cs = [from_dom(a) for a in f.rep.to_list()]
        lead = cs[0]
        cs = [c / lead for c in cs]
        out.append((list(reversed(cs)), e))
    return out


def poly_divmod(a, b):
    """Division of polynomials over a field, coefficients low to high."""
    a = list(a)
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] = a[k + i] - c * y
    r = a[: len(b) - 1] or [Fraction(0)]
    return q, r


def is_scalar_type(x) -> bool:
    return isinstance(x, (int, Fraction, Cyclotomic))
