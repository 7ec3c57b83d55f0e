"""Dense and sparse exact linear algebra.

The workhorse is :class:`Echelon`, an incremental fraction-free row echelon form
over sparse rows (``dict`` column -> value).  Rational rows are scaled to
integers on entry and kept primitive (content stripped) after every update, so
coefficient growth stays tame on the large evaluation matrices built by the
codimension code.  Rows over Q(zeta_m) are handled the same way with
:class:`~piexp.fields.Cyclotomic` entries whose coefficients are kept integral.
"""
from __future__ import annotations

import heapq
import random
from bisect import insort
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .fields import QQ, Cyclotomic, CyclotomicField, cyclotomic_polynomial, field_of, rational_content


def _integral(row: dict) -> dict:
    """Scale a sparse row to a primitive integral representative."""
    if not row:
        return row
    vals = row.values()
    if all(isinstance(v, int) for v in vals):
        g = 0
        for v in vals:
            g = gcd(g, v)
            if g == 1:
                return row
        return {k: v // g for k, v in row.items()}
    if not any(isinstance(v, Cyclotomic) for v in vals):
        den = 1
        for v in vals:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        ints = {k: int(v * den) for k, v in row.items()}
        return _integral(ints)
    c = rational_content(vals)
    if c == 1:
        return row
    return {k: v / c for k, v in row.items()}


def sparse(vec) -> dict:
    return {i: v for i, v in enumerate(vec) if v}


class Echelon:
    """Incremental fraction-free echelon basis of a row space.

    Every stored pivot row vanishes left of its pivot column; new rows are
    reduced against pivots in increasing column order.
    """

    def __init__(self):
        self.pivots: dict[int, dict] = {}
        self.order: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = _integral({k: v for k, v in row.items() if v})
        if not row or not self.pivots:
            return row
        pivots = self.pivots
        heap = [c for c in row if c in pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = row.get(c)
            if not a:
                continue
            prow = pivots[c]
            p = prow[c]
            if isinstance(a, int) and isinstance(p, int):
                g = gcd(a, p)
                a //= g
                p //= g
            if p != 1:
                row = {k: p * v for k, v in row.items()}
            for k, v in prow.items():
                nv = row.get(k, 0) - a * v
                if nv:
                    row[k] = nv
                    if k > c and k in pivots:
                        heapq.heappush(heap, k)
                else:
                    row.pop(k, None)
            row = _integral(row)
            if not row:
                break
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True when it enlarged the row space."""
        r = self.reduce(row)
        if not r:
            return False
        lead = min(r)
        self.pivots[lead] = r
        insort(self.order, lead)
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rref(self) -> list[tuple[int, dict]]:
        """Reduced rows (pivot entry 1, zeros in other pivot columns), by pivot column."""
        out: dict[int, dict] = {}
        for c in reversed(self.order):
            row = dict(self.pivots[c])
            for c2 in list(row):
                if c2 != c and c2 in out:
                    a = row[c2]
                    for k, v in out[c2].items():
                        nv = row.get(k, 0) - a * v
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
            p = row[c]
            out[c] = {k: _div(v, p) for k, v in row.items()}
        return [(c, out[c]) for c in self.order]


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _dense(row: dict, ncols: int, zero=Fraction(0)) -> tuple:
    out = [zero] * ncols
    for k, v in row.items():
        out[k] = v if not isinstance(v, int) else Fraction(v)
    return tuple(out)


def rref(rows, ncols: int) -> tuple[list[tuple], list[int]]:
    """Canonical reduced row echelon form of dense rows: (nonzero rows, pivot columns)."""
    ech = Echelon()
    for r in rows:
        ech.add(sparse(r))
    red = ech.rref()
    return [_dense(r, ncols) for _, r in red], [c for c, _ in red]


def rank(rows, ncols: int | None = None) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r if isinstance(r, dict) else sparse(r))
    return ech.rank


def kernel_basis(rows, ncols: int) -> list[tuple]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red, piv = rref(rows, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in zip(red, piv):
            if r[f]:
                v[c] = -r[f]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs, ncols: int):
    """One solution of M x = rhs, or None when inconsistent."""
    if len(rhs) != len(rows):
        raise ValueError("right-hand side length does not match the number of rows")
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for r, c in zip(red, piv):
        x[c] = r[ncols]
    return tuple(x)


# --------------------------------------------------------------------------
# modular ranks


_DEFAULT_PRIMES = (2147483629, 2147483587, 2147483579, 2147483563, 2147483549)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_for(field: CyclotomicField, count: int, seed: int = 0) -> list[int]:
    """``count`` primes below 2**31 that split completely in ``field``."""
    m = field.conductor if not field.is_rational else 1
    rng = random.Random(seed)
    out: list[int] = []
    if m == 1:
        out.extend(_DEFAULT_PRIMES[:count])
    while len(out) < count:
        k = rng.randrange(2**29 // m, 2**31 // m)
        p = k * m + 1
        if p < 2**31 and _is_prime(p) and p not in out:
            out.append(p)
    return out


def _root_mod_p(m: int, p: int) -> int:
    phi = cyclotomic_polynomial(m)
    for g in range(2, p):
        r = pow(g, (p - 1) // m, p)
        if sum(c * pow(r, i, p) for i, c in enumerate(phi)) % p == 0:
            return r
    raise ValueError(f"no primitive {m}-th root of unity mod {p}")


def _reduce_mod(v, p: int, root: int | None) -> int:
    if isinstance(v, Cyclotomic):
        acc = 0
        for i, c in enumerate(v.c):
            if c:
                if c.denominator % p == 0:
                    raise ZeroDivisionError("denominator divisible by the prime")
                acc += c.numerator * pow(c.denominator, -1, p) * pow(root, i, p)
        return acc % p
    v = Fraction(v)
    if v.denominator % p == 0:
        raise ZeroDivisionError("denominator divisible by the prime")
    return v.numerator * pow(v.denominator, -1, p) % p


def rank_mod_p(rows, ncols: int, p: int, field: CyclotomicField | None = None) -> tuple[int, list[int]]:
    """Rank of the image of the matrix modulo p and indices of a maximal independent row set.

    For Q(zeta_m) entries, zeta is sent to a primitive m-th root of unity mod p, which
    requires p = 1 (mod m).  The modular rank is always a lower bound of the exact rank.
    """
    rows = list(rows)
    if field is None:
        field = QQ
        for r in rows:
            vals = r.values() if isinstance(r, dict) else r
            f = field_of(vals)
            if f is not None:
                field = f
                break
    root = None
    if not field.is_rational:
        if (p - 1) % field.conductor:
            raise ValueError(f"prime {p} does not split in {field!r}")
        root = _root_mod_p(field.conductor, p)
    nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0, []
    a = np.zeros((nrows, ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        items = r.items() if isinstance(r, dict) else enumerate(r)
        for j, v in items:
            if v:
                a[i, j] = _reduce_mod(v, p, root)
    perm = np.arange(nrows)
    rk = 0
    for c in range(ncols):
        if rk == nrows:
            break
        nz = np.nonzero(a[rk:, c])[0]
        if nz.size == 0:
            continue
        piv = rk + int(nz[0])
        if piv != rk:
            a[[rk, piv]] = a[[piv, rk]]
            perm[[rk, piv]] = perm[[piv, rk]]
        inv = pow(int(a[rk, c]), -1, p)
        a[rk] = a[rk] * inv % p
        col = a[:, c].copy()
        col[rk] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[rk]) % p) % p
        rk += 1
    return rk, sorted(int(i) for i in perm[:rk])


def certified_rank(rows, ncols: int, nprimes: int = 3) -> int:
    """Exact rank, seeded by a modular pivot selection.

    Rows independent modulo p are independent over the field, so the modular pivot rows
    are inserted first; every remaining row is then reduced exactly against them, which
    certifies (or corrects) the modular answer.
    """
    rows = [r if isinstance(r, dict) else sparse(r) for r in rows]
    fld = QQ
    for r in rows:
        f = field_of(r.values())
        if f is not None:
            fld = f
            break
    results = [rank_mod_p(rows, ncols, p, fld) for p in primes_for(fld, nprimes)]
    best = max(results, key=lambda t: t[0])
    ech = Echelon()
    chosen = set(best[1])
    for i in best[1]:
        ech.add(rows[i])
    for i, r in enumerate(rows):
        if i not in chosen:
            ech.add(r)
    return ech.rank


@dataclass(frozen=True)
class Matrix:
    """Small dense exact matrix; ``rows`` is a tuple of equal-length tuples."""

    rows: tuple
    ncols: int
    field: CyclotomicField = dc_field(default=QQ, compare=False)

    @classmethod
    def from_rows(cls, rows, field: CyclotomicField | None = None, ncols: int | None = None) -> Matrix:
        rows = tuple(tuple(field(x) if field else _coerce(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        if field is None:
            field = field_of(x for r in rows for x in r) or QQ
        return cls(rows, ncols, field)

    @classmethod
    def from_columns(cls, cols, nrows: int, field: CyclotomicField | None = None) -> Matrix:
        cols = [tuple(c) for c in cols]
        rows = [tuple(c[i] for c in cols) for i in range(nrows)]
        return cls.from_rows(rows, field, ncols=len(cols))

    @classmethod
    def identity(cls, n: int, field: CyclotomicField = QQ) -> Matrix:
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n, field)

    @classmethod
    def zeros(cls, r: int, c: int, field: CyclotomicField = QQ) -> Matrix:
        return cls(tuple((Fraction(0),) * c for _ in range(r)), c, field)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def T(self) -> Matrix:
        return Matrix(tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols)),
                      len(self.rows), self.field)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def apply(self, vec) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        nz = [(j, v) for j, v in enumerate(vec) if v]
        zero = Fraction(0)
        out = []
        for r in self.rows:
            s = zero
            for j, v in nz:
                x = r[j]
                if x:
                    s = s + x * v
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.T.rows
            zero = Fraction(0)
            out = []
            for r in self.rows:
                nz = [(k, x) for k, x in enumerate(r) if x]
                row = []
                for c in cols:
                    s = zero
                    for k, x in nz:
                        y = c[k]
                        if y:
                            s = s + x * y
                    row.append(s)
                out.append(tuple(row))
            return Matrix(tuple(out), other.ncols, self.field)
        return self.apply(other)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                      self.ncols, self.field)

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                      self.ncols, self.field)

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, c) -> Matrix:
        return Matrix(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols, self.field)

    def trace(self):
        s = Fraction(0)
        for i in range(min(self.shape)):
            s = s + self.rows[i][i]
        return s

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def flatten(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def rank(self) -> int:
        return rank(self.rows, self.ncols)

    def kernel(self):
        from .subspace import Subspace

        return Subspace.from_vectors(self.ncols, kernel_basis(self.rows, self.ncols), self.field)

    def image(self):
        """Column space as a canonical subspace of F^nrows."""
        from .subspace import Subspace

        return Subspace.from_vectors(self.nrows, self.columns(), self.field)

    def row_space(self):
        from .subspace import Subspace

        return Subspace.from_vectors(self.ncols, self.rows, self.field)

    def solve(self, rhs):
        return solve(self.rows, tuple(rhs), self.ncols)

    def inverse(self) -> Matrix:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("only square matrices are invertible")
        aug = [tuple(r) + tuple(Fraction(int(i == j)) for j in range(n)) for i, r in enumerate(self.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix(tuple(r[n:] for r in red[:n]), n, self.field)

    def power(self, k: int) -> Matrix:
        result = Matrix.identity(self.nrows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(x) for x in r] for r in self.rows]


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, str):
        return QQ.parse(x)
    if isinstance(x, float):
        raise TypeError("floating point entries are not exact")
    return Fraction(x)
